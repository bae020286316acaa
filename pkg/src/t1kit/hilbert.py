"""Hilbert-style propositional kernel shared by t1check and fregesim.

Axiom schemata P1..P15 over ¬ ∧ ∨ → ↔ and the constants ⊤ ⊥, with modus
ponens as the only rule.  P14 and P15 mention constants and so only occur in
propositional (Frege) proofs; T1 proofs use P1..P13.

Lemma templates are proofs over meta atoms, checked once and then cited as
single lines.  ``expand`` inlines them, yielding a pure axiom+MP proof.
"""

from .propc import (TRUE, FALSE, Atom, neg, land, lor, limp, liff, subst, atoms,
                    children, rebuild, eval_prop, to_str, _postorder, BINOPS)


class ProofError(ValueError):
    pass


def M(name):
    """Meta atom used in schemata and templates."""
    return Atom(("meta", name))


A, B, C = M("A"), M("B"), M("C")

AXIOMS = {
    "P1": limp(A, limp(B, A)),
    "P2": limp(limp(A, limp(B, C)), limp(limp(A, B), limp(A, C))),
    "P3": limp(land(A, B), A),
    "P4": limp(land(A, B), B),
    "P5": limp(A, limp(B, land(A, B))),
    "P6": limp(A, lor(A, B)),
    "P7": limp(B, lor(A, B)),
    "P8": limp(limp(A, C), limp(limp(B, C), limp(lor(A, B), C))),
    "P9": limp(limp(A, B), limp(limp(A, neg(B)), neg(A))),
    "P10": limp(neg(neg(A)), A),
    "P11": limp(liff(A, B), limp(A, B)),
    "P12": limp(liff(A, B), limp(B, A)),
    "P13": limp(limp(A, B), limp(limp(B, A), liff(A, B))),
    "P14": TRUE,
    "P15": neg(FALSE),
}

T1_AXIOMS = tuple(f"P{i}" for i in range(1, 14))


def _metas(f):
    return [a for a in atoms(f) if isinstance(a.key, tuple) and a.key[0] == "meta"]


AXIOM_METAS = {k: tuple(a.key[1] for a in _metas(v)) for k, v in AXIOMS.items()}


def instantiate(schema, inst):
    """Replace meta atoms of ``schema`` by the formulas in ``inst`` (name -> PF)."""
    return subst(schema, {M(k): v for k, v in inst.items()})


# ------------------------------------------------------------ proofs

class Proof:
    """Lines of (formula, justification).  Indices are 0-based.

    Justifications: ("ax", name, inst), ("mp", i, j) where line j is
    line i → this, ("lemma", tid, inst), and ("hyp",) inside derivations.
    ``inst`` is a tuple of (meta-name, formula) pairs.
    """

    def __init__(self, lines=None):
        self.lines = list(lines or [])

    def __len__(self):
        return len(self.lines)

    @property
    def goal(self):
        if not self.lines:
            raise ProofError("empty proof")
        return self.lines[-1][0]

    def dump(self):
        out = []
        for k, (f, j) in enumerate(self.lines, 1):
            out.append(f"{k}: {to_str(f)} ; {_just_text(j)}")
        return "\n".join(out)


def _just_text(j):
    if j[0] == "mp":
        return f"mp {j[1] + 1} {j[2] + 1}"
    if j[0] in ("ax", "lemma"):
        inst = ", ".join(f"{k} := {to_str(v)}" for k, v in j[2])
        head = j[1] if j[0] == "ax" else f"lemma {j[1]}"
        return f"{head} {{{inst}}}" if inst else head
    return j[0]


class Builder:
    """Append-only proof under construction; proven formulas are not repeated."""

    def __init__(self):
        self.lines = []
        self.index = {}

    def __len__(self):
        return len(self.lines)

    def f(self, i):
        return self.lines[i][0]

    def have(self, f):
        return self.index.get(f)

    def _add(self, f, just):
        hit = self.index.get(f)
        if hit is not None:
            return hit
        self.lines.append((f, just))
        self.index[f] = len(self.lines) - 1
        return len(self.lines) - 1

    def ax(self, name, **inst):
        f = instantiate(AXIOMS[name], inst)
        return self._add(f, ("ax", name, _inst_tuple(inst)))

    def lemma(self, tid, **inst):
        t = template(tid)
        f = instantiate(t.goal, inst)
        return self._add(f, ("lemma", tid, _inst_tuple(inst)))

    def mp(self, i, j):
        fi, fj = self.f(i), self.f(j)
        if fj.op != "imp" or fj.a is not fi:
            raise ProofError(f"modus ponens mismatch: {to_str(fi)} vs {to_str(fj)}")
        return self._add(fj.b, ("mp", i, j))

    def use(self, j, *args):
        """Detach the antecedents of line ``j`` one by one using lines ``args``."""
        for i in args:
            j = self.mp(i, j)
        return j

    def include(self, proof, mapping=None):
        """Copy a proof (optionally substituted); returns the index of its goal."""
        lines = proof.lines if isinstance(proof, Proof) else proof
        memo = {}
        where = []
        for f, j in lines:
            if mapping:
                f = subst(f, mapping, memo)
            if j[0] == "mp":
                idx = self._add(f, ("mp", where[j[1]], where[j[2]]))
            elif j[0] in ("ax", "lemma"):
                inst = j[2]
                if mapping:
                    inst = tuple((k, subst(v, mapping, memo)) for k, v in inst)
                idx = self._add(f, (j[0], j[1], inst))
            elif j[0] == "hyp":
                idx = self.hyp(f)
            elif j[0] == "ext" and not mapping:
                idx = self._add(f, j)
            else:
                raise ProofError(f"cannot copy justification {j[0]}")
            where.append(idx)
        return where[-1] if where else None

    def hyp(self, f):
        raise ProofError("hypotheses are only allowed in derivations")

    def ext(self, f, payload):
        """Line justified outside the propositional kernel (e.g. a T1 rule)."""
        return self._add(f, ("ext", payload))

    def proof(self, goal_idx=None):
        """The finished proof, ending with line ``goal_idx`` (default: last)."""
        lines = list(self.lines)
        if goal_idx is not None and goal_idx != len(lines) - 1:
            lines = _restate(lines, goal_idx)
        return Proof(lines)


def _restate(lines, k):
    """Repeat line ``k`` at the end via g→g and modus ponens."""
    g = lines[k][0]
    n = len(lines)
    return lines + [
        (limp(g, g), ("lemma", "B1", (("A", g),))),
        (g, ("mp", k, n)),
    ]


def _inst_tuple(inst):
    return tuple(sorted(inst.items()))


class Deriv(Builder):
    """Builder that may assume hypotheses and discharge them."""

    def hyp(self, f):
        hit = self.index.get(f)
        if hit is not None and self.lines[hit][1][0] == "hyp":
            return hit
        self.lines.append((f, ("hyp",)))
        self.index[f] = len(self.lines) - 1
        return len(self.lines) - 1

    def discharge(self, h, goal_idx=None):
        """Deduction theorem: new derivation proving h → goal, without hyp h."""
        goal_idx = len(self.lines) - 1 if goal_idx is None else goal_idx
        d = Deriv()
        kind = {}
        for k, (f, j) in enumerate(self.lines[:goal_idx + 1]):
            if j[0] == "hyp":
                if f is h:
                    kind[k] = ("imp", d.lemma("B1", A=h))
                else:
                    kind[k] = ("plain", d.hyp(f))
            elif j[0] in ("ax", "lemma", "ext"):
                kind[k] = ("plain", d._add(f, j))
            else:
                (ka, ia), (kb, ib) = kind[j[1]], kind[j[2]]
                if ka == kb == "plain":
                    kind[k] = ("plain", d.mp(ia, ib))
                else:
                    ia = ia if ka == "imp" else _lift(d, h, ia)
                    ib = ib if kb == "imp" else _lift(d, h, ib)
                    a = self.lines[j[1]][0]
                    p2 = d.ax("P2", A=h, B=a, C=f)
                    kind[k] = ("imp", d.mp(ia, d.mp(ib, p2)))
        kg, ig = kind[goal_idx]
        if kg == "plain":
            ig = _lift(d, h, ig)
        return d, ig

    def close(self, hyps, goal_idx=None):
        """Discharge ``hyps`` innermost first (given outermost first)."""
        d, g = self, goal_idx
        for h in reversed(hyps):
            d, g = d.discharge(h, g)
        if any(j[0] == "hyp" for _, j in d.lines[:g + 1]):
            raise ProofError("undischarged hypothesis")
        return d.proof(g)


def _lift(d, h, i):
    f = d.f(i)
    return d.mp(i, d.ax("P1", A=f, B=h))


# ------------------------------------------------------------ checking

_checked_templates = set()


def check_rich(proof, allow_constants=True, allow_lemmas=True):
    """None if every line is justified, else (line number, reason) 1-based."""
    lines = proof.lines if isinstance(proof, Proof) else proof
    if not lines:
        return (0, "no lines")
    for k, (f, j) in enumerate(lines):
        err = _check_line(lines, k, f, j, allow_constants, allow_lemmas)
        if err:
            return (k + 1, err)
    return None


def _check_line(lines, k, f, j, allow_constants, allow_lemmas):
    kind = j[0]
    if kind == "ax":
        name = j[1]
        if name not in AXIOMS or (not allow_constants and name in ("P14", "P15")):
            return f"unknown axiom {name}"
        inst = dict(j[2])
        if set(inst) - set(AXIOM_METAS[name]):
            return f"{name} has no metavariable {sorted(set(inst) - set(AXIOM_METAS[name]))[0]}"
        if instantiate(AXIOMS[name], inst) is not f:
            return f"not an instance of {name}"
        return None
    if kind == "mp":
        i, jj = j[1], j[2]
        if not (0 <= i < k and 0 <= jj < k):
            return "modus ponens cites a later line"
        fi, fj = lines[i][0], lines[jj][0]
        if fj.op != "imp" or fj.a is not fi or fj.b is not f:
            return "modus ponens antecedent mismatch"
        return None
    if kind == "lemma":
        if not allow_lemmas:
            return "lemma lines are not allowed here"
        tid = j[1]
        try:
            t = template(tid)
        except KeyError:
            return f"unknown lemma {tid}"
        if tid not in _checked_templates:
            err = check_rich(t.proof, allow_constants, True)
            if err:
                return f"lemma {tid} fails at its line {err[0]}: {err[1]}"
            if t.proof.goal is not t.goal:
                return f"lemma {tid} proves the wrong formula"
            _checked_templates.add(tid)
        if instantiate(t.goal, dict(j[2])) is not f:
            return f"not an instance of lemma {tid}"
        return None
    return f"unjustified line ({kind})"


def expand(proof):
    """Inline every lemma citation; the result uses axioms and MP only."""
    b = Builder()
    _expand_into(b, proof, None, {})
    return b.proof()


def _expand_into(b, proof, mapping, cache):
    where = []
    memo = {}
    for f, j in proof.lines:
        g = subst(f, mapping, memo) if mapping else f
        if j[0] == "mp":
            idx = b._add(g, ("mp", where[j[1]], where[j[2]]))
        elif j[0] == "ax":
            inst = tuple((k, subst(v, mapping, memo) if mapping else v) for k, v in j[2])
            idx = b._add(g, ("ax", j[1], inst))
        elif j[0] == "lemma":
            hit = b.have(g)
            if hit is not None:
                idx = hit
            else:
                t = template(j[1])
                inst = {M(k): (subst(v, mapping, memo) if mapping else v) for k, v in j[2]}
                idx = _expand_into(b, t.proof, inst, cache)
        elif j[0] == "ext" and not mapping:
            idx = b._add(g, j)
        else:
            raise ProofError(f"cannot expand {j[0]}")
        where.append(idx)
    return where[-1]


# ------------------------------------------------------------ templates

class Template:
    def __init__(self, tid, goal, proof):
        self.tid = tid
        self.goal = goal
        self.proof = proof


_templates = {}
_builders = {}


def register(tid):
    def deco(fn):
        _builders[tid] = fn
        return fn
    return deco


def template(tid):
    t = _templates.get(tid)
    if t is None:
        if tid not in _builders:
            raise KeyError(tid)
        proof = _builders[tid]()
        t = Template(tid, proof.goal, proof)
        _templates[tid] = t
    return t


def template_ids():
    return sorted(_builders)


X, Y, Z, H = M("X"), M("Y"), M("Z"), M("H")
A2, B2 = M("A'"), M("B'")


@register("B1")
def _b1():
    # A→A, the textbook five lines
    b = Builder()
    s1 = b.ax("P2", A=A, B=limp(A, A), C=A)
    s2 = b.ax("P1", A=A, B=limp(A, A))
    s3 = b.mp(s2, s1)
    s4 = b.ax("P1", A=A, B=A)
    b.mp(s4, s3)
    return b.proof()


@register("SYL")
def _syl():
    d = Deriv()
    h1, h2, h3 = d.hyp(limp(A, B)), d.hyp(limp(B, C)), d.hyp(A)
    d.mp(d.mp(h3, h1), h2)
    return d.close([limp(A, B), limp(B, C), A])


@register("PERM")
def _perm():
    d = Deriv()
    h1, h2, h3 = d.hyp(limp(A, limp(B, C))), d.hyp(B), d.hyp(A)
    d.mp(h2, d.mp(h3, h1))
    return d.close([limp(A, limp(B, C)), B, A])


@register("B2")
def _b2():
    # ¬A → (A → B)
    d = Deriv()
    na, a = d.hyp(neg(A)), d.hyp(A)
    i1 = d.mp(a, d.ax("P1", A=A, B=neg(B)))
    i2 = d.mp(na, d.ax("P1", A=neg(A), B=neg(B)))
    p9 = d.ax("P9", A=neg(B), B=A)
    nnb = d.use(p9, i1, i2)
    d.mp(nnb, d.ax("P10", A=B))
    return d.close([neg(A), A])


@register("B4")
def _b4():
    # A → ¬¬A
    d = Deriv()
    a = d.hyp(A)
    i1 = d.mp(a, d.ax("P1", A=A, B=neg(A)))
    i2 = d.lemma("B1", A=neg(A))
    d.use(d.ax("P9", A=neg(A), B=A), i1, i2)
    return d.close([A])


@register("B5")
def _b5():
    # (A→B) → (¬B→¬A)
    d = Deriv()
    ab, nb = d.hyp(limp(A, B)), d.hyp(neg(B))
    anb = d.mp(nb, d.ax("P1", A=neg(B), B=A))
    d.use(d.ax("P9", A=A, B=B), ab, anb)
    return d.close([limp(A, B), neg(B)])


@register("B6")
def _b6():
    # (A→B) → ((¬A→B) → B)
    d = Deriv()
    ab, nab = d.hyp(limp(A, B)), d.hyp(limp(neg(A), B))
    c1 = d.mp(ab, d.lemma("B5", A=A, B=B))
    c2 = d.mp(nab, d.lemma("B5", A=neg(A), B=B))
    nnb = d.use(d.ax("P9", A=neg(B), B=neg(A)), c1, c2)
    d.mp(nnb, d.ax("P10", A=B))
    return d.close([limp(A, B), limp(neg(A), B)])


@register("E_and_f1")
def _e_and_f1():
    b = Builder()
    b.mp(b.ax("P3", A=A, B=B), b.lemma("B5", A=land(A, B), B=A))
    return b.proof()


@register("E_and_f2")
def _e_and_f2():
    b = Builder()
    b.mp(b.ax("P4", A=A, B=B), b.lemma("B5", A=land(A, B), B=B))
    return b.proof()


@register("E_or_ff")
def _e_or_ff():
    # ¬A → (¬B → ¬(A∨B))
    d = Deriv()
    na, nb = d.hyp(neg(A)), d.hyp(neg(B))
    ba = d.mp(nb, d.lemma("B2", A=B, B=A))
    oa = d.use(d.ax("P8", A=A, B=B, C=A), d.lemma("B1", A=A), ba)
    ona = d.mp(na, d.ax("P1", A=neg(A), B=lor(A, B)))
    d.use(d.ax("P9", A=lor(A, B), B=A), oa, ona)
    return d.close([neg(A), neg(B)])


@register("E_imp_tf")
def _e_imp_tf():
    # A → (¬B → ¬(A→B))
    d = Deriv()
    a, nb = d.hyp(A), d.hyp(neg(B))
    inner = Deriv()
    ia = inner.hyp(A)
    iab = inner.hyp(limp(A, B))
    inner.mp(ia, iab)
    d2, g = inner.discharge(limp(A, B))
    d2p = d2.lines[:g + 1]
    d.include(d2p)
    abb = d.have(limp(limp(A, B), B))
    abnb = d.mp(nb, d.ax("P1", A=neg(B), B=limp(A, B)))
    d.use(d.ax("P9", A=limp(A, B), B=B), abb, abnb)
    return d.close([A, neg(B)])


@register("E_iff_tt")
def _e_iff_tt():
    d = Deriv()
    a, b_ = d.hyp(A), d.hyp(B)
    ab = d.mp(b_, d.ax("P1", A=B, B=A))
    ba = d.mp(a, d.ax("P1", A=A, B=B))
    d.use(d.ax("P13", A=A, B=B), ab, ba)
    return d.close([A, B])


@register("E_iff_ff")
def _e_iff_ff():
    d = Deriv()
    na, nb = d.hyp(neg(A)), d.hyp(neg(B))
    ab = d.mp(na, d.lemma("B2", A=A, B=B))
    ba = d.mp(nb, d.lemma("B2", A=B, B=A))
    d.use(d.ax("P13", A=A, B=B), ab, ba)
    return d.close([neg(A), neg(B)])


def _iff_refute(first_true):
    # A→(¬B→¬(A↔B)) or ¬A→(B→¬(A↔B))
    d = Deriv()
    if first_true:
        hyps = [A, neg(B)]
        d.hyp(A)
        nb = d.hyp(neg(B))
        inner = Deriv()
        ia = inner.hyp(A)
        e = inner.hyp(liff(A, B))
        inner.mp(ia, inner.mp(e, inner.ax("P11", A=A, B=B)))
        d2, g = inner.discharge(liff(A, B))
        d.include(d2.lines[:g + 1])
        pos = d.have(limp(liff(A, B), B))
        negl = d.mp(nb, d.ax("P1", A=neg(B), B=liff(A, B)))
        d.use(d.ax("P9", A=liff(A, B), B=B), pos, negl)
    else:
        hyps = [neg(A), B]
        na = d.hyp(neg(A))
        d.hyp(B)
        inner = Deriv()
        ib = inner.hyp(B)
        e = inner.hyp(liff(A, B))
        inner.mp(ib, inner.mp(e, inner.ax("P12", A=A, B=B)))
        d2, g = inner.discharge(liff(A, B))
        d.include(d2.lines[:g + 1])
        pos = d.have(limp(liff(A, B), A))
        negl = d.mp(na, d.ax("P1", A=neg(A), B=liff(A, B)))
        d.use(d.ax("P9", A=liff(A, B), B=A), pos, negl)
    return d.close(hyps)


register("E_iff_tf")(lambda: _iff_refute(True))
register("E_iff_ft")(lambda: _iff_refute(False))


# ------------------------------------------------------------ closed evaluation

def closed_value(b, f, lits, memo):
    """Prove f (if true) or ¬f (if false) where atoms are decided by ``lits``.

    ``lits`` maps an atom to (value, line index proving it or its negation).
    Returns (value, index).
    """
    hit = memo.get(f)
    if hit is not None:
        return hit
    for n in _postorder(f):
        if n in memo:
            continue
        memo[n] = _closed_node(b, n, lits, memo)
    return memo[f]


def _closed_node(b, n, lits, memo):
    op = n.op
    if op == "T":
        return True, b.ax("P14")
    if op == "F":
        return False, b.ax("P15")
    if op == "atom":
        try:
            return lits[n]
        except KeyError:
            raise ProofError(f"atom {to_str(n)} has no value") from None
    if op == "not":
        v, i = memo[n.a]
        if v:
            return False, b.mp(i, b.lemma("B4", A=n.a))
        return True, i
    (va, ia), (vb, ib) = memo[n.a], memo[n.b]
    a, c = n.a, n.b
    if op == "and":
        if va and vb:
            return True, b.use(b.ax("P5", A=a, B=c), ia, ib)
        if not va:
            return False, b.mp(ia, b.lemma("E_and_f1", A=a, B=c))
        return False, b.mp(ib, b.lemma("E_and_f2", A=a, B=c))
    if op == "or":
        if va:
            return True, b.mp(ia, b.ax("P6", A=a, B=c))
        if vb:
            return True, b.mp(ib, b.ax("P7", A=a, B=c))
        return False, b.use(b.lemma("E_or_ff", A=a, B=c), ia, ib)
    if op == "imp":
        if vb:
            return True, b.mp(ib, b.ax("P1", A=c, B=a))
        if not va:
            return True, b.mp(ia, b.lemma("B2", A=a, B=c))
        return False, b.use(b.lemma("E_imp_tf", A=a, B=c), ia, ib)
    if op == "iff":
        if va and vb:
            return True, b.use(b.lemma("E_iff_tt", A=a, B=c), ia, ib)
        if not va and not vb:
            return True, b.use(b.lemma("E_iff_ff", A=a, B=c), ia, ib)
        if va:
            return False, b.use(b.lemma("E_iff_tf", A=a, B=c), ia, ib)
        return False, b.use(b.lemma("E_iff_ft", A=a, B=c), ia, ib)
    raise ProofError(f"bad node {op}")


def kalmar(f):
    """Proof of a small tautology by case analysis under hypotheses.

    Used only to build lemma templates; the size grows quickly with the
    number of atoms.
    """
    ats = atoms(f)
    if not _is_taut_small(f, ats):
        raise ProofError(f"not a tautology: {to_str(f)}")
    d = _kalmar_rec(f, ats, [], {})
    return d.proof(d.have(f))


def _kalmar_rec(f, ats, hyps, vals):
    if not ats[len(hyps):]:
        d = Deriv()
        lits = {}
        for h in hyps:
            i = d.hyp(h)
            atom, v = (h, True) if h.op == "atom" else (h.a, False)
            lits[atom] = (v, i)
        v, i = closed_value(d, f, lits, {})
        assert v
        return d
    p = ats[len(hyps)]
    d = Deriv()
    for h in hyps:
        d.hyp(h)
    idx = {}
    for lit in (p, neg(p)):
        sub = _kalmar_rec(f, ats, hyps + [lit], vals)
        sd, g = sub.discharge(lit, sub.have(f))
        idx[lit] = d.include(sd.lines[:g + 1])
    d.use(d.lemma("B6", A=p, B=f), idx[p], idx[neg(p)])
    return d


def _is_taut_small(f, ats):
    for mask in range(1 << len(ats)):
        if not eval_prop(f, {a: (mask >> k) & 1 for k, a in enumerate(ats)}):
            return False
    return True


def _kalmar_template(f):
    return lambda: kalmar(f)


_OPS = ("and", "or", "imp", "iff")
for _op in _OPS:
    _mk = BINOPS[_op]
    register(f"IFF_{_op}")(_kalmar_template(
        limp(liff(A, A2), limp(liff(B, B2), liff(_mk(A, B), _mk(A2, B2))))))
register("IFF_not")(_kalmar_template(limp(liff(A, A2), liff(neg(A), neg(A2)))))
register("T_id")(_kalmar_template(liff(A, A)))
register("T_sym")(_kalmar_template(limp(liff(A, B), liff(B, A))))
register("L_case1")(_kalmar_template(
    limp(limp(liff(A, TRUE), liff(B, C)), limp(C, limp(A, B)))))
register("L_case0")(_kalmar_template(
    limp(limp(liff(A, FALSE), liff(B, C)), limp(C, limp(neg(A), B)))))
register("BOT_E")(_kalmar_template(limp(FALSE, A)))
register("T_trans")(_kalmar_template(limp(liff(A, B), limp(liff(B, C), liff(A, C)))))


@register("H_SYM")
def _h_sym():
    # (H→(A↔B)) → (H→(B↔A))
    d = Deriv()
    hab, h = d.hyp(limp(H, liff(A, B))), d.hyp(H)
    d.mp(d.mp(h, hab), d.lemma("T_sym", A=A, B=B))
    return d.close([limp(H, liff(A, B)), H])


@register("H_TRANS")
def _h_trans():
    # (H→(A↔B)) → ((H→(B↔C)) → (H→(A↔C)))
    d = Deriv()
    hyps = [limp(H, liff(A, B)), limp(H, liff(B, C)), H]
    hab, hbc, h = [d.hyp(f) for f in hyps]
    d.use(d.lemma("T_trans", A=A, B=B, C=C), d.mp(h, hab), d.mp(h, hbc))
    return d.close(hyps)


@register("KID")
def _kid():
    # H → (A↔A)
    b = Builder()
    b.mp(b.lemma("T_id", A=A), b.ax("P1", A=liff(A, A), B=H))
    return b.proof()


def _cong_op(op):
    def build():
        mk = (lambda a, b_: neg(a)) if op == "not" else BINOPS[op]
        d = Deriv()
        ha = d.hyp(limp(H, liff(A, A2)))
        hyps = [limp(H, liff(A, A2))]
        if op != "not":
            hb = d.hyp(limp(H, liff(B, B2)))
            hyps.append(limp(H, liff(B, B2)))
        h = d.hyp(H)
        hyps.append(H)
        ea = d.mp(h, ha)
        if op == "not":
            d.mp(ea, d.lemma("IFF_not", A=A, **{"A'": A2}))
        else:
            eb = d.mp(h, hb)
            d.use(d.lemma(f"IFF_{op}", A=A, B=B, **{"A'": A2, "B'": B2}), ea, eb)
        return d.close(hyps)
    return build


for _op in _OPS + ("not",):
    register(f"C_{_op}")(_cong_op(_op))


@register("AND_I")
def _and_i():
    # (H→A) → ((H→B) → (H→(A∧B)))
    d = Deriv()
    ha, hb, h = d.hyp(limp(H, A)), d.hyp(limp(H, B)), d.hyp(H)
    d.use(d.ax("P5", A=A, B=B), d.mp(h, ha), d.mp(h, hb))
    return d.close([limp(H, A), limp(H, B), H])


def _nstep_like(with_x):
    # with X: (X→G0)→((X→G1)→(((a↔⊥)→(S↔G0))→(((a↔⊤)→(S↔G1))→(X→S))))
    # without: G0→(G1→(((a↔⊥)→(S↔G0))→(((a↔⊤)→(S↔G1))→S)))
    G0, G1, S, P = M("G0"), M("G1"), M("S"), M("P")
    c0 = limp(liff(P, FALSE), liff(S, G0))
    c1 = limp(liff(P, TRUE), liff(S, G1))
    d = Deriv()
    if with_x:
        hyps = [limp(X, G0), limp(X, G1), c0, c1, X]
        h0, h1, i0, i1, x = [d.hyp(h) for h in hyps]
        g0, g1 = d.mp(x, h0), d.mp(x, h1)
    else:
        hyps = [G0, G1, c0, c1]
        g0, g1, i0, i1 = [d.hyp(h) for h in hyps]
    pos = d.use(d.lemma("L_case1", A=P, B=S, C=G1), i1, g1)
    negp = d.use(d.lemma("L_case0", A=P, B=S, C=G0), i0, g0)
    d.use(d.lemma("B6", A=P, B=S), pos, negp)
    return d.close(hyps)


register("L_nstep")(lambda: _nstep_like(True))
register("L_split")(lambda: _nstep_like(False))


# ------------------------------------------------------------ tautology prover

MAX_SHANNON_ATOMS = 12


class Prover:
    """Proves tautologies into a Builder using the templates above."""

    def __init__(self, builder=None, max_atoms=MAX_SHANNON_ATOMS):
        self.b = builder if builder is not None else Builder()
        self.max_atoms = max_atoms
        self._closed = {}

    # -- congruence: H → (F ↔ F[σ]) given proofs of H → (a ↔ σ(a))
    def cong(self, f, h, atom_lines, sigma_memo, line_memo):
        b = self.b
        touched = set(atom_lines)
        for n in _postorder(f):
            if n in line_memo:
                continue
            if n in touched:
                line_memo[n] = atom_lines[n]
                sigma_memo[n] = b.f(atom_lines[n]).b.b
                continue
            kids = children(n)
            if not kids or all(sigma_memo.get(c, c) is c for c in kids):
                sigma_memo[n] = n
                line_memo[n] = None      # unchanged; KID on demand
                continue
            sk = [sigma_memo.get(c, c) for c in kids]
            sigma_memo[n] = rebuild(n, sk)
            ls = [line_memo[c] if line_memo[c] is not None else b.lemma("KID", H=h, A=c)
                  for c in kids]
            if n.op == "not":
                t = b.lemma("C_not", H=h, A=kids[0], **{"A'": sk[0]})
                line_memo[n] = b.use(t, ls[0])
            else:
                t = b.lemma(f"C_{n.op}", H=h, A=kids[0], B=kids[1],
                            **{"A'": sk[0], "B'": sk[1]})
                line_memo[n] = b.use(t, ls[0], ls[1])
        if line_memo[f] is None:
            return b.lemma("KID", H=h, A=f)
        return line_memo[f]

    def closed(self, f):
        v, i = closed_value(self.b, f, {}, self._closed)
        if not v:
            raise ProofError(f"closed formula is false: {to_str(f)}")
        return i

    def shannon(self, f):
        """Case split on real atoms; formula must be a tautology."""
        b = self.b
        hit = b.have(f)
        if hit is not None:
            return hit
        ats = atoms(f)
        if not ats:
            return self.closed(f)
        p = ats[0]
        out = {}
        for c in (TRUE, FALSE):
            fc = subst(f, {p: c})
            ic = self.shannon(fc)
            hyp = liff(p, c)
            base = b.lemma("B1", A=hyp)
            cl = self.cong(f, hyp, {p: base}, {}, {})
            lid = "L_case1" if c is TRUE else "L_case0"
            out[c] = b.use(b.lemma(lid, A=p, B=f, C=fc), cl, ic)
        return b.use(b.lemma("B6", A=p, B=f), out[TRUE], out[FALSE])

    def prove(self, f):
        """Proof line for tautology ``f``."""
        b = self.b
        hit = b.have(f)
        if hit is not None:
            return hit
        if f.op == "and":
            i, j = self.prove(f.a), self.prove(f.b)
            return b.use(b.ax("P5", A=f.a, B=f.b), i, j)
        if f.op == "iff" and f.a is f.b:
            return b.lemma("T_id", A=f.a)
        if f.op == "T":
            return b.ax("P14")
        skel, inst = _skeleton(f, self.max_atoms)
        if skel is None:
            raise ProofError(f"no propositional skeleton of at most {self.max_atoms} atoms "
                             f"is a tautology: {to_str(f, 300)}")
        if not inst:
            return self.shannon(f)
        tid = skeleton_template(skel)
        return b.lemma(tid, **inst)


def _min_depths(f):
    """Minimal connective depth of every node; negations do not count."""
    depth = {f: 0}
    order = [f]
    k = 0
    while k < len(order):
        n = order[k]
        k += 1
        step = 0 if n.op == "not" else 1
        for c in children(n):
            d = depth[n] + step
            if c not in depth:
                depth[c] = d
                order.append(c)
            elif d < depth[c]:
                depth[c] = d
                order.append(c)
    return depth


def _skeleton(f, max_atoms):
    """Smallest-depth abstraction of ``f`` that is a tautology.

    Subformulas whose minimal depth reaches the cut become meta atoms.
    Returns (canonical skeleton, instantiation) or (None, None).
    """
    from .propc import find_falsifier
    depth = _min_depths(f)
    maxd = max(depth.values())
    for cut in range(1, maxd + 2):
        mapping = {}
        order = []

        def walk(n):
            if n.op in ("T", "F"):
                return n
            if n.op == "atom" or (depth[n] >= cut and n.op != "not"):
                if n not in mapping:
                    mapping[n] = None
                    order.append(n)
                return n
            for c in children(n):
                walk(c)
            return n
        walk(f)
        if len(order) > max_atoms:
            if cut > 1:
                return None, None
            continue
        names = {n: M(f"S{k}") for k, n in enumerate(order)}
        memo = {}

        def build(n):
            if n in names:
                return names[n]
            if n.op in ("T", "F"):
                return n
            if n in memo:
                return memo[n]
            r = rebuild(n, [build(c) for c in children(n)])
            memo[n] = r
            return r
        skel = build(f)
        if find_falsifier(skel, max_atoms) is None:
            real = all(n.op == "atom" and not _is_meta(n) for n in order)
            if real and cut > maxd:
                return f, {}
            return skel, {f"S{k}": n for k, n in enumerate(order)}
    return None, None


def _is_meta(a):
    return isinstance(a.key, tuple) and a.key and a.key[0] == "meta"


_skeletons = {}


def skeleton_template(skel):
    """Register (once) a template proving the tautology ``skel``."""
    tid = _skeletons.get(skel)
    if tid is None:
        tid = f"SK{len(_skeletons)}"
        _skeletons[skel] = tid

        def build(skel=skel):
            p = Prover()
            return p.b.proof(p.shannon(skel))
        _builders[tid] = build
    return tid


def prove_tautology(f, max_atoms=MAX_SHANNON_ATOMS):
    p = Prover(max_atoms=max_atoms)
    return p.b.proof(p.prove(f))
