"""Building T1 proofs programmatically, plus the two corpus proofs and mutants.

Propositional glue is written as a natural-deduction style derivation over
equation atoms (``hilbert.Deriv``), the deduction theorem removes the
hypotheses, lemma citations are inlined, and the result is converted into a
``T1Proof`` that uses only P1..P13, modus ponens, equality axioms and rules.
"""

import random

from . import hilbert
from .evaluator import load_stdlib
from .t1check import T1Proof, axiom_instance, to_pf, from_pf, tind_premises, CheckError
from .termlang import Var, Eq, Not, Imp, EPS_T, ZERO_T, ONE_T, app, substitute, parse_term, parse_symbol


def _cat(a, b):
    return app("cat", a, b)


class T1Builder:
    """A derivation under construction; line handles are indices into ``d``."""

    def __init__(self, defs=None):
        self.defs = defs if defs is not None else load_stdlib()
        self.d = hilbert.Deriv()

    def formula(self, i):
        return from_pf(self.d.f(i))

    def _term(self, t):
        return parse_term(t, self.defs) if isinstance(t, str) else t

    def eqax(self, gid, **inst):
        inst = {k: (parse_symbol(v, self.defs) if k in ("f", "g", "h", "hl", "hr") and isinstance(v, str)
                    else self._term(v)) for k, v in inst.items()}
        a = axiom_instance(gid, inst, self.defs)
        return self.d.ext(to_pf(a), ("eqax", gid, inst))

    def subst(self, i, var, t):
        t = self._term(t)
        a = substitute(self.formula(i), var, t)
        return self.d.ext(to_pf(a), ("subst", self.d.f(i), var, t))

    def hyp(self, a):
        return self.d.hyp(to_pf(a) if not hasattr(a, "op") else a)

    def mp(self, i, j):
        return self.d.mp(i, j)

    def and_e1(self, i):
        f = self.d.f(i)
        return self.d.mp(i, self.d.ax("P3", A=f.a, B=f.b))

    def and_e2(self, i):
        f = self.d.f(i)
        return self.d.mp(i, self.d.ax("P4", A=f.a, B=f.b))

    def and_i(self, i, j):
        a, b = self.d.f(i), self.d.f(j)
        return self.d.mp(j, self.d.mp(i, self.d.ax("P5", A=a, B=b)))

    def conj_part(self, i, k, n):
        """Conjunct ``k`` (0-based) of a right-nested ``n``-fold conjunction."""
        for _ in range(k):
            i = self.and_e2(i)
        return i if k == n - 1 else self.and_e1(i)

    def refl(self, t):
        return self.eqax("1a", x=self._term(t))

    def sym(self, i):
        e = self.formula(i)
        ax = self.eqax("1b", x=e.left, y=e.right)
        return self.mp(i, ax)

    def trans(self, i, j):
        a, b = self.formula(i), self.formula(j)
        if a.right != b.left:
            raise CheckError("transitivity: middle terms differ")
        ax = self.eqax("1c", x=a.left, y=a.right, z=b.right)
        return self.mp(self.and_i(i, j), ax)

    def chain(self, *idx):
        out = idx[0]
        for j in idx[1:]:
            out = self.trans(out, j)
        return out

    def cong(self, f, *eqs):
        """From lines s_k = t_k derive f(s̄) = f(t̄) by axiom 1d."""
        sym = parse_symbol(f, self.defs) if isinstance(f, str) else f
        inst = {"f": sym}
        for k, i in enumerate(eqs, 1):
            e = self.formula(i)
            inst[f"x{k}"], inst[f"y{k}"] = e.left, e.right
        ax = self.eqax("1d", **inst)
        return self.mp(self._and_chain(list(eqs)), ax)

    def _and_chain(self, idx):
        if len(idx) == 1:
            return idx[0]
        return self.and_i(idx[0], self._and_chain(idx[1:]))

    def closed(self, hyps, goal):
        """Discharge hypotheses; returns a propositional Proof ending in the goal."""
        return self.d.close([to_pf(h) for h in hyps], goal)

    def include(self, proof):
        return self.d.include(proof)

    def nind(self, side, a, var, ie, i0, i1):
        return self.d.ext(to_pf(a), ("nind" + side, self.d.f(ie), self.d.f(i0), self.d.f(i1), var))

    def finish(self, theorem, goal=None):
        goal = len(self.d) - 1 if goal is None else goal
        p = hilbert.expand(self.d.proof(goal))
        return to_t1proof(p, theorem)


def to_t1proof(p, theorem):
    """Convert an expanded propositional proof with ext lines into a T1Proof."""
    where = {}
    lines = []
    for f, j in p.lines:
        kind = j[0]
        if kind == "ax":
            if j[1] not in hilbert.T1_AXIOMS:
                raise CheckError(f"{j[1]} is not available in T1")
            t1j = ("prop", j[1], {k: from_pf(v) for k, v in j[2]})
        elif kind == "mp":
            t1j = ("mp", j[1], j[2])
        elif kind == "ext":
            pay = j[1]
            if pay[0] == "eqax":
                t1j = pay
            elif pay[0] == "subst":
                t1j = ("subst", where[pay[1]], pay[2], pay[3])
            elif pay[0] in ("nindl", "nindr"):
                t1j = (pay[0], where[pay[1]], where[pay[2]], where[pay[3]], pay[4])
            else:
                raise CheckError(f"unknown rule {pay[0]}")
        else:
            raise CheckError(f"cannot convert justification {kind}")
        where.setdefault(f, len(lines))
        lines.append((from_pf(f), t1j))
    return T1Proof(theorem, lines)


# ------------------------------------------------------------ corpus

def eps_cat_proof(defs=None):
    """ε·x = x by induction on notation (right version) on x."""
    b = T1Builder(defs)
    x = Var("x")
    A = Eq(_cat(EPS_T, x), x)
    # base: ε·ε = ε, read off axiom 3a after substituting ε for x
    a3 = b.eqax("3a")
    base = b.conj_part(b.subst(a3, "x", EPS_T), 0, 3)
    steps = []
    for k, c in enumerate((ZERO_T, ONE_T)):
        s = T1Builder(b.defs)
        h = s.hyp(A)
        e1 = s.conj_part(s.eqax("3a", x=EPS_T, y=x), k + 1, 3)
        e2 = s.cong("cat", h, s.refl(c))
        s.chain(e1, e2)
        steps.append(b.include(s.closed([A], len(s.d) - 1)))
    b.nind("r", A, "x", base, *steps)
    return b.finish(A)


def cat_assoc_proof(defs=None):
    """x·(y·z) = (x·y)·z by induction on notation (right version) on z."""
    b = T1Builder(defs)
    x, y, z = Var("x"), Var("y"), Var("z")
    A = Eq(_cat(x, _cat(y, z)), _cat(_cat(x, y), z))
    ye = b.conj_part(b.eqax("3a", x=y), 0, 3)
    l1 = b.cong("cat", b.refl(x), ye)
    l2 = b.sym(b.conj_part(b.eqax("3a", x=_cat(x, y)), 0, 3))
    base = b.chain(l1, l2)
    steps = []
    for k, c in enumerate((ZERO_T, ONE_T)):
        s = T1Builder(b.defs)
        h = s.hyp(A)
        s1 = s.cong("cat", s.refl(x), s.conj_part(s.eqax("3a", x=y, y=z), k + 1, 3))
        s2 = s.conj_part(s.eqax("3a", x=x, y=_cat(y, z)), k + 1, 3)
        s3 = s.cong("cat", h, s.refl(c))
        s4 = s.sym(s.conj_part(s.eqax("3a", x=_cat(x, y), y=z), k + 1, 3))
        s.chain(s1, s2, s3, s4)
        steps.append(b.include(s.closed([A], len(s.d) - 1)))
    b.nind("r", A, "z", base, *steps)
    return b.finish(A)


def tind_refl_proof(defs=None):
    """x·z = x·z by tree induction on x with parameter z (hl = hr = identity)."""
    defs = defs if defs is not None else load_stdlib()
    x, z = Var("x"), Var("z")
    A = Eq(_cat(x, z), _cat(x, z))
    idf = parse_symbol("idf", defs)
    lines = []
    for c in (EPS_T, ZERO_T, ONE_T):
        t = _cat(c, z)
        lines.append((Eq(t, t), ("eqax", "1a", {"x": t})))
    lines.append((A, ("eqax", "1a", {"x": _cat(x, z)})))
    halves = tind_premises(A, "x", "z", idf, idf)[3].a
    lines.append((Imp(A, Imp(halves, A)), ("prop", "P1", {"A": A, "B": halves})))
    lines.append((Imp(halves, A), ("mp", 3, 4)))
    lines.append((A, ("tind", 0, 1, 2, 5, "x", "z", idf, idf)))
    return T1Proof(A, lines)


CORPUS = {"eps_cat": eps_cat_proof, "cat_assoc": cat_assoc_proof, "tind_refl": tind_refl_proof}


# ------------------------------------------------------------ mutants

def _perturb(f):
    """Same shape, but the rightmost equation gets a 0 appended on its right."""
    if isinstance(f, Eq):
        return Eq(f.left, _cat(f.right, ZERO_T))
    if isinstance(f, Not):
        return Not(_perturb(f.a))
    return type(f)(f.a, _perturb(f.b))


def _replace(lines, k, f=None, j=None):
    out = list(lines)
    of, oj = out[k]
    out[k] = (of if f is None else f, oj if j is None else j)
    return out


def _last(lines, kinds):
    ks = [k for k, (_, j) in enumerate(lines) if j[0] in kinds]
    return ks[-1] if ks else None


def mutants(proof, seed=0, defs=None):
    """Broken variants of a correct proof as (label, T1Proof) pairs."""
    defs = defs if defs is not None else load_stdlib()
    rng = random.Random(seed)
    L = proof.lines
    n = len(L)
    out = []

    def add(label, lines, theorem=None):
        theorem = proof.theorem if theorem is None else theorem
        if lines != L or theorem != proof.theorem:
            out.append((label, T1Proof(theorem, lines)))

    ki = _last(L, ("nindl", "nindr"))
    if ki is not None:
        f, j = L[ki]
        other = "y" if j[4] != "y" else "x"
        flip = "nindl" if j[0] == "nindr" else "nindr"
        add("induction on the wrong variable", _replace(L, ki, j=j[:4] + (other,)))
        add("induction from the other side", _replace(L, ki, j=(flip,) + j[1:]))
        add("step premises swapped", _replace(L, ki, j=(j[0], j[1], j[3], j[2], j[4])))
        add("base premise points at a step", _replace(L, ki, j=(j[0], j[2], j[2], j[3], j[4])))
        step = j[3]
    ti = _last(L, ("tind",))
    if ti is not None:
        f, j = L[ti]
        _, ie, i0, i1, ist, x, z, hl, hr = j
        add("tree induction premises permuted", _replace(L, ti, j=("tind", i0, ie, i1, ist, x, z, hl, hr)))
        add("tree induction variables swapped", _replace(L, ti, j=("tind", ie, i0, i1, ist, z, x, hl, hr)))
        add("tree induction with x = z", _replace(L, ti, j=("tind", ie, i0, i1, ist, x, x, hl, hr)))
        add("binary parameter function", _replace(L, ti, j=("tind", ie, i0, i1, ist, x, z,
                                                             parse_symbol("cat", defs), hr)))
        add("rank 1 parameter function", _replace(L, ti, j=("tind", ie, i0, i1, ist, x, z, hl,
                                                             parse_symbol("succ", defs))))
        add("other parameter function", _replace(L, ti, j=("tind", ie, i0, i1, ist, x, z,
                                                            parse_symbol("lhalf", defs), hr)))
        ki, step = ti, ist
    f = L[ki][0]
    add("induction conclusion mutated", _replace(L, ki, f=_perturb(f)))
    sf = L[step][0]
    add("step conclusion mutated", _replace(L, step, f=Imp(sf.a, _perturb(sf.b))))
    add("theorem differs from last line", list(L), theorem=_perturb(proof.theorem))
    add("empty proof", [])

    mps = [k for k, (_, jj) in enumerate(L) if jj[0] == "mp"]
    k = mps[rng.randrange(len(mps))]
    jj = L[k][1]
    add("modus ponens premises swapped", _replace(L, k, j=("mp", jj[2], jj[1])))
    add("modus ponens cites a later line", _replace(L, k, j=("mp", jj[1], k)))

    eqs = [k for k, (_, jj) in enumerate(L) if jj[0] == "eqax"]
    k = eqs[rng.randrange(len(eqs))]
    jj = L[k][1]
    add("wrong axiom group", _replace(L, k, j=("eqax", "3b" if jj[1] != "3b" else "3a", jj[2])))
    inst = dict(jj[2])
    key = next((v for v in inst if v not in ("f", "g", "h", "hl", "hr")), None)
    if key is not None:
        inst[key] = ZERO_T if inst[key] != ZERO_T else ONE_T
    else:
        inst["x"] = ZERO_T
    add("wrong axiom instantiation", _replace(L, k, j=("eqax", jj[1], inst)))

    props = [k for k, (_, jj) in enumerate(L) if jj[0] == "prop"]
    k = props[rng.randrange(len(props))]
    jj = L[k][1]
    add("wrong propositional axiom", _replace(L, k, j=("prop", "P2" if jj[1] != "P2" else "P1", jj[2])))

    subs = [k for k, (_, jj) in enumerate(L) if jj[0] == "subst"]
    if subs:
        k = subs[0]
        jj = L[k][1]
        add("bad substitution term", _replace(L, k, j=("subst", jj[1], jj[2], ONE_T)))
        add("substitution for the wrong variable", _replace(L, k, j=("subst", jj[1], "y", jj[3])))

    k = rng.randrange(1, n - 1)
    add("line dropped", L[:k] + L[k + 1:])
    add("lines swapped", L[:k - 1] + [L[k], L[k - 1]] + L[k + 1:])
    kk = mps[-1]
    add("formula altered after modus ponens", _replace(L, kk, f=_perturb(L[kk][0])))
    jk = L[ki][1]
    add("induction replaced by modus ponens", _replace(L, ki, j=("mp", jk[1], jk[2])))
    return out
