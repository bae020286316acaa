"""Frege proofs of propositional translations of T1 axioms, rules and proofs.

Proofs are ``hilbert.Proof`` objects over P1..P15 plus lemma templates.
Everything is built over the standard bit atoms of a length vector; proofs
about other bit formulas are obtained by substituting for those atoms
(``subst_proof``).
"""

from .evaluator import load_stdlib
from .hilbert import Builder, Prover, ProofError, check_rich
from .lengths import tlen
from .propc import TRUE, FALSE, bit_atom, liff, translate, subst, _term_bits, _var_env
from .t1check import axiom_instance, SYMBOL_METAS
from .termlang import Var, App, free_vars, parse_term

__all__ = ["FregeSimError", "emit_axiom_proof", "subst_proof", "emit_nind", "emit_tind",
           "translate_t1_proof", "T1Translator", "check_rich", "std_atoms", "TindStats"]


class FregeSimError(ValueError):
    pass


def std_atoms(var, m):
    return [bit_atom(var, i, m) for i in range(1, m + 1)]


# ------------------------------------------------------------ substitution

def subst_proof(p, mapping):
    """Image of ``p`` under an atom → formula map; still a valid proof."""
    b = Builder()
    g = b.include(p, mapping or None)
    return b.proof(g)


# ------------------------------------------------------------ equality axioms

def _projections(b, h):
    """Lines H → leaf for every leaf of the ∧-tree of H (leaf: non-∧ node)."""
    out = {}
    stack = [(h, b.lemma("B1", A=h))]
    while stack:
        n, line = stack.pop()
        if n.op == "and":
            for part, ax in ((n.a, "P3"), (n.b, "P4")):
                j = b.use(b.lemma("SYL", A=h, B=n, C=part), line, b.ax(ax, A=n.a, B=n.b))
                stack.append((part, j))
        else:
            out.setdefault(n, line)
    return out


def _assemble(b, h, g, leaf):
    """H → G from per-leaf lines H → g, following the ∧-tree of G."""
    if g.op == "and":
        return b.use(b.lemma("AND_I", H=h, A=g.a, B=g.b),
                     _assemble(b, h, g.a, leaf), _assemble(b, h, g.b, leaf))
    if g is TRUE:
        return b.mp(b.ax("P14"), b.ax("P1", A=TRUE, B=h))
    return leaf(g)


def _degenerate(b, h, g, proj):
    """H contains ⊥ as a conjunct: H → ⊥ → G."""
    return b.use(b.lemma("SYL", A=h, B=FALSE, C=g), proj[FALSE], b.lemma("BOT_E", A=g))


def _eq_group_proof(gid, a, f, lv):
    b = Builder()
    h, g = f.a, f.b
    proj = _projections(b, h)
    if FALSE in proj:
        return b.proof(_degenerate(b, h, g, proj))
    if gid == "1b":
        def leaf(n):
            return b.mp(proj[liff(n.b, n.a)], b.lemma("H_SYM", H=h, A=n.b, B=n.a))
    elif gid == "1c":
        env = _var_env(a, lv)
        xb = _term_bits(a.a.a.left, env)
        yb = _term_bits(a.a.a.right, env)
        zb = _term_bits(a.b.right, env)
        pos = {liff(p, q): k for k, (p, q) in enumerate(zip(xb, zb))}

        def leaf(n):
            k = pos[n]
            return b.use(b.lemma("H_TRANS", H=h, A=xb[k], B=yb[k], C=zb[k]),
                         proj[liff(xb[k], yb[k])], proj[liff(yb[k], zb[k])])
    else:
        atom_lines = {n.a: line for n, line in proj.items() if n.op == "iff" and n.a.op == "atom"}
        pr = Prover(b)
        sigma, memo = {}, {}

        def leaf(n):
            line = pr.cong(n.a, h, atom_lines, sigma, memo)
            if b.f(line).b is not n:
                raise FregeSimError("congruence produced an unexpected formula")
            return line
    return b.proof(_assemble(b, h, g, leaf))


def emit_axiom_proof(gid, inst=None, lv=None, defs=None):
    """Frege proof of the translation of an axiom instance under ``lv``."""
    defs = defs if defs is not None else load_stdlib()
    inst = dict(inst or {})
    lv = dict(lv or {})
    full = axiom_instance(gid, inst, defs)
    for v in free_vars(full) - set(lv):
        lv[v] = 0
    syms = {k: v for k, v in inst.items() if k in SYMBOL_METAS.get(gid, ())}
    terms = {k: v for k, v in inst.items() if k not in syms}
    base = axiom_instance(gid, syms, defs)
    terms = {k: (parse_term(v, defs) if isinstance(v, str) else v) for k, v in terms.items()}
    slv = {v: (tlen(terms[v], lv) if v in terms else lv.get(v, 0)) for v in free_vars(base)}
    p = _emit_std(gid, base, slv)
    if terms:
        env = _var_env(full, lv)
        mapping = {}
        for v, t in terms.items():
            if v not in slv:
                continue
            for atom, bitf in zip(std_atoms(v, slv[v]), _term_bits(t, env)):
                if atom is not bitf:
                    mapping[atom] = bitf
        p = subst_proof(p, mapping)
    want = translate(full, lv)
    if p.goal is not want:
        raise FregeSimError(f"axiom {gid}: emitted goal differs from the translation")
    return p


def _emit_std(gid, a, lv):
    f = translate(a, lv)
    if gid in ("1b", "1c", "1d"):
        return _eq_group_proof(gid, a, f, lv)
    pr = Prover()
    try:
        return pr.b.proof(pr.prove(f))
    except ProofError as e:
        raise FregeSimError(f"axiom {gid} at lengths {lv}: no proof schedule ({e})") from None


# ------------------------------------------------------------ NIND

def _case_step(b, s, p, g0, g1):
    """From lines proving G0 = S[p:=⊥] and G1 = S[p:=⊤] derive S."""
    pr = Prover(b)
    f0, f1 = b.f(g0), b.f(g1)
    c = []
    for val, gf in ((FALSE, f0), (TRUE, f1)):
        h = liff(p, val)
        line = pr.cong(s, h, {p: b.lemma("B1", A=h)}, {}, {})
        if b.f(line).b.b is not gf:
            raise FregeSimError("case formula does not match the premise")
        c.append(line)
    t = b.lemma("L_split", G0=f0, G1=f1, S=s, P=p)
    return b.use(t, g0, g1, c[0], c[1])


def _nind_std(a, var, side, m, lv, base, step):
    """Core NIND emission over the standard atoms of ``var`` at length ``m``.

    ``base(lv)`` and ``step(i, lv)`` return Proofs over standard atoms of the
    translated premises A[ε] and A → A[x·i] (right) or A → A[i·x] (left).
    """
    xs = std_atoms(var, m)
    b = Builder()

    def rename(j):
        own = std_atoms(var, j)
        sel = xs[:j] if side == "r" else xs[m - j:]
        return {p: q for p, q in zip(own, sel) if p is not q}

    def lv_at(j):
        out = dict(lv)
        out[var] = j
        return out

    def s_at(j):
        return subst(translate(a, lv_at(j)), rename(j))

    pe = base(lv_at(0))
    cur = b.include(pe)
    if b.f(cur) is not s_at(0):
        raise FregeSimError("base premise does not prove A[ε]")
    for j in range(m):
        s_next = s_at(j + 1)
        mp_ = rename(j)
        p = xs[j] if side == "r" else xs[m - j - 1]
        gs = []
        for i, c in enumerate((FALSE, TRUE)):
            pi = step(i, lv_at(j))
            k = b.include(pi, mp_ or None)
            fk = b.f(k)
            if fk.op != "imp" or fk.a is not b.f(cur):
                raise FregeSimError(f"step premise {i} at length {j} has the wrong antecedent")
            if fk.b is not subst(s_next, {p: c}):
                raise FregeSimError(f"step premise {i} at length {j} has the wrong consequent")
            gs.append(b.mp(cur, k))
        cur = _case_step(b, s_next, p, gs[0], gs[1])
    return b, cur


def emit_nind(pe, p0, p1, a, var, m, lv=None, side="r", defs=None):
    """Frege proof of the translation of A (``var`` of length ``m``) by NIND.

    ``pe`` proves the translation of A[ε]; ``p0``/``p1`` map a length vector
    (``var`` set to j) to a proof of the translated step premise.  Each may
    also be a callable returning such a proof, or a plain Proof for fixed j.
    """
    lv = dict(lv or {})
    for v in free_vars(a) - {var} - set(lv):
        lv[v] = 0

    def call(p, *args):
        return p(*args) if callable(p) else p

    b, cur = _nind_std(a, var, side, m, lv, lambda L: call(pe, L),
                       lambda i, L: call((p0, p1)[i], L))
    if m == 0:
        # length-0 bridge: x = ε translates to the empty conjunction ⊤
        b.ax("P14")
        return b.proof(cur)
    return b.proof(cur)


# ------------------------------------------------------------ TIND

def _tind_node(a, x, z, hl, hr, m, p, lv, prem, memo):
    """(proof, tree nodes, depth below) for A at |x| = m, |z| = p."""
    key = (m, p)
    if key in memo:
        return memo[key]
    L = dict(lv)
    L[x], L[z] = m, p
    nodes, depth = 1, 0
    if m == 0:
        out = prem("e", L)
    elif m == 1:
        b = Builder()
        g0 = b.include(prem("0", L))
        g1 = b.include(prem("1", L))
        out = b.proof(_case_step(b, translate(a, L), bit_atom(x, 1, 1), g0, g1))
    else:
        b = Builder()
        zs = std_atoms(z, p)
        xs = std_atoms(x, m)
        kids = []
        for half, hsym, xsl in ((m // 2, hl, xs[:m // 2]), (m - m // 2, hr, xs[m // 2:])):
            zbits = _term_bits(App(hsym, (Var(z),)), {z: zs})
            child, n, d = _tind_node(a, x, z, hl, hr, half, len(zbits), lv, prem, memo)
            nodes += n
            depth = max(depth, d + 1)
            mp_ = {q: r for q, r in zip(std_atoms(x, half), xsl) if q is not r}
            mp_.update({q: r for q, r in zip(std_atoms(z, len(zbits)), zbits) if q is not r})
            kids.append(b.include(child, mp_ or None))
        conj = b.use(b.ax("P5", A=b.f(kids[0]), B=b.f(kids[1])), kids[0], kids[1])
        st = b.include(prem("step", L))
        if b.f(st).a is not b.f(conj):
            raise FregeSimError(f"TIND step premise at m={m} does not match the halves")
        out = b.proof(b.mp(conj, st))
    memo[key] = (out, nodes, depth)
    return memo[key]


class TindStats:
    """Shape of the halving tree: derivation count (with repeats) and depth."""

    def __init__(self, nodes=0, depth=0):
        self.nodes = nodes
        self.depth = depth


def emit_tind(prem, a, x, z, hl, hr, m, p, lv=None, stats=None):
    """Frege proof of the translation of A[x,z] (|x|=m, |z|=p) by tree induction.

    ``prem(kind, lv)`` with kind in "e", "0", "1", "step" returns a proof of
    the corresponding translated premise; ``lv`` there sets x and z.
    """
    lv = dict(lv or {})
    for v in free_vars(a) - {x, z} - set(lv):
        lv[v] = 0
    out, nodes, depth = _tind_node(a, x, z, hl, hr, m, p, lv, prem, {})
    if stats is not None:
        stats.nodes, stats.depth = nodes, depth
    L = dict(lv)
    L[x], L[z] = m, p
    if out.goal is not translate(a, L):
        raise FregeSimError("TIND proof does not end in the translation of A")
    return out


# ------------------------------------------------------------ whole T1 proofs

class T1Translator:
    """Frege proofs of the translations of the lines of one T1 proof.

    Variables not given a length get length 0.  Results are memoized on
    (line, length vector).
    """

    def __init__(self, proof, defs=None):
        if not proof.lines:
            raise FregeSimError("empty proof")
        self.proof = proof
        self.defs = defs if defs is not None else load_stdlib()
        self.memo = {}

    def line(self, k, lv=None):
        f = self.proof.lines[k][0]
        L = {v: (lv or {}).get(v, 0) for v in free_vars(f)}
        key = (k, tuple(sorted(L.items())))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self._line(k, L)
        if out.goal is not translate(f, L):
            raise FregeSimError(f"line {k + 1}: emitted proof ends in the wrong formula")
        self.memo[key] = out
        return out

    def theorem(self, lv=None):
        return self.line(len(self.proof.lines) - 1, lv)

    def _line(self, k, L):
        f, j = self.proof.lines[k]
        kind = j[0]
        tr = self.line
        if kind == "prop":
            b = Builder()
            inst = {mname: translate(v, _cover(v, L)) for mname, v in j[2].items()}
            return b.proof(b.ax(j[1], **inst))
        if kind == "eqax":
            return emit_axiom_proof(j[1], j[2], L, self.defs)
        if kind == "mp":
            b = Builder()
            ia = b.include(tr(j[1], L))
            ib = b.include(tr(j[2], L))
            return b.proof(b.mp(ia, ib))
        if kind == "subst":
            src, var, t = j[1], j[2], j[3]
            Lt = _cover(t, L)
            Ls = dict(L)
            Ls[var] = tlen(t, Lt)
            p = tr(src, Ls)
            env = _var_env(t, Lt)
            mapping = {q: r for q, r in zip(std_atoms(var, Ls[var]), _term_bits(t, env))
                       if q is not r}
            return subst_proof(p, mapping) if mapping else p
        if kind in ("nindl", "nindr"):
            var = j[4]
            rest = {v: n for v, n in L.items() if v != var}
            b, cur = _nind_std(f, var, kind[-1], L.get(var, 0), rest,
                               lambda LL: tr(j[1], LL),
                               lambda i, LL: tr(j[2 + i], LL))
            return b.proof(cur)
        if kind == "tind":
            _, ie, i0, i1, ist, x, z, hl, hr = j
            idx = {"e": ie, "0": i0, "1": i1, "step": ist}
            rest = {v: n for v, n in L.items() if v not in (x, z)}
            return emit_tind(lambda kd, LL: tr(idx[kd], LL), f, x, z, hl, hr,
                             L.get(x, 0), L.get(z, 0), rest)
        raise FregeSimError(f"line {k + 1}: cannot translate justification {kind}")


def translate_t1_proof(proof, lv=None, defs=None):
    """Frege proof of the translation of the theorem of a T1 proof."""
    return T1Translator(proof, defs).theorem(lv)


def _cover(t, L):
    out = dict(L)
    for v in free_vars(t):
        out.setdefault(v, 0)
    return out
