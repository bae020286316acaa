"""Batch invariant suites shared by the CLI ``verify`` command and the tests.

Each suite returns a Report.  Randomness comes from one ``random.Random``
seeded by the caller, so a report is byte-identical for a given seed.
"""

import itertools
import random
import time
from dataclasses import dataclass, field

from . import bsvp, fregemin
from .bitstr import all_strings, int_of, strings_of_length
from .evaluator import compile_symbol, load_stdlib, php_exhaustive, oracle
from .lengths import tlen
from .propc import _columns, atoms, bit_atom, taut_check, translate
from .termlang import App, Var, arity, free_vars, parse_formula
from .t1check import AXIOM_GROUPS, axiom_instance, compile_formula

__all__ = ["Report", "SUITES", "run_suite", "axioms", "lengths", "translation",
           "stdlib_oracles", "php", "frege_sim", "encoding", "soundness", "bsvp_suite",
           "triplets", "AXIOM_INSTANCES", "EQUATIONS", "NIND_C", "exhaustive_len"]


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def fail(self, msg):
        self.failures.append(msg)

    def text(self, limit=10):
        head = (f"suite {self.name}: {self.checked} checks, {len(self.failures)} failures"
                f" -> {'pass' if self.ok else 'FAIL'}")
        lines = [head] + [f"  {n}" for n in self.notes]
        lines += [f"  failure: {f}" for f in self.failures[:limit]]
        if len(self.failures) > limit:
            lines.append(f"  ... {len(self.failures) - limit} more")
        return "\n".join(lines)


# ------------------------------------------------------------ axiom groups 2-12

# symbol instances for the schematic groups; the rest take no symbols
AXIOM_INSTANCES = {
    "10": [{"f": n} for n in ("lp0", "rev", "succ", "add", "eqn", "CScar", "adj")],
    "11a": [{"h": n} for n in ("lbit", "rbit", "notb", "andb", "xorb", "condb")],
    "11b": [{"h": n} for n in ("lbit", "rbit", "notb", "andb", "xorb", "condb")],
    "12": [
        {"g": "(lam (x z) (allone x))",
         "h": "(lam (x z vl vr) (condel x (cat vl zero) (cat vl one)))",
         "hl": "idf", "hr": "idf"},
        {"g": "(lam (y x) (condzl y eps (allone x)))", "h": "(lam (y x vl vr) vr)",
         "hl": "lhalf", "hr": "lhalf"},
        {"g": "(lam (x z y) (condzl x eps y))", "h": "(lam (x z y vl vr) (cat vl vr))",
         "hl": "idf", "hr": "idf"},
        {"g": "(lam (x z) (cat (allzero x) x))",
         "h": "(lam (x z vl vr) (cat (CScar (lhalf vl) (rhalf vl) (lhalf vr) (rhalf vr))"
              " (CSadd (lhalf vl) (rhalf vl) (lhalf vr) (rhalf vr))))",
         "hl": "idf", "hr": "idf"},
        {"g": "(lam (x z) z)", "h": "(lam (x z vl vr) (cat vr vl))",
         "hl": "rdel", "hr": "(lam (z) (cat z one))"},
    ],
}


def exhaustive_len(nvars, full=6):
    """Largest length for exhaustive enumeration over ``nvars`` variables.

    The bound drops below ``full`` only when the number of environments,
    (2^(L+1) − 1)^nvars, would pass 2.1 million; three variables still reach
    length 6 and four reach length 4.
    """
    L = full
    while L > 1 and ((1 << (L + 1)) - 1) ** nvars > 2_100_000:
        L -= 1
    return L


def _axiom_formulas(defs):
    out = []
    for gid in AXIOM_GROUPS:
        if gid.startswith("1"):
            continue
        for inst in AXIOM_INSTANCES.get(gid, [{}]):
            label = gid + ("" if not inst else " " + ",".join(
                f"{k}={v if len(v) < 12 else v[:10] + '..'}" for k, v in inst.items()))
            out.append((gid, label, axiom_instance(gid, inst, defs)))
    return out


def axioms(rng, maxlen=6, nrandom=10_000, randlen=64, defs=None):
    """Groups 2-12 hold under evaluation: exhaustive small values plus random ones."""
    defs = defs or load_stdlib()
    rep = Report("axioms")
    forms = _axiom_formulas(defs)
    per_group = {}
    for gid, _, _ in forms:
        per_group[gid] = per_group.get(gid, 0) + 1
    for gid, label, f in forms:
        names, fn = compile_formula(f)
        L = exhaustive_len(len(names), maxlen)
        pool = list(all_strings(L))
        for env in itertools.product(pool, repeat=len(names)):
            rep.checked += 1
            if not fn(env):
                rep.fail(f"{label}: {dict(zip(names, env))}")
                break
        n_rand = nrandom // per_group[gid]
        for _ in range(n_rand):
            env = tuple(_rand_bits(rng, rng.randint(0, randlen)) for _ in names)
            rep.checked += 1
            if not fn(env):
                rep.fail(f"{label}: {dict(zip(names, env))}")
                break
        if len(names) > 2:
            rep.notes.append(f"{label}: {len(names)} variables, exhaustive to length {L}")
    rep.notes.insert(0, f"{len(forms)} instances of groups 2-12; {nrandom} random "
                        f"environments per group up to length {randlen}")
    return rep


def _rand_bits(rng, n):
    return format(rng.getrandbits(n), "b").zfill(n) if n else ""


# ------------------------------------------------------------ length determinism

def lengths(rng, maxlen=5, defs=None, names=None):
    """|eval(f(x1..xk))| = tlen for every stdlib symbol f.

    Length vectors up to ``maxlen``: all of them when there are at most 1296,
    otherwise 1296 seeded ones.  Values per vector: all of them when there are
    at most 64, otherwise all-zero, all-one and 6 seeded strings.
    """
    defs = defs or load_stdlib()
    rep = Report("lengths")
    for name in names or defs.names():
        s = defs[name]
        k = arity(s)
        fn = compile_symbol(s)
        xs = [f"x{i}" for i in range(1, k + 1)]
        term = App(s, tuple(Var(x) for x in xs))
        if (maxlen + 1) ** k <= 1296:
            vectors = itertools.product(range(maxlen + 1), repeat=k)
        else:
            vectors = [tuple(rng.randint(0, maxlen) for _ in range(k)) for _ in range(1296)]
        for lv in vectors:
            want = tlen(term, dict(zip(xs, lv)))
            if sum(lv) <= 6:
                envs = itertools.product(*[strings_of_length(m) for m in lv])
            else:
                envs = [tuple("0" * m for m in lv), tuple("1" * m for m in lv)]
                envs += [tuple(_rand_bits(rng, m) for m in lv) for _ in range(6)]
            for env in envs:
                rep.checked += 1
                got = len(fn(*env))
                if got != want:
                    rep.fail(f"{name}{env}: |eval| = {got}, tlen = {want}")
                    break
            else:
                continue
            break
    return rep


# ------------------------------------------------------------ translation soundness

EQUATIONS = [
    "(= (cat eps x) x)",
    "(= (cat x eps) x)",
    "(= (succ (cat x zero)) (cat zero (cat x one)))",
    "(= (cat (cat x y) z) (cat x (cat y z)))",
    "(= (cat (lhalf x) (rhalf x)) x)",
    "(= (lchop y x) (rchop x y))",
    "(= (allzero x) (allzero (rev x)))",
    "(= (rev (rev x)) x)",
    "(= (add x y) (add y x))",
    "(= (add x eps) (cat zero x))",
    "(= (ltn x y) (ltn y x))",
    "(= (eqn x y) (eqn y x))",
    "(= (andb x y) (andb y x))",
    "(= (xor_2 x y) (xor_2 y x))",
    "(= (cond x y z z) (cond x z z z))",
    "(= (and_2 x (bnot x)) (allzero x))",
    "(= (add (cat (CScar_3 x y z) zero) (CSadd_3 x y z)) (add (add x y) (cat zero z)))",
    "(= (add (CScar x y z w) (CSadd x y z w)) (add (add x y) (add z w)))",
    "(= (sum x) (sum (rev x)))",
    "(= x (allzero x))",
]


def _truth_table_eval(lhs, rhs, names, lv):
    """Bit-packed table of eval(lhs) == eval(rhs) over all values at lengths lv."""
    total = sum(lv.values())
    out = 0
    # atom order matches _columns: variable by variable, bit 1 first
    for k in range(1 << total):
        env = []
        pos = 0
        for n in names:
            m = lv[n]
            env.append("".join("1" if (k >> (pos + i)) & 1 else "0" for i in range(m)))
            pos += m
        if lhs(tuple(env)) == rhs(tuple(env)):
            out |= 1 << k
    return out


def translation(rng, maxlen=5, defs=None, equations=None, taut_m=5):
    """eval_prop(translate(t = u)) agrees with evaluator equality, bit-parallel."""
    from .evaluator import _compile_term
    defs = defs or load_stdlib()
    rep = Report("translation")
    for text in equations or EQUATIONS:
        eq = parse_formula(text, defs)
        names = sorted(free_vars(eq))
        index = {n: i for i, n in enumerate(names)}
        lhs, rhs = _compile_term(eq.left, index), _compile_term(eq.right, index)
        L = min(maxlen, exhaustive_translation_len(len(names), maxlen))
        if L < maxlen:
            rep.notes.append(f"{text}: {len(names)} variables, exhaustive to length {L}")
        for lv_t in itertools.product(range(L + 1), repeat=len(names)):
            lv = dict(zip(names, lv_t))
            f = translate(eq, lv, defs)
            order = [bit_atom(n, i, lv[n]) for n in names for i in range(1, lv[n] + 1)]
            extra = set(atoms(f)) - set(order)
            if extra:
                rep.fail(f"{text} at {lv}: stray atoms {sorted(map(str, extra))[:3]}")
                continue
            got, full = _columns(f, order, (), len(order))
            want = _truth_table_eval(lhs, rhs, names, lv)
            rep.checked += 1 << len(order)
            if got != want:
                miss = (got ^ want) & full
                k = (miss & -miss).bit_length() - 1
                rep.fail(f"{text} at {lv}: assignment #{k} disagrees")
    for m in range(taut_m + 1):
        rep.checked += 1
        if not taut_check(translate("(= (cat eps x) x)", {"x": m}, defs)):
            rep.fail(f"translation of eps.x = x is not a tautology at m={m}")
    rep.notes.insert(0, f"{len(equations or EQUATIONS)} equations; eps.x = x tautology for m <= {taut_m}")
    return rep


def exhaustive_translation_len(nvars, full=5):
    """Length bound keeping the joint truth table at most 2^15 rows."""
    L = full
    while L > 1 and nvars * L > 15:
        L -= 1
    return L


# ------------------------------------------------------------ numeric oracles

def stdlib_oracles(rng, maxlen=8, cs_len=6, defs=None):
    """Numeric stdlib functions against integer oracles, exhaustive to ``maxlen``."""
    defs = defs or load_stdlib()
    rep = Report("stdlib-oracles")
    f = {n: compile_symbol(defs[n]) for n in
         ("add", "ltn", "eqn", "succ", "sum", "blen", "numlen", "rev", "pred", "pow",
          "CScar", "CSadd")}
    truth = lambda s: oracle("truth", s)  # noqa: E731
    pool = list(all_strings(maxlen))
    unary = [
        ("succ", lambda x: int_of(f["succ"](x)) == oracle("succ", x)),
        ("sum", lambda x: int_of(f["sum"](x)) == oracle("popcount", x)),
        ("|.|", lambda x: int_of(f["blen"](x)) == oracle("bin_len", x)),
        ("|.|num", lambda x: int_of(f["numlen"](x)) == oracle("num_len", x)),
        ("rev", lambda x: f["rev"](x) == oracle("reverse", x)),
        ("pred", lambda x: int_of(f["pred"](x)) == oracle("pred", x)),
        ("pow", lambda x: len(f["pow"](x)) == oracle("next_pow2_len", x)),
        ("sum bound", lambda x: int_of(f["sum"](x)) <= len(x)),
    ]
    for name, ok in unary:
        for x in pool:
            rep.checked += 1
            if not ok(x):
                rep.fail(f"{name}({x!r})")
                break
    binary = [
        ("+n", lambda x, y: int_of(f["add"](x, y)) == oracle("add", x, y)),
        ("<n", lambda x, y: truth(f["ltn"](x, y)) == oracle("lt", x, y)),
        ("=n", lambda x, y: truth(f["eqn"](x, y)) == oracle("eq", x, y)),
    ]
    for name, ok in binary:
        for x in pool:
            for y in pool:
                rep.checked += 1
                if not ok(x, y):
                    rep.fail(f"{name}({x!r}, {y!r})")
                    break
    # carry-save identity: every length vector up to cs_len, seeded values per vector
    for lv in itertools.product(range(cs_len + 1), repeat=4):
        for _ in range(2):
            xs = [_rand_bits(rng, m) for m in lv]
            rep.checked += 1
            lhs = int_of(f["CScar"](*xs)) + int_of(f["CSadd"](*xs))
            if lhs != sum(int_of(x) for x in xs):
                rep.fail(f"carry-save {xs}")
    rep.notes.append(f"exhaustive to length {maxlen}; carry-save over all lengths <= {cs_len}")
    return rep


def php(rng=None, defs=None, nmax=3):
    rep = Report("php")
    for n in range(1, nmax + 1):
        rep.checked += 1 << (n * (n + 1))
        if not php_exhaustive(n, defs):
            rep.fail(f"php fails for some {n} x {n + 1} matrix")
    rep.notes.append(f"n = 1..{nmax}: {sum(1 << (n * (n + 1)) for n in range(1, nmax + 1))} matrices")
    return rep


# ------------------------------------------------------------ Frege simulation

NIND_C = 2.0   # measured max of lines / (m * largest premise) over m = 1..12, reached at m = 1


def nind_sizes(mmax=12, defs=None):
    """[(m, lines, premise size)] for the NIND step of the eps.x = x proof."""
    from .fregesim import T1Translator, emit_nind
    from .hilbert import check_rich
    from .t1build import eps_cat_proof
    proof = eps_cat_proof(defs)
    tr = T1Translator(proof, defs)
    k = max(i for i, (_, j) in enumerate(proof.lines) if j[0] in ("nindl", "nindr"))
    f, j = proof.lines[k]
    ie, i0, i1, var = j[1], j[2], j[3], j[4]
    out = []
    for m in range(1, mmax + 1):
        p = emit_nind(lambda L: tr.line(ie, L), lambda L: tr.line(i0, L),
                      lambda L: tr.line(i1, L), f, var, m, {}, j[0][-1])
        ok = check_rich(p) is None and p.goal is translate(f, {var: m})
        # premise size: the largest premise proof the construction consumes
        base = max([len(tr.line(ie, {var: 0}))] + [len(tr.line(i, {var: q}))
                                                   for i in (i0, i1) for q in range(m)])
        out.append((m, len(p), base, ok))
    return out


def frege_sim(rng=None, lengths_=(0, 1, 3), defs=None, mmax=12):
    from .fregesim import TindStats, emit_axiom_proof
    from .hilbert import check_rich
    defs = defs or load_stdlib()
    rep = Report("frege-sim")
    inst = {"1d": {"f": "cat"}, "10": {"f": "lp0"}, "11a": {"h": "lbit"},
            "11b": {"h": "rbit"}, "12": AXIOM_INSTANCES["12"][0]}
    for gid in AXIOM_GROUPS:
        syms = inst.get(gid, {})
        f = axiom_instance(gid, syms, defs)
        names = sorted(free_vars(f))
        for m in lengths_:
            lv = {n: m for n in names}
            rep.checked += 1
            try:
                p = emit_axiom_proof(gid, syms, lv, defs)
            except Exception as e:   # report, do not abort the suite
                rep.fail(f"axiom {gid} at length {m}: {e}")
                continue
            if check_rich(p) is not None:
                rep.fail(f"axiom {gid} at length {m}: {check_rich(p)}")
            elif len(atoms(p.goal)) <= 24 and not taut_check(p.goal):
                rep.fail(f"axiom {gid} at length {m}: goal is not a tautology")
    worst = 0.0
    for m, n, base, ok in nind_sizes(mmax, defs):
        rep.checked += 1
        worst = max(worst, n / (m * base))
        if not ok:
            rep.fail(f"NIND proof at m={m} rejected")
        if n > NIND_C * m * base:
            rep.fail(f"NIND proof at m={m}: {n} lines exceeds {NIND_C}*m*{base}")
    rep.notes.append(f"NIND eps.x = x, m = 1..{mmax}: max lines/(m*base) = {worst:.3f} <= C = {NIND_C}")
    stats = TindStats()
    _tind_refl(3, stats, defs)
    rep.checked += 1
    if (stats.nodes, stats.depth) != (5, 2):
        rep.fail(f"TIND tree at m=3 has {stats.nodes} nodes, depth {stats.depth}; expected 5, 2")
    rep.notes.append(f"TIND m=3 halving tree: {stats.nodes} nodes, depth {stats.depth}")
    return rep


def _tind_refl(m, stats, defs=None):
    """Frege proof of x·z = x·z via the tind line of the tind_refl corpus proof."""
    from .fregesim import T1Translator, emit_tind
    from .t1build import tind_refl_proof
    proof = tind_refl_proof(defs)
    tr = T1Translator(proof, defs)
    k = max(i for i, (_, j) in enumerate(proof.lines) if j[0] == "tind")
    _, ie, i0, i1, ist, x, z, hl, hr = proof.lines[k][1]
    idx = {"e": ie, "0": i0, "1": i1, "step": ist}
    return emit_tind(lambda kd, L: tr.line(idx[kd], L), proof.lines[k][0], x, z, hl, hr,
                     m, 1, {}, stats)


# ------------------------------------------------------------ encoding and soundness

GOLDEN = ("10000000 00000010 11000000 10000001 10000010 00001010 11000010 "
          "00100000 01000010 11000001 00000010 01000001 01000000")


def golden_formula():
    F = fregemin
    return F.Imp(F.Var(2), F.Imp(F.Imp(F.Var(10), F.BOT), F.Var(2)))


def encoding(rng, nrandom=2000, ncorrupt=50):
    F = fregemin
    rep = Report("encoding")
    x = F.encode(golden_formula(), 3)
    rep.checked += 2
    if x != GOLDEN.replace(" ", ""):
        rep.fail("golden string mismatch")
    if F.decode(x, 3) != golden_formula():
        rep.fail("decode does not invert the golden string")
    seen = {}
    for _ in range(nrandom):
        a = F.random_formula(rng, rng.randint(1, 6), rng.randrange(7))
        ell = F.min_ell(a)
        e = F.encode(a, ell)
        rep.checked += 1
        if F.decode(e, ell) != a or not F.formula_valid(e, ell):
            rep.fail(f"round trip or validity fails for {F.show(a)}")
        if seen.setdefault((e, ell), a) != a:
            rep.fail(f"encoding collision at l={ell}")
    corrupt = 0
    while corrupt < ncorrupt:
        a = F.random_formula(rng, 3, rng.randrange(1, 5))
        ell = F.min_ell(a)
        bl = F.blocks(F.encode(a, ell), ell)
        i = rng.randrange(len(bl))
        kind = rng.randrange(3)
        if kind == 0:
            bl[i] = bl[i][:2] + format((int(bl[i][2:], 2) + 1) % (1 << (len(bl[i]) - 2)),
                                       "b").zfill(len(bl[i]) - 2)
        elif kind == 1:
            del bl[i]
        else:
            j = rng.randrange(len(bl))
            bl[i], bl[j] = bl[j], bl[i]
        y = "".join(bl)
        if F.parse_valid(y, ell):   # the change produced another formula; skip
            continue
        corrupt += 1
        rep.checked += 1
        if F.formula_valid(y, ell):
            rep.fail(f"corruption of {F.show(a)} accepted")
    rep.notes.append(f"golden match; {nrandom} round trips; {ncorrupt} corruptions rejected")
    return rep


def soundness(rng, nproofs=200, nvars=3, max_lines=8, defs=None):
    F = fregemin
    defs = defs or load_stdlib()
    rep = Report("soundness")
    vs = ["".join(b) for b in itertools.product("01", repeat=nvars)]
    probes = 0
    for _ in range(nproofs):
        p = F.random_proof(rng, nvars, max_lines)
        ell = max(F.min_ell(a) for a, _ in p.lines)
        k = len(p.lines)
        if F.check_min(p) is not None:
            rep.fail(f"generator produced an invalid proof: {F.check_min(p)}")
            continue
        x, y = F.encode_proof(p, ell, defs)
        out = F.F(x, y, ell, k, defs)
        rep.checked += 1
        if out != F.encode(p.theorem, ell):
            rep.fail(f"F does not return the theorem {F.show(p.theorem)}")
        for v in vs:
            rep.checked += 1
            if F.TRUE(v, out, ell) != 1:
                rep.fail(f"TRUE({v}, F) = 0 for {F.show(p.theorem)}")
        top = F.encode(F.TOP, ell)
        for y2 in F.mutate_bits(y):
            probes += 1
            rep.checked += 1
            g = F.F(x, y2, ell, k, defs)
            if g == top:
                continue
            q = F.decode_proof(x, y2, ell, k, defs)
            if q is None or F.check_min(q) is not None or F.encode(q.theorem, ell) != g:
                rep.fail(f"mutated proof yields {g} without being valid")
    rep.notes.append(f"{nproofs} proofs, {len(vs)} assignments each, {probes} corrupted-y probes")
    return rep


# ------------------------------------------------------------ game and triplets

def bsvp_suite(rng, nrandom=500, leaves=31, labelings=128, big_shapes=40):
    rep = Report("bsvp")
    games = [("sample", s) for s in bsvp.shapes_sample(15, labelings, big_shapes, rng)]
    games += [("random", bsvp.random_sentence(leaves, rng)) for _ in range(nrandom)]
    for tag, s in games:
        padded, d, _ = bsvp.pad_sentence(s)
        try:
            res = bsvp.play_game(padded)
        except bsvp.BSVPError as e:
            rep.fail(f"{tag} {bsvp.sentence_text(s)}: {e}")
            continue
        rep.checked += 1
        if (res.winner == bsvp.PEBBLER) != bsvp.naive_eval(s):
            rep.fail(f"{tag} {bsvp.sentence_text(s)}: winner {res.winner}")
        if res.audit_failures:
            rep.fail(f"{tag} {bsvp.sentence_text(s)}: {res.audit_failures[0]}")
        if res.rounds > d:
            rep.fail(f"{tag} {bsvp.sentence_text(s)}: {res.rounds} rounds > d = {d}")
    rep.notes.append(f"{len(games) - nrandom} sampled sentences up to 15 leaves, "
                     f"{nrandom} random {leaves}-leaf sentences")
    return rep


def triplets(rng=None):
    rep = Report("triplets")
    T = bsvp.all_triplets()
    for t, t1, t2 in itertools.product(T, repeat=3):
        rep.checked += 1
        if not t.unscarred:
            continue
        if bsvp.triplet_imp(t, bsvp.triplet_comp(t1, t2)) != bsvp.triplet_comp(bsvp.triplet_imp(t, t1), t2):
            rep.fail(f"t ->> (t1 o t2) at {t}, {t1}, {t2}")
        if bsvp.triplet_imp(bsvp.triplet_comp(t1, t2), t) != bsvp.triplet_comp(bsvp.triplet_imp(t1, t), t2):
            rep.fail(f"(t1 o t2) ->> t at {t}, {t1}, {t2}")
    rep.notes.append("both composition identities over all 512 triplet combinations")
    return rep


SUITES = {
    "axioms": axioms,
    "lengths": lengths,
    "translation": translation,
    "stdlib-oracles": stdlib_oracles,
    "php": php,
    "frege-sim": frege_sim,
    "encoding": encoding,
    "soundness": soundness,
    "bsvp": bsvp_suite,
    "triplets": triplets,
}


def run_suite(name, seed=0, **bounds):
    if name not in SUITES:
        raise KeyError(name)
    rng = random.Random(seed)
    t0 = time.perf_counter()
    rep = SUITES[name](rng, **bounds)
    rep.seconds = time.perf_counter() - t0
    return rep
