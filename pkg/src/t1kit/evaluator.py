"""Big-step evaluation of terms, the definition registry and brute-force oracles.

Symbols are compiled once into Python closures.  Named definitions and the
recursion operators keep a per-symbol memo table keyed on the argument tuple.
"""

from functools import lru_cache
from importlib import resources

from . import bitstr
from .bitstr import truth, int_of
from .termlang import (Base, Lam, LCRN, RCRN, TRN, Named, Var, Lit, App,
                       DefRegistry, parse_defs, parse_term, free_vars, arity,
                       wf_check)

MEMO_LIMIT = 400_000


class EvalError(ValueError):
    pass


_compiled = {}


def _memoize(fn):
    memo = {}

    def f(*args):
        try:
            return memo[args]
        except KeyError:
            pass
        r = fn(*args)
        if len(memo) > MEMO_LIMIT:
            memo.clear()
        memo[args] = r
        return r
    f.memo = memo
    return f


def compile_symbol(s):
    """Python callable computing the symbol's value."""
    if isinstance(s, Base):
        return bitstr.base_fn(s.tag)
    key = ("n", s.name, id(s.sym)) if isinstance(s, Named) else id(s)
    hit = _compiled.get(key)
    if hit is not None:
        return hit[1]
    fn = _build(s)
    _compiled[key] = (s, fn)
    return fn


def clear_caches():
    for _, fn in _compiled.values():
        memo = getattr(fn, "memo", None)
        if memo is not None:
            memo.clear()


def _build(s):
    if isinstance(s, Named):
        inner = compile_symbol(s.sym)
        return _memoize(inner)
    if isinstance(s, Lam):
        index = {p: i for i, p in enumerate(s.params)}
        body = _compile_term(s.body, index)
        return lambda *args: body(args)
    if isinstance(s, LCRN):
        h = compile_symbol(s.h)

        def lcrn(x, *ys):
            out = []
            for i in range(len(x)):
                r = h(x[i:], *ys)
                out.append(r[0] if r else "0")
            return "".join(out)
        return _memoize(lcrn)
    if isinstance(s, RCRN):
        h = compile_symbol(s.h)

        def rcrn(x, *ys):
            out = []
            for i in range(1, len(x) + 1):
                r = h(x[:i], *ys)
                out.append(r[-1] if r else "0")
            return "".join(out)
        return _memoize(rcrn)
    if isinstance(s, TRN):
        g = compile_symbol(s.g)
        h = compile_symbol(s.h)
        hl = compile_symbol(s.hl)
        hr = compile_symbol(s.hr)

        def trn(x, z, *ys):
            if len(x) <= 1:
                return g(x, z, *ys)
            m = len(x) // 2
            vl = trn_m(x[:m], hl(z), *ys)
            vr = trn_m(x[m:], hr(z), *ys)
            return h(x, z, *ys, vl, vr)
        trn_m = _memoize(trn)
        return trn_m
    raise EvalError(f"cannot compile {s!r}")


def _compile_term(t, index):
    if isinstance(t, Var):
        try:
            i = index[t.name]
        except KeyError:
            raise EvalError(f"unbound variable {t.name}") from None
        return lambda env: env[i]
    if isinstance(t, Lit):
        v = t.bits
        return lambda env: v
    if isinstance(t, App):
        f = compile_symbol(t.sym)
        args = [_compile_term(a, index) for a in t.args]
        n = len(args)
        if n == 0:
            if isinstance(t.sym, Base):
                v = f()
                return lambda env: v
            return lambda env: f()
        if n == 1:
            a0, = args
            return lambda env: f(a0(env))
        if n == 2:
            a0, a1 = args
            return lambda env: f(a0(env), a1(env))
        if n == 3:
            a0, a1, a2 = args
            return lambda env: f(a0(env), a1(env), a2(env))
        if n == 4:
            a0, a1, a2, a3 = args
            return lambda env: f(a0(env), a1(env), a2(env), a3(env))
        return lambda env: f(*[a(env) for a in args])
    raise EvalError(f"not a term: {t!r}")


def eval_term(t, env=None, defs=None):
    """Value of term ``t`` under ``env`` (variable name -> bit string)."""
    env = env or {}
    if isinstance(t, str):
        t = parse_term(t, defs if defs is not None else load_stdlib())
    names = sorted(free_vars(t))
    missing = [n for n in names if n not in env]
    if missing:
        raise EvalError(f"unbound variable {missing[0]}")
    index = {n: i for i, n in enumerate(names)}
    fn = _compile_term(t, index)
    return fn(tuple(env[n] for n in names))


# alias matching the operation name
eval = eval_term  # noqa: A001


def apply_symbol(s, *args):
    if len(args) != arity(s):
        raise EvalError(f"{getattr(s, 'name', s)} takes {arity(s)} arguments, got {len(args)}")
    return compile_symbol(s)(*args)


def call(defs, name, *args):
    return apply_symbol(defs[name], *args)


# ------------------------------------------------------------ stdlib

def _vars(prefix, k):
    return [f"{prefix}{i}" for i in range(1, k + 1)]


def gen_max(kmax=16):
    out = ["def max_1 = (lam (x1) x1)"]
    for k in range(2, kmax + 1):
        xs = _vars("x", k)
        out.append(f"def max_{k} = (lam ({' '.join(xs)}) (lenmax x1 (max_{k - 1} {' '.join(xs[1:])})))")
    return out


def gen_divmod(kmax=5):
    out = ["def div_1 = (lam (x) (allone x))", "def mod_1 = (lam (x) (lchop (div_1 x) (allone x)))"]
    for e in range(1, kmax + 1):
        k = 1 << e
        out.append(f"def div_{k} = (lam (x) (div_{k // 2} (lhalf x)))")
        chain = f"(div_{k} x)"
        for _ in range(k - 1):
            chain = f"(cat (div_{k} x) {chain})"
        out.append(f"def mod_{k} = (lam (x) (lchop {chain} (allone x)))")
    return out


def gen_tuples(kmax=16):
    out = ["def tuple_1 = (lam (x1 z) (lp0 x1 z))", "def pi_1_1 = (lam (y) y)"]
    for k in range(2, kmax + 1):
        xs = _vars("x", k)
        h = k // 2
        if k % 2 == 0:
            body = (f"(cat (tuple_{h} {' '.join(xs[:h])} z) "
                    f"(tuple_{h} {' '.join(xs[h:])} z))")
        else:
            body = (f"(cat (tuple_{h + 1} eps {' '.join(xs[:h])} z) "
                    f"(tuple_{h + 1} {' '.join(xs[h:])} z))")
        out.append(f"def tuple_{k} = (lam ({' '.join(xs)} z) {body})")
        for l in range(1, k + 1):
            if k % 2 == 0:
                body = (f"(pi_{h}_{l} (lhalf y))" if l <= h
                        else f"(pi_{h}_{l - h} (rhalf y))")
            else:
                body = (f"(pi_{h + 1}_{l + 1} (lhalf y))" if l <= h
                        else f"(pi_{h + 1}_{l - h} (rhalf y))")
            out.append(f"def pi_{k}_{l} = (lam (y) {body})")
    for k in range(1, kmax + 1):
        xs = " ".join(_vars("x", k))
        out.append(f"def tup_{k} = (lam ({xs}) (tuple_{k} {xs} (max_{k} {xs})))")
    return out


GENERATORS = {"max": gen_max, "divmod": gen_divmod, "tuples": gen_tuples}


def expand_crn_m(kind, m, htext, defs):
    """Term-level CRN_m: recursion on the common padded length of x1..xm."""
    from .termlang import parse_symbol
    h = parse_symbol(htext, defs)
    extra = arity(h) - m
    if extra < 0:
        raise EvalError(f"{kind}_m {m}: h takes only {arity(h)} arguments")
    xs = _vars("x", m)
    ys = _vars("y", extra)
    mx = f"(max_{m} {' '.join(xs)})"
    chop = "rc" if kind == "lcrn" else "lc"
    pad = "lp0" if kind == "lcrn" else "rp0"
    inner = " ".join([f"({chop} {x} z)" for x in xs] + ys)
    params = " ".join(xs + ys)
    args = " ".join([mx] + [f"({pad} {x} {mx})" for x in xs] + ys)
    return (f"(lam ({params}) (({kind} (lam (z {params}) ({htext} {inner}))) {args}))")


def _entries(text):
    """Yield ('note', text) and ('def', text) items; defs may span lines."""
    from .termlang import _balanced
    pending = None
    for raw in text.splitlines():
        s = raw.strip()
        if pending is None:
            if s.startswith("## group:"):
                yield "note", s.split(":", 1)[1].strip()
                continue
            if s.startswith("## generate:"):
                for name in s.split(":", 1)[1].split():
                    for line in GENERATORS[name]():
                        yield "def", line
                continue
            s = s.split("#", 1)[0].strip()
            if not s:
                continue
            pending = s
        else:
            pending += " " + s.split("#", 1)[0].strip()
        if "=" in pending and pending.split("=", 1)[1].strip() and _balanced(pending):
            yield "def", pending
            pending = None
    if pending is not None:
        yield "def", pending


@lru_cache(maxsize=1)
def stdlib_text():
    return resources.files("t1kit").joinpath("data/stdlib.defs").read_text()


def load_defs_text(text, defs=None):
    """Load a definition file, expanding generators and CRN_m macros."""
    import re
    defs = DefRegistry() if defs is None else defs
    macro = re.compile(r"^def\s+(\S+)\s*=\s*\((lcrn|rcrn)_m\s+(\d+)\s+(.*)\)\s*$", re.S)
    note = ""
    for kind, body in _entries(text):
        if kind == "note":
            note = body
            continue
        m = macro.match(body)
        if m:
            name, k, mm, htext = m.group(1), m.group(2), int(m.group(3)), m.group(4).strip()
            body = f"def {name} = {expand_crn_m(k, mm, htext, defs)}"
        parse_defs(body, defs, note=note)
    return defs


_STDLIB = None


def load_stdlib():
    """Registry with the standard library; built once and shared."""
    global _STDLIB
    if _STDLIB is None:
        _STDLIB = load_defs_text(stdlib_text())
    return _STDLIB


def stdlib_names():
    return load_stdlib().names()


# ------------------------------------------------------------ oracles

def _popcount(x):
    return x.count("1")


def _next_pow2_len(x):
    m = len(x)
    if m <= 1:
        return m
    return 1 << (m - 1).bit_length()


ORACLES = {
    "reverse": lambda x: x[::-1],
    "popcount": _popcount,
    "int_of": int_of,
    "next_pow2_len": _next_pow2_len,
    "add": lambda x, y: int_of(x) + int_of(y),
    "lt": lambda x, y: int_of(x) < int_of(y),
    "eq": lambda x, y: int_of(x) == int_of(y),
    "succ": lambda x: int_of(x) + 1,
    "pred": lambda x: max(int_of(x) - 1, 0),
    "bin_len": lambda x: len(x),
    "num_len": lambda x: int_of(x).bit_length(),
    "all": lambda x: all(c == "1" for c in x),
    "any": lambda x: any(c == "1" for c in x),
    "truth": truth,
}


def oracle(name, *args):
    try:
        fn = ORACLES[name]
    except KeyError:
        raise EvalError(f"unknown oracle {name!r}") from None
    return fn(*args)


def php_oracle(a, n):
    """Direct check that the matrix read from ``a`` is not an injective map."""
    size = n * (n + 1)
    a = (a + "0" * size)[:size]
    rows = [a[r * (n + 1):(r + 1) * (n + 1)] for r in range(n)]
    is_map = all(any(rows[r][c] == "1" for r in range(n)) for c in range(n + 1))
    is_inj = all(rows[r].count("1") <= 1 for r in range(n))
    return is_map, is_inj


def php_exhaustive(n, defs=None):
    """True iff php(a, 1^n) is true for every n x (n+1) matrix a."""
    if not 1 <= n <= 3:
        raise ValueError("n must be 1, 2 or 3")
    defs = defs or load_stdlib()
    php = compile_symbol(defs["php"])
    un = "1" * n
    for a in bitstr.strings_of_length(n * (n + 1)):
        if not truth(php(a, un)):
            return False
    return True


def check_all_wf(defs=None):
    defs = defs or load_stdlib()
    return {name: wf_check(s) for name, s in defs.items() if wf_check(s)}
