"""Exact output lengths of terms as functions of input lengths.

Every function of the algebra is length-determined, so |t| can be computed
from the lengths of the variables alone.  ``tlen`` does that by structural
recursion; TRN is memoized on (symbol, m, p).
"""

from .termlang import Base, Lam, LCRN, RCRN, TRN, Named, Var, Lit, App, free_vars


class LengthError(ValueError):
    pass


def _sat(a, b):
    return a - b if a > b else 0


_BASE_LEN = {
    "eps": lambda: 0,
    "zero": lambda: 1,
    "one": lambda: 1,
    "allzero": lambda m: m,
    "allone": lambda m: m,
    "lhalf": lambda m: m // 2,
    "rhalf": lambda m: (m + 1) // 2,
    "lchop": lambda n, m: _sat(m, n),
    "rchop": lambda m, n: _sat(m, n),
    "cat": lambda m, n: m + n,
    "cond": lambda w, n, p0, p1: n if w == 0 else max(p0, p1),
}

_memo = {}


def _key(s):
    return ("n", s.name) if isinstance(s, Named) else s


def slen(s, lens):
    """Length of ``s`` applied to arguments of lengths ``lens``."""
    lens = tuple(lens)
    if isinstance(s, Base):
        return _BASE_LEN[s.tag](*lens)
    key = (_key(s), lens)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if isinstance(s, Named):
        r = slen(s.sym, lens)
    elif isinstance(s, Lam):
        r = _term_len(s.body, dict(zip(s.params, lens)))
    elif isinstance(s, (LCRN, RCRN)):
        r = lens[0]
    elif isinstance(s, TRN):
        r = _trn_len(s, lens)
    else:
        raise LengthError(f"not a symbol: {s!r}")
    _memo[key] = r
    return r


def _trn_len(s, lens):
    m, p, ys = lens[0], lens[1], lens[2:]
    if m <= 1:
        return slen(s.g, lens)
    vl = slen(s, (m // 2, slen(s.hl, (p,))) + ys)
    vr = slen(s, ((m + 1) // 2, slen(s.hr, (p,))) + ys)
    return slen(s.h, (m, p) + ys + (vl, vr))


def _term_len(t, lv):
    if isinstance(t, Var):
        try:
            return lv[t.name]
        except KeyError:
            raise LengthError(f"no length for variable {t.name}") from None
    if isinstance(t, Lit):
        return len(t.bits)
    if isinstance(t, App):
        return slen(t.sym, [_term_len(a, lv) for a in t.args])
    raise LengthError(f"not a term: {t!r}")


def tlen(t, lv=None, defs=None):
    """Exact length of term ``t`` when each variable has the given length.

    ``t`` may be a term or source text (parsed against ``defs``).
    """
    if isinstance(t, str):
        from .termlang import parse_term
        from .evaluator import load_stdlib
        t = parse_term(t, defs if defs is not None else load_stdlib())
    lv = dict(lv or {})
    missing = free_vars(t) - set(lv)
    if missing:
        raise LengthError(f"no length for variable {sorted(missing)[0]}")
    return _term_len(t, lv)


def clear_cache():
    _memo.clear()
