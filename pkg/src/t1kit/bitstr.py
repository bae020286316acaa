"""BASE functions on bit strings.

Bit strings are plain ``str`` values over ``'0'``/``'1'``; position 1 is the
leftmost bit.  Chops saturate at the empty string.
"""

EPS = ""

BASE_ARITY = {
    "eps": 0, "zero": 0, "one": 0,
    "allzero": 1, "allone": 1, "lhalf": 1, "rhalf": 1,
    "lchop": 2, "rchop": 2, "cat": 2,
    "cond": 4,
}


class ArityError(ValueError):
    pass


def is_bits(s):
    return isinstance(s, str) and all(c in "01" for c in s)


def allzero(x):
    return "0" * len(x)


def allone(x):
    return "1" * len(x)


def rhalf(x):
    # ceil(m/2) rightmost bits
    return x[len(x) // 2:]


def lhalf(x):
    return x[:len(x) // 2]


def lchop(y, x):
    """Remove |y| leftmost bits of x."""
    return x[len(y):]


def rchop(x, y):
    """Remove |y| rightmost bits of x."""
    n = len(x) - len(y)
    return x[:n] if n > 0 else EPS


def cat(x, y):
    return x + y


def cond(w, x, y, z):
    if not w:
        return x
    n = max(len(y), len(z))
    pick = y if w[-1] == "0" else z
    return "0" * (n - len(pick)) + pick


_IMPL = {
    "eps": lambda: EPS,
    "zero": lambda: "0",
    "one": lambda: "1",
    "allzero": allzero,
    "allone": allone,
    "lhalf": lhalf,
    "rhalf": rhalf,
    "lchop": lchop,
    "rchop": rchop,
    "cat": cat,
    "cond": cond,
}


def base_fn(tag):
    return _IMPL[tag]


def base_apply(tag, args):
    if tag not in BASE_ARITY:
        raise ArityError(f"unknown base function {tag!r}")
    if len(args) != BASE_ARITY[tag]:
        raise ArityError(f"{tag} takes {BASE_ARITY[tag]} arguments, got {len(args)}")
    return _IMPL[tag](*args)


def truth(s):
    """Truth value of a string: its rightmost bit; the empty string is false."""
    return bool(s) and s[-1] == "1"


def int_of(s):
    return int(s, 2) if s else 0


def to_bits(n, width=0):
    s = format(n, "b") if n else ""
    return s.rjust(width, "0")


def all_strings(maxlen, minlen=0):
    for m in range(minlen, maxlen + 1):
        for k in range(1 << m):
            yield format(k, "b").zfill(m) if m else EPS


def strings_of_length(m):
    if m == 0:
        return [EPS]
    return [format(k, "b").zfill(m) for k in range(1 << m)]
