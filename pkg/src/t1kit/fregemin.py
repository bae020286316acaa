"""Minimal →-Frege system with a block Gödel encoding.

Blocks are 2^ℓ bits wide.  Codes (depth j written in binary on the trailing
2^ℓ − 2 bits):

    p_i   00 ‖ (i)₂        ⊥  0010…0        ⊤  0011…1
    (_j   10 ‖ (j)₂        →_j 11 ‖ (j)₂     )_j 01 ‖ (j)₂

A variable index must leave the third bit clear, otherwise p_i would
collide with the constants; the budget check enforces this.

Proofs pair x = tup_k(#A_1, ..., #A_k) with y = tup_k(j_1, ..., j_k) where
j_i = tup_2(0, m) for an instance of axiom m and tup_2(k1, k2) when line k2
is (line k1 → line i).  Tuples come from the evaluator's stdlib, so both
halves are real bit strings.
"""

from dataclasses import dataclass

from .bitstr import int_of
from . import bsvp

__all__ = ["MinFormula", "Top", "Bot", "Var", "Imp", "TOP", "BOT", "EncodeError",
           "ell_A", "min_ell", "encode", "decode", "blocks", "formula_valid", "parse_valid",
           "leaf_count", "MinProof", "axiom_instance_of", "check_min", "encode_proof",
           "decode_proof", "F", "VALUE", "TRUE", "substitute", "to_sentence",
           "random_formula", "random_proof", "mutate_bits", "show", "AXIOMS", "parse_min",
           "parse_proof", "group_blocks", "dump_artifact", "load_artifact"]


class EncodeError(ValueError):
    pass


# ------------------------------------------------------------ formulas

class MinFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Top(MinFormula):
    pass


@dataclass(frozen=True)
class Bot(MinFormula):
    pass


@dataclass(frozen=True)
class Var(MinFormula):
    i: int

    def __post_init__(self):
        if self.i < 1:
            raise ValueError("variable indices start at 1")


@dataclass(frozen=True)
class Imp(MinFormula):
    left: MinFormula
    right: MinFormula


TOP, BOT = Top(), Bot()


def show(a):
    if isinstance(a, Top):
        return "T"
    if isinstance(a, Bot):
        return "F"
    if isinstance(a, Var):
        return f"p{a.i}"
    return f"({show(a.left)} -> {show(a.right)})"


def _max_var(a):
    if isinstance(a, Var):
        return a.i
    if isinstance(a, Imp):
        return max(_max_var(a.left), _max_var(a.right))
    return 0


def _depth(a):
    """Largest nesting depth of a connective (outermost is 0); −1 for atoms."""
    if not isinstance(a, Imp):
        return -1
    return 1 + max(_depth(a.left), _depth(a.right))


def ell_A(a):
    """1 + ⌊lg(w_A + 1)⌋, raised if the deepest annotation needs more bits."""
    w = _max_var(a)
    base = 1 + (w + 1).bit_length() - 1
    return max(base, max(_depth(a), 0).bit_length())


def _fits(a, ell):
    width = (1 << ell) - 2
    if width < 1 or (1 << ell) < ell_A(a) + 2:
        return False
    # variables keep the top field bit clear so they never read as constants
    return _max_var(a) < (1 << (width - 1)) and max(_depth(a), 0) < (1 << width)


def min_ell(a):
    ell = 2
    while not _fits(a, ell):
        ell += 1
    return ell


def _block(tag, n, width):
    return tag + format(n, "b").zfill(width)


def encode(a, ell):
    """Bit string #_{2^ℓ}A."""
    if not _fits(a, ell):
        raise EncodeError(f"block budget exceeded: 2^{ell}-bit blocks cannot hold {show(a)}")
    width = (1 << ell) - 2
    out = []
    stack = [(a, 0)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        f, j = item
        if isinstance(f, Top):
            out.append("0011" + "1" * (width - 2))
        elif isinstance(f, Bot):
            out.append("0010" + "0" * (width - 2))
        elif isinstance(f, Var):
            out.append(_block("00", f.i, width))
        else:
            stack.append(_block("01", j, width))
            stack.append((f.right, j + 1))
            stack.append(_block("11", j, width))
            stack.append((f.left, j + 1))
            stack.append(_block("10", j, width))
    return "".join(out)


def blocks(x, ell):
    size = 1 << ell
    if len(x) % size:
        raise EncodeError(f"length {len(x)} is not a multiple of {size}")
    return [x[k:k + size] for k in range(0, len(x), size)]


def _symbol(b):
    """('atom', formula) | ('(' | '->' | ')', depth) | None for an invalid block."""
    tag, rest = b[:2], b[2:]
    if tag == "00":
        if rest[0] == "1":
            if rest[1:] == "0" + "0" * (len(rest) - 2):
                return ("atom", BOT)
            if rest[1:] == "1" * (len(rest) - 1):
                return ("atom", TOP)
            return None
        i = int(rest, 2)
        return ("atom", Var(i)) if i else None
    return ({"10": "(", "11": "->", "01": ")"}[tag], int(rest, 2))


def decode(x, ell):
    """Inverse of encode; raises EncodeError on anything malformed."""
    syms = []
    for b in blocks(x, ell):
        s = _symbol(b)
        if s is None:
            raise EncodeError(f"invalid block {b}")
        syms.append(s)
    if not syms:
        raise EncodeError("empty encoding")
    pos = 0

    def walk(j):
        nonlocal pos
        if pos >= len(syms):
            raise EncodeError("truncated encoding")
        kind, v = syms[pos]
        pos += 1
        if kind == "atom":
            return v
        if kind != "(" or (j is not None and v != j):
            raise EncodeError(f"unexpected block at position {pos}")
        left = walk(v + 1)
        if pos >= len(syms) or syms[pos] != ("->", v):
            raise EncodeError(f"expected →_{v} at position {pos + 1}")
        pos += 1
        right = walk(v + 1)
        if pos >= len(syms) or syms[pos] != (")", v):
            raise EncodeError(f"expected )_{v} at position {pos + 1}")
        pos += 1
        return Imp(left, right)

    first = syms[0]
    out = walk(first[1] if first[0] == "(" else None)
    if pos != len(syms):
        raise EncodeError("trailing blocks")
    return out


def parse_valid(x, ell):
    """Parser-based validity, used as an oracle for formula_valid."""
    try:
        decode(x, ell)
        return True
    except (EncodeError, ValueError):
        return False


def formula_valid(x, ell):
    """Left-context adjacency rules over the decoded symbol sequence."""
    try:
        bl = blocks(x, ell)
    except EncodeError:
        return False
    syms = [_symbol(b) for b in bl]
    if not syms or any(s is None for s in syms):
        return False
    if len(syms) == 1:
        return syms[0][0] == "atom"
    if syms[0][0] != "(" or syms[-1] != (")", syms[0][1]):
        return False

    def opener_before_close(k, j):
        # (_{j} that the )_{j} at position k closes: the nearest one to its left
        for q in range(k - 1, -1, -1):
            if syms[q] == ("(", j):
                return q
        return None

    def follows_group(k, kind, j):
        """Position k is preceded by `kind_j atom` or `kind_j (_{j+1} … )_{j+1}`."""
        if k >= 2 and syms[k - 1][0] == "atom" and syms[k - 2] == (kind, j):
            return True
        if k >= 1 and syms[k - 1] == (")", j + 1):
            q = opener_before_close(k - 1, j + 1)
            return q is not None and q >= 1 and syms[q - 1] == (kind, j)
        return False

    for k in range(1, len(syms)):
        kind, v = syms[k]
        prev = syms[k - 1]
        if kind == "atom":
            ok = prev[0] in ("(", "->")
        elif kind == "(":
            ok = v >= 1 and prev in (("(", v - 1), ("->", v - 1))
        elif kind == "->":
            ok = follows_group(k, "(", v)
        else:
            ok = follows_group(k, "->", v)
        if not ok:
            return False
    # the final )_a must close the opening (_a, not an earlier sibling
    depth0 = syms[0][1]
    return all(s != (")", depth0) for s in syms[1:-1]) and all(
        s != ("(", depth0) for s in syms[1:])


def leaf_count(x, ell):
    """Leaves of a valid encoding: a formula with n leaves has 4n − 3 symbols."""
    return (len(blocks(x, ell)) + 3) // 4


# ------------------------------------------------------------ proofs

AXIOMS = {
    1: "A → (B → A)",
    2: "(A → (B → C)) → ((A → B) → (A → C))",
    3: "((B → ⊥) → (A → ⊥)) → (A → B)",
    4: "⊤",
}


def axiom_instance_of(a, m):
    """Metavariable assignment if ``a`` instantiates axiom m, else None."""
    imp_ = lambda f: isinstance(f, Imp)  # noqa: E731
    if m == 4:
        return {} if isinstance(a, Top) else None
    if m == 1:
        if imp_(a) and imp_(a.right) and a.right.right == a.left:
            return {"A": a.left, "B": a.right.left}
        return None
    if m == 2:
        if not (imp_(a) and imp_(a.left) and imp_(a.left.right) and imp_(a.right)
                and imp_(a.right.left) and imp_(a.right.right)):
            return None
        A, B, C = a.left.left, a.left.right.left, a.left.right.right
        if a.right.left == Imp(A, B) and a.right.right == Imp(A, C):
            return {"A": A, "B": B, "C": C}
        return None
    if m == 3:
        if not (imp_(a) and imp_(a.left) and imp_(a.right) and imp_(a.left.left)
                and imp_(a.left.right)):
            return None
        B, A = a.left.left.left, a.left.right.left
        if (a.left.left.right == BOT and a.left.right.right == BOT
                and a.right == Imp(A, B)):
            return {"A": A, "B": B}
        return None
    return None


@dataclass(frozen=True)
class MinProof:
    """Lines are (formula, justification); ("ax", m) or ("mp", k1, k2), 1-based."""
    lines: tuple

    @property
    def theorem(self):
        return self.lines[-1][0]


def check_min(proof):
    """None when valid, else a rejection reason."""
    if not proof.lines:
        return "empty proof"
    for i, (a, just) in enumerate(proof.lines, start=1):
        if just[0] == "ax":
            if just[1] not in AXIOMS or axiom_instance_of(a, just[1]) is None:
                return f"line {i}: not an instance of axiom {just[1]}"
        elif just[0] == "mp":
            k1, k2 = just[1], just[2]
            if not (1 <= k1 < i and 1 <= k2 < i):
                return f"line {i}: modus ponens cites a later or missing line"
            if proof.lines[k2 - 1][0] != Imp(proof.lines[k1 - 1][0], a):
                return f"line {i}: line {k2} is not line {k1} → line {i}"
        else:
            return f"line {i}: unknown justification {just[0]!r}"
    return None


def _defs():
    from .evaluator import load_stdlib
    return load_stdlib()


def _tup(defs, items):
    from .evaluator import call
    if len(items) == 1:
        return call(defs, "tup_1", items[0])
    return call(defs, f"tup_{len(items)}", *items)


def _pi(defs, k, l, x):
    from .evaluator import call
    return call(defs, f"pi_{k}_{l}", x)


def encode_proof(proof, ell, defs=None):
    """(x, y) for a MinProof at block size 2^ℓ."""
    defs = defs or _defs()
    xs = [encode(a, ell) for a, _ in proof.lines]
    # fixed-width numbers keep every pair the same length, so the tuple
    # padding never shifts the midpoint a projection splits at
    width = max(len(proof.lines), 4).bit_length()
    js = []
    for _, just in proof.lines:
        a, b = (0, just[1]) if just[0] == "ax" else (just[1], just[2])
        js.append(_tup(defs, [format(a, "b").zfill(width), format(b, "b").zfill(width)]))
    return _tup(defs, xs), _tup(defs, js)


def _strip_zero_blocks(s, ell):
    size = 1 << ell
    k = 0
    while s[k:k + size] == "0" * size and k + size <= len(s):
        k += size
    return s[k:]


def decode_proof(x, y, ell, k, defs=None):
    """MinProof read back from (x, y), or None if any part is malformed."""
    defs = defs or _defs()
    if not 1 <= k <= 16:
        return None
    lines = []
    for l in range(1, k + 1):
        enc = _strip_zero_blocks(_pi(defs, k, l, x), ell)
        if not formula_valid(enc, ell):
            return None
        j = _pi(defs, k, l, y)
        a, b = int_of(_pi(defs, 2, 1, j)), int_of(_pi(defs, 2, 2, j))
        lines.append((decode(enc, ell), ("ax", b) if a == 0 else ("mp", a, b)))
    return MinProof(tuple(lines))


def F(x, y, ell, k, defs=None):
    """Encoded theorem of the proof (x, y), or #⊤ if it is not a valid k-line proof."""
    p = decode_proof(x, y, ell, k, defs)
    if p is None or check_min(p) is not None:
        return encode(TOP, ell)
    return encode(p.theorem, ell)


# ------------------------------------------------------------ truth via the game

def substitute(a, v):
    """Replace p_i by bit i of v (leftmost bit is p_1; missing bits read 0)."""
    if isinstance(a, Var):
        return TOP if a.i <= len(v) and v[a.i - 1] == "1" else BOT
    if isinstance(a, Imp):
        return Imp(substitute(a.left, v), substitute(a.right, v))
    return a


def to_sentence(a):
    if isinstance(a, Top):
        return bsvp.TOP
    if isinstance(a, Bot):
        return bsvp.BOT
    if isinstance(a, Imp):
        return bsvp.imp(to_sentence(a.left), to_sentence(a.right))
    raise ValueError("substitute the variables first")


def VALUE(v, x, ell):
    """Truth value of the encoded formula under v, decided by the pebbling game."""
    try:
        a = decode(x, ell)
    except (EncodeError, ValueError):
        return 0
    padded, _, _ = bsvp.pad_sentence(to_sentence(substitute(a, v)))
    return int(bsvp.play_game(padded, do_audit=False).winner == bsvp.PEBBLER)


def TRUE(v, x, ell):
    return int(formula_valid(x, ell) and VALUE(v, x, ell) == 1)


# ------------------------------------------------------------ generators

def random_formula(rng, nvars=3, size=4):
    """Random formula with about ``size`` connectives."""
    if size <= 0:
        r = rng.randrange(nvars + 2)
        return TOP if r == 0 else BOT if r == 1 else Var(r - 1)
    k = rng.randrange(size)
    return Imp(random_formula(rng, nvars, k), random_formula(rng, nvars, size - 1 - k))


def random_proof(rng, nvars=3, max_lines=8):
    """A valid proof built from axiom instances and modus ponens steps."""
    lines = []

    def small():
        return random_formula(rng, nvars, rng.randrange(2))

    def add(a, just):
        lines.append((a, just))
        return len(lines)

    while len(lines) < max_lines:
        room = max_lines - len(lines)
        choice = rng.randrange(5)
        if choice == 0 or room < 2:
            if rng.randrange(2):
                add(TOP, ("ax", 4))
            else:
                add(Imp(TOP, Imp(small(), TOP)), ("ax", 1))
            continue
        if choice == 1 and lines:
            # from a line A: axiom 1 gives A → (B → A), then MP yields B → A
            k = rng.randrange(len(lines)) + 1
            a = lines[k - 1][0]
            b = small()
            j = add(Imp(a, Imp(b, a)), ("ax", 1))
            add(Imp(b, a), ("mp", k, j))
            continue
        if choice == 2:
            a, b, c = small(), small(), small()
            add(Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c))), ("ax", 2))
            continue
        if choice == 3:
            a, b = small(), small()
            add(Imp(Imp(Imp(b, BOT), Imp(a, BOT)), Imp(a, b)), ("ax", 3))
            continue
        # any available modus ponens step
        opts = [(k1, k2) for k2, (f2, _) in enumerate(lines, 1) if isinstance(f2, Imp)
                for k1, (f1, _) in enumerate(lines, 1) if f1 == f2.left]
        if opts:
            k1, k2 = opts[rng.randrange(len(opts))]
            add(lines[k2 - 1][0].right, ("mp", k1, k2))
        else:
            a = small()
            add(Imp(a, Imp(small(), a)), ("ax", 1))
    return MinProof(tuple(lines))


def mutate_bits(s):
    """Every single-bit flip of s."""
    for k in range(len(s)):
        yield s[:k] + ("1" if s[k] == "0" else "0") + s[k + 1:]


# ------------------------------------------------------------ text formats

def parse_min(text):
    """Formula text: p<i>, T, F and parenthesized ``(A -> B)``."""
    toks = text.replace("(", " ( ").replace(")", " ) ").replace("->", " -> ").split()
    pos = 0

    def atom_or_group():
        nonlocal pos
        if pos >= len(toks):
            raise EncodeError("unexpected end of formula")
        t = toks[pos]
        pos += 1
        if t in ("T", "⊤"):
            return TOP
        if t in ("F", "⊥"):
            return BOT
        if t.startswith("p") and t[1:].isdigit() and int(t[1:]) >= 1:
            return Var(int(t[1:]))
        if t != "(":
            raise EncodeError(f"unexpected token {t!r}")
        a = atom_or_group()
        if pos >= len(toks) or toks[pos] != "->":
            raise EncodeError("expected '->'")
        pos += 1
        b = atom_or_group()
        if pos >= len(toks) or toks[pos] != ")":
            raise EncodeError("expected ')'")
        pos += 1
        return Imp(a, b)

    out = atom_or_group()
    if pos != len(toks):
        raise EncodeError("trailing input after formula")
    return out


def parse_proof(text):
    """One line per step: ``<formula> ; ax <m>`` or ``<formula> ; mp <k1> <k2>``."""
    lines = []
    for raw in text.splitlines():
        raw = raw.split("#", 1)[0].strip()
        if not raw:
            continue
        body, _, just = raw.rpartition(";")
        if not body:
            raise EncodeError(f"missing justification in {raw!r}")
        parts = just.split()
        if parts[:1] == ["ax"] and len(parts) == 2:
            j = ("ax", int(parts[1]))
        elif parts[:1] == ["mp"] and len(parts) == 3:
            j = ("mp", int(parts[1]), int(parts[2]))
        else:
            raise EncodeError(f"bad justification {just.strip()!r}")
        lines.append((parse_min(body.strip()), j))
    return MinProof(tuple(lines))


def group_blocks(x, ell):
    """Bit string written as space-separated 2^ℓ-bit blocks."""
    size = 1 << ell
    return " ".join(x[k:k + size] for k in range(0, len(x), size))


def dump_artifact(x, y, ell, k):
    return (f"ell {ell}\nk {k}\nx {group_blocks(x, ell)}\n"
            f"y {group_blocks(y, ell) if len(y) % (1 << ell) == 0 else y}\n")


def load_artifact(text):
    """(x, y, ℓ, k) from the ASCII artifact written by dump_artifact."""
    fields = {}
    for raw in text.splitlines():
        raw = raw.split("#", 1)[0].strip()
        if not raw:
            continue
        key, _, val = raw.partition(" ")
        fields[key] = val.replace(" ", "")
    try:
        return fields["x"], fields["y"], int(fields["ell"]), int(fields["k"])
    except (KeyError, ValueError):
        raise EncodeError("artifact needs ell, k, x and y lines") from None
