"""Propositional formulas, term formulas and translations of T1 formulas.

Formulas are hash-consed: building the same node twice returns the same
object, so ``is``/``==`` is structural equality and a formula is a DAG.

Term formulas are compositional.  The bits of f(t1,..,tk) are the bits of
f applied to fresh positional atoms, with the bits of each ti substituted
for those atoms.  Because of this, translating A[t/x] gives exactly the
translation of A with the bits of t put in place of the atoms of x, which
is what the proof emitters in ``fregesim`` rely on.
"""

import itertools

from .termlang import (Base, Lam, LCRN, RCRN, TRN, Named, Var, Lit, App,
                       Eq, Not, And, Or, Imp, Iff, parse_formula, parse_term)


class PropError(ValueError):
    pass


class PF:
    """A node of a shared propositional formula.  Build with the helpers."""
    __slots__ = ("op", "a", "b", "key", "__weakref__")

    def __init__(self, op, a=None, b=None, key=None):
        self.op = op
        self.a = a
        self.b = b
        self.key = key

    def __repr__(self):
        return f"PF({to_str(self)})"

    def __reduce__(self):
        return _rebuild, (self.op, self.a, self.b, self.key)


_table = {}


def _intern(op, a=None, b=None, key=None):
    k = (op, key) if op == "atom" else (op, id(a), id(b))
    n = _table.get(k)
    if n is None:
        n = PF(op, a, b, key)
        _table[k] = n
    return n


def _rebuild(op, a, b, key):
    return _intern(op, a, b, key)


TRUE = _intern("T")
FALSE = _intern("F")


def Atom(key):
    return _intern("atom", key=key)


def bit_atom(var, i, m):
    """Atom for bit ``i`` (1-based from the left) of variable ``var`` of length ``m``."""
    if not 1 <= i <= m:
        raise PropError(f"atom index {i} out of range 1..{m}")
    return _intern("atom", key=(var, i, m))


def neg(a):
    return _intern("not", a)


def land(a, b):
    return _intern("and", a, b)


def lor(a, b):
    return _intern("or", a, b)


def limp(a, b):
    return _intern("imp", a, b)


def liff(a, b):
    return _intern("iff", a, b)


BINOPS = {"and": land, "or": lor, "imp": limp, "iff": liff}
_SYM = {"and": "∧", "or": "∨", "imp": "→", "iff": "↔"}


def big_and(fs):
    """Right-nested conjunction; the empty conjunction is TRUE."""
    fs = list(fs)
    if not fs:
        return TRUE
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = land(f, out)
    return out


def children(f):
    if f.op in ("T", "F", "atom"):
        return ()
    if f.op == "not":
        return (f.a,)
    return (f.a, f.b)


def rebuild(f, kids):
    if f.op == "not":
        return neg(kids[0])
    return BINOPS[f.op](kids[0], kids[1])


def _postorder(f):
    seen = set()
    out = []
    stack = [(f, False)]
    while stack:
        n, done = stack.pop()
        if done:
            out.append(n)
            continue
        if id(n) in seen:
            continue
        seen.add(id(n))
        stack.append((n, True))
        for c in children(n):
            if id(c) not in seen:
                stack.append((c, False))
    return out


def dag_size(f):
    return len(_postorder(f))


def tree_size(f):
    memo = {}
    for n in _postorder(f):
        memo[id(n)] = 1 + sum(memo[id(c)] for c in children(n))
    return memo[id(f)]


def atoms(f):
    """Atoms of ``f`` in first-occurrence order (left to right)."""
    out = {}
    for n in _postorder(f):
        if n.op == "atom":
            out.setdefault(n, None)
    return sorted(out, key=_atom_order)


def _atom_order(a):
    k = a.key
    return tuple(str(p) for p in k) if isinstance(k, tuple) else (str(k),)


def subst(f, m, memo=None):
    """Replace atoms by formulas according to the dict ``m`` (atom -> PF)."""
    if not m:
        return f
    memo = {} if memo is None else memo
    for n in _postorder(f):
        if id(n) in memo:
            continue
        if n.op == "atom":
            memo[id(n)] = m.get(n, n)
        elif n.op in ("T", "F"):
            memo[id(n)] = n
        else:
            kids = [memo[id(c)] for c in children(n)]
            if all(k is c for k, c in zip(kids, children(n))):
                memo[id(n)] = n
            else:
                memo[id(n)] = rebuild(n, kids)
    return memo[id(f)]


def eval_prop(f, assignment):
    """Truth value of ``f``; ``assignment`` maps atoms (or atom keys) to bools."""
    val = {}
    for n in _postorder(f):
        op = n.op
        if op == "T":
            v = True
        elif op == "F":
            v = False
        elif op == "atom":
            if n in assignment:
                v = bool(assignment[n])
            elif n.key in assignment:
                v = bool(assignment[n.key])
            else:
                raise PropError(f"no value for atom {atom_name(n)}")
        elif op == "not":
            v = not val[id(n.a)]
        else:
            x, y = val[id(n.a)], val[id(n.b)]
            v = (x and y if op == "and" else x or y if op == "or"
                 else (not x) or y if op == "imp" else x == y)
        val[id(n)] = v
    return val[id(f)]


def env_assignment(env, lv=None):
    """Atom assignment given by the bits of an environment of bit strings."""
    out = {}
    for var, bits in env.items():
        m = len(bits)
        for i, c in enumerate(bits, 1):
            out[(var, i, m)] = c == "1"
    return out


def atom_name(a):
    k = a.key
    if isinstance(k, tuple) and len(k) == 3:
        return f"{k[0]}.{k[1]}/{k[2]}"
    if isinstance(k, tuple) and k and k[0] == "meta":
        return str(k[1])
    if isinstance(k, tuple) and k and k[0] == "eq":
        from .termlang import print_formula
        return print_formula(k[1])
    return str(k)


def to_str(f, limit=2000):
    """Infix rendering; shared subformulas are printed in full."""
    memo = {}
    for n in _postorder(f):
        op = n.op
        if op == "T":
            s = "⊤"
        elif op == "F":
            s = "⊥"
        elif op == "atom":
            s = atom_name(n)
        elif op == "not":
            s = "¬" + memo[id(n.a)]
        else:
            s = f"({memo[id(n.a)]} {_SYM[op]} {memo[id(n.b)]})"
        if len(s) > limit:
            s = s[:limit] + "…"
        memo[id(n)] = s
    return memo[id(f)]


# ------------------------------------------------------------ term formulas

def _arg_atoms(j, m):
    return [_intern("atom", key=(f"#{j}", i, m)) for i in range(1, m + 1)]


_sym_memo = {}


def _skey(s):
    return ("n", s.name) if isinstance(s, Named) else s


def sym_bits(s, lens):
    """Bit formulas of symbol ``s`` applied to positional argument atoms."""
    lens = tuple(lens)
    key = (_skey(s), lens)
    hit = _sym_memo.get(key)
    if hit is not None:
        return hit
    args = [_arg_atoms(j, m) for j, m in enumerate(lens)]
    r = _apply_bits(s, args, lens)
    _sym_memo[key] = r
    return r


def _base_bits(tag, a):
    if tag == "eps":
        return []
    if tag == "zero":
        return [FALSE]
    if tag == "one":
        return [TRUE]
    if tag == "allzero":
        return [FALSE] * len(a[0])
    if tag == "allone":
        return [TRUE] * len(a[0])
    if tag == "lhalf":
        x = a[0]
        return x[:len(x) // 2]
    if tag == "rhalf":
        x = a[0]
        return x[len(x) // 2:]
    if tag == "lchop":
        y, x = a
        return x[len(y):]
    if tag == "rchop":
        x, y = a
        return x[:max(0, len(x) - len(y))]
    if tag == "cat":
        return a[0] + a[1]
    if tag == "cond":
        w, x, y, z = a
        if not w:
            return list(x)
        s = w[-1]
        L = max(len(y), len(z))
        yp = [FALSE] * (L - len(y)) + list(y)
        zp = [FALSE] * (L - len(z)) + list(z)
        return [lor(land(neg(s), yb), land(s, zb)) for yb, zb in zip(yp, zp)]
    raise PropError(f"unknown base function {tag}")


def _apply_bits(s, args, lens):
    """Bits of ``s`` applied to argument bit lists ``args`` (lengths ``lens``)."""
    if isinstance(s, Base):
        return _base_bits(s.tag, args)
    if isinstance(s, Named):
        return _apply_bits(s.sym, args, lens)
    if isinstance(s, Lam):
        env = dict(zip(s.params, args))
        return _term_bits(s.body, env)
    if isinstance(s, LCRN):
        x, ys = args[0], args[1:]
        m = len(x)
        out = []
        for i in range(m):
            hb = _call(s.h, [x[i:]] + ys, (m - i,) + lens[1:])
            out.append(hb[0] if hb else FALSE)
        return out
    if isinstance(s, RCRN):
        x, ys = args[0], args[1:]
        out = []
        for i in range(1, len(x) + 1):
            hb = _call(s.h, [x[:i]] + ys, (i,) + lens[1:])
            out.append(hb[-1] if hb else FALSE)
        return out
    if isinstance(s, TRN):
        x, z, ys = args[0], args[1], args[2:]
        m = len(x)
        if m <= 1:
            return _call(s.g, args, lens)
        zl = _call(s.hl, [z], (lens[1],))
        zr = _call(s.hr, [z], (lens[1],))
        vl = _call(s, [x[:m // 2], zl] + ys, (m // 2, len(zl)) + lens[2:])
        vr = _call(s, [x[m // 2:], zr] + ys, (m - m // 2, len(zr)) + lens[2:])
        return _call(s.h, args + [vl, vr], lens + (len(vl), len(vr)))
    raise PropError(f"not a symbol: {s!r}")


def _call(s, args, lens):
    """Compositional application: cached symbol bits, then substitution."""
    if isinstance(s, Base):
        return _base_bits(s.tag, args)
    bits = sym_bits(s, lens)
    if not bits:
        return []
    m = {}
    for j, a in enumerate(args):
        for atom, f in zip(_arg_atoms(j, lens[j]), a):
            if atom is not f:
                m[atom] = f
    if not m:
        return list(bits)
    memo = {}
    return [subst(b, m, memo) for b in bits]


def _term_bits(t, env):
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise PropError(f"unbound variable {t.name}") from None
    if isinstance(t, Lit):
        return [TRUE if c == "1" else FALSE for c in t.bits]
    if isinstance(t, App):
        args = [_term_bits(a, env) for a in t.args]
        return _call(t.sym, args, tuple(len(a) for a in args))
    raise PropError(f"not a term: {t!r}")


def _var_env(t_or_f, lv):
    from .termlang import free_vars
    env = {}
    for v in free_vars(t_or_f):
        if v not in lv:
            raise PropError(f"no length for variable {v}")
        env[v] = [bit_atom(v, i, lv[v]) for i in range(1, lv[v] + 1)]
    return env


def _as_term(t, defs):
    if isinstance(t, str):
        from .evaluator import load_stdlib
        return parse_term(t, defs if defs is not None else load_stdlib())
    return t


def term_bits(t, lv, defs=None):
    """All bit formulas of term ``t`` under the length vector ``lv``."""
    t = _as_term(t, defs)
    return _term_bits(t, _var_env(t, lv))


def term_formula(t, lv, i, defs=None):
    """Formula for bit ``i`` (1-based from the left) of term ``t``."""
    bits = term_bits(t, lv, defs)
    if not 1 <= i <= len(bits):
        raise PropError(f"bit index {i} out of range 1..{len(bits)}")
    return bits[i - 1]


def translate(a, lv=None, defs=None):
    """Propositional translation of a T1 formula under the length vector."""
    if isinstance(a, str):
        from .evaluator import load_stdlib
        a = parse_formula(a, defs if defs is not None else load_stdlib())
    lv = dict(lv or {})
    env = _var_env(a, lv)
    return _translate(a, env)


def _translate(a, env):
    if isinstance(a, Eq):
        l = _term_bits(a.left, env)
        r = _term_bits(a.right, env)
        if len(l) != len(r):
            return FALSE
        return big_and(liff(x, y) for x, y in zip(l, r))
    if isinstance(a, Not):
        return neg(_translate(a.a, env))
    name = {And: "and", Or: "or", Imp: "imp", Iff: "iff"}.get(type(a))
    if name is None:
        raise PropError(f"not a formula: {a!r}")
    return BINOPS[name](_translate(a.a, env), _translate(a.b, env))


def clear_caches():
    _sym_memo.clear()


# ------------------------------------------------------------ tautologies

MAX_TAUT_ATOMS = 24
_CHUNK = 14


def _columns(f, atom_list, fixed, width):
    """Evaluate ``f`` bit-parallel: each value is an int with 2**width bits."""
    full = (1 << (1 << width)) - 1
    col = {}
    for j, a in enumerate(atom_list):
        if j < width:
            # standard truth-table column for variable j
            block = 1 << j
            pattern = ((1 << block) - 1) << block
            period = block * 2
            c = 0
            for start in range(0, 1 << width, period):
                c |= pattern << start
            col[a] = c
        else:
            col[a] = full if fixed[j - width] else 0
    val = {}
    for n in _postorder(f):
        op = n.op
        if op == "T":
            v = full
        elif op == "F":
            v = 0
        elif op == "atom":
            v = col[n]
        elif op == "not":
            v = full ^ val[id(n.a)]
        else:
            x, y = val[id(n.a)], val[id(n.b)]
            if op == "and":
                v = x & y
            elif op == "or":
                v = x | y
            elif op == "imp":
                v = (full ^ x) | y
            else:
                v = full ^ (x ^ y)
        val[id(n)] = v
    return val[id(f)], full


def find_falsifier(f, max_atoms=MAX_TAUT_ATOMS):
    """An assignment (atom -> bool) making ``f`` false, or None."""
    at = atoms(f)
    if len(at) > max_atoms:
        raise PropError(f"{len(at)} atoms exceed the budget of {max_atoms}; "
                        "use export_dimacs and an external SAT solver")
    width = min(len(at), _CHUNK)
    rest = len(at) - width
    for fixed in itertools.product((False, True), repeat=rest):
        v, full = _columns(f, at, fixed, width)
        if v != full:
            miss = (full ^ v)
            k = (miss & -miss).bit_length() - 1
            out = {a: bool((k >> j) & 1) for j, a in enumerate(at[:width])}
            out.update({a: b for a, b in zip(at[width:], fixed)})
            return out
    return None


def taut_check(f, max_atoms=MAX_TAUT_ATOMS):
    """Exhaustive tautology check (at most ``max_atoms`` distinct atoms)."""
    return find_falsifier(f, max_atoms) is None


def export_dimacs(f, path=None):
    """CNF of the negation of ``f`` with one auxiliary variable per node.

    The CNF is unsatisfiable iff ``f`` is a tautology.  Returns the text and
    writes it to ``path`` when given.
    """
    nodes = _postorder(f)
    num = {}
    comments = []
    for n in nodes:
        if n.op == "atom":
            num[id(n)] = len(num) + 1
            comments.append(f"c atom {num[id(n)]} {atom_name(n)}")
    clauses = []
    for n in nodes:
        if n.op == "atom":
            continue
        v = len(num) + 1
        num[id(n)] = v
        op = n.op
        if op == "T":
            clauses.append([v])
            comments.append(f"c aux {v} = true")
            continue
        if op == "F":
            clauses.append([-v])
            comments.append(f"c aux {v} = false")
            continue
        a = num[id(n.a)]
        if op == "not":
            clauses += [[-v, -a], [v, a]]
            comments.append(f"c aux {v} = not {a}")
            continue
        b = num[id(n.b)]
        comments.append(f"c aux {v} = {op} {a} {b}")
        if op == "and":
            clauses += [[-v, a], [-v, b], [v, -a, -b]]
        elif op == "or":
            clauses += [[v, -a], [v, -b], [-v, a, b]]
        elif op == "imp":
            clauses += [[v, a], [v, -b], [-v, -a, b]]
        else:
            clauses += [[-v, -a, b], [-v, a, -b], [v, a, b], [v, -a, -b]]
    clauses.append([-num[id(f)]])
    lines = [f"c negation of formula, root variable {num[id(f)]}"] + comments
    lines.append(f"p cnf {len(num)} {len(clauses)}")
    lines += [" ".join(map(str, c)) + " 0" for c in clauses]
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def length_vector(env):
    return {k: len(v) for k, v in env.items()}


__all__ = ["PF", "TRUE", "FALSE", "Atom", "bit_atom", "neg", "land", "lor",
           "limp", "liff", "big_and", "subst", "atoms", "eval_prop",
           "term_formula", "term_bits", "translate", "taut_check",
           "find_falsifier", "export_dimacs", "to_str", "dag_size", "tree_size",
           "env_assignment", "atom_name"]
