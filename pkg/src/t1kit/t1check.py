"""T1 proofs: axiom schemata, the proof file format and the line checker.

Propositional reasoning uses the schemata P1..P13 of ``hilbert`` with T1
formulas in place of the meta atoms.  Equality and function axioms are
groups 1a..12; rules are modus ponens, substitution, NIND (left and right)
and TIND.
"""

import itertools
import re

from . import hilbert
from .bitstr import all_strings
from .evaluator import load_stdlib, _compile_term
from .propc import Atom, neg, land, lor, limp, liff
from .termlang import (Lam, LCRN, RCRN, TRN, Named, Var, App, Eq, Not, And, Or, Imp,
                       Iff, EPS_T, ZERO_T, ONE_T, SYMBOL_TYPES, FORMULA_TYPES, app,
                       conj, arity, rank, free_vars, substitute, subst_many, wf_check,
                       wf_formula, _wf_term, print_formula, print_term, print_sym,
                       parse_formula, parse_term, parse_symbol, ParseError)


class CheckError(ValueError):
    pass


# ------------------------------------------------------------ axiom schemata

def _cat(a, b):
    return app("cat", a, b)


def _lch(y, x):
    return app("lchop", y, x)


def _rch(x, y):
    return app("rchop", x, y)


def _lh(x):
    return app("lhalf", x)


def _rh(x):
    return app("rhalf", x)


def _el(x, y, z):
    """x ?EL (y, z): y when |x| is even, z when odd."""
    return app("cond", _lch(_lh(x), _rh(x)), y, z, z)


def _bit(i):
    return ONE_T if i else ZERO_T


AXIOM_GROUPS = ("1a", "1b", "1c", "1d", "2", "3a", "3b", "3c", "4a", "4b", "4c",
                "5a", "5b", "5c", "6a", "6b", "7", "8a", "8b", "9a", "9b", "9c",
                "9d", "10", "11a", "11b", "12")

SYMBOL_METAS = {"1d": ("f",), "10": ("f",), "11a": ("h",), "11b": ("h",),
                "12": ("g", "h", "hl", "hr")}

GROUP_FAMILY = {g: re.match(r"\d+", g).group() for g in AXIOM_GROUPS}


def _v(*names):
    return [Var(n) for n in names]


def _schema(gid, syms):
    x, y, z, w = _v("x", "y", "z", "w")
    e, o, i = EPS_T, ZERO_T, ONE_T
    if gid == "1a":
        return Eq(x, x)
    if gid == "1b":
        return Imp(Eq(x, y), Eq(y, x))
    if gid == "1c":
        return Imp(And(Eq(x, y), Eq(y, z)), Eq(x, z))
    if gid == "1d":
        f = syms["f"]
        k = arity(f)
        if k < 1:
            raise CheckError("1d needs a function symbol of arity at least 1")
        xs = _v(*[f"x{j}" for j in range(1, k + 1)])
        ys = _v(*[f"y{j}" for j in range(1, k + 1)])
        return Imp(conj(*[Eq(a, b) for a, b in zip(xs, ys)]),
                   Eq(App(f, tuple(xs)), App(f, tuple(ys))))
    if gid == "2":
        return conj(Not(Eq(e, o)), Not(Eq(o, i)), Not(Eq(i, e)))
    if gid == "3a":
        return conj(Eq(_cat(x, e), x),
                    Eq(_cat(x, _cat(y, o)), _cat(_cat(x, y), o)),
                    Eq(_cat(x, _cat(y, i)), _cat(_cat(x, y), i)))
    if gid == "3b":
        return Imp(Eq(_cat(x, y), e), And(Eq(x, e), Eq(y, e)))
    if gid == "3c":
        return And(*[Imp(Eq(_cat(x, y), c), Or(And(Eq(x, e), Eq(y, c)), And(Eq(x, c), Eq(y, e))))
                     for c in (o, i)])
    if gid == "4a":
        return conj(Eq(_lch(e, x), x),
                    Eq(_lch(_cat(o, y), x), _lch(o, _lch(y, x))),
                    Eq(_lch(_cat(i, y), x), _lch(i, _lch(y, x))))
    if gid == "4b":
        return conj(*[f for c in (o, i) for f in
                      (Eq(_lch(c, e), e), Eq(_lch(c, _cat(o, x)), x), Eq(_lch(c, _cat(i, x)), x))])
    if gid == "4c":
        a = Eq(_lch(y, x), e)
        b = Not(Eq(_lch(x, _cat(y, o)), e))
        c = Not(Eq(_lch(x, _cat(y, i)), e))
        return And(Iff(a, b), Iff(b, c))
    if gid == "5a":
        return conj(Eq(x, _rch(x, e)),
                    Eq(_rch(_rch(x, y), o), _rch(x, _cat(y, o))),
                    Eq(_rch(_rch(x, y), i), _rch(x, _cat(y, i))))
    if gid == "5b":
        return conj(*[f for c in (o, i) for f in
                      (Eq(e, _rch(e, c)), Eq(x, _rch(_cat(x, o), c)), Eq(x, _rch(_cat(x, i), c)))])
    if gid == "5c":
        a = Not(Eq(e, _rch(_cat(i, y), x)))
        b = Not(Eq(e, _rch(_cat(o, y), x)))
        c = Eq(e, _rch(x, y))
        return And(Iff(a, b), Iff(b, c))
    if gid in ("6a", "6b"):
        f, c = ("allzero", o) if gid == "6a" else ("allone", i)
        return conj(Eq(app(f, e), e),
                    Eq(app(f, _cat(x, o)), _cat(app(f, x), c)),
                    Eq(app(f, _cat(x, i)), _cat(app(f, x), c)))
    if gid == "7":
        return conj(Eq(app("cond", e, x, y, z), x),
                    Eq(app("cond", _cat(w, o), x, y, z), _cat(app("allzero", _rch(z, y)), y)),
                    Eq(app("cond", _cat(w, i), x, y, z), _cat(app("allzero", _rch(y, z)), z)))
    if gid == "8a":
        return Eq(_cat(_lh(x), _rh(x)), x)
    if gid == "8b":
        return And(Eq(_rch(_lh(x), _rh(x)), e), Eq(_lch(i, _lch(_lh(x), _rh(x))), e))
    if gid == "9a":
        return And(*[Eq(_lh(_cat(x, c)), _el(x, _lh(x), _cat(_lh(x), _rch(_cat(_rh(x), c), _rh(x)))))
                     for c in (o, i)])
    if gid == "9b":
        return And(*[Eq(_rh(_cat(x, c)), _el(x, _cat(_rh(x), c), _lch(i, _cat(_rh(x), c))))
                     for c in (o, i)])
    if gid == "9c":
        return And(*[Eq(_lh(_cat(c, x)), _el(x, _rch(_cat(c, _lh(x)), i), _cat(c, _lh(x))))
                     for c in (o, i)])
    if gid == "9d":
        return And(*[Eq(_rh(_cat(c, x)), _el(x, _cat(_lch(_lh(x), _cat(c, _lh(x))), _rh(x)), _rh(x)))
                     for c in (o, i)])
    if gid == "10":
        f = syms["f"]
        lam = f.sym if isinstance(f, Named) else f
        if not isinstance(lam, Lam):
            raise CheckError("axiom 10 needs a lambda symbol")
        return Eq(App(f, tuple(Var(p) for p in lam.params)), lam.body)
    if gid in ("11a", "11b"):
        h = syms["h"]
        n = arity(h) - 1
        ys = tuple(_v(*[f"y{j}" for j in range(1, n + 1)]))
        if gid == "11a":
            L = LCRN(h)
            parts = [Eq(App(L, (e,) + ys), e)]
            for c in (o, i):
                hx = App(h, (_cat(c, x),) + ys)
                parts.append(Eq(App(L, (_cat(c, x),) + ys),
                                _cat(_rch(_cat(hx, o), hx), App(L, (x,) + ys))))
        else:
            R = RCRN(h)
            parts = [Eq(App(R, (e,) + ys), e)]
            for c in (o, i):
                hx = App(h, (_cat(x, c),) + ys)
                parts.append(Eq(App(R, (_cat(x, c),) + ys),
                                _cat(App(R, (x,) + ys), _lch(hx, _cat(o, hx)))))
        return conj(*parts)
    if gid == "12":
        g, h, hl, hr = syms["g"], syms["h"], syms["hl"], syms["hr"]
        T = TRN(g, h, hl, hr)
        err = wf_check(T)
        if err:
            raise CheckError(f"axiom 12: {err}")
        n = arity(g) - 2
        ys = tuple(_v(*[f"y{j}" for j in range(1, n + 1)]))
        t = App(h, (x, z) + ys + (App(T, (_lh(x), App(hl, (z,))) + ys),
                                  App(T, (_rh(x), App(hr, (z,))) + ys)))
        return Eq(App(T, (x, z) + ys), app("cond", _rch(x, i), App(g, (x, z) + ys), t, t))
    raise CheckError(f"unknown axiom group {gid}")


def axiom_instance(gid, inst=None, defs=None):
    """Axiom ``gid`` with symbol metavariables and term variables instantiated.

    ``inst`` maps f/g/h/hl/hr to symbols (or their text) and variables to
    terms (or their text).
    """
    if gid not in AXIOM_GROUPS:
        raise CheckError(f"unknown axiom group {gid}")
    defs = defs if defs is not None else load_stdlib()
    inst = dict(inst or {})
    syms = {}
    for k in SYMBOL_METAS.get(gid, ()):
        if k not in inst:
            raise CheckError(f"axiom {gid} needs {k} := <symbol>")
        s = inst.pop(k)
        syms[k] = parse_symbol(s, defs) if isinstance(s, str) else s
        err = wf_check(syms[k])
        if err:
            raise CheckError(f"axiom {gid}: {k} is ill formed: {err}")
    if gid == "12":
        for k in ("h", "hl", "hr"):
            if rank(syms[k]) != 0:
                raise CheckError(f"axiom 12: {k} must be rank 0")
    f = _schema(gid, syms)
    fv = free_vars(f)
    terms = {}
    for k, t in inst.items():
        if k not in fv:
            raise CheckError(f"axiom {gid} has no variable {k}")
        terms[k] = parse_term(t, defs) if isinstance(t, str) else t
    return subst_many(f, terms) if terms else f


# ------------------------------------------------------------ semantics

def _formula_fn(a, index):
    if isinstance(a, Eq):
        l, r = _compile_term(a.left, index), _compile_term(a.right, index)
        return lambda env: l(env) == r(env)
    if isinstance(a, Not):
        f = _formula_fn(a.a, index)
        return lambda env: not f(env)
    f, g = _formula_fn(a.a, index), _formula_fn(a.b, index)
    if isinstance(a, And):
        return lambda env: f(env) and g(env)
    if isinstance(a, Or):
        return lambda env: f(env) or g(env)
    if isinstance(a, Imp):
        return lambda env: (not f(env)) or g(env)
    if isinstance(a, Iff):
        return lambda env: f(env) == g(env)
    raise CheckError(f"not a formula: {a!r}")


def compile_formula(a):
    """(variable names, predicate on a tuple of bit strings in that order)."""
    names = sorted(free_vars(a))
    return names, _formula_fn(a, {n: i for i, n in enumerate(names)})


def holds(a, env):
    names, fn = compile_formula(a)
    return fn(tuple(env[n] for n in names))


def falsify(a, maxlen=5, defs=None):
    """Exhaustive search for an environment making ``a`` false (lengths ≤ maxlen)."""
    if isinstance(a, str):
        a = parse_formula(a, defs if defs is not None else load_stdlib())
    if maxlen > 8:
        raise CheckError("maxlen must be at most 8")
    names, fn = compile_formula(a)
    values = list(all_strings(maxlen))
    for combo in itertools.product(values, repeat=len(names)):
        if not fn(combo):
            return dict(zip(names, combo))
    return None


# ------------------------------------------------------------ T1 <-> PF bridge

def to_pf(a):
    """T1 formula as a propositional formula whose atoms are equations."""
    if isinstance(a, Eq):
        return Atom(("eq", a))
    if isinstance(a, Not):
        return neg(to_pf(a.a))
    op = {And: land, Or: lor, Imp: limp, Iff: liff}.get(type(a))
    if op is None:
        raise CheckError(f"not a formula: {a!r}")
    return op(to_pf(a.a), to_pf(a.b))


def from_pf(f):
    if f.op == "atom":
        k = f.key
        if not (isinstance(k, tuple) and k[0] == "eq"):
            raise CheckError("propositional atom is not an equation")
        return k[1]
    if f.op == "not":
        return Not(from_pf(f.a))
    if f.op in ("T", "F"):
        raise CheckError("T1 formulas have no propositional constants")
    cls = {"and": And, "or": Or, "imp": Imp, "iff": Iff}[f.op]
    return cls(from_pf(f.a), from_pf(f.b))


# ------------------------------------------------------------ proofs

class T1Proof:
    """Theorem plus lines (formula, justification); indices 0-based.

    Justifications:
      ("prop", name, {meta: formula}),  ("eqax", gid, {key: term-or-symbol}),
      ("mp", i, j),  ("subst", i, var, term),
      ("nindl" | "nindr", ie, i0, i1, var),
      ("tind", ie, i0, i1, istep, x, z, hl, hr)
    """

    def __init__(self, theorem, lines):
        self.theorem = theorem
        self.lines = list(lines)

    def __len__(self):
        return len(self.lines)


def nind_premises(a, var, side):
    """Formulas A[ε], A→A[i·x] (left) or A→A[x·i] (right) for i = 0, 1."""
    x = Var(var)
    base = substitute(a, var, EPS_T)
    steps = []
    for c in (ZERO_T, ONE_T):
        t = _cat(c, x) if side == "l" else _cat(x, c)
        steps.append(Imp(a, substitute(a, var, t)))
    return base, steps[0], steps[1]


def tind_premises(a, x, z, hl, hr):
    """A[ε,z], A[0,z], A[1,z] and (A[x◀,hl z] ∧ A[▶x,hr z]) → A."""
    X = Var(x)
    Z = Var(z)
    left = subst_many(a, {x: _lh(X), z: App(hl, (Z,))})
    right = subst_many(a, {x: _rh(X), z: App(hr, (Z,))})
    return (substitute(a, x, EPS_T), substitute(a, x, ZERO_T), substitute(a, x, ONE_T),
            Imp(And(left, right), a))


class _Reject(Exception):
    pass


def check_line(proof, k, defs=None):
    """None when line ``k`` (0-based) is justified, else the reason."""
    defs = defs if defs is not None else load_stdlib()
    f, j = proof.lines[k]
    err = wf_formula(f)
    if err:
        return f"ill-formed formula: {err}"
    kind = j[0]

    def line(i):
        if not isinstance(i, int) or not 0 <= i < k:
            raise _Reject(f"line {i + 1 if isinstance(i, int) else i} is not an earlier line")
        return proof.lines[i][0]

    try:
        if kind == "prop":
            name, inst = j[1], j[2]
            if name not in hilbert.T1_AXIOMS:
                return f"unknown propositional axiom {name}"
            extra = set(inst) - set(hilbert.AXIOM_METAS[name])
            if extra:
                return f"{name} has no metavariable {sorted(extra)[0]}"
            missing = set(hilbert.AXIOM_METAS[name]) - set(inst)
            if missing:
                return f"{name} needs {sorted(missing)[0]} := <formula>"
            want = hilbert.instantiate(hilbert.AXIOMS[name], {m: to_pf(v) for m, v in inst.items()})
            if want is not to_pf(f):
                return f"not an instance of {name}"
            return None
        if kind == "eqax":
            try:
                want = axiom_instance(j[1], j[2], defs)
            except (CheckError, ParseError) as e:
                return str(e)
            if want != f:
                return f"not an instance of axiom {j[1]}"
            return None
        if kind == "mp":
            a, b = line(j[1]), line(j[2])
            if not (isinstance(b, Imp) and b.a == a and b.b == f):
                return "modus ponens antecedent mismatch"
            return None
        if kind == "subst":
            src, var, t = line(j[1]), j[2], j[3]
            err = _wf_term(t)
            if err:
                return err
            if substitute(src, var, t) != f:
                return f"line is not line {j[1] + 1} with {var} replaced"
            return None
        if kind in ("nindl", "nindr"):
            base, s0, s1 = nind_premises(f, j[4], kind[-1])
            for want, i, label in ((base, j[1], "base"), (s0, j[2], "0-step"), (s1, j[3], "1-step")):
                if line(i) != want:
                    return f"{kind} {label} premise (line {i + 1}) does not match"
            return None
        if kind == "tind":
            _, ie, i0, i1, ist, x, z, hl, hr = j
            for s, nm in ((hl, "hl"), (hr, "hr")):
                err = wf_check(s)
                if err:
                    return f"tind {nm}: {err}"
                if arity(s) != 1:
                    return f"tind {nm} must be unary"
                if rank(s) != 0:
                    return f"tind {nm} must be rank 0"
            if x == z:
                return "tind needs two distinct variables"
            want = tind_premises(f, x, z, hl, hr)
            labels = ("ε", "0", "1", "step")
            for w, i, lab in zip(want, (ie, i0, i1, ist), labels):
                if line(i) != w:
                    return f"tind {lab} premise (line {i + 1}) does not match"
            return None
    except _Reject as e:
        return str(e)
    return f"unknown justification {kind}"


def check_proof(proof, defs=None):
    """None if the proof is correct, else (line number 1-based, reason)."""
    if not proof.lines:
        return (0, "no lines")
    for k in range(len(proof.lines)):
        err = check_line(proof, k, defs)
        if err:
            return (k + 1, err)
    if proof.lines[-1][0] != proof.theorem:
        return (len(proof.lines), "last line is not the theorem")
    return None


# ------------------------------------------------------------ file format

def _inst_text(inst):
    parts = []
    for k, v in inst.items():
        if isinstance(v, SYMBOL_TYPES):
            parts.append(f"{k} := {print_sym(v)}")
        elif isinstance(v, FORMULA_TYPES):
            parts.append(f"{k} := {print_formula(v)}")
        else:
            parts.append(f"{k} := {print_term(v)}")
    return "{" + ", ".join(parts) + "}"


def just_text(j, formula=None):
    kind = j[0]
    if kind == "prop":
        return f"prop {j[1]} {_inst_text(j[2])}"
    if kind == "eqax":
        return f"eqax {j[1]} {_inst_text(j[2])}" if j[2] else f"eqax {j[1]}"
    if kind == "mp":
        return f"mp {j[1] + 1} {j[2] + 1}"
    if kind == "subst":
        return f"subst {j[1] + 1} {j[2]} {print_term(j[3])}"
    if kind in ("nindl", "nindr"):
        a = f" A={print_formula(formula)}" if formula is not None else ""
        return f"{kind} {j[1] + 1} {j[2] + 1} {j[3] + 1}{a} on {j[4]}"
    if kind == "tind":
        _, ie, i0, i1, ist, x, z, hl, hr = j
        return (f"tind {ie + 1} {i0 + 1} {i1 + 1} {ist + 1} on {x} {z} "
                f"hl={print_sym(hl)} hr={print_sym(hr)}")
    raise CheckError(f"unknown justification {kind}")


def dumps(proof):
    out = [f"theorem: {print_formula(proof.theorem)}"]
    for k, (f, j) in enumerate(proof.lines, 1):
        out.append(f"{k}: {print_formula(f)} ; {just_text(j, f)}")
    return "\n".join(out) + "\n"


def _split_top(text, sep=","):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts]


def _parse_inst(text, defs, kind, name):
    text = text.strip()
    if not text:
        return {}
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError("instantiation must be written {key := value, ...}")
    out = {}
    for part in _split_top(text[1:-1]):
        if ":=" not in part:
            raise ParseError(f"bad instantiation entry {part!r}")
        k, v = (s.strip() for s in part.split(":=", 1))
        if kind == "prop":
            out[k] = parse_formula(v, defs)
        elif k in SYMBOL_METAS.get(name, ()):
            out[k] = parse_symbol(v, defs)
        else:
            out[k] = parse_term(v, defs)
    return out


def _num(tok):
    if not re.fullmatch(r"\d+", tok):
        raise ParseError(f"expected a line number, got {tok!r}")
    return int(tok) - 1


def parse_justification(text, defs=None):
    defs = defs if defs is not None else load_stdlib()
    text = text.strip()
    head, _, rest = text.partition(" ")
    rest = rest.strip()
    if head in ("prop", "eqax"):
        name, _, inst = rest.partition(" ")
        return (head, name, _parse_inst(inst, defs, head, name))
    if head == "mp":
        a = rest.split()
        if len(a) != 2:
            raise ParseError("mp takes two line numbers")
        return ("mp", _num(a[0]), _num(a[1]))
    if head == "subst":
        m = re.match(r"(\d+)\s+(\S+)\s+(.*)$", rest, re.S)
        if not m:
            raise ParseError("subst takes a line, a variable and a term")
        return ("subst", int(m.group(1)) - 1, m.group(2), parse_term(m.group(3), defs))
    if head in ("nindl", "nindr"):
        m = re.match(r"(\d+)\s+(\d+)\s+(\d+)\s+(?:A=(.*)\s+)?on\s+(\S+)\s*$", rest, re.S)
        if not m:
            raise ParseError(f"{head} takes three line numbers and 'on <var>'")
        j = (head, int(m.group(1)) - 1, int(m.group(2)) - 1, int(m.group(3)) - 1, m.group(5))
        if m.group(4):
            j = j + (parse_formula(m.group(4), defs),)
        return j
    if head == "tind":
        m = re.match(r"(\d+)\s+(\d+)\s+(\d+)\s+(\d+)\s+on\s+(\S+)\s+(\S+)\s+hl=(.*?)\s+hr=(.*)$",
                     rest, re.S)
        if not m:
            raise ParseError("tind takes four line numbers, 'on x z', hl=<symbol> hr=<symbol>")
        return ("tind",) + tuple(int(m.group(k)) - 1 for k in range(1, 5)) + (
            m.group(5), m.group(6), parse_symbol(m.group(7), defs), parse_symbol(m.group(8), defs))
    raise ParseError(f"unknown justification {head!r}")


def loads(text, defs=None):
    """Parse a proof file."""
    defs = defs if defs is not None else load_stdlib()
    theorem = None
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        try:
            if s.startswith("theorem:"):
                theorem = parse_formula(s[len("theorem:"):].strip(), defs)
                continue
            m = re.match(r"(\d+):\s*(.*?)\s;\s(.*)$", s)
            if not m:
                raise ParseError("expected 'k: <formula> ; <justification>'")
            if int(m.group(1)) != len(lines) + 1:
                raise ParseError(f"line number {m.group(1)} out of sequence")
            f = parse_formula(m.group(2), defs)
            j = parse_justification(m.group(3), defs)
            if j[0] in ("nindl", "nindr") and len(j) == 6:
                if j[5] != f:
                    raise ParseError("A= does not match the line's formula")
                j = j[:5]
            lines.append((f, j))
        except ParseError as e:
            raise ParseError(f"proof line {lineno}: {e}") from None
    if theorem is None:
        raise ParseError("missing 'theorem:' line")
    return T1Proof(theorem, lines)


def load(path, defs=None):
    with open(path) as fh:
        return loads(fh.read(), defs)
