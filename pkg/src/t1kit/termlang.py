"""Terms, function symbols and formulas of the bit-string theory.

Concrete syntax is a prefix s-expression language::

    (cat "01" x)                  application of a base function
    (lam (x y) (cat y x))         lambda symbol, closed over its parameters
    (lcrn h) (rcrn h)             concatenation recursion on notation
    (trn g h hl hr)               tree recursion on notation
    (= t u) (not A) (and A B) (or A B) (imp A B) (iff A B)

Definition files hold ``def NAME = <symbol>`` entries; an entry may span
several lines until its parentheses balance.  A line ``## group: NAME``
sets the provenance note for the definitions that follow.
"""

from dataclasses import dataclass, field
import re

from .bitstr import BASE_ARITY, is_bits


class ParseError(ValueError):
    def __init__(self, msg, pos=None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at offset {pos})")


class WellFormednessError(ValueError):
    pass


# ---------------------------------------------------------------- symbols

@dataclass(frozen=True)
class Base:
    tag: str


@dataclass(frozen=True)
class Lam:
    params: tuple
    body: object


@dataclass(frozen=True)
class LCRN:
    h: object


@dataclass(frozen=True)
class RCRN:
    h: object


@dataclass(frozen=True)
class TRN:
    g: object
    h: object
    hl: object
    hr: object


@dataclass(frozen=True)
class Named:
    """Reference to a registry definition; compares by name."""
    name: str
    sym: object = field(compare=False, repr=False)
    note: str = field(default="", compare=False, repr=False)


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    bits: str


@dataclass(frozen=True)
class App:
    sym: object
    args: tuple = ()


# ---------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    a: object


@dataclass(frozen=True)
class And:
    a: object
    b: object


@dataclass(frozen=True)
class Or:
    a: object
    b: object


@dataclass(frozen=True)
class Imp:
    a: object
    b: object


@dataclass(frozen=True)
class Iff:
    a: object
    b: object


BINARY = {"and": And, "or": Or, "imp": Imp, "iff": Iff}
BINARY_NAME = {And: "and", Or: "or", Imp: "imp", Iff: "iff"}
FORMULA_TYPES = (Eq, Not, And, Or, Imp, Iff)
SYMBOL_TYPES = (Base, Lam, LCRN, RCRN, TRN, Named)
TERM_TYPES = (Var, Lit, App)


def B(tag):
    return Base(tag)


def app(sym, *args):
    if isinstance(sym, str):
        sym = Base(sym)
    return App(sym, tuple(args))


EPS_T = App(Base("eps"))
ZERO_T = App(Base("zero"))
ONE_T = App(Base("one"))


def conj(*fs):
    """Right-nested conjunction."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


# ---------------------------------------------------------------- arity/rank

def arity(s):
    if isinstance(s, Base):
        return BASE_ARITY[s.tag]
    if isinstance(s, Lam):
        return len(s.params)
    if isinstance(s, (LCRN, RCRN)):
        return arity(s.h)
    if isinstance(s, TRN):
        return arity(s.g)
    if isinstance(s, Named):
        return arity(s.sym)
    raise TypeError(f"not a function symbol: {s!r}")


def rank(t):
    if isinstance(t, (Var, Lit, Base)):
        return 0
    if isinstance(t, App):
        return max([rank(t.sym)] + [rank(a) for a in t.args])
    if isinstance(t, Lam):
        return rank(t.body)
    if isinstance(t, (LCRN, RCRN)):
        return rank(t.h)
    if isinstance(t, TRN):
        return 1
    if isinstance(t, Named):
        return rank(t.sym)
    if isinstance(t, Eq):
        return max(rank(t.left), rank(t.right))
    if isinstance(t, Not):
        return rank(t.a)
    if isinstance(t, (And, Or, Imp, Iff)):
        return max(rank(t.a), rank(t.b))
    raise TypeError(f"cannot rank {t!r}")


def free_vars(t, acc=None):
    if acc is None:
        acc = set()
    if isinstance(t, Var):
        acc.add(t.name)
    elif isinstance(t, App):
        for a in t.args:
            free_vars(a, acc)
    elif isinstance(t, Eq):
        free_vars(t.left, acc)
        free_vars(t.right, acc)
    elif isinstance(t, Not):
        free_vars(t.a, acc)
    elif isinstance(t, (And, Or, Imp, Iff)):
        free_vars(t.a, acc)
        free_vars(t.b, acc)
    return acc


def _wf_term(t):
    if isinstance(t, (Var, Lit)):
        if isinstance(t, Lit) and not is_bits(t.bits):
            return f"bad literal {t.bits!r}"
        return None
    if isinstance(t, App):
        err = wf_check(t.sym)
        if err:
            return err
        if len(t.args) != arity(t.sym):
            return f"arity mismatch: {print_sym(t.sym)} takes {arity(t.sym)} arguments, got {len(t.args)}"
        for a in t.args:
            err = _wf_term(a)
            if err:
                return err
        return None
    return f"not a term: {t!r}"


_wf_named = {}


def wf_check(s):
    """Return None when the symbol is well formed, else a short report."""
    if isinstance(s, Base):
        return None if s.tag in BASE_ARITY else f"unknown base function {s.tag}"
    if isinstance(s, Named):
        key = (s.name, id(s.sym))
        if key not in _wf_named:
            _wf_named[key] = wf_check(s.sym)
        return _wf_named[key]
    if isinstance(s, Lam):
        if len(set(s.params)) != len(s.params):
            return "repeated lambda parameter"
        extra = free_vars(s.body) - set(s.params)
        if extra:
            return f"unbound variable {sorted(extra)[0]}"
        return _wf_term(s.body)
    if isinstance(s, (LCRN, RCRN)):
        err = wf_check(s.h)
        if err:
            return err
        if arity(s.h) < 1:
            return "CRN.h must take at least one argument"
        return None
    if isinstance(s, TRN):
        for part in ("g", "h", "hl", "hr"):
            err = wf_check(getattr(s, part))
            if err:
                return err
        for part in ("h", "hl", "hr"):
            if rank(getattr(s, part)) != 0:
                return f"TRN.{part} must be rank 0"
        if arity(s.hl) != 1:
            return "TRN.hl must be unary"
        if arity(s.hr) != 1:
            return "TRN.hr must be unary"
        if arity(s.g) < 2:
            return "TRN.g must take at least two arguments"
        if arity(s.h) != arity(s.g) + 2:
            return "TRN.h must take two more arguments than TRN.g"
        return None
    return f"not a function symbol: {s!r}"


def wf_formula(f):
    if isinstance(f, Eq):
        return _wf_term(f.left) or _wf_term(f.right)
    if isinstance(f, Not):
        return wf_formula(f.a)
    if isinstance(f, (And, Or, Imp, Iff)):
        return wf_formula(f.a) or wf_formula(f.b)
    return f"not a formula: {f!r}"


# ---------------------------------------------------------------- substitution

def substitute(a, x, t):
    """Replace free occurrences of variable ``x`` by term ``t``."""
    return subst_many(a, {x: t})


def subst_many(a, m):
    """Simultaneous substitution; lambda bodies are closed and left alone."""
    if isinstance(a, Var):
        return m.get(a.name, a)
    if isinstance(a, Lit):
        return a
    if isinstance(a, App):
        if not a.args:
            return a
        return App(a.sym, tuple(subst_many(b, m) for b in a.args))
    if isinstance(a, Eq):
        return Eq(subst_many(a.left, m), subst_many(a.right, m))
    if isinstance(a, Not):
        return Not(subst_many(a.a, m))
    if isinstance(a, (And, Or, Imp, Iff)):
        return type(a)(subst_many(a.a, m), subst_many(a.b, m))
    raise TypeError(f"cannot substitute into {a!r}")


# ---------------------------------------------------------------- printing

def print_sym(s):
    if isinstance(s, Base):
        return s.tag
    if isinstance(s, Named):
        return s.name
    if isinstance(s, Lam):
        return f"(lam ({' '.join(s.params)}) {print_term(s.body)})"
    if isinstance(s, LCRN):
        return f"(lcrn {print_sym(s.h)})"
    if isinstance(s, RCRN):
        return f"(rcrn {print_sym(s.h)})"
    if isinstance(s, TRN):
        return f"(trn {' '.join(print_sym(p) for p in (s.g, s.h, s.hl, s.hr))})"
    raise TypeError(f"not a symbol: {s!r}")


def print_term(t):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lit):
        return f'"{t.bits}"'
    if isinstance(t, App):
        if not t.args and isinstance(t.sym, (Base, Named)):
            return print_sym(t.sym)
        return "(" + " ".join([print_sym(t.sym)] + [print_term(a) for a in t.args]) + ")"
    raise TypeError(f"not a term: {t!r}")


def print_formula(f):
    if isinstance(f, Eq):
        return f"(= {print_term(f.left)} {print_term(f.right)})"
    if isinstance(f, Not):
        return f"(not {print_formula(f.a)})"
    if isinstance(f, (And, Or, Imp, Iff)):
        return f"({BINARY_NAME[type(f)]} {print_formula(f.a)} {print_formula(f.b)})"
    raise TypeError(f"not a formula: {f!r}")


def to_text(ast):
    if isinstance(ast, FORMULA_TYPES):
        return print_formula(ast)
    if isinstance(ast, TERM_TYPES):
        return print_term(ast)
    return print_sym(ast)


# ---------------------------------------------------------------- reader

_TOKEN = re.compile(r'\s*(?:(\()|(\))|"([^"]*)"|([^\s()"]+))')
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")
KEYWORDS = {"lam", "lcrn", "rcrn", "trn"}


def tokenize(text):
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character", pos)
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1):
            out.append(("(", "(", start))
        elif m.group(2):
            out.append((")", ")", start))
        elif m.group(3) is not None:
            out.append(("lit", m.group(3), start - 1))
        elif m.group(4):
            out.append(("id", m.group(4), start))
        pos = m.end()
    return out


def read_sexpr(text):
    """Nested lists of (kind, value, pos) atoms."""
    toks = tokenize(text)
    if not toks:
        raise ParseError("empty input", 0)
    stack = [[]]
    opens = []
    for tok in toks:
        if tok[0] == "(":
            stack.append([])
            opens.append(tok[2])
        elif tok[0] == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", tok[2])
            lst = stack.pop()
            stack[-1].append(("list", lst, opens.pop()))
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise ParseError("missing ')'", opens[-1])
    if len(stack[0]) != 1:
        raise ParseError("trailing input", stack[0][1][2])
    return stack[0][0]


class DefRegistry:
    """Ordered map name -> Named symbol."""

    def __init__(self):
        self._defs = {}

    def __contains__(self, name):
        return name in self._defs

    def __getitem__(self, name):
        return self._defs[name]

    def get(self, name, default=None):
        return self._defs.get(name, default)

    def names(self):
        return list(self._defs)

    def items(self):
        return list(self._defs.items())

    def __len__(self):
        return len(self._defs)

    def add(self, name, sym, note=""):
        if name in BASE_ARITY or name in KEYWORDS:
            raise ParseError(f"cannot redefine {name}")
        if not _IDENT.match(name):
            raise ParseError(f"bad definition name {name!r}")
        if isinstance(sym, Named):
            sym = sym.sym
        err = wf_check(sym)
        if err:
            raise WellFormednessError(f"{name}: {err}")
        nm = Named(name, sym, note)
        self._defs[name] = nm
        return nm

    def lookup(self, name):
        return self._defs[name]

    def copy(self):
        r = DefRegistry()
        r._defs = dict(self._defs)
        return r


class _Parser:
    def __init__(self, defs):
        self.defs = defs

    def sym(self, node):
        kind, val, pos = node
        if kind == "id":
            if val in BASE_ARITY:
                return Base(val)
            if self.defs is not None and val in self.defs:
                return self.defs[val]
            raise ParseError(f"unknown function {val!r}", pos)
        if kind != "list" or not val:
            raise ParseError("expected a function symbol", pos)
        head = val[0]
        if head[0] != "id" or head[1] not in KEYWORDS:
            raise ParseError("expected lam, lcrn, rcrn or trn", pos)
        kw = head[1]
        rest = val[1:]
        if kw == "lam":
            if len(rest) != 2 or rest[0][0] != "list":
                raise ParseError("lam takes a parameter list and a body", pos)
            params = []
            for p in rest[0][1]:
                if p[0] != "id" or not _IDENT.match(p[1]):
                    raise ParseError("bad lambda parameter", p[2])
                params.append(p[1])
            body = self.term(rest[1], bound=set(params))
            lam = Lam(tuple(params), body)
            err = wf_check(lam)
            if err:
                raise ParseError(err, pos)
            return lam
        want = {"lcrn": 1, "rcrn": 1, "trn": 4}[kw]
        if len(rest) != want:
            raise ParseError(f"arity error: {kw} takes {want} symbol(s), got {len(rest)}", pos)
        parts = [self.sym(r) for r in rest]
        s = {"lcrn": LCRN, "rcrn": RCRN, "trn": TRN}[kw](*parts)
        err = wf_check(s)
        if err:
            raise ParseError(err, pos)
        return s

    def term(self, node, bound=None):
        kind, val, pos = node
        if kind == "lit":
            if not is_bits(val):
                raise ParseError(f"bad bit literal {val!r}", pos)
            return Lit(val)
        if kind == "id":
            if val in BASE_ARITY and BASE_ARITY[val] == 0:
                return App(Base(val))
            if (bound is None or val not in bound) and self.defs is not None \
                    and val in self.defs and arity(self.defs[val]) == 0:
                return App(self.defs[val])
            if val in BASE_ARITY or val in KEYWORDS:
                raise ParseError(f"{val} is not a term", pos)
            if not _IDENT.match(val):
                raise ParseError(f"bad variable name {val!r}", pos)
            return Var(val)
        if not val:
            raise ParseError("empty application", pos)
        head = val[0]
        if head[0] == "id" and head[1] in KEYWORDS:
            self.sym(node)   # surfaces arity and rank errors of the symbol itself
            raise ParseError("function symbol used as a term", pos)
        sym = self.sym(head)
        args = tuple(self.term(a, bound) for a in val[1:])
        if len(args) != arity(sym):
            raise ParseError(
                f"arity error: {print_sym(sym)} takes {arity(sym)} arguments, got {len(args)}", pos)
        return App(sym, args)

    def formula(self, node):
        kind, val, pos = node
        if kind != "list" or not val or val[0][0] != "id":
            raise ParseError("expected a formula", pos)
        op = val[0][1]
        rest = val[1:]
        if op == "=":
            if len(rest) != 2:
                raise ParseError("= takes two terms", pos)
            return Eq(self.term(rest[0]), self.term(rest[1]))
        if op == "not":
            if len(rest) != 1:
                raise ParseError("not takes one formula", pos)
            return Not(self.formula(rest[0]))
        if op in ("and", "or"):
            if len(rest) < 2:
                raise ParseError(f"{op} takes at least two formulas", pos)
            parts = [self.formula(r) for r in rest]
            out = parts[-1]
            for p in reversed(parts[:-1]):
                out = BINARY[op](p, out)
            return out
        if op in ("imp", "iff"):
            if len(rest) != 2:
                raise ParseError(f"{op} takes two formulas", pos)
            return BINARY[op](self.formula(rest[0]), self.formula(rest[1]))
        raise ParseError(f"unknown connective {op!r}", pos)


def parse_term(text, defs=None):
    return _Parser(defs).term(read_sexpr(text))


def parse_symbol(text, defs=None):
    return _Parser(defs).sym(read_sexpr(text))


def parse_formula(text, defs=None):
    return _Parser(defs).formula(read_sexpr(text))


def parse(text, defs=None):
    """Parse a formula, term or symbol, whichever the text is."""
    node = read_sexpr(text)
    p = _Parser(defs)
    if node[0] == "list" and node[1] and node[1][0][0] == "id":
        head = node[1][0][1]
        if head in ("=", "not", "and", "or", "imp", "iff"):
            return p.formula(node)
        if head in KEYWORDS:
            return p.sym(node)
    return p.term(node)


def _balanced(text):
    depth = 0
    for kind, _, _ in tokenize(text):
        if kind == "(":
            depth += 1
        elif kind == ")":
            depth -= 1
    return depth <= 0


def parse_defs(text, defs=None, note=""):
    """Read ``def NAME = <symbol>`` entries into a registry."""
    defs = DefRegistry() if defs is None else defs
    pending = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("## group:"):
            note = line.split(":", 1)[1].strip()
            continue
        if pending is None:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            m = re.match(r"def\s+(\S+)\s*=\s*(.*)$", line)
            if not m:
                raise ParseError(f"line {lineno}: expected 'def NAME = ...'")
            pending = [m.group(1), m.group(2), lineno]
        else:
            pending[1] += " " + line.split("#", 1)[0]
        if pending[1].strip() and _balanced(pending[1]):
            name, body, start = pending
            pending = None
            try:
                sym = parse_symbol(body, defs)
            except ParseError as e:
                raise ParseError(f"def {name} (line {start}): {e}") from None
            defs.add(name, sym, note)
    if pending is not None:
        raise ParseError(f"def {pending[0]} (line {pending[2]}): unbalanced parentheses")
    return defs
