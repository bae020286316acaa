"""The Pebbler/Challenger pebbling game for the Boolean sentence value problem.

Sentences are binary trees over ⊤/⊥ leaves with → at every inner node.
A node is identified by the range (lo, hi) of leaf numbers below it; leaves
are numbered 1, 2, ... from the left.  The game is played between an
honest Pebbler (true values, true structure bits) and an honest Challenger
(lowest incorrectly pebbled legal node, otherwise A again), or replayed
from a list of moves with mistake detection.

Pebbler move layout: six pebble bits for U, V, U1, U2, V1, V2 in that
order, then three structure bits (U above V, A above U, A above V).
"""

import itertools
import random
from dataclasses import dataclass, field

__all__ = ["Sentence", "leaf", "imp", "parse_sentence", "sentence_text", "naive_eval",
           "pad_sentence", "leaf_rank", "Tree", "GameState", "init_round1", "next_round",
           "play_game", "Triplet", "triplet_or", "triplet_imp", "triplet_comp",
           "all_triplets", "random_sentence", "all_shapes", "BSVPError", "PEBBLER",
           "CHALLENGER", "LABELS"]

PEBBLER, CHALLENGER = "Pebbler", "Challenger"
LABELS = ("A", "U", "U1", "U2", "V", "V1", "V2")


class BSVPError(ValueError):
    pass


# ------------------------------------------------------------ sentences

@dataclass(frozen=True)
class Sentence:
    """Leaf when ``left`` is None (``value`` holds the bit), else left → right."""
    value: int = 0
    left: object = None
    right: object = None

    @property
    def is_leaf(self):
        return self.left is None

    def leaves(self):
        if self.is_leaf:
            return 1
        return self.left.leaves() + self.right.leaves()


def leaf(v):
    return Sentence(int(bool(v)))


def imp(a, b):
    return Sentence(0, a, b)


TOP, BOT = leaf(1), leaf(0)


def naive_eval(s):
    """Plain recursive evaluation of →."""
    stack = [(s, False)]
    vals = {}
    while stack:
        n, done = stack.pop()
        if n.is_leaf:
            vals[id(n)] = n.value
        elif done:
            vals[id(n)] = int((not vals[id(n.left)]) or vals[id(n.right)])
        else:
            stack.append((n, True))
            stack.append((n.right, False))
            stack.append((n.left, False))
    return bool(vals[id(s)])


def parse_sentence(text):
    """Nested parentheses over T and F, e.g. ``(T -> (F -> T))`` or ``(T (F T))``."""
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    toks = [t for t in toks if t not in ("->", "→")]
    pos = 0

    def walk():
        nonlocal pos
        if pos >= len(toks):
            raise BSVPError("unexpected end of sentence")
        t = toks[pos]
        pos += 1
        if t in ("T", "1", "⊤"):
            return TOP
        if t in ("F", "0", "⊥"):
            return BOT
        if t != "(":
            raise BSVPError(f"unexpected token {t!r}")
        a = walk()
        b = walk()
        if pos >= len(toks) or toks[pos] != ")":
            raise BSVPError("expected ')'")
        pos += 1
        return imp(a, b)

    s = walk()
    if pos != len(toks):
        raise BSVPError("trailing input after sentence")
    return s


def sentence_text(s):
    if s.is_leaf:
        return "T" if s.value else "F"
    return f"({sentence_text(s.left)} -> {sentence_text(s.right)})"


def pad_sentence(s):
    """Prepend ⊤ → · until there are 2^(δ+1) − 1 leaves.

    Returns (padded sentence, δ, mask) where mask is the leaf range of the
    original root inside the padded tree.
    """
    n = s.leaves()
    delta = 0
    while (1 << (delta + 1)) - 1 < n:
        delta += 1
    extra = (1 << (delta + 1)) - 1 - n
    out = s
    for _ in range(extra):
        out = imp(TOP, out)
    return out, delta, (extra + 1, extra + n)


def leaf_rank(k):
    """Largest r with 2^r dividing the leaf number k."""
    if k < 1:
        raise BSVPError("leaf numbers start at 1")
    return (k & -k).bit_length() - 1


# ------------------------------------------------------------ tree with ranges

class Tree:
    """Sentence with nodes indexed by leaf range; values precomputed."""

    def __init__(self, s):
        self.s = s
        self.n = s.leaves()
        d = 0
        while (1 << (d + 1)) - 1 < self.n:
            d += 1
        if (1 << (d + 1)) - 1 != self.n:
            raise BSVPError(f"sentence has {self.n} leaves, not 2^(d+1)-1; pad it first")
        self.d = d
        self.kids = {}
        self.value = {}
        self.parent = {}
        self.depth = {}
        self.root = self._index(s, 1, 0)[0]
        self.leaf_value = {}
        for (lo, hi), v in self.value.items():
            if lo == hi and (lo, hi) not in self.kids:
                self.leaf_value[lo] = v

    def _index(self, s, start, depth):
        # iterative post-order to survive deep unbalanced trees
        stack = [(s, start, depth, 0, None)]
        results = []
        while stack:
            node, lo, dep, state, lres = stack.pop()
            if node.is_leaf:
                key = (lo, lo)
                self.value[key] = node.value
                self.depth[key] = dep
                results.append(key)
                continue
            if state == 0:
                stack.append((node, lo, dep, 1, None))
                stack.append((node.left, lo, dep + 1, 0, None))
            elif state == 1:
                lk = results.pop()
                stack.append((node, lo, dep, 2, lk))
                stack.append((node.right, lk[1] + 1, dep + 1, 0, None))
            else:
                rk = results.pop()
                key = (lo, rk[1])
                self.kids[key] = (lres, rk)
                self.parent[lres] = key
                self.parent[rk] = key
                self.value[key] = int((not self.value[lres]) or self.value[rk])
                self.depth[key] = dep
                results.append(key)
        return results

    def is_leaf(self, x):
        return x not in self.kids

    @staticmethod
    def above_eq(x, y):
        """x ⪰ y: x is y or an ancestor of y."""
        return x[0] <= y[0] and y[1] <= x[1]

    def above(self, x, y):
        return x != y and self.above_eq(x, y)

    def leaf_node(self, k):
        return (k, k)

    def lca(self, a, b):
        """Lowest common ancestor of two nodes (or leaf numbers)."""
        if isinstance(a, int):
            a = (a, a)
        if isinstance(b, int):
            b = (b, b)
        x = a
        while not self.above_eq(x, b):
            x = self.parent[x]
        return x

    def children(self, x):
        return self.kids.get(x)

    def path_down(self, top, bottom):
        """Nodes from ``top`` down to ``bottom`` (inclusive)."""
        out = []
        x = bottom
        while True:
            out.append(x)
            if x == top:
                break
            x = self.parent[x]
        return out[::-1]


# ------------------------------------------------------------ game state

@dataclass
class GameState:
    round: int
    A: tuple
    B: tuple
    L: int
    C: int
    R: int
    pebbles: dict = field(default_factory=dict)      # node -> set of bits
    agreed: set = field(default_factory=set)
    challenged: list = field(default_factory=list)

    def copy(self):
        return GameState(self.round, self.A, self.B, self.L, self.C, self.R,
                         {k: set(v) for k, v in self.pebbles.items()}, set(self.agreed),
                         list(self.challenged))


def init_round1(tree, d=None):
    """State after round 0 (root pebbled 1 and challenged)."""
    d = tree.d if d is None else d
    if d < 1:
        raise BSVPError("round 1 needs d ≥ 1")
    c = 1 << d
    st = GameState(1, tree.root, (c, c), 1 << (d - 1), c, (1 << d) + (1 << (d - 1)))
    st.pebbles[tree.root] = {1}
    st.challenged.append(tree.root)
    return st


def _uv(tree, st):
    U = tree.lca(st.L, st.C)
    V = tree.lca(st.C, st.R)
    u1, u2 = tree.children(U)
    v1, v2 = tree.children(V)
    return {"U": U, "V": V, "U1": u1, "U2": u2, "V1": v1, "V2": v2, "A": st.A}


def true_structure(tree, st):
    n = _uv(tree, st)
    return (int(tree.above(n["U"], n["V"])), int(tree.above(st.A, n["U"])),
            int(tree.above(st.A, n["V"])))


def honest_pebbler(tree, st):
    n = _uv(tree, st)
    bits = tuple(tree.value[n[k]] for k in ("U", "V", "U1", "U2", "V1", "V2"))
    return bits + true_structure(tree, st)


def _legal(tree, st, node):
    return (tree.above_eq(st.A, node) and not tree.above_eq(st.B, node)
            and not any(tree.above_eq(a, node) for a in st.agreed))


def _pebble_value(st, node):
    vals = st.pebbles.get(node)
    return next(iter(vals)) if vals and len(vals) == 1 else None


def honest_challenger(tree, st):
    """Label of the lowest incorrectly pebbled legal node, else A."""
    n = _uv(tree, st)
    best = None
    for lab in ("U", "V", "U1", "U2", "V1", "V2", "A"):
        node = n[lab]
        if not _legal(tree, st, node):
            continue
        pv = _pebble_value(st, node)
        if pv is None or pv == tree.value[node]:
            continue
        if best is None or tree.depth[node] > tree.depth[n[best]]:
            best = lab
    return best or "A"


def _delta(tree, i):
    e = tree.d - i - 1
    if e < 0:
        raise BSVPError(f"round {i} is past the last round {tree.d}")
    return 1 << e


def next_leaves(tree, st, label, structure):
    """(L, C, R) for round i+1 from the challenged label and the asserted structure."""
    u_over_v, a_over_u, a_over_v = structure
    dl = _delta(tree, st.round)
    L, C, R = st.L, st.C, st.R
    if label == "U1":
        return L - dl, L, L + dl
    if label == "U2":
        return L + dl, C, (R + dl if u_over_v else R - dl)
    if label == "V1":
        return (L + dl if u_over_v else L - dl), C, R - dl
    if label == "V2":
        return R - dl, R, R + dl
    if label == "A":
        if a_over_u and a_over_v:
            return L - dl, C, R + dl
        if not a_over_u and not a_over_v:
            return L + dl, C, R - dl
        if not a_over_u and a_over_v:       # U ⪰ A ⊳ V
            return L + dl, C, R + dl
        return L - dl, C, R - dl            # V ⪰ A ⊳ U
    raise BSVPError(f"label {label} ends the game")


def _highest_pebbled_below(tree, st, a, c):
    for x in tree.path_down(a, (c, c))[1:]:
        if st.pebbles.get(x):
            return x
    return (c, c)


def next_round(tree, st, move, label):
    """Apply a Pebbler move and a challenge; returns (new state, mistakes, ended).

    ``mistakes`` lists (player, reason) in detection order.
    """
    mistakes = []
    n = _uv(tree, st)
    new = st.copy()
    placed = []
    for lab, bit in zip(("U", "V", "U1", "U2", "V1", "V2"), move[:6]):
        new.pebbles.setdefault(n[lab], set()).add(bit)
        placed.append(n[lab])
    mistakes += pebbler_mistakes(tree, new, st, move[6:9])
    mistakes += challenger_mistakes(tree, new, st, n[label], label)
    if mistakes or label in ("U", "V"):
        return new, mistakes, True
    node = n[label]
    L, C, R = next_leaves(tree, st, label, move[6:9])
    for p in placed:
        if tree.above(node, p):
            new.agreed.add(p)
    new.round = st.round + 1
    new.A = node
    new.L, new.C, new.R = L, C, R
    new.challenged.append(node)
    if 1 <= C <= tree.n and tree.above_eq(node, (C, C)):
        new.B = _highest_pebbled_below(tree, new, node, C)
    else:
        new.B = (C, C)
    return new, mistakes, False


def pebbler_mistakes(tree, new, old, structure):
    out = []
    for x, vals in new.pebbles.items():
        if len(vals) > 1:
            out.append((PEBBLER, f"node {x} pebbled with both 0 and 1"))
    for x, vals in new.pebbles.items():
        if len(vals) != 1:
            continue
        v = next(iter(vals))
        if tree.is_leaf(x):
            if v != tree.value[x]:
                out.append((PEBBLER, f"leaf {x[0]} pebbled incorrectly"))
            continue
        a, b = tree.children(x)
        va = tree.value[a] if tree.is_leaf(a) else _pebble_value(new, a)
        vb = tree.value[b] if tree.is_leaf(b) else _pebble_value(new, b)
        if va is not None and vb is not None and v != int((not va) or vb):
            out.append((PEBBLER, f"gate {x} pebbled incompatibly with its inputs"))
    if tuple(structure) != true_structure(tree, old):
        out.append((PEBBLER, "incorrect assertion about the positions of A, U and V"))
    return out


def challenger_mistakes(tree, new, old, node, label):
    out = []
    if any(tree.above(node, c) for c in old.challenged):
        out.append((CHALLENGER, f"challenged {label} above a previously challenged node"))
    if any(tree.above_eq(a, node) for a in old.agreed):
        out.append((CHALLENGER, f"challenged {label} at or below an agreed pebble"))
    if not tree.above_eq(old.A, node) or tree.above_eq(old.B, node):
        out.append((CHALLENGER, f"challenged {label} outside the subtree of A minus that of B"))
    pv = _pebble_value(new, node)
    if tree.is_leaf(node):
        if pv == tree.value[node]:
            out.append((CHALLENGER, f"challenged correctly pebbled leaf {node[0]}"))
    elif pv is not None:
        a, b = tree.children(node)
        va = tree.value[a] if tree.is_leaf(a) else _pebble_value(new, a)
        vb = tree.value[b] if tree.is_leaf(b) else _pebble_value(new, b)
        if va is not None and vb is not None and pv == int((not va) or vb):
            out.append((CHALLENGER, f"challenged correctly pebbled gate {label}"))
    return out


# ------------------------------------------------------------ audits

def audit(tree, st):
    """Round invariants 1-4; returns a list of violated conditions."""
    bad = []
    A, B = st.A, st.B
    Cn = (st.C, st.C)
    if not (1 <= st.C <= tree.n and tree.above_eq(A, B) and tree.above_eq(B, Cn)):
        bad.append("1: A ⪰ B ⪰ C fails")
    elif A == B and B != Cn:
        bad.append("1: A = B but B ≠ C")
    if st.challenged and st.challenged[-1] != A:
        bad.append("2: A is not the latest challenged node")
    if any(tree.above(A, c) for c in st.challenged):
        bad.append("2: A is not the lowest challenged node")
    if 1 <= st.C <= tree.n and tree.above_eq(A, Cn):
        want = Cn
        for x in tree.path_down(A, Cn)[1:]:
            if st.pebbles.get(x):
                want = x
                break
        if want != B:
            bad.append("2: B is not the highest pebbled node below A")
    r = tree.d - st.round
    if not (1 <= st.L <= tree.n and 1 <= st.R <= tree.n) or st.L == st.R:
        bad.append("3: L and R must be distinct leaves")
    elif leaf_rank(st.L) != r or leaf_rank(st.R) != r or leaf_rank(st.C) <= r:
        bad.append("3: rank condition fails")
    w = 1 << r
    for k in range(A[0], A[1] + 1):
        if B[0] <= k <= B[1]:
            continue
        if not (st.L - w < k < st.L + w or st.R - w < k < st.R + w):
            bad.append(f"4: leaf {k} outside the windows around L and R")
            break
    return bad


# ------------------------------------------------------------ play

@dataclass
class Result:
    winner: str
    rounds: int
    trace: list
    mistakes: list
    audit_failures: list


def play_game(s, pebbler=None, challenger=None, do_audit=True):
    """Play on a padded sentence; returns a Result (winner, rounds, trace, ...)."""
    tree = s if isinstance(s, Tree) else Tree(s)
    pebbler = pebbler or honest_pebbler
    challenger = challenger or honest_challenger
    trace = []
    audits = []
    # round 0: root pebbled 1 and challenged
    root = tree.root
    if tree.is_leaf(root):
        if tree.value[root] != 1:
            m = [(PEBBLER, "leaf 1 pebbled incorrectly")]
        else:
            m = [(CHALLENGER, "challenged correctly pebbled leaf 1")]
        return Result(_other(m[0][0]), 0, trace, m, audits)
    st = init_round1(tree)
    if do_audit:
        audits += [(1, b) for b in audit(tree, st)]
    while True:
        move = tuple(pebbler(tree, st))
        # a Pebbler mistake ends the game before the Challenger moves
        tmp = st.copy()
        n = _uv(tree, st)
        for lab, bit in zip(("U", "V", "U1", "U2", "V1", "V2"), move[:6]):
            tmp.pebbles.setdefault(n[lab], set()).add(bit)
        pm = pebbler_mistakes(tree, tmp, st, move[6:9])
        if pm:
            trace.append(_trace_line(tree, st, n, move, None))
            return Result(CHALLENGER, st.round, trace, pm, audits)
        tmp_state = tmp
        label = challenger(tree, tmp_state)
        trace.append(_trace_line(tree, st, n, move, label))
        new, mistakes, ended = next_round(tree, st, move, label)
        if mistakes:
            return Result(_other(mistakes[0][0]), st.round, trace, mistakes, audits)
        if ended:
            raise BSVPError("game ended without a mistake")
        st = new
        if st.round > tree.d:
            raise BSVPError("game lasted more than d rounds")
        if do_audit:
            audits += [(st.round, b) for b in audit(tree, st)]


def _other(p):
    return CHALLENGER if p == PEBBLER else PEBBLER


def _fmt(x):
    return str(x[0]) if x[0] == x[1] else f"{x[0]}-{x[1]}"


def _trace_line(tree, st, n, move, label):
    pebs = " ".join(f"{k}={b}" for k, b in zip(("U", "V", "U1", "U2", "V1", "V2"), move[:6]))
    s = " ".join(f"{k}={b}" for k, b in zip(("UV", "AU", "AV"), move[6:9]))
    return (f"round {st.round}: A={_fmt(st.A)} B={_fmt(st.B)} L={st.L} C={st.C} R={st.R} "
            f"U={_fmt(n['U'])} V={_fmt(n['V'])} pebbles[{pebs}] structure[{s}] "
            f"challenge={label or '-'}")


# ------------------------------------------------------------ truth triplets

@dataclass(frozen=True)
class Triplet:
    c: int
    t_top: int
    t_bot: int

    @property
    def unscarred(self):
        return self.t_top == self.t_bot


def triplet_or(a, b):
    return Triplet(a.c | b.c, (a.c & a.t_top) | (b.c & b.t_top), (a.c & a.t_bot) | (b.c & b.t_bot))


def triplet_imp(a, b):
    return Triplet(a.c & b.c, int((not a.t_top) or b.t_top), int((not a.t_bot) or b.t_bot))


def triplet_comp(a, b):
    def pick(t):
        return a.t_top if t else a.t_bot
    return Triplet(a.c & b.c, pick(b.t_top), pick(b.t_bot))


def all_triplets():
    return [Triplet(*bits) for bits in itertools.product((0, 1), repeat=3)]


# ------------------------------------------------------------ generators

def random_sentence(n_leaves, rng):
    """Uniform-ish random shape with random labels."""
    if n_leaves == 1:
        return leaf(rng.randrange(2))
    k = rng.randrange(1, n_leaves)
    return imp(random_sentence(k, rng), random_sentence(n_leaves - k, rng))


def all_shapes(n_leaves):
    """Every full binary tree shape with the given leaf count (leaves unlabeled)."""
    if n_leaves == 1:
        yield None
        return
    for k in range(1, n_leaves):
        for a in all_shapes(k):
            for b in all_shapes(n_leaves - k):
                yield (a, b)


def label_shape(shape, bits):
    it = iter(bits)

    def walk(s):
        if s is None:
            return leaf(next(it))
        return imp(walk(s[0]), walk(s[1]))
    return walk(shape)


def sample_labelings(n_leaves, limit, rng):
    total = 1 << n_leaves
    if total <= limit:
        return [tuple((m >> i) & 1 for i in range(n_leaves)) for m in range(total)]
    picks = rng.sample(range(total), limit)
    return [tuple((m >> i) & 1 for i in range(n_leaves)) for m in sorted(picks)]


def shapes_sample(max_leaves=15, labelings=128, big_shapes=40, rng=None):
    """Deterministic sentence sample up to ``max_leaves`` leaves.

    Every shape with at most 7 leaves gets all of its labelings (at most
    2^7).  Larger sizes get ``big_shapes`` seeded shapes with ``labelings``
    seeded labelings each.
    """
    rng = rng or random.Random(0)
    out = []
    for n in range(1, max_leaves + 1):
        if n <= 7:
            shapes = list(all_shapes(n))
        else:
            shapes = [_random_shape(n, rng) for _ in range(big_shapes)]
        for sh in shapes:
            for bits in sample_labelings(n, labelings, rng):
                out.append(label_shape(sh, bits))
    return out


def _random_shape(n, rng):
    if n == 1:
        return None
    k = rng.randrange(1, n)
    return (_random_shape(k, rng), _random_shape(n - k, rng))
