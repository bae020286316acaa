import random

import pytest

from t1kit import bsvp
from t1kit.bsvp import (BOT, CHALLENGER, PEBBLER, TOP, Tree, Triplet, honest_pebbler, imp,
                        init_round1, leaf, leaf_rank, naive_eval, next_leaves, pad_sentence,
                        parse_sentence, play_game, triplet_imp)


def _full(d, rng):
    s = bsvp.random_sentence((1 << (d + 1)) - 1, rng)
    return s


def test_leaf_rank():
    assert leaf_rank(8) == 3
    assert leaf_rank(16) == 4
    assert leaf_rank(7) == 0


def test_round_one_positions():
    rng = random.Random(0)
    st = init_round1(Tree(_full(4, rng)))
    assert (st.C, st.L, st.R) == (16, 8, 24)
    st = init_round1(Tree(_full(1, rng)))
    assert (st.C, st.L, st.R) == (2, 1, 3)


def test_v2_challenge_moves_right():
    tree = Tree(_full(4, random.Random(1)))
    st = init_round1(tree)
    assert next_leaves(tree, st, "V2", (0, 1, 1)) == (20, 24, 28)


def test_padding():
    s = parse_sentence("((1 -> 0) -> (0 -> 1))")
    assert s.leaves() == 4
    padded, d, _ = pad_sentence(imp(s, leaf(1)))
    assert padded.leaves() == 7 and d == 2
    assert naive_eval(padded) == naive_eval(imp(s, leaf(1)))


def test_bad_leaf_count():
    with pytest.raises(bsvp.BSVPError):
        Tree(imp(leaf(1), leaf(0)))


def test_triplet_imp():
    assert triplet_imp(Triplet(1, 1, 1), Triplet(1, 0, 0)) == Triplet(1, 0, 0)


def test_honest_play_decides_value():
    rng = random.Random(3)
    for _ in range(200):
        s, _, _ = pad_sentence(bsvp.random_sentence(rng.randint(1, 20), rng))
        res = play_game(s)
        assert res.audit_failures == []
        assert (res.winner == PEBBLER) == (naive_eval(s) == 1)


def test_constant_sentences():
    assert play_game(TOP).winner == PEBBLER
    assert play_game(BOT).winner == CHALLENGER


def test_lying_pebbler_loses():
    rng = random.Random(4)
    for _ in range(50):
        s = _full(3, rng)
        if naive_eval(s) != 0:
            continue
        # the root starts pebbled 1, so truthful play below it exposes the lie
        res = play_game(s, pebbler=honest_pebbler)
        assert res.winner == CHALLENGER


def test_flipping_pebbler_loses():
    def flipper(tree, st):
        move = honest_pebbler(tree, st)
        return (1 - move[0],) + tuple(move[1:])
    rng = random.Random(5)
    for _ in range(50):
        s = _full(3, rng)
        assert play_game(s, pebbler=flipper).winner == CHALLENGER


def test_trace_format():
    s = _full(2, random.Random(6))
    res = play_game(s)
    assert res.trace and res.trace[0].startswith("round 1: A=1-7 ")
    assert "challenge=" in res.trace[-1]
