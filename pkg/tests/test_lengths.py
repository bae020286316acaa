from t1kit.lengths import tlen
from t1kit.suites import lengths


def test_table_examples(defs):
    assert tlen("(lchop y x)", {"x": 5, "y": 2}, defs) == 3
    assert tlen("(rhalf x)", {"x": 5}, defs) == 3
    assert tlen("(cond w x y z)", {"w": 0, "x": 4, "y": 2, "z": 3}, defs) == 4
    assert tlen("((rcrn idf) x)", {"x": 7}, defs) == 7


def test_trn_lengths(defs):
    assert tlen("(blen x)", {"x": 9}, defs) == 4
    assert tlen("(pow x)", {"x": 5}, defs) == 8


def test_length_determinism_small(defs):
    import random
    names = ["succ", "add", "blen", "pow", "rev", "CScar", "ltn", "php"]
    rep = lengths(random.Random(0), maxlen=3, defs=defs, names=names)
    assert rep.ok, rep.failures
