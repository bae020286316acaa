from t1kit import bitstr as b
from t1kit.bitstr import all_strings


def test_base_examples():
    assert b.rhalf("10110") == "110"
    assert b.rchop("10110", "01") == "101"
    assert b.cat("", "011") == "011"
    assert b.allone("010") == "111"


def test_cond_examples():
    assert b.cond("", "1", "00", "11") == "1"
    assert b.cond("10", "1", "0", "111") == "000"
    assert b.cond("11", "1", "00", "1") == "01"


def test_halves_split_exhaustive():
    for x in all_strings(12):
        assert len(b.rhalf(x)) == (len(x) + 1) // 2
        assert len(b.lhalf(x)) == len(x) // 2
        assert b.lhalf(x) + b.rhalf(x) == x


def test_chops_saturate_and_ignore_values():
    for x in all_strings(6):
        for y in all_strings(4):
            r = b.rchop(x, y)
            assert len(r) == max(0, len(x) - len(y))
            assert r == b.rchop(x, b.allzero(y))
            assert b.lchop(y, x) == x[len(y):]


def test_cond_length():
    for w in ("", "0", "1", "10"):
        for y in all_strings(3):
            for z in ("", "1", "0101"):
                out = b.cond(w, "11", y, z)
                assert len(out) == (2 if w == "" else max(len(y), len(z)))


def test_int_round_trip():
    for n in range(200):
        assert b.int_of(b.to_bits(n)) == n
    assert b.int_of("") == 0
