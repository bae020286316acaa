from t1kit.bitstr import all_strings, int_of
from t1kit.evaluator import call, eval_term, oracle, php_exhaustive
from t1kit.termlang import arity


def test_examples(defs):
    assert eval_term("(succ x)", {"x": "10"}) == "011"
    assert eval_term('(succ "10")') == "011"
    assert eval_term("(rev x)", {"x": "001"}) == "100"
    assert eval_term("(AND x)", {"x": "1101"}) == "0"
    assert int_of(eval_term("(sum x)", {"x": "1011"})) == 3
    assert call(defs, "pow", "101") == "1111"


def test_oracles():
    assert oracle("popcount", "10110") == 3
    assert oracle("int_of", "0101") == 5
    assert oracle("next_pow2_len", "101") == 4


def test_stdlib_has_php(defs):
    assert arity(defs["php"]) == 2


def test_crn_coerces_to_one_bit():
    # lcrn prepends the leftmost bit of h(...)·0, so an empty h gives 0
    assert eval_term("((lcrn (lam (x) eps)) x)", {"x": "101"}) == "000"
    assert eval_term("((rcrn (lam (x) x)) x)", {"x": "0110"}) == "0110"


def test_carry_save_small(defs):
    for x in all_strings(3):
        for y in ("", "1", "011"):
            for z in ("10", "111"):
                w = "01"
                total = int_of(call(defs, "CScar", x, y, z, w)) + int_of(call(defs, "CSadd", x, y, z, w))
                assert total == int_of(x) + int_of(y) + int_of(z) + int_of(w)


def test_tuples_round_trip_power_of_two(defs):
    xs = ["1", "01", "", "110"]
    t = call(defs, "tup_4", *xs)
    for k, x in enumerate(xs, 1):
        assert int_of(call(defs, f"pi_4_{k}", t)) == int_of(x)


def test_php_small():
    assert php_exhaustive(1)
    assert php_exhaustive(2)
