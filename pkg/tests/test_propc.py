import itertools

from t1kit.bitstr import all_strings
from t1kit.evaluator import eval_term
from t1kit.propc import (bit_atom, env_assignment, eval_prop, export_dimacs, find_falsifier,
                         land, limp, lor, neg, taut_check, term_bits, translate)


def test_connectives():
    p, q = bit_atom("x", 1, 2), bit_atom("x", 2, 2)
    f = limp(land(p, q), lor(p, neg(q)))
    assert taut_check(f)
    assert find_falsifier(land(p, q)) is not None


def test_term_bits_agree_with_evaluation(defs):
    for t in ("(succ x)", "(rev x)", "(cat x (rhalf x))", "(cond x x eps x)"):
        for m in range(5):
            bits = term_bits(t, {"x": m}, defs)
            for x in all_strings(m):
                if len(x) != m:
                    continue
                asg = env_assignment({"x": x})
                got = "".join("1" if eval_prop(b, asg) else "0" for b in bits)
                assert got == eval_term(t, {"x": x}, defs)


def test_true_equation_translates_to_tautology(defs):
    for m in range(5):
        assert taut_check(translate("(= (cat eps x) x)", {"x": m}, defs))


def test_false_equation_falsified(defs):
    f = translate("(= (succ x) x)", {"x": 2}, defs)
    assert not taut_check(f)


def test_translation_of_connectives(defs):
    a = "(imp (= x y) (= (rev x) (rev y)))"
    for mx, my in itertools.product(range(3), repeat=2):
        assert taut_check(translate(a, {"x": mx, "y": my}, defs))


def test_dimacs_header(defs):
    text = export_dimacs(translate("(= x x)", {"x": 2}, defs))
    header = [l for l in text.splitlines() if l.startswith("p cnf")]
    assert len(header) == 1
