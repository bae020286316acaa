import pytest

from t1kit.termlang import (App, Base, arity, Lam, ParseError, TRN, Var, free_vars, parse_formula,
                            parse_symbol, parse_term, print_formula, print_term, rank,
                            substitute, wf_check)


def test_ranks(defs):
    assert rank(Base("cat")) == 0
    assert rank(Var("x")) == 0
    assert rank(defs["blen"]) == 1
    g = Lam(("x", "z"), Var("x"))
    h = Lam(("x", "z", "a", "b"), Var("a"))
    assert rank(TRN(g, h, defs["idf"], defs["idf"])) == 1


def test_wf_violations(defs):
    g = Lam(("x", "z"), Var("x"))
    bad_h = Lam(("x", "z", "a", "b"), App(defs["blen"], (Var("a"),)))
    assert wf_check(TRN(g, bad_h, defs["idf"], defs["idf"])) == "TRN.h must be rank 0"
    assert wf_check(Lam(("x",), Var("y"))) == "unbound variable y"
    assert wf_check(parse_symbol("(rcrn (lam (x) (lhalf x)))", defs)) is None


def test_every_stdlib_entry_is_well_formed(defs):
    assert all(wf_check(defs[n]) is None for n in defs.names())


def test_applied_rank_covers_arguments(defs):
    for n in defs.names():
        k = arity(defs[n])
        if k:
            t = parse_term(f"({n} {' '.join(['x'] * k)})", defs)
            assert rank(t) >= max(rank(a) for a in t.args)


def test_parse_print_round_trip(defs):
    for text in ('(cat "01" "1")', "(cond x y z w)", "((lcrn idf) x)",
                 "((trn (lam (x z) x) (lam (x z a b) (cat a b)) idf idf) x eps)"):
        t = parse_term(text, defs)
        assert parse_term(print_term(t), defs) == t
    f = parse_formula("(imp (= x y) (not (= (cat x y) eps)))", defs)
    assert parse_formula(print_formula(f), defs) == f


def test_parse_errors(defs):
    with pytest.raises(ParseError, match="arity"):
        parse_term("(trn g h)", defs)
    with pytest.raises(ParseError):
        parse_term("(cat x)", defs)
    with pytest.raises(ParseError):
        parse_formula("(= x)", defs)


def test_substitution(defs):
    f = substitute(parse_formula("(= x x)", defs), "x", parse_term('"01"', defs))
    assert print_formula(f) == '(= "01" "01")'
    t = substitute(parse_term("(cat x y)", defs), "y", parse_term("(rhalf x)", defs))
    assert print_term(t) == "(cat x (rhalf x))"
    # lambda bodies are closed, so only the arguments change
    t = substitute(parse_term("((lam (x) (cat x x)) x)", defs), "x", parse_term("y", defs))
    assert free_vars(t) == {"y"}
    assert t.sym.body == parse_term("(cat x x)", defs)
