import random

from t1kit import fregemin as F
from t1kit.fregemin import BOT, TOP, Imp, MinProof, Var
from t1kit.suites import GOLDEN, golden_formula


def test_golden_string():
    assert F.encode(golden_formula(), 3) == GOLDEN.replace(" ", "")
    assert F.decode(GOLDEN.replace(" ", ""), 3) == golden_formula()


def test_single_variable():
    # blocks are 2^ell bits wide
    assert F.encode(Var(1), 3) == "00000001"
    assert F.decode("00000001", 3) == Var(1)


def test_constants_round_trip():
    for c in (TOP, BOT):
        ell = F.min_ell(c)
        assert F.decode(F.encode(c, ell), ell) == c


def test_adjacency_cases():
    good = F.encode(Imp(Var(1), Var(2)), 4)
    assert F.formula_valid(good, 4)
    # unbalanced closer, stray bits, empty string
    assert not F.formula_valid(good[:-4], 4)
    assert not F.formula_valid(good + "1", 4)
    assert not F.formula_valid("", 4)


def test_validity_agrees_with_parser():
    ell = 3
    for n in range(1, 5):
        for k in range(1 << (ell * n)):
            x = format(k, f"0{ell * n}b")
            assert F.formula_valid(x, ell) == F.parse_valid(x, ell), x


def test_modus_ponens_proof():
    # a short proof of p1 -> p1 from the first two axioms
    pf = F.parse_proof(
        "(p1 -> ((p1 -> p1) -> p1)) ; ax 1\n"
        "((p1 -> ((p1 -> p1) -> p1)) -> ((p1 -> (p1 -> p1)) -> (p1 -> p1))) ; ax 2\n"
        "((p1 -> (p1 -> p1)) -> (p1 -> p1)) ; mp 1 2\n"
        "(p1 -> (p1 -> p1)) ; ax 1\n"
        "(p1 -> p1) ; mp 4 3\n")
    assert F.check_min(pf) is None
    assert pf.theorem == Imp(Var(1), Var(1))
    # citing a later line is not allowed
    bad = MinProof([pf.lines[0], pf.lines[1], (pf.lines[2][0], ("mp", 1, 4))])
    assert F.check_min(bad) is not None


def test_encoded_proof_round_trip():
    rng = random.Random(0)
    for _ in range(20):
        p = F.random_proof(rng)
        ell = max(F.min_ell(f) for f, _ in p.lines)
        x, y = F.encode_proof(p, ell)
        q = F.decode_proof(x, y, ell, len(p.lines))
        assert q is not None and q.lines == p.lines
        assert F.F(x, y, ell, len(p.lines)) == F.encode(p.theorem, ell)


def test_corrupted_witness_gives_top():
    p = F.random_proof(random.Random(1))
    ell = max(F.min_ell(f) for f, _ in p.lines)
    x, y = F.encode_proof(p, ell)
    y_bad = y[:-1] + ("0" if y[-1] == "1" else "1")
    if F.decode_proof(x, y_bad, ell, len(p.lines)) != p:
        assert F.F(x, y_bad, ell, len(p.lines)) == F.encode(TOP, ell)


def test_value_matches_direct_truth():
    rng = random.Random(2)
    for _ in range(200):
        a = F.random_formula(rng)
        ell = F.min_ell(a)
        v = "".join(rng.choice("01") for _ in range(4))
        direct = F.to_sentence(F.substitute(a, v))
        from t1kit.bsvp import naive_eval
        assert F.VALUE(v, F.encode(a, ell), ell) == naive_eval(direct)


def test_empty_proof_rejected():
    assert F.check_min(MinProof([])) is not None
