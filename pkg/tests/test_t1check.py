from t1kit import t1build
from t1kit.cli import data_path
from t1kit.t1check import T1Proof, check_proof, falsify, load
from t1kit.termlang import parse_formula


def _corpus(name, defs):
    return load(data_path(f"corpus/{name}.t1p"), defs)


def test_corpus_accepted(defs):
    for name in ("eps_cat", "cat_assoc", "tind_refl"):
        assert check_proof(_corpus(name, defs), defs) is None, name


def test_mutants_rejected(defs):
    for name in ("eps_cat", "cat_assoc"):
        muts = t1build.mutants(_corpus(name, defs), seed=0, defs=defs)
        assert muts
        for label, m in muts:
            assert check_proof(m, defs) is not None, label


def test_empty_proof_rejected(defs):
    p = T1Proof(parse_formula("(= x x)", defs), [])
    assert check_proof(p, defs) == (0, "no lines")


def test_falsify(defs):
    assert falsify("(= (cat eps x) x)", 4, defs) is None
    cex = falsify("(= (cat x y) (cat y x))", 3, defs)
    assert cex is not None and cex["x"] + cex["y"] != cex["y"] + cex["x"]


def test_builders_match_corpus(defs):
    assert check_proof(t1build.eps_cat_proof(defs), defs) is None
    assert check_proof(t1build.cat_assoc_proof(defs), defs) is None
