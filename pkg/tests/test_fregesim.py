from t1kit.cli import data_path
from t1kit.fregesim import emit_axiom_proof, translate_t1_proof
from t1kit.hilbert import check_rich, expand
from t1kit.suites import NIND_C, nind_sizes
from t1kit.t1check import load


def test_axiom_proofs_check(defs):
    for gid in ("1a", "2", "5a"):
        for m in (0, 1, 3):
            p = emit_axiom_proof(gid, None, {"x": m, "y": m, "z": m}, defs)
            assert check_rich(p) is None, (gid, m)


def test_t1_proof_translation(defs):
    proof = load(data_path("corpus/eps_cat.t1p"), defs)
    for m in (0, 2):
        p = translate_t1_proof(proof, {"x": m}, defs)
        assert check_rich(p) is None


def test_expansion_removes_lemmas(defs):
    p = emit_axiom_proof("2", None, {"x": 2}, defs)
    assert check_rich(expand(p), allow_constants=True, allow_lemmas=False) is None


def test_nind_lines_within_measured_bound():
    rows = nind_sizes(6)
    assert all(ok for *_, ok in rows)
    lines = [r[1] for r in rows]
    assert lines[:2] == [98, 227]
    assert all(n <= NIND_C * m * base for m, n, base, _ in rows)
