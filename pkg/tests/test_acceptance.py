"""One test per acceptance criterion; the terminal summary lists PASS/FAIL for each."""

from conftest import ACCEPTANCE
from t1kit import t1build
from t1kit.cli import data_path
from t1kit.fregemin import decode, encode
from t1kit.suites import GOLDEN, golden_formula, run_suite
from t1kit.t1check import check_proof, falsify, load


def _record(n, desc, ok, detail=""):
    ACCEPTANCE[n] = (ok, desc)
    assert ok, detail


def _suites(n, desc, *names):
    reps = [run_suite(name, seed=0) for name in names]
    _record(n, desc, all(r.ok and r.checked > 0 for r in reps),
            "\n".join(r.text() for r in reps))


def test_criterion_01_axiom_conformance():
    _suites(1, "axiom groups 2-12 hold under evaluation", "axioms")


def test_criterion_02_length_determinism():
    _suites(2, "output lengths match the length functions", "lengths")


def test_criterion_03_translation_soundness():
    _suites(3, "translation agrees with evaluation", "translation")


def test_criterion_04_t1_checker(defs):
    problems = []
    total = 0
    for name in ("eps_cat", "cat_assoc"):
        proof = load(data_path(f"corpus/{name}.t1p"), defs)
        err = check_proof(proof, defs)
        if err:
            problems.append(f"{name} rejected: {err}")
            continue
        cex = falsify(proof.theorem, 5, defs)
        if cex is not None:
            problems.append(f"{name} theorem falsified by {cex}")
        for label, m in t1build.mutants(proof, seed=0, defs=defs):
            total += 1
            if check_proof(m, defs) is None:
                problems.append(f"{name} mutant accepted: {label}")
    if total < 20:
        problems.append(f"only {total} mutants")
    _record(4, "corpus accepted, mutants rejected, no counterexamples", not problems,
            "\n".join(problems))


def test_criterion_05_frege_simulation():
    _suites(5, "Frege proofs for axioms, NIND and TIND check", "frege-sim")


def test_criterion_06_golden_encoding():
    x = encode(golden_formula(), 3)
    ok = x == GOLDEN.replace(" ", "") and decode(x, 3) == golden_formula()
    _record(6, "golden 13-block encoding and its inverse", ok, x)


def test_criterion_07_bsvp():
    _suites(7, "pebbling game decides truth; triplet identities", "bsvp", "triplets")


def test_criterion_08_soundness_harness():
    _suites(8, "encoded proofs evaluate to true; corruptions are caught", "soundness")


def test_criterion_09_php():
    _suites(9, "php holds for n = 1, 2, 3", "php")


def test_criterion_10_numeric_oracles():
    _suites(10, "numeric functions match integer oracles", "stdlib-oracles")
