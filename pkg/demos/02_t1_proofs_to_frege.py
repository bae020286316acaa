"""Check a T1 proof, break it on purpose, and compile it into Frege proofs.

Run: python3 demos/02_t1_proofs_to_frege.py
"""

from t1kit import t1build
from t1kit.cli import data_path
from t1kit.evaluator import load_stdlib
from t1kit.fregesim import translate_t1_proof
from t1kit.hilbert import check_rich
from t1kit.suites import nind_sizes
from t1kit.t1check import check_proof, falsify, load
from t1kit.termlang import print_formula

defs = load_stdlib()
proof = load(data_path("corpus/eps_cat.t1p"), defs)
print("theorem:", print_formula(proof.theorem), f"({len(proof.lines)} lines)")
print("checker verdict:", check_proof(proof, defs) or "accepted")
print("counterexample up to length 5:", falsify(proof.theorem, 5, defs))

# Every mutant changes one line or one justification; the checker must notice.
for label, bad in t1build.mutants(proof, seed=0, defs=defs)[:5]:
    print(f"  mutant {label}: {check_proof(bad, defs)}")

# Each length m gives a separate propositional proof of the m-bit translation.
for m in (1, 2, 4):
    p = translate_t1_proof(proof, {"x": m}, defs)
    print(f"m={m}: {len(p)} Frege lines, check: {check_rich(p) or 'ok'}")

# The induction step dominates the size.  Compared with m times the largest premise
# proof, the ratio peaks at m = 1 and then stays below it.
for m, lines, base, ok in nind_sizes(8):
    print(f"NIND m={m}: {lines} lines, base {base}, lines/(m base) = {lines / (m * base):.2f}")
