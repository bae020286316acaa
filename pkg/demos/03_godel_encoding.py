"""Encode minimal Frege formulas and proofs as bit strings and check them by evaluation.

Run: python3 demos/03_godel_encoding.py
"""

import random

from t1kit import fregemin as F
from t1kit.suites import golden_formula

a = golden_formula()
x = F.encode(a, 3)
print("formula:", F.show(a))
print("blocks :", F.group_blocks(x, 3))
print("decoded:", F.show(F.decode(x, 3)))

# Flipping one bit usually breaks well-formedness, which the block rules detect.
y = x[:9] + ("1" if x[9] == "0" else "0") + x[10:]
print("one bit flipped, still valid?", F.formula_valid(y, 3))

# A proof is a pair (x, y): the formulas and the justifications.  F returns the
# encoded theorem when the pair is a correct proof and the encoding of T otherwise.
p = F.random_proof(random.Random(1))
ell = max(F.min_ell(f) for f, _ in p.lines)
px, py = F.encode_proof(p, ell)
print(f"\nproof of {F.show(p.theorem)} with {len(p.lines)} lines, ell = {ell}")
k = len(p.lines)
print("F(x, y) decodes to:", F.show(F.decode(F.F(px, py, ell, k), ell)))

# Corrupt one justification bit: the pair no longer checks, so F falls back to T.
bad = py[:-1] + ("0" if py[-1] == "1" else "1")
print("with a flipped y bit  :", F.show(F.decode(F.F(px, bad, ell, k), ell)))
for v in ("000", "101", "111"):
    print(f"  TRUE(v={v}) =", F.TRUE(v, F.F(px, py, ell, k), ell))
