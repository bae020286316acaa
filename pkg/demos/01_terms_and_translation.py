"""Evaluate a few library terms, then compile an equation into a propositional formula.

Run: python3 demos/01_terms_and_translation.py
"""

from t1kit.evaluator import eval_term, load_stdlib
from t1kit.lengths import tlen
from t1kit.propc import atom_name, dag_size, find_falsifier, taut_check, to_str, translate

defs = load_stdlib()

# Terms are evaluated on bit strings; numbers are read most significant bit first.
for expr, env in [("(succ x)", {"x": "0111"}), ("(add x y)", {"x": "101", "y": "011"}),
                  ("(rev x)", {"x": "1100"}), ("(blen x)", {"x": "000101"})]:
    print(f"{expr:12} {env} -> {eval_term(expr, env, defs)!r}")

# Output lengths depend only on input lengths, so they can be computed without values.
print("length of (add x y) at |x|=3, |y|=5:", tlen("(add x y)", {"x": 3, "y": 5}, defs))

# An equation becomes a formula over the bits of its variables, one atom per bit.
f = translate("(= (cat eps x) x)", {"x": 2}, defs)
print("translation of eps.x = x at m=2:", to_str(f))
print("tautology:", taut_check(f))

# A false equation gives a falsifiable formula; the falsifier names the bad bits.
g = translate("(= (rev x) x)", {"x": 3}, defs)
bad = find_falsifier(g)
print("rev(x) = x at m=3 has", dag_size(g), "nodes; falsified by",
      " ".join(f"{atom_name(a)}={int(v)}" for a, v in bad.items()))

# Sides of different lengths can never be equal, so the translation is just false.
print("succ(x) = rev(x) at m=3:", to_str(translate("(= (succ x) (rev x))", {"x": 3}, defs)))
