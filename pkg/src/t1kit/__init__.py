"""Bit-string function algebra toolkit: evaluator, length functions,
propositional translations, proof checkers and the sentence-value game."""

__version__ = "0.1.0"
