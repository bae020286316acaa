"""Play the sentence value pebbling game with an honest and a cheating Pebbler.

Run: python3 demos/04_pebbling_game.py
"""

import random

from t1kit import bsvp

s = bsvp.parse_sentence("(((1 -> 0) -> 0) -> ((0 -> 1) -> (1 -> 1)))")
padded, d, mask = bsvp.pad_sentence(s)
print(f"{s.leaves()} leaves, padded to {padded.leaves()}, d = {d}, true value {bsvp.naive_eval(s)}")

res = bsvp.play_game(padded)
for line in res.trace:
    print(" ", line)
print("winner:", res.winner, "|", res.mistakes[0][1], "| audit failures:", len(res.audit_failures))


# A Pebbler who always claims U is true gets caught as soon as that matters.
def optimist(tree, st):
    move = bsvp.honest_pebbler(tree, st)
    return (1,) + tuple(move[1:])


rng = random.Random(0)
lost = 0
for _ in range(100):
    t, _, _ = bsvp.pad_sentence(bsvp.random_sentence(31, rng))
    honest = bsvp.play_game(t).winner
    cheat = bsvp.play_game(t, pebbler=optimist).winner
    lost += honest == bsvp.PEBBLER and cheat == bsvp.CHALLENGER
print(f"\noptimistic Pebbler lost {lost} true sentences out of 100 random ones")
