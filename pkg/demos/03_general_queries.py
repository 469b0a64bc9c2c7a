# # Paths, cycles and other shapes
#
# Queries with variable-to-variable patterns go to the general evaluator.
# Each inserted edge that matches a pattern seeds a smaller query where the
# matched variables are fixed, and that smaller query is evaluated
# incrementally in turn.

import random

from contbgp import Session, classify, delete, evaluate, ins, query
from contbgp.synthetic import constants, edge_universe, predicates, random_stream

path = query(("?X", "p", "?Y"), ("?Y", "q", "?Z"))
print(classify(path).tag)

s = Session(path)
for u in [ins(1, "a", "p", "b"), ins(2, "b", "q", "c"), ins(3, "a2", "p", "b"), delete(4, "b", "q", "c")]:
    print(u.time, [(d.sign.value, tuple(t.lexical for t in d.answer)) for d in s.feed(u)])

# A triangle, checked against full re-evaluation after a random stream.

tri = query(("?X", "p0", "?Y"), ("?Y", "p0", "?Z"), ("?Z", "p0", "?X"))
rng = random.Random(0)
universe = edge_universe(constants(5), predicates(1))
stream = random_stream(rng, 500, universe, target_size=10)

s = Session(tri)
s.feed_all(stream)
print(len(s.consolidated), s.consolidated == evaluate(tri, s.graph_mirror))
print("cached state elements:", s.measure_state())

# An existing graph can be loaded up front; its answers show up in the
# consolidated set before any update is fed.

loaded = Session(tri, initial_graph=list(s.graph_mirror))
print(loaded.consolidated == s.consolidated)
