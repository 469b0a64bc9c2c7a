# # Ground and star queries over an update stream
#
# A session takes one query and a stream of timestamped inserts and deletes.
# After every update it reports which answers appeared (+) and which
# disappeared (-).

from contbgp import Session, delete, ins, query

# ## A ground query
#
# No variables: the only possible answer is the empty tuple, present exactly
# while both triples are in the graph.

q = query(("a", "p", "b"), ("b", "q", "c"))
s = Session(q)
print(s.mode)

for u in [ins(1, "a", "p", "b"), ins(2, "b", "q", "c"), delete(3, "a", "p", "b")]:
    print(u.time, [(d.sign.value, d.answer) for d in s.feed(u)])

# The evaluator keeps one flag per query triple, nothing else.

print(s.evaluator.state.bits)

# ## A star query
#
# Every pattern links the central variable ?X to a constant. The evaluator
# keeps a small bit vector per candidate value of ?X.

star = query(("?X", "p", "b"), ("c", "q", "?X"))
s = Session(star)
print(s.mode, s.query_class.central)

for u in [ins(1, "a", "p", "b"), ins(2, "c", "q", "a"), ins(3, "d", "p", "b"), delete(4, "a", "p", "b")]:
    print(u.time, [(d.sign.value, [t.lexical for t in d.answer]) for d in s.feed(u)])

for value, inst in s.evaluator.instances.instances.items():
    print(value.lexical, inst.state.bits)

# One edge can satisfy two patterns at once. Here (a p a) is both
# (?X p a) and (a p ?X) for ?X = a, and the answer is reported once.

loop = Session(query(("?X", "p", "a"), ("a", "p", "?X")))
print([(d.sign.value, d.answer) for d in loop.feed(ins(1, "a", "p", "a"))])

# The consolidated set is the fold of all deltas so far.

s.feed(ins(5, "c", "q", "d"))
print(sorted(t[0].lexical for t in s.consolidated))
