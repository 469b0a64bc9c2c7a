# # Queries whose variables only meet through constants
#
# If no two variables share a pattern, the query splits into one star per
# variable plus a ground remainder. Its answers are the cartesian product of
# the star answers, gated on the remainder being present.

from contbgp import Session, classify, connected_variable_decomposition, delete, ins, query

q = query(("?X", "p", "b"), ("c", "q", "?Y"), ("d", "r", "e"))
print(classify(q).tag)

d = connected_variable_decomposition(q)
for part in d.subqueries:
    print("star:", [str(t) for t in part.patterns], classify(part).tag)
print("ground:", [str(t) for t in d.ground_residue.patterns])

# Nothing is reported until the ground triple arrives; then all combinations
# at once.

s = Session(q)
stream = [ins(1, "a1", "p", "b"), ins(2, "c", "q", "f"), ins(3, "d", "r", "e"),
          ins(4, "a2", "p", "b"), delete(5, "d", "r", "e")]
for u in stream:
    out = [(d.sign.value, tuple(t.lexical for t in d.answer)) for d in s.feed(u)]
    print(u.time, out)

# After deleting the remaining edges the evaluator holds no instances.

s.feed_all([delete(6, "a1", "p", "b"), delete(7, "c", "q", "f"), delete(8, "a2", "p", "b")])
print(s.evaluator.instance_count())
