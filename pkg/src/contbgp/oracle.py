"""Snapshot semantics: full re-evaluation and per-update set differences.

This is the referee for every incremental evaluator, so it is kept plain:
patterns are joined in textual order by backtracking with no reordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Set, Tuple

from .model import (
    Answer,
    DataTriple,
    DeltaAnswer,
    Graph,
    PartialMapping,
    Query,
    Sign,
    Term,
    UpdateMessage,
    answer_key,
    join_mappings,
    unify,
)


def _index(g):
    by_pred: Dict[Term, List[DataTriple]] = {}
    by_subject: Dict[Tuple[Term, Term], List[DataTriple]] = {}
    for t in g:
        by_pred.setdefault(t.p, []).append(t)
        by_subject.setdefault((t.p, t.s), []).append(t)
    return by_pred, by_subject


def evaluate(q: Query, g) -> Set[Answer]:
    """``Q(G)``: output tuples of every total embedding of ``q`` in ``g``."""
    by_pred, by_subject = _index(g)
    pats = q.patterns
    out: Set[Answer] = set()

    def walk(i: int, mapping: PartialMapping) -> None:
        if i == len(pats):
            out.add(q.answer(mapping))
            return
        pat = pats[i]
        s = mapping.get(pat.s, pat.s) if pat.s.is_variable else pat.s
        candidates = by_pred.get(pat.p, ()) if s.is_variable else by_subject.get((pat.p, s), ())
        for t in candidates:
            m = unify(pat, t)
            if m is None:
                continue
            joined = join_mappings(mapping, m)
            if joined is not None:
                walk(i + 1, joined)

    walk(0, {})
    return out


@dataclass
class SnapshotOracleState:
    query: Query
    graph: Graph = field(default_factory=Graph)
    previous_answers: Set[Answer] = field(default_factory=set)

    @classmethod
    def start(cls, q: Query, g: Graph = None) -> "SnapshotOracleState":
        g = Graph() if g is None else g.copy()
        return cls(q, g, evaluate(q, g))


def oracle_step(q: Query, u: UpdateMessage, st: SnapshotOracleState,
                strict: bool = True) -> Tuple[Set[Answer], Set[Answer]]:
    """Apply ``u`` and return (answers gained, answers lost) against the previous snapshot."""
    st.graph.apply(u, strict=strict)
    now = evaluate(q, st.graph)
    before = st.previous_answers
    st.previous_answers = now
    return now - before, before - now


class OracleEvaluator:
    """The oracle behind the common evaluator interface (session mode ``oracle``)."""

    def __init__(self, q: Query):
        self.query = q
        self.state = SnapshotOracleState(q)

    def process(self, u: UpdateMessage) -> List[DeltaAnswer]:
        pos, neg = oracle_step(self.query, u, self.state)
        out = [DeltaAnswer(u.time, Sign.NEGATIVE, a) for a in sorted(neg, key=answer_key)]
        out += [DeltaAnswer(u.time, Sign.POSITIVE, a) for a in sorted(pos, key=answer_key)]
        return out

    def state_size(self) -> int:
        return len(self.state.graph) + len(self.state.previous_answers)
