"""Continuous evaluation of loosely-connected queries.

The query is split into its ground residue and one simple star per variable.
Each part runs its own evaluator; whenever a part gains or loses an answer
while every part is satisfied, the affected slice of the cartesian product of
the star answer sets is emitted with the changed value pinned in place.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

from .analysis import QueryTag, classify, connected_variable_decomposition
from .errors import ClassMismatch
from .ground import GroundResult, TripleMatchState, ground_bgp_eval, pattern_index, process_update_ground
from .model import Answer, DataTriple, DeltaAnswer, Query, Sign, Term, UpdateMessage
from .star import InstanceList, StarResult, process_update_star


@dataclass
class GroundPart:
    query: Query
    state: TripleMatchState
    index: Dict[DataTriple, int]
    flag: bool = False


@dataclass
class StarPart:
    query: Query
    central: Term
    instances: InstanceList = field(default_factory=InstanceList)
    # central values whose instance is currently all-true, in arrival order
    answers: Dict[Term, None] = field(default_factory=dict)


@dataclass
class LooselyState:
    query: Query
    ground_parts: List[GroundPart]
    star_parts: List[StarPart]
    var_positions: Dict[Term, int]

    def satisfied(self) -> bool:
        return all_ground_true(self) and all_var_centric_true(self)

    def state_size(self) -> int:
        n = sum(len(g.state) + 1 for g in self.ground_parts)
        for s in self.star_parts:
            n += len(s.instances) * (1 + len(s.query)) + len(s.answers)
        return n


def all_ground_true(st: LooselyState) -> bool:
    return all(g.flag for g in st.ground_parts)


def all_var_centric_true(st: LooselyState) -> bool:
    return all(s.answers for s in st.star_parts)


_ACCEPTED = (QueryTag.LOOSELY_CONNECTED, QueryTag.SIMPLE_VAR_CENTRIC_STAR)


def init_loosely(q: Query) -> LooselyState:
    cls = classify(q)
    if cls.tag not in _ACCEPTED:
        raise ClassMismatch(f"loosely-connected evaluation cannot handle a {cls.tag.value} query")
    d = connected_variable_decomposition(q)
    grounds = []
    if d.ground_residue is not None:
        g = d.ground_residue
        grounds.append(GroundPart(g, TripleMatchState(len(g)), pattern_index(g)))
    stars = []
    for sub in d.subqueries:
        # each partition block is a single variable here
        stars.append(StarPart(sub, sub.output[0]))
    positions = {v: i for i, v in enumerate(q.output)}
    return LooselyState(q, grounds, stars, positions)


def _product(st: LooselyState, pin: Optional[int] = None, value: Term = None) -> Iterator[Answer]:
    pools = [list(s.answers) for s in st.star_parts]
    if pin is not None:
        pools[pin] = [value]
    slots = [st.var_positions[s.central] for s in st.star_parts]
    width = len(st.query.output)
    for combo in itertools.product(*pools):
        row: List[Term] = [None] * width
        for slot, v in zip(slots, combo):
            row[slot] = v
        yield tuple(row)


def process_update_loosely(u: UpdateMessage, st: LooselyState) -> List[DeltaAnswer]:
    out: List[DeltaAnswer] = []
    t = u.time
    for g in st.ground_parts:
        r = process_update_ground(u, g.query, g.state, g.index)
        if r is GroundResult.POSITIVE:
            g.flag = True
            if st.satisfied():
                out.extend(DeltaAnswer(t, Sign.POSITIVE, a) for a in _product(st))
        elif r is GroundResult.NEGATIVE:
            if st.satisfied():
                out.extend(DeltaAnswer(t, Sign.NEGATIVE, a) for a in _product(st))
            g.flag = False
    for i, s in enumerate(st.star_parts):
        for kind, x in process_update_star(u, s.query, s.instances, s.central):
            if kind is StarResult.POSITIVE:
                s.answers[x] = None
                if st.satisfied():
                    out.extend(DeltaAnswer(t, Sign.POSITIVE, a) for a in _product(st, i, x))
            else:
                if st.satisfied():
                    out.extend(DeltaAnswer(t, Sign.NEGATIVE, a) for a in _product(st, i, x))
                del s.answers[x]
    return out


class LooselyEvaluator:
    def __init__(self, q: Query):
        self.query = q
        self.state = init_loosely(q)

    def process(self, u: UpdateMessage) -> List[DeltaAnswer]:
        return process_update_loosely(u, self.state)

    def state_size(self) -> int:
        return self.state.state_size()

    def instance_count(self) -> int:
        return sum(len(s.instances) for s in self.state.star_parts)

    def snapshot(self):
        return (
            tuple(tuple(g.state.bits) + (g.flag,) for g in self.state.ground_parts),
            tuple(
                (frozenset((v, tuple(gi.state.bits)) for v, gi in s.instances.instances.items()),
                 frozenset(s.answers))
                for s in self.state.star_parts
            ),
        )

    def clone(self) -> "LooselyEvaluator":
        out = LooselyEvaluator.__new__(LooselyEvaluator)
        out.query = self.query
        st = self.state
        out.state = LooselyState(
            st.query,
            [GroundPart(g.query, g.state.copy(), g.index, g.flag) for g in st.ground_parts],
            [StarPart(s.query, s.central, s.instances.copy(), dict(s.answers)) for s in st.star_parts],
            st.var_positions,
        )
        return out


def invariants_hold(st: LooselyState) -> bool:
    """Cross-check: each star's cached answers are exactly its all-true instances."""
    for s in st.star_parts:
        live = [v for v, g in s.instances.instances.items() if ground_bgp_eval(g.state)]
        if set(live) != set(s.answers):
            return False
    return all(g.flag == ground_bgp_eval(g.state) for g in st.ground_parts)
