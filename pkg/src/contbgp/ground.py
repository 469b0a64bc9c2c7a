"""Continuous evaluation of ground queries with a triple match state."""

from __future__ import annotations

from enum import Enum
from typing import Dict, List

from .errors import ClassMismatch
from .model import DataTriple, DeltaAnswer, Op, Query, Sign, UpdateMessage


class TripleMatchState:
    """One boolean per query pattern, index-aligned with ``Query.patterns``."""

    __slots__ = ("bits",)

    def __init__(self, size: int):
        self.bits = [False] * size

    def __len__(self):
        return len(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __setitem__(self, i, value):
        self.bits[i] = bool(value)

    def __repr__(self):
        return "TripleMatchState(" + "".join("1" if b else "0" for b in self.bits) + ")"

    def copy(self) -> "TripleMatchState":
        out = TripleMatchState(0)
        out.bits = list(self.bits)
        return out

    @classmethod
    def from_bits(cls, bits) -> "TripleMatchState":
        out = cls(0)
        out.bits = [bool(b) for b in bits]
        return out


def ground_bgp_eval(state: TripleMatchState) -> bool:
    return all(state.bits)


def all_zero(state: TripleMatchState) -> bool:
    return not any(state.bits)


class GroundResult(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NO_NEW_EMBEDDING = "no_new_embedding"


def pattern_index(q: Query) -> Dict[DataTriple, int]:
    if not q.is_ground:
        raise ClassMismatch("ground evaluation needs a query without variables")
    return {t.as_triple(): i for i, t in enumerate(q.patterns)}


def process_update_ground(u: UpdateMessage, q: Query, state: TripleMatchState,
                          index: Dict[DataTriple, int] = None) -> GroundResult:
    """Advance ``state`` by one update; ``index`` may be passed to skip rebuilding it."""
    if index is None:
        index = pattern_index(q)
    i = index.get(u.triple)
    if i is None:
        return GroundResult.NO_NEW_EMBEDDING
    if u.op is Op.INS:
        state.bits[i] = True
        if ground_bgp_eval(state):
            return GroundResult.POSITIVE
    else:
        was_true = ground_bgp_eval(state)
        state.bits[i] = False
        if was_true:
            return GroundResult.NEGATIVE
    return GroundResult.NO_NEW_EMBEDDING


class GroundEvaluator:
    """Wraps :func:`process_update_ground` behind the common evaluator interface."""

    def __init__(self, q: Query):
        self.query = q
        self.index = pattern_index(q)
        self.state = TripleMatchState(len(q))

    def process(self, u: UpdateMessage) -> List[DeltaAnswer]:
        r = process_update_ground(u, self.query, self.state, self.index)
        if r is GroundResult.POSITIVE:
            return [DeltaAnswer(u.time, Sign.POSITIVE, ())]
        if r is GroundResult.NEGATIVE:
            return [DeltaAnswer(u.time, Sign.NEGATIVE, ())]
        return []

    @property
    def satisfied(self) -> bool:
        return ground_bgp_eval(self.state)

    def state_size(self) -> int:
        return len(self.state)

    def clone(self) -> "GroundEvaluator":
        out = GroundEvaluator.__new__(GroundEvaluator)
        out.query = self.query
        out.index = self.index
        out.state = self.state.copy()
        return out

    def snapshot(self):
        return tuple(self.state.bits)
