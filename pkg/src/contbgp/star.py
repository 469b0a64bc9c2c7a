"""Continuous evaluation of simple var-centric star queries.

Each value taken by the central variable gets a ground instance carrying its
own triple match state. The ground instance query itself is never stored; it
is the star query with the central variable replaced by the instance value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from .analysis import star_center
from .errors import ClassMismatch
from .ground import TripleMatchState, all_zero, ground_bgp_eval
from .model import DeltaAnswer, Op, Query, Sign, Term, UpdateMessage, unify


@dataclass
class GroundInstance:
    central_value: Term
    state: TripleMatchState


class InstanceList:
    """Ground instances keyed by central value, in creation order."""

    __slots__ = ("instances",)

    def __init__(self):
        self.instances: Dict[Term, GroundInstance] = {}

    def __len__(self):
        return len(self.instances)

    def __contains__(self, value):
        return value in self.instances

    def __getitem__(self, value) -> GroundInstance:
        return self.instances[value]

    def copy(self) -> "InstanceList":
        out = InstanceList()
        out.instances = {k: GroundInstance(k, g.state.copy()) for k, g in self.instances.items()}
        return out


class StarResult(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def _central(q: Query) -> Term:
    x = star_center(q)
    if x is None:
        raise ClassMismatch(f"not a simple var-centric star query: {q.patterns}")
    return x


def process_update_star(u: UpdateMessage, q: Query, instances: InstanceList,
                        central: Term = None) -> List[Tuple[StarResult, Term]]:
    """Advance the instance list by one update and report central values entering/leaving.

    An edge may unify with several patterns; every (pattern, value) pair is
    handled, so an edge like ``(a p a)`` against ``{(?X p a), (a p ?X)}`` sets
    both bits of instance ``a`` and reports it once.
    """
    x = central if central is not None else _central(q)
    results: List[Tuple[StarResult, Term]] = []
    n = len(q.patterns)
    table = instances.instances
    for j, pat in enumerate(q.patterns):
        m = unify(pat, u.triple)
        if m is None:
            continue
        value = m[x]
        inst = table.get(value)
        if u.op is Op.INS:
            if inst is not None:
                before = ground_bgp_eval(inst.state)
                inst.state.bits[j] = True
                if not before and ground_bgp_eval(inst.state):
                    results.append((StarResult.POSITIVE, value))
            else:
                state = TripleMatchState(n)
                state.bits[j] = True
                table[value] = GroundInstance(value, state)
                if n == 1:
                    results.append((StarResult.POSITIVE, value))
        else:
            if inst is None or not inst.state.bits[j]:
                continue
            before = ground_bgp_eval(inst.state)
            inst.state.bits[j] = False
            if all_zero(inst.state):
                del table[value]
            if before:
                results.append((StarResult.NEGATIVE, value))
    return results


class StarEvaluator:
    def __init__(self, q: Query):
        self.query = q
        self.central = _central(q)
        self.instances = InstanceList()

    def process(self, u: UpdateMessage) -> List[DeltaAnswer]:
        out = []
        for kind, value in process_update_star(u, self.query, self.instances, self.central):
            sign = Sign.POSITIVE if kind is StarResult.POSITIVE else Sign.NEGATIVE
            out.append(DeltaAnswer(u.time, sign, (value,)))
        return out

    def answers(self) -> List[Term]:
        return [v for v, g in self.instances.instances.items() if ground_bgp_eval(g.state)]

    def state_size(self) -> int:
        # central value plus one bit per pattern, per live instance
        return len(self.instances) * (1 + len(self.query))

    def clone(self) -> "StarEvaluator":
        out = StarEvaluator.__new__(StarEvaluator)
        out.query = self.query
        out.central = self.central
        out.instances = self.instances.copy()
        return out

    def snapshot(self):
        return frozenset((v, tuple(g.state.bits)) for v, g in self.instances.instances.items())
