"""Per-query sessions: stream validation, evaluator dispatch and consolidation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Set

from .analysis import QueryClass, QueryTag, classify
from .errors import ClassMismatch, IllegalHistory, OutOfOrderTimestamp
from .general import general_evaluator
from .ground import GroundEvaluator
from .loosely import LooselyEvaluator
from .model import Answer, DataTriple, DeltaAnswer, Graph, Op, Query, Sign, UpdateMessage, triple_key
from .oracle import OracleEvaluator
from .star import StarEvaluator

log = logging.getLogger(__name__)


class Mode(Enum):
    AUTO = "auto"
    GROUND = "ground"
    STAR = "star"
    LOOSELY = "loosely"
    GENERAL = "general"
    ORACLE = "oracle"


class Strictness(Enum):
    STRICT = "strict"
    LENIENT = "lenient"


# forced modes and the query classes they accept; None accepts anything
_COMPATIBLE = {
    Mode.GROUND: {QueryTag.GROUND},
    Mode.STAR: {QueryTag.SIMPLE_VAR_CENTRIC_STAR},
    Mode.LOOSELY: {QueryTag.LOOSELY_CONNECTED, QueryTag.SIMPLE_VAR_CENTRIC_STAR},
    Mode.GENERAL: None,
    Mode.ORACLE: None,
}

_AUTO_ROUTE = {
    QueryTag.GROUND: Mode.GROUND,
    QueryTag.SIMPLE_VAR_CENTRIC_STAR: Mode.STAR,
    QueryTag.LOOSELY_CONNECTED: Mode.LOOSELY,
    QueryTag.CONNECTED_VARIABLE: Mode.GENERAL,
    QueryTag.GENERAL_BGP: Mode.GENERAL,
}

_BUILDERS = {
    Mode.GROUND: GroundEvaluator,
    Mode.STAR: StarEvaluator,
    Mode.LOOSELY: LooselyEvaluator,
    Mode.GENERAL: general_evaluator,
    Mode.ORACLE: OracleEvaluator,
}


@dataclass
class SessionStats:
    updates: int = 0
    noops: int = 0
    deltas: int = 0
    state_size: int = 0
    peak_state_size: int = 0


def consolidate(deltas: Iterable[DeltaAnswer], into: Optional[Set[Answer]] = None) -> Set[Answer]:
    """Fold a signed history into the answer set it describes.

    Raises IllegalHistory for a retraction of a non-live answer or a second
    assertion of a live one.
    """
    live = set() if into is None else into
    for d in deltas:
        if d.sign is Sign.POSITIVE:
            if d.answer in live:
                raise IllegalHistory(f"t={d.time}: {d.answer} asserted while already live")
            live.add(d.answer)
        else:
            if d.answer not in live:
                raise IllegalHistory(f"t={d.time}: {d.answer} retracted but not live")
            live.remove(d.answer)
    return live


class Session:
    """One continuously evaluated query over one update stream.

    The session keeps a mirror of the current graph so it can check the
    stream assumptions; the evaluator's own cached state is reported
    separately in ``stats.state_size``.
    """

    def __init__(self, q: Query, mode: Mode = Mode.AUTO,
                 strictness: Strictness = Strictness.STRICT,
                 initial_graph: Iterable[DataTriple] = ()):
        self.query = q
        self.query_class: QueryClass = classify(q)
        self.strictness = Strictness(strictness)
        mode = Mode(mode)
        if mode is Mode.AUTO:
            self.mode = _AUTO_ROUTE[self.query_class.tag]
        else:
            allowed = _COMPATIBLE[mode]
            if allowed is not None and self.query_class.tag not in allowed:
                raise ClassMismatch(
                    f"mode {mode.value} cannot evaluate a {self.query_class.tag.value} query")
            self.mode = mode
        self.evaluator = _BUILDERS[self.mode](q)
        self.graph_mirror = Graph()
        self.consolidated: Set[Answer] = set()
        self.stats = SessionStats()
        self.last_time: Optional[int] = None
        self._bootstrap(initial_graph)

    def _bootstrap(self, initial: Iterable[DataTriple]) -> None:
        # replay the starting snapshot as insertions; their deltas form Q(G_0)
        triples = sorted(set(initial), key=triple_key)
        for k, t in enumerate(triples):
            u = UpdateMessage(k, Op.INS, t)
            self.graph_mirror.apply(u)
            consolidate(self.evaluator.process(u), self.consolidated)
        if triples:
            log.debug("bootstrapped %d triples, %d answers", len(triples), len(self.consolidated))

    def feed(self, u: UpdateMessage) -> List[DeltaAnswer]:
        if self.last_time is not None and u.time <= self.last_time:
            raise OutOfOrderTimestamp(u.time, self.last_time)
        applied = self.graph_mirror.apply(u, strict=self.strictness is Strictness.STRICT)
        self.last_time = u.time
        self.stats.updates += 1
        if not applied:
            self.stats.noops += 1
            log.debug("t=%d lenient no-op %s %s", u.time, u.op.value, u.triple)
            return []
        deltas = self.evaluator.process(u)
        consolidate(deltas, self.consolidated)
        self.stats.deltas += len(deltas)
        return deltas

    def feed_all(self, updates: Iterable[UpdateMessage]) -> List[DeltaAnswer]:
        out = []
        for u in updates:
            out.extend(self.feed(u))
        return out

    def measure_state(self) -> int:
        n = self.evaluator.state_size()
        self.stats.state_size = n
        self.stats.peak_state_size = max(self.stats.peak_state_size, n)
        return n


def open_session(q: Query, mode: Mode = Mode.AUTO,
                 strictness: Strictness = Strictness.STRICT, **kwargs) -> Session:
    return Session(q, mode, strictness, **kwargs)
