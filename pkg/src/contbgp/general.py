"""Instantiation engine for connected-variable and arbitrary BGP queries.

Every inserted edge that unifies with a pattern ``t`` binds the variables of
``t`` and yields an instance of the query with fewer free variables. That
instance (minus the now-satisfied seed triple) is handed to whichever
evaluator its shape calls for, recursively, and its answers are extended with
the seed binding. Instances are torn down when their seed edge is deleted.

Different seeds may derive the same answer, so answers are reference counted
and only 0 <-> 1 transitions are reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .analysis import QueryTag, classify, connected_variable_decomposition
from .errors import BindingMismatch
from .ground import GroundEvaluator
from .loosely import LooselyEvaluator
from .model import (
    Answer,
    DataTriple,
    DeltaAnswer,
    Op,
    PartialMapping,
    Query,
    Sign,
    Term,
    TermKind,
    TriplePattern,
    UpdateMessage,
    substitute,
    unify,
)
from .star import StarEvaluator


class AnswerCounter:
    """Multiplicity of each full answer across all live derivations."""

    def __init__(self):
        self.counts: Dict[Answer, int] = {}

    def __len__(self):
        return len(self.counts)

    def bump(self, a: Answer, delta: int, touched: Dict[Answer, int]) -> None:
        c = self.counts.get(a, 0)
        if a not in touched:
            touched[a] = c
        c += delta
        if c < 0:
            raise AssertionError(f"answer count for {a} went negative")
        if c:
            self.counts[a] = c
        else:
            del self.counts[a]

    def flush(self, touched: Dict[Answer, int], time: int) -> List[DeltaAnswer]:
        out = []
        for a, before in touched.items():
            after = self.counts.get(a, 0)
            if before == 0 and after > 0:
                out.append(DeltaAnswer(time, Sign.POSITIVE, a))
            elif before > 0 and after == 0:
                out.append(DeltaAnswer(time, Sign.NEGATIVE, a))
        return out


@dataclass
class InstanceRecord:
    seed_edge: DataTriple
    seed_pattern_index: int
    binding: PartialMapping
    residual: Optional[Query]
    child: object = None
    viable: bool = True
    seq: int = 0
    # full-query answers currently derived through this record
    answers: Dict[Answer, None] = field(default_factory=dict)
    # per output variable: (True, bound value) or (False, index into child answer)
    layout: Tuple[Tuple[bool, object], ...] = ()

    def extend(self, child_answer: Answer) -> Answer:
        return tuple(v if bound else child_answer[v] for bound, v in self.layout)


def _instantiate(q: Query, theta: PartialMapping,
                 seed: TriplePattern) -> Tuple[bool, List[TriplePattern]]:
    out: Dict[TriplePattern, None] = {}
    for pat in q.patterns:
        s = theta.get(pat.s, pat.s) if pat.s.is_variable else pat.s
        if s.kind is TermKind.LITERAL:
            # a literal can never be a subject, so this instance has no answers
            return False, []
        inst = substitute(pat, theta)
        if inst != seed:
            out.setdefault(inst, None)
    return True, list(out)


def seed_instance(q: Query, t_index: int, theta: PartialMapping,
                  depth: int = 0, max_depth: Optional[int] = None) -> InstanceRecord:
    t = q.patterns[t_index]
    if set(theta) != set(t.variables):
        raise BindingMismatch(
            f"binding domain {sorted(v.lexical for v in theta)} differs from "
            f"pattern variables {[v.lexical for v in t.variables]}")
    seed = substitute(t, theta) if theta else t
    edge = DataTriple(seed.s, seed.p, seed.o) if seed.s.kind is TermKind.IRI else None
    ok, pats = _instantiate(q, theta, seed)
    if not ok or edge is None:
        return InstanceRecord(edge, t_index, dict(theta), None, viable=False)
    if not pats:
        layout = tuple((True, theta[v]) for v in q.output)
        return InstanceRecord(edge, t_index, dict(theta), None, layout=layout)
    residual = Query(tuple(pats), tuple(v for v in q.output if v not in theta))
    child = build_evaluator(residual, depth + 1, max_depth)
    pos = {v: i for i, v in enumerate(residual.output)}
    layout = tuple((True, theta[v]) if v in theta else (False, pos[v]) for v in q.output)
    return InstanceRecord(edge, t_index, dict(theta), residual, child, layout=layout)


def _route_key(pat: TriplePattern):
    return (pat.p, pat.s if pat.s.is_constant else None, pat.o if pat.o.is_constant else None)


def _edge_keys(e: DataTriple):
    return ((e.p, e.s, e.o), (e.p, e.s, None), (e.p, None, e.o), (e.p, None, None))


class InstantiationEvaluator:
    def __init__(self, q: Query, depth: int = 0, max_depth: Optional[int] = None):
        self.query = q
        self.depth = depth
        self.max_depth = len(q) if max_depth is None else max_depth
        if depth > self.max_depth:
            raise RecursionError(f"instantiation depth {depth} exceeds {self.max_depth}")
        self.records: Dict[Tuple[int, FrozenSet], InstanceRecord] = {}
        self.by_seed: Dict[DataTriple, List[InstanceRecord]] = {}
        self.routes: Dict[tuple, Dict[int, InstanceRecord]] = {}
        self.counter = AnswerCounter()
        self._seq = 0

    def _routed(self, e: DataTriple) -> List[InstanceRecord]:
        found: Dict[int, InstanceRecord] = {}
        for k in _edge_keys(e):
            bucket = self.routes.get(k)
            if bucket:
                found.update(bucket)
        return [found[i] for i in sorted(found)]

    def _register(self, key, rec: InstanceRecord) -> None:
        self._seq += 1
        rec.seq = self._seq
        self.records[key] = rec
        self.by_seed.setdefault(rec.seed_edge, []).append(rec)
        if rec.residual is not None:
            for k in {_route_key(p) for p in rec.residual.patterns}:
                self.routes.setdefault(k, {})[rec.seq] = rec

    def _unregister(self, rec: InstanceRecord) -> None:
        del self.records[(rec.seed_pattern_index, frozenset(rec.binding.items()))]
        if rec.residual is not None:
            for k in {_route_key(p) for p in rec.residual.patterns}:
                bucket = self.routes[k]
                del bucket[rec.seq]
                if not bucket:
                    del self.routes[k]

    def _feed(self, rec: InstanceRecord, u: UpdateMessage, touched) -> None:
        for d in rec.child.process(u):
            a = rec.extend(d.answer)
            if d.sign is Sign.POSITIVE:
                rec.answers[a] = None
                self.counter.bump(a, 1, touched)
            else:
                del rec.answers[a]
                self.counter.bump(a, -1, touched)

    def process(self, u: UpdateMessage) -> List[DeltaAnswer]:
        touched: Dict[Answer, int] = {}
        e = u.triple
        if u.op is Op.INS:
            for rec in self._routed(e):
                self._feed(rec, u, touched)
            for j, pat in enumerate(self.query.patterns):
                m = unify(pat, e)
                if m is None:
                    continue
                key = (j, frozenset(m.items()))
                if key in self.records:
                    continue
                rec = seed_instance(self.query, j, m, self.depth, self.max_depth)
                if not rec.viable:
                    continue
                self._register(key, rec)
                if rec.child is None:
                    a = rec.extend(())
                    rec.answers[a] = None
                    self.counter.bump(a, 1, touched)
                else:
                    self._feed(rec, u, touched)
        else:
            for rec in self.by_seed.pop(e, ()):
                self._unregister(rec)
                for a in rec.answers:
                    self.counter.bump(a, -1, touched)
            for rec in self._routed(e):
                self._feed(rec, u, touched)
        return self.counter.flush(touched, u.time)

    def record_count(self) -> int:
        return len(self.records)

    def state_size(self) -> int:
        n = len(self.counter)
        for rec in self.records.values():
            n += 1 + len(rec.answers)
            if rec.child is not None:
                n += rec.child.state_size()
        return n


class ProductEvaluator:
    """Cartesian composition of variable-disjoint parts with pinned-slice emission."""

    def __init__(self, q: Query, parts: List[Query], depth: int = 0, max_depth: Optional[int] = None):
        self.query = q
        self.parts = [build_evaluator(p, depth, max_depth) for p in parts]
        self.answers: List[Dict[Answer, None]] = [{} for _ in parts]
        pos = {v: i for i, v in enumerate(q.output)}
        self.slots = [[pos[v] for v in p.output] for p in parts]

    def satisfied(self) -> bool:
        return all(self.answers)

    def _product(self, pin: int, value: Answer) -> Iterator[Answer]:
        pools = [list(a) for a in self.answers]
        pools[pin] = [value]
        width = len(self.query.output)
        for combo in itertools.product(*pools):
            row: List[Term] = [None] * width
            for slots, sub in zip(self.slots, combo):
                for slot, v in zip(slots, sub):
                    row[slot] = v
            yield tuple(row)

    def process(self, u: UpdateMessage) -> List[DeltaAnswer]:
        out: List[DeltaAnswer] = []
        for i, part in enumerate(self.parts):
            for d in part.process(u):
                if d.sign is Sign.POSITIVE:
                    self.answers[i][d.answer] = None
                    if self.satisfied():
                        out.extend(DeltaAnswer(u.time, Sign.POSITIVE, a) for a in self._product(i, d.answer))
                else:
                    if self.satisfied():
                        out.extend(DeltaAnswer(u.time, Sign.NEGATIVE, a) for a in self._product(i, d.answer))
                    del self.answers[i][d.answer]
        return out

    def state_size(self) -> int:
        return sum(p.state_size() + len(a) for p, a in zip(self.parts, self.answers))


def build_evaluator(q: Query, depth: int = 0, max_depth: Optional[int] = None):
    """Pick the cheapest evaluator for ``q``'s shape."""
    tag = classify(q).tag
    if tag is QueryTag.GROUND:
        return GroundEvaluator(q)
    if tag is QueryTag.SIMPLE_VAR_CENTRIC_STAR:
        return StarEvaluator(q)
    if tag is QueryTag.LOOSELY_CONNECTED:
        return LooselyEvaluator(q)
    return general_evaluator(q, depth, max_depth)


def general_evaluator(q: Query, depth: int = 0, max_depth: Optional[int] = None):
    """Decompose ``q``; compose multiple parts by product, instantiate a single one."""
    if max_depth is None:
        max_depth = len(q)
    if not q.is_ground:
        d = connected_variable_decomposition(q)
        parts = d.parts
        if len(parts) > 1:
            return ProductEvaluator(q, list(parts), depth, max_depth)
    return InstantiationEvaluator(q, depth, max_depth)


def process_update_general(u: UpdateMessage, st) -> List[DeltaAnswer]:
    """Feed one update to an evaluator built by :func:`general_evaluator`."""
    return st.process(u)
