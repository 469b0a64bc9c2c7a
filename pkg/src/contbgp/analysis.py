"""Query shape analysis: generalized paths, classification and decomposition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import NoVariables, UnknownNode
from .model import Query, Term, TriplePattern


class QueryTag(Enum):
    GROUND = "ground"
    SIMPLE_VAR_CENTRIC_STAR = "star"
    LOOSELY_CONNECTED = "loosely"
    CONNECTED_VARIABLE = "connected"
    GENERAL_BGP = "general"


@dataclass(frozen=True)
class QueryClass:
    tag: QueryTag
    central: Optional[Term] = None


@dataclass(frozen=True)
class Decomposition:
    """Block subqueries (one per partition block) plus the ground residue."""

    subqueries: Tuple[Query, ...]
    ground_residue: Optional[Query]
    blocks: Tuple[Tuple[Term, ...], ...]

    @property
    def parts(self) -> Tuple[Query, ...]:
        if self.ground_residue is None:
            return self.subqueries
        return self.subqueries + (self.ground_residue,)


def variable_adjacency(q: Query) -> Dict[Term, Set[Term]]:
    """Undirected variable-to-variable adjacency; every variable of ``q`` is a key.

    A self-loop pattern ``(?X p ?X)`` shows up as ``?X`` adjacent to itself.
    """
    adj: Dict[Term, Set[Term]] = {v: set() for v in q.output}
    for t in q.patterns:
        if t.s.is_variable and t.o.is_variable:
            adj[t.s].add(t.o)
            adj[t.o].add(t.s)
    return adj


def _nodes(q: Query) -> Dict[Term, None]:
    nodes: Dict[Term, None] = {}
    for t in q.patterns:
        nodes.setdefault(t.s, None)
        nodes.setdefault(t.o, None)
    return nodes


def generalized_distance(q: Query, v1: Term, v2: Term) -> Optional[int]:
    """Length of the shortest direction-agnostic path between two nodes of ``q``.

    Intermediate nodes may be constants. Returns None when disconnected.
    """
    nodes = _nodes(q)
    for v in (v1, v2):
        if v not in nodes:
            raise UnknownNode(f"{v!r} is not a node of the query")
    if v1 == v2:
        return 0
    adj: Dict[Term, Set[Term]] = {n: set() for n in nodes}
    for t in q.patterns:
        if t.s != t.o:
            adj[t.s].add(t.o)
            adj[t.o].add(t.s)
    dist = {v1: 0}
    frontier = deque([v1])
    while frontier:
        n = frontier.popleft()
        for m in adj[n]:
            if m not in dist:
                dist[m] = dist[n] + 1
                if m == v2:
                    return dist[m]
                frontier.append(m)
    return None


def connected_variable_partition(q: Query) -> List[Tuple[Term, ...]]:
    """Connected components of :func:`variable_adjacency`.

    Blocks, and the variables inside each block, follow first-occurrence order.
    """
    if q.is_ground:
        raise NoVariables("ground queries have no variable partition")
    adj = variable_adjacency(q)
    component: Dict[Term, int] = {}
    blocks: List[List[Term]] = []
    first = _first_occurrence(q)
    for v in first:
        if v in component:
            continue
        idx = len(blocks)
        members = []
        stack = [v]
        component[v] = idx
        while stack:
            n = stack.pop()
            members.append(n)
            for m in adj[n]:
                if m not in component:
                    component[m] = idx
                    stack.append(m)
        blocks.append(members)
    order = {v: i for i, v in enumerate(first)}
    return [tuple(sorted(b, key=order.__getitem__)) for b in blocks]


def _first_occurrence(q: Query) -> Tuple[Term, ...]:
    out: Dict[Term, None] = {}
    for t in q.patterns:
        for v in t.variables:
            out.setdefault(v, None)
    return tuple(out)


def _subquery(q: Query, patterns: Sequence[TriplePattern]) -> Query:
    members = set()
    for t in patterns:
        members.update(t.variables)
    return Query(tuple(patterns), tuple(v for v in q.output if v in members))


def connected_variable_decomposition(q: Query) -> Decomposition:
    blocks = connected_variable_partition(q)
    block_of = {v: i for i, b in enumerate(blocks) for v in b}
    grouped: List[List[TriplePattern]] = [[] for _ in blocks]
    residue: List[TriplePattern] = []
    for t in q.patterns:
        vs = t.variables
        if vs:
            # every variable of a pattern lies in one block (partition condition 2)
            grouped[block_of[vs[0]]].append(t)
        else:
            residue.append(t)
    subs = tuple(_subquery(q, g) for g in grouped)
    ground = Query(tuple(residue), ()) if residue else None
    return Decomposition(subs, ground, tuple(blocks))


def star_center(q: Query) -> Optional[Term]:
    """Central variable if ``q`` is a simple var-centric star query, else None."""
    if len(q.output) != 1:
        return None
    x = q.output[0]
    for t in q.patterns:
        if t.s == x:
            other = t.o
        elif t.o == x:
            other = t.s
        else:
            return None
        if other.is_variable:
            return None
    return x


def classify(q: Query) -> QueryClass:
    if q.is_ground:
        return QueryClass(QueryTag.GROUND)
    x = star_center(q)
    if x is not None:
        return QueryClass(QueryTag.SIMPLE_VAR_CENTRIC_STAR, x)
    blocks = connected_variable_partition(q)
    if all(len(b) == 1 for b in blocks) and not _has_self_loop(q):
        return QueryClass(QueryTag.LOOSELY_CONNECTED)
    if len(blocks) == 1 and len(q.output) >= 2 and all(not t.is_ground for t in q.patterns):
        return QueryClass(QueryTag.CONNECTED_VARIABLE)
    return QueryClass(QueryTag.GENERAL_BGP)


def _has_self_loop(q: Query) -> bool:
    return any(t.s.is_variable and t.s == t.o for t in q.patterns)


def decomposes_into_stars(q: Query) -> bool:
    """Every non-ground part of a loosely-connected query's decomposition is a simple star."""
    d = connected_variable_decomposition(q)
    return all(classify(s).tag is QueryTag.SIMPLE_VAR_CENTRIC_STAR for s in d.subqueries)
