"""Random query and stream generators for property tests, demos and benchmarks.

All generators take a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import Iterator, List, Optional, Sequence

from .model import DataTriple, Op, Query, Term, TriplePattern, UpdateMessage, iri, literal, triple_key, var


def constants(n: int, prefix: str = "c") -> List[Term]:
    return [iri(f"{prefix}{i}") for i in range(n)]


def predicates(n: int) -> List[Term]:
    return [iri(f"p{i}") for i in range(n)]


def variables(n: int) -> List[Term]:
    return [var(name) for name in "XYZWUVST"[:n]]


def edge_universe(nodes: Sequence[Term], preds: Sequence[Term],
                  literals: Sequence[Term] = ()) -> List[DataTriple]:
    out = [DataTriple(s, p, o) for s in nodes for p in preds for o in nodes]
    out += [DataTriple(s, p, o) for s in nodes for p in preds for o in literals]
    return out


class _Pool:
    """Ordered set with O(1) random choice and removal."""

    def __init__(self):
        self.items: List = []
        self.where = {}

    def __len__(self):
        return len(self.items)

    def __contains__(self, x):
        return x in self.where

    def add(self, x):
        self.where[x] = len(self.items)
        self.items.append(x)

    def remove(self, x):
        i = self.where.pop(x)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.where[last] = i

    def choice(self, rng):
        return self.items[rng.randrange(len(self.items))]


def random_stream(rng: random.Random, length: int, universe: Sequence[DataTriple],
                  target_size: Optional[int] = None, start_time: int = 1) -> List[UpdateMessage]:
    """Strict stream over ``universe``: never re-inserts a present edge or deletes an absent one.

    The insert probability falls as the graph approaches ``target_size``
    (default: a third of the universe) so snapshots stay moderately sized.
    """
    return list(iter_random_stream(rng, length, universe, target_size, start_time))


def iter_random_stream(rng: random.Random, length: int, universe: Sequence[DataTriple],
                       target_size: Optional[int] = None, start_time: int = 1) -> Iterator[UpdateMessage]:
    if target_size is None:
        target_size = max(1, len(universe) // 3)
    present = _Pool()
    absent = _Pool()
    for t in universe:
        absent.add(t)
    for k in range(length):
        p_ins = 1.0 - len(present) / (2.0 * target_size)
        if len(present) == 0 or (len(absent) and rng.random() < p_ins):
            t = absent.choice(rng)
            absent.remove(t)
            present.add(t)
            yield UpdateMessage(start_time + k, Op.INS, t)
        else:
            t = present.choice(rng)
            present.remove(t)
            absent.add(t)
            yield UpdateMessage(start_time + k, Op.DEL, t)


def delete_everything(graph_triples, start_time: int) -> List[UpdateMessage]:
    return [UpdateMessage(start_time + k, Op.DEL, t)
            for k, t in enumerate(sorted(graph_triples, key=triple_key))]


def _satellite(rng, x: Term, nodes, preds, lits) -> TriplePattern:
    p = rng.choice(preds)
    if rng.random() < 0.5:
        o = rng.choice(list(nodes) + list(lits)) if lits and rng.random() < 0.2 else rng.choice(nodes)
        return TriplePattern(x, p, o)
    return TriplePattern(rng.choice(nodes), p, x)


def random_star_query(rng: random.Random, nodes, preds, max_patterns: int = 3,
                      lits: Sequence[Term] = ()) -> Query:
    x = var("X")
    pats = {}
    for _ in range(rng.randint(1, max_patterns)):
        pats.setdefault(_satellite(rng, x, nodes, preds, lits), None)
    return Query(tuple(pats))


def random_loosely_query(rng: random.Random, nodes, preds, max_vars: int = 4,
                         max_patterns: int = 6, lits: Sequence[Term] = (),
                         ground_prob: float = 0.5) -> Query:
    """A query whose every pattern touches at most one variable and no self-loops.

    Any path between two variables must then cross a constant. At least two
    parts are produced, so the result is never a single star.
    """
    while True:
        n_vars = rng.randint(1, max_vars)
        vs = variables(n_vars)
        pats = {}
        for x in vs:
            pats.setdefault(_satellite(rng, x, nodes, preds, lits), None)
        n_ground = 1 if rng.random() < ground_prob else 0
        budget = max_patterns - len(pats) - n_ground
        for _ in range(rng.randint(0, max(0, budget))):
            pats.setdefault(_satellite(rng, rng.choice(vs), nodes, preds, lits), None)
        for _ in range(n_ground):
            pats.setdefault(TriplePattern(rng.choice(nodes), rng.choice(preds), rng.choice(nodes)), None)
        if n_vars == 1 and n_ground == 0:
            continue
        order = list(pats)
        rng.shuffle(order)
        out = list(vs)
        rng.shuffle(out)
        return Query(tuple(order), tuple(out))


def random_connected_query(rng: random.Random, nodes, preds, max_vars: int = 4,
                           max_patterns: int = 6, lits: Sequence[Term] = (),
                           self_loop_prob: float = 0.05) -> Query:
    """A connected-variable query: one variable block, every pattern has a variable."""
    n_vars = rng.randint(2, max_vars)
    vs = variables(n_vars)
    pats = {}
    # random spanning tree over the variables, edges in random direction
    for i in range(1, n_vars):
        a, b = vs[i], vs[rng.randrange(i)]
        if rng.random() < 0.5:
            a, b = b, a
        pats.setdefault(TriplePattern(a, rng.choice(preds), b), None)
    target = rng.randint(len(pats), max(len(pats), max_patterns))
    attempts = 0
    while len(pats) < target and attempts < 50:
        attempts += 1
        r = rng.random()
        if r < self_loop_prob:
            x = rng.choice(vs)
            t = TriplePattern(x, rng.choice(preds), x)
        elif r < 0.5:
            t = TriplePattern(rng.choice(vs), rng.choice(preds), rng.choice(vs))
            if t.s == t.o:
                continue
        else:
            t = _satellite(rng, rng.choice(vs), nodes, preds, lits)
        pats.setdefault(t, None)
    order = list(pats)
    rng.shuffle(order)
    out = list(vs)
    rng.shuffle(out)
    return Query(tuple(order), tuple(out))


def random_query(rng: random.Random, nodes, preds, max_vars: int = 3, max_patterns: int = 5) -> Query:
    """Arbitrary BGP: each pattern picks subject/object among variables and constants."""
    vs = variables(rng.randint(0, max_vars))
    pool = list(vs) + list(nodes)
    pats = {}
    for _ in range(rng.randint(1, max_patterns)):
        s = rng.choice(pool)
        o = rng.choice(pool)
        pats.setdefault(TriplePattern(s, rng.choice(preds), o), None)
    return Query(tuple(pats))


def ground_bench_stream(q: Query, length: int, noise: int = 8, seed: int = 0) -> Iterator[UpdateMessage]:
    """Toggle stream over the query's triples plus ``noise`` unrelated triples."""
    rng = random.Random(seed)
    universe = [t.as_triple() for t in q.patterns]
    filler_p = iri("noise")
    universe += [DataTriple(iri(f"n{i}"), filler_p, iri(f"n{i + 1}")) for i in range(noise)]
    return iter_random_stream(rng, length, universe, target_size=max(1, len(universe) // 2))


def random_literals(n: int) -> List[Term]:
    return [literal(f"l{i}") for i in range(n)]
