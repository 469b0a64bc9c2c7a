"""Shared oracles and stream builders for the test suite."""

import itertools
import random

from contbgp.model import Graph, Op, Sign, UpdateMessage, unify
from contbgp.oracle import SnapshotOracleState, oracle_step
from contbgp.session import Mode, Session
from contbgp.synthetic import constants, edge_universe, predicates, random_literals, random_stream


def brute_force_answers(q, g):
    """Second, independent oracle: try every assignment of graph nodes to the variables."""
    nodes = set()
    for t in g:
        nodes.add(t.s)
        nodes.add(t.o)
    triples = set(g)
    out = set()
    vs = q.output
    for values in itertools.product(sorted(nodes, key=lambda t: t.sort_key), repeat=len(vs)):
        env = dict(zip(vs, values))
        ok = True
        for pat in q.patterns:
            s = env.get(pat.s, pat.s)
            o = env.get(pat.o, pat.o)
            if not any(t.s == s and t.p == pat.p and t.o == o for t in triples):
                ok = False
                break
        if ok:
            out.add(tuple(values))
    return out


def split(deltas):
    pos = {d.answer for d in deltas if d.sign is Sign.POSITIVE}
    neg = {d.answer for d in deltas if d.sign is Sign.NEGATIVE}
    return pos, neg


def run_against_oracle(q, stream, mode=Mode.AUTO):
    """Feed ``stream`` to a session and the oracle; return the list of disagreeing times."""
    s = Session(q, mode)
    ref = SnapshotOracleState.start(q)
    bad = []
    for u in stream:
        deltas = s.feed(u)
        pos, neg = oracle_step(q, u, ref)
        if split(deltas) != (pos, neg) or len(deltas) != len(pos) + len(neg):
            bad.append(u.time)
        if s.consolidated != ref.previous_answers:
            bad.append(("consolidated", u.time))
    return bad, s, ref


def toggle(graph_triples, t, time):
    op = Op.DEL if t in graph_triples else Op.INS
    return UpdateMessage(time, op, t)


def all_strict_streams(universe, length):
    """Every strict stream of exactly ``length`` toggles over ``universe``."""
    for choice in itertools.product(range(len(universe)), repeat=length):
        present = set()
        stream = []
        for k, i in enumerate(choice, 1):
            t = universe[i]
            stream.append(toggle(present, t, k))
            present ^= {t}
        yield stream


def random_pair_universe(rng, q_factory):
    """Random small universe plus a query from ``q_factory(rng, nodes, preds, lits)``."""
    nodes = constants(rng.randint(3, 8))
    preds = predicates(rng.randint(1, 3))
    lits = random_literals(rng.randint(0, 2))
    q = q_factory(rng, nodes, preds, lits)
    uni = edge_universe(nodes, preds, lits)
    relevant = [t for t in uni if any(unify(p, t) is not None for p in q.patterns)]
    rel_set = set(relevant)
    other = [t for t in uni if t not in rel_set]
    r = rng.random()
    if r < 1 / 3:
        uni = relevant + rng.sample(other, min(len(other), len(relevant)))
    elif r < 2 / 3 and relevant:
        uni = relevant
    size = max(2, int(len(uni) * rng.uniform(0.3, 0.6)))
    stream = random_stream(rng, rng.randint(20, 200), uni, target_size=size)
    return q, stream


def graph_of(stream):
    g = Graph()
    for u in stream:
        g.apply(u)
    return g
