import itertools
import random

import pytest

from contbgp.analysis import (
    QueryTag,
    classify,
    connected_variable_decomposition,
    connected_variable_partition,
    decomposes_into_stars,
    generalized_distance,
    variable_adjacency,
)
from contbgp.errors import NoVariables, UnknownNode
from contbgp.model import Query, pattern, query, var
from contbgp.synthetic import constants, predicates, random_connected_query, random_loosely_query, random_query

X, Y, Z, W = (var(n) for n in "XYZW")

CHAIN_PLUS_STAR = query(("?X", "p", "?Y"), ("?Y", "p", "?Z"), ("a", "q", "?W"), ("?W", "r", "b"), ("a", "s", "b"))
THREE_STARS = query(("?X", "p", "a"), ("b", "q", "?Y"), ("c", "r", "?Z"))


def all_paths_distance(q, v1, v2, var_only=False):
    """Brute force: shortest sequence of patterns linking v1 to v2, ignoring direction."""
    if v1 == v2:
        return 0
    edges = [(t.s, t.o) for t in q.patterns if not var_only or (t.s.is_variable and t.o.is_variable)]
    for length in range(1, len(q.patterns) + 1):
        for seq in itertools.product(edges, repeat=length):
            cur = {v1}
            for s, o in seq:
                nxt = set()
                for c in cur:
                    if c == s:
                        nxt.add(o)
                    if c == o:
                        nxt.add(s)
                cur = nxt
            if v2 in cur:
                return length
    return None


class TestAdjacency:
    def test_chain_with_isolated(self):
        q = query(("?X", "p", "?Y"), ("?Y", "q", "?Z"), ("a", "r", "?W"))
        adj = variable_adjacency(q)
        assert adj == {X: {Y}, Y: {X, Z}, Z: {Y}, W: set()}

    def test_ground_is_empty(self):
        assert variable_adjacency(query(("a", "p", "b"))) == {}

    def test_self_loop(self):
        assert variable_adjacency(query(("?X", "p", "?X"))) == {X: {X}}

    def test_matches_brute_force_on_random_queries(self):
        rng = random.Random(11)
        nodes, preds = constants(3), predicates(2)
        for _ in range(200):
            q = random_query(rng, nodes, preds, max_vars=3, max_patterns=4)
            adj = variable_adjacency(q)
            for v1, v2 in itertools.product(q.output, repeat=2):
                linked = v1 != v2 and all_paths_distance(q, v1, v2, var_only=True) == 1
                loop = v1 == v2 and any(t.s == v1 and t.o == v1 for t in q.patterns)
                assert (v2 in adj[v1]) == (linked or loop)


class TestDistance:
    def test_through_constant(self):
        assert generalized_distance(query(("?X", "p", "a"), ("a", "q", "?Y")), X, Y) == 2

    def test_zero(self):
        assert generalized_distance(query(("?X", "p", "a")), X, X) == 0

    def test_disconnected(self):
        assert generalized_distance(query(("?X", "p", "a"), ("b", "q", "?Y")), X, Y) is None

    def test_unknown_node(self):
        with pytest.raises(UnknownNode):
            generalized_distance(query(("?X", "p", "a")), X, Y)

    def test_matches_brute_force(self):
        rng = random.Random(5)
        nodes, preds = constants(3), predicates(2)
        for _ in range(150):
            q = random_query(rng, nodes, preds, max_vars=3, max_patterns=4)
            ns = list(dict.fromkeys([t.s for t in q.patterns] + [t.o for t in q.patterns]))
            for v1, v2 in itertools.product(ns, repeat=2):
                assert generalized_distance(q, v1, v2) == all_paths_distance(q, v1, v2)


class TestPartition:
    def test_chain_plus_star_blocks(self):
        assert [set(b) for b in connected_variable_partition(CHAIN_PLUS_STAR)] == [{X, Y, Z}, {W}]

    def test_three_singleton_blocks(self):
        assert [set(b) for b in connected_variable_partition(THREE_STARS)] == [{X}, {Y}, {Z}]

    def test_single_edge(self):
        assert connected_variable_partition(query(("?X", "p", "?Y"))) == [(X, Y)]

    def test_ground_raises(self):
        with pytest.raises(NoVariables):
            connected_variable_partition(query(("a", "p", "b")))

    def test_blocks_are_exactly_var_path_components(self):
        rng = random.Random(19)
        nodes, preds = constants(3), predicates(2)
        for _ in range(200):
            q = random_query(rng, nodes, preds, max_vars=4, max_patterns=5)
            if q.is_ground:
                continue
            blocks = connected_variable_partition(q)
            assert sorted(v.lexical for b in blocks for v in b) == sorted(v.lexical for v in q.output)
            where = {v: i for i, b in enumerate(blocks) for v in b}
            for v1, v2 in itertools.combinations(q.output, 2):
                same = all_paths_distance(q, v1, v2, var_only=True) is not None
                assert same == (where[v1] == where[v2])

    def test_stable_under_pattern_reordering(self):
        rng = random.Random(2)
        for _ in range(50):
            pats = list(CHAIN_PLUS_STAR.patterns)
            rng.shuffle(pats)
            q = Query(tuple(pats))
            assert {frozenset(b) for b in connected_variable_partition(q)} == {frozenset({X, Y, Z}), frozenset({W})}


class TestDecomposition:
    def test_chain_plus_star(self):
        d = connected_variable_decomposition(CHAIN_PLUS_STAR)
        assert [s.patterns for s in d.subqueries] == [
            (pattern("?X", "p", "?Y"), pattern("?Y", "p", "?Z")),
            (pattern("a", "q", "?W"), pattern("?W", "r", "b")),
        ]
        assert d.ground_residue.patterns == (pattern("a", "s", "b"),)

    def test_no_residue(self):
        d = connected_variable_decomposition(query(("?X", "p", "a")))
        assert d.ground_residue is None and len(d.subqueries) == 1

    def test_three_stars_with_residue(self):
        q = Query(THREE_STARS.patterns + (pattern("d", "s", "e"),))
        d = connected_variable_decomposition(q)
        assert len(d.subqueries) == 3
        assert all(classify(s).tag is QueryTag.SIMPLE_VAR_CENTRIC_STAR for s in d.subqueries)
        assert d.ground_residue is not None

    def test_parts_partition_the_patterns(self):
        rng = random.Random(8)
        nodes, preds = constants(3), predicates(2)
        for _ in range(200):
            q = random_query(rng, nodes, preds)
            if q.is_ground:
                continue
            d = connected_variable_decomposition(q)
            got = [t for part in d.parts for t in part.patterns]
            assert sorted(got, key=repr) == sorted(q.patterns, key=repr)
            # no two subqueries share a variable
            seen = set()
            for s in d.subqueries:
                assert not seen & set(s.output)
                seen |= set(s.output)


class TestClassify:
    def test_ground(self):
        assert classify(query(("a", "p", "b"), ("b", "q", "c"))).tag is QueryTag.GROUND

    def test_star(self):
        c = classify(query(("?X", "p", "b"), ("c", "q", "?X")))
        assert c.tag is QueryTag.SIMPLE_VAR_CENTRIC_STAR and c.central == X

    def test_loosely(self):
        q = query(("?X", "p", "a"), ("b", "q", "?Y"), ("c", "r", "?Z"), ("d", "s", "e"))
        assert classify(q).tag is QueryTag.LOOSELY_CONNECTED

    def test_connected(self):
        assert classify(query(("?X", "p", "?Y"))).tag is QueryTag.CONNECTED_VARIABLE

    def test_general_mixed(self):
        assert classify(CHAIN_PLUS_STAR).tag is QueryTag.GENERAL_BGP

    def test_self_loop_is_not_star_or_loosely(self):
        assert classify(query(("?X", "p", "?X"))).tag is QueryTag.GENERAL_BGP
        assert classify(query(("?X", "p", "?X"), ("?Y", "p", "a"))).tag is QueryTag.GENERAL_BGP

    def test_tag_invariant_under_reordering(self):
        rng = random.Random(4)
        nodes, preds = constants(3), predicates(2)
        for _ in range(200):
            q = random_query(rng, nodes, preds)
            pats = list(q.patterns)
            rng.shuffle(pats)
            assert classify(Query(tuple(pats))).tag is classify(q).tag

    def test_loosely_means_no_variable_pair_is_directly_linked(self):
        rng = random.Random(6)
        nodes, preds = constants(3), predicates(2)
        seen = 0
        for _ in range(400):
            q = random_query(rng, nodes, preds, max_vars=3, max_patterns=5)
            if classify(q).tag is not QueryTag.LOOSELY_CONNECTED:
                continue
            seen += 1
            for v1, v2 in itertools.product(q.output, repeat=2):
                d = generalized_distance(q, v1, v2)
                assert v1 == v2 or d is None or d >= 2
        assert seen > 10

    def test_generators_produce_their_class(self):
        rng = random.Random(1)
        nodes, preds = constants(5), predicates(2)
        for _ in range(200):
            assert classify(random_loosely_query(rng, nodes, preds)).tag is QueryTag.LOOSELY_CONNECTED
            assert classify(random_connected_query(rng, nodes, preds, self_loop_prob=0)).tag is QueryTag.CONNECTED_VARIABLE


class TestDecomposesIntoStars:
    def test_examples(self):
        assert decomposes_into_stars(THREE_STARS)
        assert decomposes_into_stars(query(("?X", "p", "a"), ("b", "q", "?Y")))

    def test_connected_query_fails(self):
        assert not decomposes_into_stars(query(("?X", "p", "?Y")))
