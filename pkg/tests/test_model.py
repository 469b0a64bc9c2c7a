import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contbgp.errors import AssumptionViolation, InvalidQuery
from contbgp.model import (
    DataTriple,
    Graph,
    Op,
    Term,
    TermKind,
    TriplePattern,
    UpdateMessage,
    apply_update,
    iri,
    join_mappings,
    literal,
    pattern,
    query,
    substitute,
    triple,
    unify,
    var,
)

X, Y = var("X"), var("Y")
a, b, p = iri("a"), iri("b"), iri("p")


class TestTerm:
    def test_kind_distinguishes_equal_lexicals(self):
        assert iri("x") != literal("x")
        assert literal("x") != var("x")
        assert iri("x") == Term(TermKind.IRI, "x")

    def test_hash_agrees_with_equality(self):
        assert len({iri("x"), Term(TermKind.IRI, "x"), literal("x")}) == 2

    def test_variable_names_are_checked(self):
        with pytest.raises(ValueError):
            var("bad name")
        with pytest.raises(ValueError):
            iri("has space")


class TestTriples:
    def test_data_triple_positions(self):
        with pytest.raises(ValueError):
            DataTriple(literal("x"), p, b)
        with pytest.raises(ValueError):
            DataTriple(a, p, X)
        DataTriple(a, p, literal("x"))

    def test_pattern_positions(self):
        with pytest.raises(InvalidQuery):
            TriplePattern(a, X, b)
        with pytest.raises(InvalidQuery):
            TriplePattern(literal("l"), p, b)

    def test_query_rejects_duplicates_and_empty(self):
        with pytest.raises(InvalidQuery):
            query(("?X", "p", "b"), ("?X", "p", "b"))
        with pytest.raises(InvalidQuery):
            query()

    def test_query_output_defaults_to_first_occurrence(self):
        q = query(("?Y", "p", "?X"), ("?X", "q", "?Z"))
        assert q.output == (Y, X, var("Z"))
        assert query(("a", "p", "b")).output == ()

    def test_query_output_must_match_variables(self):
        with pytest.raises(InvalidQuery):
            query(("?X", "p", "?Y"), output=["?X"])
        q = query(("?X", "p", "?Y"), output=["?Y", "?X"])
        assert q.output == (Y, X)


class TestUnify:
    def test_single_variable(self):
        assert unify(pattern("?X", "p", "b"), triple("a", "p", "b")) == {X: a}

    def test_ground_identity(self):
        assert unify(pattern("a", "p", "b"), triple("a", "p", "b")) == {}

    def test_repeated_variable_conflict(self):
        assert unify(pattern("?X", "p", "?X"), triple("a", "p", "b")) is None
        assert unify(pattern("?X", "p", "?X"), triple("a", "p", "a")) == {X: a}

    def test_predicate_mismatch(self):
        assert unify(pattern("?X", "q", "b"), triple("a", "p", "b")) is None


SMALL_CONSTS = [iri("a"), iri("b"), literal("a")]
SMALL_SUBJ = [iri("a"), iri("b"), X, Y]
SMALL_OBJ = SMALL_CONSTS + [X, Y]
PREDS = [iri("p"), iri("q")]


def test_unify_round_trip_exhaustive():
    """unify returns m exactly when substituting m into the pattern gives the triple."""
    triples = [DataTriple(s, pr, o) for s in SMALL_CONSTS[:2] for pr in PREDS for o in SMALL_CONSTS]
    for s, pr, o in itertools.product(SMALL_SUBJ, PREDS, SMALL_OBJ):
        pat = TriplePattern(s, pr, o)
        # every total assignment of the pattern variables to constants
        vs = pat.variables
        for t in triples:
            m = unify(pat, t)
            witnesses = []
            for values in itertools.product(SMALL_CONSTS, repeat=len(vs)):
                env = dict(zip(vs, values))
                if pat.s in env and env[pat.s].kind is not TermKind.IRI:
                    continue
                if substitute(pat, env) == TriplePattern(t.s, t.p, t.o):
                    witnesses.append(env)
            if m is None:
                assert witnesses == []
            else:
                assert witnesses == [m]


class TestJoin:
    def test_disjoint(self):
        assert join_mappings({X: a}, {Y: b}) == {X: a, Y: b}

    def test_overlap_agreeing(self):
        assert join_mappings({X: a}, {X: a, Y: b}) == {X: a, Y: b}

    def test_conflict(self):
        assert join_mappings({X: a}, {X: b}) is None


_vars = st.sampled_from([var(n) for n in "WXYZ"])
_consts = st.sampled_from([iri("a"), iri("b"), iri("c")])
mappings = st.dictionaries(_vars, _consts, max_size=4)


@given(mappings, mappings, mappings)
@settings(max_examples=300)
def test_join_associative_and_commutative(e1, e2, e3):
    j12 = join_mappings(e1, e2)
    assert j12 == join_mappings(e2, e1)
    left = None if j12 is None else join_mappings(j12, e3)
    j23 = join_mappings(e2, e3)
    right = None if j23 is None else join_mappings(e1, j23)
    assert left == right


class TestApplyUpdate:
    def test_insert_into_empty(self):
        g = apply_update(Graph(), UpdateMessage(1, Op.INS, triple("a", "p", "b")))
        assert g == Graph([triple("a", "p", "b")])

    def test_delete(self):
        g = apply_update(Graph([triple("a", "p", "b")]), UpdateMessage(2, Op.DEL, triple("a", "p", "b")))
        assert g == Graph()

    def test_strict_reinsert_raises(self):
        with pytest.raises(AssumptionViolation) as info:
            apply_update(Graph([triple("a", "p", "b")]), UpdateMessage(3, Op.INS, triple("a", "p", "b")))
        assert info.value.time == 3 and info.value.op is Op.INS

    def test_strict_delete_absent_raises(self):
        with pytest.raises(AssumptionViolation):
            apply_update(Graph(), UpdateMessage(1, Op.DEL, triple("a", "p", "b")))

    def test_lenient_noop_returns_same_graph(self):
        g = Graph([triple("a", "p", "b")])
        assert apply_update(g, UpdateMessage(3, Op.INS, triple("a", "p", "b")), strict=False) is g
        assert not g.copy().apply(UpdateMessage(3, Op.INS, triple("a", "p", "b")), strict=False)

    def test_pure(self):
        g = Graph()
        apply_update(g, UpdateMessage(1, Op.INS, triple("a", "p", "b")))
        assert len(g) == 0


_edges = st.builds(DataTriple, _consts, st.sampled_from(PREDS), _consts)


@given(st.frozensets(_edges, max_size=6), _edges)
def test_update_then_inverse_is_identity(start, t):
    g = Graph(start)
    u = UpdateMessage(1, Op.DEL if t in g else Op.INS, t)
    h = apply_update(apply_update(g, u), u.inverse(2))
    assert h == g
