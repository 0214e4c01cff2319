"""Graph structure, d-separation, and back-door machinery.

The d-separation kernel is checked against an independent trail-enumeration
oracle (tests/oracles.py); the two must agree on every query.
"""
import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from causeway.errors import (
    CycleDetected,
    DuplicateEdge,
    OverlappingRoles,
    SelfLoop,
    UnknownEndpoint,
    UnknownVariable,
)
from causeway.graph import (
    CausalDag,
    SeparationQuery,
    Variable,
    all_simple_trails,
    backdoor_rejection_reason,
    backdoor_trails,
    d_separated,
    implied_independencies,
    is_trail_blocked,
    minimal_adjustment_sets,
    satisfies_backdoor,
    validate_dag,
)
from tests.conftest import make_dag
from tests.oracles import dsep_by_trails, minimal_sets, random_dag, valid_backdoor_sets

CHAIN = make_dag("ABC", [("A", "B"), ("B", "C")])
FORK = make_dag("ABC", [("B", "A"), ("B", "C")])
COLLIDER = make_dag("ABCD", [("A", "B"), ("C", "B"), ("B", "D")])


class TestConstruction:
    def test_variables_are_canonically_ordered(self):
        g = make_dag(["b", "a", "c"], [("c", "a")])
        assert g.variable_names == ("a", "b", "c")

    def test_cycle_rejected_with_named_cycle(self):
        with pytest.raises(CycleDetected) as exc:
            make_dag("ABC", [("A", "B"), ("B", "C"), ("C", "A")])
        msg = str(exc.value)
        assert "A" in msg and "B" in msg and "C" in msg

    def test_two_node_cycle_rejected(self):
        with pytest.raises(CycleDetected):
            make_dag("AB", [("A", "B"), ("B", "A")])

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoop):
            make_dag("AB", [("A", "A")])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(DuplicateEdge):
            make_dag("AB", [("A", "B"), ("A", "B")])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(UnknownEndpoint):
            make_dag("AB", [("A", "Q")])

    def test_unknown_variable_lookup(self):
        with pytest.raises(UnknownVariable):
            CHAIN.parents("Q")

    def test_validate_dag_accepts_plain_strings(self):
        g = validate_dag(["X", "Y"], [("X", "Y")])
        assert g.variable("X").levels == ("0", "1")

    def test_relations(self):
        g = COLLIDER
        assert g.parents("B") == ("A", "C")
        assert g.children("B") == ("D",)
        assert g.descendants("A") == frozenset({"B", "D"})
        assert g.ancestors("D") == frozenset({"A", "B", "C"})
        assert g.is_descendant("D", of="A")
        assert not g.is_descendant("A", of="D")

    def test_topological_order_respects_edges(self):
        order = COLLIDER.topological_order()
        for a, b in COLLIDER.edges:
            assert order.index(a) < order.index(b)

    def test_with_and_without_edge_return_new_graphs(self):
        g2 = CHAIN.with_edge("A", "C")
        assert ("A", "C") in g2.edges and ("A", "C") not in CHAIN.edges
        g3 = g2.without_edge("A", "C")
        assert g3.edges == CHAIN.edges

    def test_with_edge_cycle_rejected(self):
        with pytest.raises(CycleDetected):
            CHAIN.with_edge("C", "A")

    def test_round_trip_dict(self):
        g = CausalDag.from_dict(COLLIDER.to_dict())
        assert g == COLLIDER

    def test_default_reference_level_is_first(self):
        v = Variable("X", ("lo", "hi"))
        assert v.reference_level == "lo"


class TestTrails:
    def test_chain_single_trail(self):
        trails = all_simple_trails(CHAIN, "A", "C")
        assert [str(t) for t in trails] == ["A -> B -> C"]

    def test_collider_rendering(self):
        g = make_dag("ABC", [("A", "B"), ("C", "B")])
        (t,) = all_simple_trails(g, "A", "C")
        assert str(t) == "A -> B <- C"
        assert t.colliders() == ["B"]

    def test_trails_lexicographic(self):
        g = make_dag("XYPQ", [("X", "P"), ("P", "Y"), ("X", "Q"), ("Q", "Y")])
        trails = all_simple_trails(g, "X", "Y")
        assert [str(t) for t in trails] == ["X -> P -> Y", "X -> Q -> Y"]

    def test_blocking_rules(self):
        (t,) = all_simple_trails(CHAIN, "A", "C")
        assert is_trail_blocked(CHAIN, t, {"B"})
        assert not is_trail_blocked(CHAIN, t, set())
        g = make_dag("ABC", [("A", "B"), ("C", "B")])
        (t,) = all_simple_trails(g, "A", "C")
        assert is_trail_blocked(g, t, set())
        assert not is_trail_blocked(g, t, {"B"})

    def test_collider_opened_by_descendant(self):
        trails = all_simple_trails(COLLIDER, "A", "C")
        direct = next(t for t in trails if "D" not in t.nodes)
        assert not is_trail_blocked(COLLIDER, direct, {"D"})


def queries(g):
    names = g.variable_names
    for x, y in itertools.combinations(names, 2):
        rest = [n for n in names if n not in (x, y)]
        for r in range(len(rest) + 1):
            for z in itertools.combinations(rest, r):
                yield x, y, frozenset(z)


def assert_matches_oracle(g):
    edges = sorted(g.edges)
    for x, y, z in queries(g):
        got = d_separated(g, SeparationQuery(x, y, z))
        want = dsep_by_trails(g.variable_names, edges, x, y, z)
        assert got == want, f"{x} vs {y} given {sorted(z)} on edges {edges}"


class TestDSeparation:
    def test_chain_fork_collider(self):
        q = SeparationQuery("A", "C", frozenset({"B"}))
        assert d_separated(CHAIN, q)
        assert d_separated(FORK, q)
        assert not d_separated(COLLIDER, q)
        empty = SeparationQuery("A", "C", frozenset())
        assert not d_separated(CHAIN, empty)
        assert not d_separated(FORK, empty)
        assert d_separated(COLLIDER, empty)

    def test_conditioning_on_collider_descendant_opens(self):
        assert not d_separated(COLLIDER, SeparationQuery("A", "C", frozenset({"D"})))

    def test_overlapping_roles_rejected(self):
        with pytest.raises(OverlappingRoles):
            d_separated(CHAIN, SeparationQuery("A", "C", frozenset({"A"})))

    def test_oracle_agreement_on_fixed_graphs(self):
        for g in (CHAIN, FORK, COLLIDER):
            assert_matches_oracle(g)

    def test_oracle_agreement_on_random_graphs(self):
        rng = random.Random(42)
        for _ in range(30):
            names, edges = random_dag(rng, rng.randint(3, 6))
            assert_matches_oracle(make_dag(names, edges))


@st.composite
def dags(draw, max_nodes=6):
    n = draw(st.integers(min_value=2, max_value=max_nodes))
    names = [f"N{i}" for i in range(n)]
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    edges = [(names[i], names[j]) for i, j in chosen]
    return make_dag(names, edges)


@st.composite
def dag_queries(draw):
    g = draw(dags())
    names = list(g.variable_names)
    x, y = draw(st.permutations(names).map(lambda p: p[:2]))
    rest = [n for n in names if n not in (x, y)]
    z = frozenset(draw(st.lists(st.sampled_from(rest), unique=True))) if rest else frozenset()
    return g, x, y, z


class TestDSeparationProperties:
    @settings(max_examples=150, deadline=None)
    @given(dag_queries())
    def test_symmetric_in_endpoints(self, gq):
        g, x, y, z = gq
        assert d_separated(g, SeparationQuery(x, y, z)) == d_separated(
            g, SeparationQuery(y, x, z)
        )

    @settings(max_examples=150, deadline=None)
    @given(dag_queries(), st.randoms(use_true_random=False))
    def test_separation_survives_edge_deletion(self, gq, rnd):
        g, x, y, z = gq
        if not g.edges or not d_separated(g, SeparationQuery(x, y, z)):
            return
        edge = rnd.choice(sorted(g.edges))
        assert d_separated(g.without_edge(*edge), SeparationQuery(x, y, z))

    @settings(max_examples=100, deadline=None)
    @given(dag_queries())
    def test_matches_trail_oracle(self, gq):
        g, x, y, z = gq
        got = d_separated(g, SeparationQuery(x, y, z))
        assert got == dsep_by_trails(g.variable_names, sorted(g.edges), x, y, z)


class TestBackdoor:
    def test_backdoor_trails_start_into_treatment(self):
        g = make_dag("ZXY", [("Z", "X"), ("Z", "Y"), ("X", "Y")])
        trails = backdoor_trails(g, "X", "Y")
        assert [str(t) for t in trails] == ["X <- Z -> Y"]

    def test_confounder_must_be_adjusted(self):
        g = make_dag("ZXY", [("Z", "X"), ("Z", "Y"), ("X", "Y")])
        assert not satisfies_backdoor(g, "X", "Y", ())
        assert satisfies_backdoor(g, "X", "Y", ("Z",))
        assert minimal_adjustment_sets(g, "X", "Y") == [
            s for s in minimal_adjustment_sets(g, "X", "Y")
        ]
        assert [set(s.variables) for s in minimal_adjustment_sets(g, "X", "Y")] == [{"Z"}]

    def test_mediator_rejected(self):
        g = make_dag("XMY", [("X", "M"), ("M", "Y")])
        assert not satisfies_backdoor(g, "X", "Y", ("M",))
        reason = backdoor_rejection_reason(g, "X", "Y", ("M",))
        assert "M" in reason and "descendant" in reason

    def test_collider_conditioning_rejected(self):
        g = make_dag("XYC", [("X", "Y"), ("X", "C"), ("Y", "C")])
        assert satisfies_backdoor(g, "X", "Y", ())
        assert not satisfies_backdoor(g, "X", "Y", ("C",))

    def test_open_trail_named_in_rejection(self):
        g = make_dag("ZXY", [("Z", "X"), ("Z", "Y"), ("X", "Y")])
        reason = backdoor_rejection_reason(g, "X", "Y", ())
        assert "X <- Z -> Y" in reason

    def test_empty_set_minimal_when_no_backdoor(self):
        g = make_dag("XY", [("X", "Y")])
        sets = minimal_adjustment_sets(g, "X", "Y")
        assert [s.variables for s in sets] == [()]

    def test_minimal_sets_match_exhaustive_oracle(self):
        rng = random.Random(7)
        for _ in range(25):
            names, edges = random_dag(rng, rng.randint(3, 6))
            g = make_dag(names, edges)
            t, o = rng.sample(names, 2)
            got = sorted(
                (frozenset(s.variables) for s in minimal_adjustment_sets(g, t, o)),
                key=lambda s: (len(s), sorted(s)),
            )
            want = minimal_sets(valid_backdoor_sets(names, edges, t, o))
            assert got == want, (edges, t, o)


class TestImpliedIndependencies:
    def test_local_markov_chain(self):
        claims = implied_independencies(CHAIN)
        assert [str(c) for c in claims] == ["A _||_ C | B"]

    def test_complete_graph_implies_nothing(self):
        g = make_dag("ABC", [("A", "B"), ("A", "C"), ("B", "C")])
        assert implied_independencies(g) == []

    def test_claims_hold_in_graph(self, final_graph):
        claims = implied_independencies(final_graph)
        assert len(claims) > 0
        for c in claims:
            assert d_separated(final_graph, c)

    def test_claims_canonically_ordered(self, final_graph):
        claims = implied_independencies(final_graph)
        keys = [(c.x, c.y, tuple(sorted(c.z))) for c in claims]
        assert keys == sorted(keys)

    def test_all_pairs_basis_is_superset(self):
        local = implied_independencies(FORK, basis="local-markov")
        allp = implied_independencies(FORK, basis="all-pairs")
        assert {(c.x, c.y, c.z) for c in local} <= {(c.x, c.y, c.z) for c in allp}
