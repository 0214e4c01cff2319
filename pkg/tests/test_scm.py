"""Structural model: validation, sampling, intervention, effect oracle."""
import itertools

import numpy as np
import pytest

from causeway import dagfile, scm
from causeway.errors import DegenerateTable, MissingCell, ZeroDenominator
from causeway.graph import CausalDag, Variable
from causeway.scm import (
    Cpt,
    ScmSpec,
    format_scm,
    intervene,
    interventional_distribution,
    joint_probability,
    marginal_distribution,
    oracle_effect,
    sample,
)
from tests.conftest import binary


def simple_model():
    g = CausalDag([binary("X"), binary("Y")], [("X", "Y")])
    return ScmSpec(g, {
        "X": Cpt("X", (), {(): (0.6, 0.4)}),
        "Y": Cpt("Y", ("X",), {("0",): (0.9, 0.1), ("1",): (0.2, 0.8)}),
    })


class TestValidation:
    def test_missing_parent_combo(self):
        g = CausalDag([binary("X"), binary("Y")], [("X", "Y")])
        with pytest.raises(MissingCell):
            ScmSpec(g, {
                "X": Cpt("X", (), {(): (0.6, 0.4)}),
                "Y": Cpt("Y", ("X",), {("0",): (0.9, 0.1)}),
            })

    def test_row_must_sum_to_one(self):
        g = CausalDag([binary("X")], [])
        with pytest.raises(DegenerateTable):
            ScmSpec(g, {"X": Cpt("X", (), {(): (0.6, 0.5)})})

    def test_missing_cpt(self):
        g = CausalDag([binary("X"), binary("Y")], [])
        with pytest.raises(MissingCell):
            ScmSpec(g, {"X": Cpt("X", (), {(): (0.5, 0.5)})})


class TestJoint:
    def test_hand_computed(self):
        m = simple_model()
        assert joint_probability(m, {"X": "1", "Y": "1"}) == pytest.approx(0.4 * 0.8)

    def test_sums_to_one(self, reference_model):
        # full enumeration over 12 variables is too large; marginalize instead
        dist = marginal_distribution(reference_model, "RouteChoice")
        assert sum(dist.values()) == pytest.approx(1.0, abs=1e-12)

    def test_triangle_sums_to_one(self, confounded_model):
        total = sum(
            joint_probability(confounded_model, {"Z": z, "X": x, "Y": y})
            for z in "01" for x in "01" for y in "01"
        )
        assert total == pytest.approx(1.0, abs=1e-12)


class TestSampling:
    def test_deterministic(self):
        m = simple_model()
        assert sample(m, 500, 3) == sample(m, 500, 3)
        assert sample(m, 500, 3) != sample(m, 500, 4)

    def test_frequencies_match_within_3_sigma(self, confounded_model):
        n = 40000
        t = sample(confounded_model, n, 5)
        dist_x = marginal_distribution(confounded_model, "X")
        for level, p in dist_x.items():
            obs = np.mean(np.array(t.level_strings("X")) == level)
            sigma = np.sqrt(p * (1 - p) / n)
            assert abs(obs - p) < 3.5 * sigma

    def test_conditionals_match(self):
        m = simple_model()
        t = sample(m, 50000, 1)
        x = np.array(t.level_strings("X"))
        y = np.array(t.level_strings("Y"))
        p = np.mean(y[x == "1"] == "1")
        assert abs(p - 0.8) < 0.01

    def test_prefix_stability(self):
        """The first rows of a larger sample equal the smaller sample."""
        m = simple_model()
        small = sample(m, 100, 9)
        big = sample(m, 300, 9)
        assert big.select_rows(np.arange(100)) == small


class TestIntervene:
    def test_point_mass_and_edge_removal(self):
        m = simple_model()
        m2 = intervene(m, "Y", "1")
        assert m2.graph.edges == frozenset()
        assert joint_probability(m2, {"X": "0", "Y": "1"}) == pytest.approx(0.6)
        assert joint_probability(m2, {"X": "0", "Y": "0"}) == 0.0

    def test_idempotent(self, confounded_model):
        once = intervene(confounded_model, "X", "1")
        twice = intervene(once, "X", "1")
        assert once == twice

    def test_commutes_on_distinct_targets(self, confounded_model):
        ab = intervene(intervene(confounded_model, "X", "1"), "Z", "0")
        ba = intervene(intervene(confounded_model, "Z", "0"), "X", "1")
        assert ab == ba

    def test_downstream_distribution_shifts(self):
        m = simple_model()
        d1 = interventional_distribution(m, "X", "1", "Y")
        assert d1["1"] == pytest.approx(0.8)


class TestOracleEffect:
    def test_hand_computed_confounded_triangle(self, confounded_model):
        # P(Y=1|do(X=x)) = sum_z P(z) P(Y=1|x,z), with P(Z=1)=0.6
        p1 = 0.4 * 0.35 + 0.6 * 0.75
        p0 = 0.4 * 0.15 + 0.6 * 0.5
        rr, orr = oracle_effect(confounded_model, "X", "Y", "1", ("1", "0"))
        assert rr == pytest.approx(p1 / p0, abs=1e-12)
        assert orr == pytest.approx((p1 / (1 - p1)) / (p0 / (1 - p0)), abs=1e-12)

    def test_null_model_has_unit_effect(self, null_model):
        rr, orr = oracle_effect(null_model, "X", "Y", "1", ("1", "0"))
        assert rr == pytest.approx(1.0, abs=1e-12)
        assert orr == pytest.approx(1.0, abs=1e-12)

    def test_success_set_of_levels(self, reference_model):
        exits = ("ExitA", "ExitB", "ExitC", "ExitD", "ExitE")
        rr, _ = oracle_effect(
            reference_model, "Traffic", "RouteChoice", exits, ("Heavy", "Normal")
        )
        assert rr > 0

    def test_zero_denominator(self):
        g = CausalDag([binary("X"), binary("Y")], [("X", "Y")])
        m = ScmSpec(g, {
            "X": Cpt("X", (), {(): (0.5, 0.5)}),
            "Y": Cpt("Y", ("X",), {("0",): (1.0, 0.0), ("1",): (0.5, 0.5)}),
        })
        with pytest.raises(ZeroDenominator):
            oracle_effect(m, "X", "Y", "1", ("1", "0"))


class TestSerialization:
    def test_round_trip(self, confounded_model):
        text = format_scm(confounded_model)
        again = scm.from_parsed(dagfile.parse(text))
        assert again == confounded_model

    def test_reference_round_trip(self, reference_model):
        text = format_scm(reference_model)
        assert scm.from_parsed(dagfile.parse(text)) == reference_model
