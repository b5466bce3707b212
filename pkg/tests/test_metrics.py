from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F, models
from fuzzymodal.checks import axiom_violation, loop_chain
from fuzzymodal.core import Model, modal
from fuzzymodal.metrics import (
    GameOracle,
    LiftInput,
    behavioural_distance,
    candidate_epsilons,
    depth_distance,
    distance_between,
    distance_sequence,
    game_distance_oracle,
    kantorovich_distance,
    kantorovich_lift,
    kantorovich_lift_exhaustive,
    kantorovich_step,
    lift_input,
    logical_distance_lower,
    pair_distance,
)

# hand-derived: atom gaps plus unanswerable or badly answered moves
FORK_FULL = {
    ("s1", "s2"): "1/2", ("s1", "s3"): "1/2", ("s1", "s4"): "1/5", ("s1", "s5"): "1/2", ("s1", "s6"): "1/2",
    ("s2", "s3"): "1/10", ("s2", "s4"): "2/5", ("s2", "s5"): "1/5", ("s2", "s6"): "1/10",
    ("s3", "s4"): "2/5", ("s3", "s5"): "1/10", ("s3", "s6"): "0",
    ("s4", "s5"): "2/5", ("s4", "s6"): "2/5",
    ("s5", "s6"): "1/10",
}


class TestWorkedExample:
    def test_depth_one_and_two(self, fork):
        assert depth_distance(fork, 1)["s1", "s4"] == F("1/10")
        assert depth_distance(fork, 2)["s1", "s4"] == F("1/5")

    def test_depth_zero_is_zero(self, fork):
        assert set(depth_distance(fork, 0).as_dict().values()) == {0}

    def test_unbounded(self, fork):
        d = behavioural_distance(fork)
        for (a, b), v in FORK_FULL.items():
            assert d[a, b] == F(v), (a, b)

    def test_game_oracle(self, fork):
        assert game_distance_oracle(fork, "s1", "s4", 2) == F("1/5")
        assert game_distance_oracle(fork, "s1", "s4", 1) == F("1/10")
        assert game_distance_oracle(fork, "s1", "s4") == F("1/5")
        assert game_distance_oracle(fork, "s3", "s3", 2) == 0

    def test_all_methods_agree(self, fork):
        for n in range(4):
            rec = depth_distance(fork, n)
            assert GameOracle(fork).table(n) == rec
            assert kantorovich_distance(fork, n) == rec

    def test_provenance(self, fork):
        assert depth_distance(fork, 2).provenance == "recurrence@2"
        assert behavioural_distance(fork).provenance == "recurrence@inf"
        assert kantorovich_distance(fork, 2).provenance == "kantorovich@2"


class TestLift:
    def test_over_zero_table(self, fork):
        d0 = depth_distance(fork, 0)
        assert kantorovich_lift(d0, lift_input(fork, "s1"), lift_input(fork, "s4")) == F("1/10")

    def test_over_depth_one(self, fork):
        d1 = depth_distance(fork, 1)
        assert kantorovich_lift(d1, lift_input(fork, "s1"), lift_input(fork, "s4")) == F("1/5")

    def test_identical_inputs(self, fork):
        d1 = depth_distance(fork, 1)
        x = lift_input(fork, "s4")
        assert kantorovich_lift(d1, x, x) == 0

    def test_carrier_mismatch(self, fork):
        d = depth_distance(fork, 0)
        stray = LiftInput({"p": Fraction(1)}, {"elsewhere": Fraction(1)})
        with pytest.raises(ValueError, match="carrier"):
            kantorovich_lift(d, stray, lift_input(fork, "s1"))

    def test_family_matches_exhaustive(self, fork):
        for n in range(3):
            d = depth_distance(fork, n)
            for a in fork.states:
                for b in fork.states:
                    x, y = lift_input(fork, a), lift_input(fork, b)
                    assert kantorovich_lift(d, x, y) == kantorovich_lift_exhaustive(d, x, y)

    @settings(max_examples=30)
    @given(models(max_states=4), st.integers(0, 2))
    def test_family_matches_exhaustive_random(self, m, n):
        d = depth_distance(m, n)
        for a in m.states:
            for b in m.states:
                x, y = lift_input(m, a), lift_input(m, b)
                assert kantorovich_lift(d, x, y) == kantorovich_lift_exhaustive(d, x, y)


class TestStructural:
    def test_duplicate_states(self):
        m = Model(["a", "b", "c"], ["p"], {("a", "p"): F("1/3"), ("b", "p"): F("1/3")},
                  {("a", "c"): F("1/2"), ("b", "c"): F("1/2")})
        assert behavioural_distance(m)["a", "b"] == 0

    def test_loop_against_chain(self):
        m = loop_chain(5)
        for n in range(5):
            assert depth_distance(m, n)["loop", "c0"] == 0
            assert game_distance_oracle(m, "loop", "c0", n) == 0
        assert behavioural_distance(m)["loop", "c0"] == 1

    def test_distance_between_models(self, fork):
        one = Model(["z"], ["p"], {("z", "p"): 1}, {})
        assert distance_between(fork, "s2", one, "z") == 0
        assert distance_between(fork, "s1", one, "z") == F("1/2")
        assert distance_between(fork, "s1", fork, "s4", 1) == F("1/10")

    def test_candidates_include_grid_and_midpoints(self, fork):
        eps = candidate_epsilons(fork)
        assert F("1/5") in eps and F("1/20") in eps
        assert eps == sorted(eps)


class TestLogicalLowerBound:
    def test_fork_depth_two(self, fork):
        gap, phi = logical_distance_lower(fork, "s1", "s4", 2, F("1/100"))
        assert F("19/100") <= gap <= F("1/5")
        assert modal.rank(phi) <= 2

    def test_fork_depth_one(self, fork):
        gap, phi = logical_distance_lower(fork, "s1", "s4", 1, F("1/100"))
        assert gap >= F("9/100") and modal.rank(phi) <= 1

    def test_reflexive(self, fork):
        gap, phi = logical_distance_lower(fork, "s3", "s3", 2, F("1/100"))
        assert gap == 0 and phi == modal.Const(Fraction(0))

    def test_delta_must_be_positive(self, fork):
        with pytest.raises(ValueError):
            logical_distance_lower(fork, "s1", "s4", 2, Fraction(0))


@settings(max_examples=40)
@given(models(max_states=4))
def test_three_way_coincidence(m):
    seq = distance_sequence(m, 3)
    oracle = GameOracle(m)
    for n, d in enumerate(seq):
        assert oracle.table(n) == d
        if n:
            assert kantorovich_step(m, seq[n - 1]) == d
    assert oracle.table(None) == behavioural_distance(m)


@given(models())
def test_tables_are_monotone_pseudometrics(m):
    seq = distance_sequence(m, 4)
    full = behavioural_distance(m)
    for d in seq + [full]:
        assert axiom_violation(d) is None
    for a, b in zip(seq, seq[1:]):
        assert a.leq(b)
    assert seq[-1].leq(full)


@given(models(), st.integers(0, 4))
def test_pair_distance_matches_table(m, n):
    d, full = depth_distance(m, n), behavioural_distance(m)
    for a in m.states:
        for b in m.states:
            assert pair_distance(m, a, b, n) == d[a, b]
            assert pair_distance(m, a, b) == full[a, b]


@given(models())
def test_fixpoint_is_reached_by_the_sequence(m):
    # on finite models the depth-n distances reach the unbounded game distance
    full = GameOracle(m).table(None).as_dict()
    bound = len(m.states) ** 2 * m.grid_denominator() + 1
    assert any(depth_distance(m, n).as_dict() == full for n in range(bound + 1))
