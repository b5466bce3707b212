import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F, modal_formulas, models
from fuzzymodal.approx import (
    UNIT,
    Approximator,
    Signature,
    approximate_function,
    non_expansive_violation,
    quotient_by_signature,
    signature,
    signatures,
    synth_witness,
)
from fuzzymodal.core import Model, NotNonExpansiveError, disjoint_union, modal
from fuzzymodal.generators import cone
from fuzzymodal.metrics import depth_distance, distance_between
from fuzzymodal.semantics import denote
from fuzzymodal.syntax import parse_modal

DELTA = F("1/100")


def gap(model, phi, a, b):
    v = denote(model, phi)
    return abs(v[a] - v[b])


class TestWitness:
    def test_fork_depth_two(self, fork):
        phi = synth_witness(fork, "s1", "s4", 2, DELTA)
        assert modal.rank(phi) <= 2
        assert F("19/100") <= gap(fork, phi, "s1", "s4") <= F("1/5")
        # the hand-written witness attains the distance exactly
        assert gap(fork, parse_modal("<>(p .- 1/2)"), "s1", "s4") == F("1/5")

    def test_atom_witness(self, fork):
        phi = synth_witness(fork, "s2", "s3", 1, DELTA)
        assert phi == modal.Atom("p")
        assert gap(fork, phi, "s2", "s3") == F("1/10")

    def test_same_state(self, fork):
        assert synth_witness(fork, "s5", "s5", 3, DELTA) == modal.Const(Fraction(0))

    def test_delta_must_be_positive(self, fork):
        with pytest.raises(ValueError):
            synth_witness(fork, "s1", "s4", 2, Fraction(0))

    @settings(max_examples=40)
    @given(models(max_states=4), st.integers(0, 3))
    def test_soundness(self, m, n):
        ap = Approximator(m)
        d = ap.table(n)
        for a in m.states:
            for b in m.states:
                phi = ap.synth_witness(a, b, n, DELTA)
                assert modal.rank(phi) <= n
                assert d[a, b] - DELTA <= gap(m, phi, a, b) <= d[a, b]


class TestApproximation:
    def test_fork_formula_values(self, fork):
        f = denote(fork, parse_modal("<>(p .- 1/2)"))
        phi = approximate_function(fork, f, 2, F("1/20"))
        vals = denote(fork, phi)
        assert modal.rank(phi) <= 2
        assert all(abs(vals[s] - f[s]) <= F("1/20") for s in fork.states)

    def test_constant_function(self, fork):
        f = {s: F("1/3") for s in fork.states}
        assert approximate_function(fork, f, 2, F("1/20")) == modal.Const(F("1/3"))

    def test_rejects_expanding_function(self, fork):
        f = {s: Fraction(1 if s == "s1" else 0) for s in fork.states}
        with pytest.raises(NotNonExpansiveError) as info:
            approximate_function(fork, f, 2, F("1/20"))
        assert info.value.pair == ("s1", "s2")

    def test_rejects_partial_function(self, fork):
        with pytest.raises(ValueError, match="undefined"):
            approximate_function(fork, {"s1": Fraction(0)}, 1, F("1/20"))

    def test_non_expansive_violation(self, fork):
        d = depth_distance(fork, 1)
        assert non_expansive_violation(cone(d, "s1", Fraction(1)), d) is None

    @settings(max_examples=40)
    @given(models(max_states=4), st.integers(0, 3), st.integers(0, 10 ** 6))
    def test_cones(self, m, n, seed):
        rng = random.Random(seed)
        ap = Approximator(m)
        d = ap.table(n)
        f = cone(d, rng.choice(m.states), Fraction(rng.randint(0, 12), 12))
        phi = ap.approximate_function(f, n, F("1/20"))
        vals = ap.values(phi)
        assert modal.rank(phi) <= n
        assert max(abs(vals[s] - f[s]) for s in m.states) <= F("1/20")

    @settings(max_examples=40)
    @given(models(max_states=4), modal_formulas())
    def test_formula_denotations(self, m, psi):
        n = modal.rank(psi)
        f = denote(m, psi)
        phi = approximate_function(m, f, n, F("1/20"))
        vals = denote(m, phi)
        assert max(abs(vals[s] - f[s]) for s in m.states) <= F("1/20")

    @settings(max_examples=40)
    @given(models(max_states=4), st.integers(0, 3), st.integers(0, 10 ** 6))
    def test_pairwise_algebra(self, m, n, seed):
        rng = random.Random(seed)
        ap = Approximator(m)
        d = ap.table(n)
        f = cone(d, rng.choice(m.states), Fraction(rng.randint(0, 12), 12))
        delta = F("1/40")
        for hi in m.states:
            for lo in m.states:
                if f[hi] <= f[lo]:
                    continue
                psi = ap.synth_witness(hi, lo, n, delta)
                g = gap(m, psi, hi, lo)
                vals = ap.values(ap.pair_approximant(f, hi, lo, n, delta))
                assert vals[lo] == f[lo]
                assert vals[hi] == f[hi] - max(Fraction(0), f[hi] - f[lo] - g)
                assert all(f[lo] <= vals[s] <= f[hi] for s in m.states)


class TestSignatures:
    def test_depth_zero_is_unit(self, fork):
        assert signature(fork, "s1", 0) == UNIT

    def test_dead_end(self, fork):
        assert signature(fork, "s2", 1) == Signature(1, (("p", Fraction(1)),), ())

    def test_merged_successors(self, fork):
        assert signature(fork, "s1", 1) == Signature(1, (("p", Fraction(1)),), ((UNIT, F("1/2")),))

    def test_quotient_of_fork(self, fork):
        q, proj = quotient_by_signature(fork, 1)
        assert proj["s6"] == proj["s3"] == "s3"
        assert len(q.states) == 5

    def test_quotient_of_duplicated_model(self, fork):
        u, _, _ = disjoint_union(fork, fork)
        q, _ = quotient_by_signature(u, 3)
        assert len(q.states) == len(quotient_by_signature(fork, 3)[0].states)

    def test_negative_depth(self, fork):
        with pytest.raises(ValueError):
            signatures(fork, -1)

    @given(models(), st.integers(0, 3))
    def test_equal_signatures_have_distance_zero(self, m, n):
        sig = signatures(m, n)
        d = depth_distance(m, n)
        for a in m.states:
            for b in m.states:
                if sig[a] == sig[b]:
                    assert d[a, b] == 0

    @given(models(), st.integers(0, 3))
    def test_quotient_projection_has_distance_zero(self, m, n):
        q, proj = quotient_by_signature(m, n)
        for a in m.states:
            assert distance_between(m, a, q, proj[a], n) == 0

    @given(models(), st.integers(0, 3), modal_formulas())
    def test_quotient_preserves_low_rank_formulas(self, m, n, phi):
        if modal.rank(phi) > n:
            return
        q, proj = quotient_by_signature(m, n)
        vm, vq = denote(m, phi), denote(q, phi)
        assert all(vm[a] == vq[proj[a]] for a in m.states)
