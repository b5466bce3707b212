from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import F, fol_formulas, modal_formulas, models, twelfths
from fuzzymodal.core import (
    AtomMismatchError,
    DistanceTable,
    Model,
    PseudometricError,
    TruthRangeError,
    UnknownAtomError,
    UnknownStateError,
    abs_diff,
    complement,
    disjoint_union,
    fol,
    format_decimal,
    format_truth,
    grid_denominator,
    modal,
    parse_truth,
    qrank,
    rank,
    truth,
    tsub,
)


class TestTruth:
    def test_truncated_subtraction(self):
        assert tsub(F("9/10"), F("1/2")) == F("2/5")
        assert tsub(F("1/5"), F("1/2")) == 0

    def test_complement_and_order(self):
        assert complement(Fraction(0)) == 1
        assert min(F("1/2"), F("2/5")) == F("2/5")
        assert abs_diff(F("1/5"), F("4/5")) == F("3/5")

    def test_parse_is_exact(self):
        assert parse_truth("0.1") == F("1/10")
        assert parse_truth("1/3") == F("1/3")
        assert parse_truth("2/4") == F("1/2")
        assert parse_truth("1") == 1

    @pytest.mark.parametrize("text", ["3/2", "1.5", "2"])
    def test_parse_rejects_out_of_range(self, text):
        with pytest.raises(TruthRangeError, match="outside"):
            parse_truth(text)

    def test_parse_rejects_zero_denominator(self):
        with pytest.raises(ValueError, match="zero denominator"):
            parse_truth("1/0")

    def test_floats_are_refused(self):
        with pytest.raises(TypeError):
            truth(0.5)

    def test_formatting(self):
        assert format_truth(F("2/4")) == "1/2"
        assert format_truth(Fraction(1)) == "1"
        assert format_decimal(F("1/5")) == "0.2"
        assert format_decimal(F("1/3")).startswith("~0.333")

    def test_grid_denominator(self):
        assert grid_denominator([F("1/4"), F("1/6"), Fraction(0)]) == 12

    @given(twelfths, twelfths)
    def test_operations_stay_canonical(self, a, b):
        for r in (tsub(a, b), complement(a), abs_diff(a, b), min(a, b), max(a, b)):
            assert 0 <= r <= 1
            assert r == Fraction(r.numerator, r.denominator)


class TestModel:
    def test_sparse_storage_drops_zeros(self):
        m = Model(["a", "b"], ["p"], {("a", "p"): 0, ("b", "p"): F("1/2")}, {("a", "b"): 0})
        assert ("a", "p") not in m.valuation
        assert not m.relation
        assert m.val("a", "p") == 0 and m.r("a", "b") == 0

    def test_rejects_bad_declarations(self):
        with pytest.raises(Exception, match="at least one state"):
            Model([], ["p"], {}, {})
        with pytest.raises(UnknownStateError):
            Model(["a"], ["p"], {}, {("a", "zz"): 1})
        with pytest.raises(UnknownAtomError):
            Model(["a"], ["p"], {("a", "q"): 1}, {})
        with pytest.raises(Exception, match="duplicate"):
            Model(["a", "a"], [], {}, {})

    def test_successors_in_state_order(self, fork):
        assert list(fork.successors("s4").items()) == [("s5", F("2/5")), ("s6", F("3/10"))]
        assert dict(fork.successors("s2")) == {}

    def test_union_of_model_with_itself(self, fork):
        u, il, ir = disjoint_union(fork, fork)
        assert len(u.states) == 12
        assert all(u.r(il[s], ir[t]) == 0 and u.r(ir[s], il[t]) == 0 for s in fork.states for t in fork.states)

    def test_union_with_single_state(self, fork):
        one = Model(["z"], ["p"], {}, {})
        u, _, ir = disjoint_union(fork, one)
        assert len(u.states) == 7
        assert u.val(ir["z"], "p") == 0

    def test_union_requires_same_atoms(self, fork):
        with pytest.raises(AtomMismatchError):
            disjoint_union(fork, Model(["z"], ["q"], {}, {}))

    @given(models(), models())
    def test_union_is_symmetric_up_to_relabelling(self, m, n):
        u1, l1, r1 = disjoint_union(m, n)
        u2, l2, r2 = disjoint_union(n, m)
        back = {l1[s]: r2[s] for s in m.states} | {r1[s]: l2[s] for s in n.states}
        renamed = u1.rename(back)
        assert sorted(renamed.states) == sorted(u2.states)
        assert dict(renamed.relation) == dict(u2.relation)
        assert dict(renamed.valuation) == dict(u2.valuation)


class TestFormulas:
    def test_rank_examples(self):
        half = F("1/2")
        assert rank(modal.Const(half)) == 0
        assert rank(modal.Atom("p")) == 1
        assert rank(modal.Diamond(modal.SubConst(modal.Atom("p"), half))) == 2

    def test_qrank_examples(self):
        assert qrank(fol.Rel("x", "y")) == 0
        assert qrank(fol.Exists("y", fol.And(fol.Rel("x", "y"), fol.AtomApp("p", "y")))) == 1
        assert qrank(fol.Exists("x", fol.Exists("y", fol.Rel("x", "y")))) == 2

    def test_free_and_bound_variables(self):
        phi = fol.Exists("y", fol.And(fol.Rel("x", "y"), fol.Eq("y", "z")))
        assert fol.free_vars(phi) == {"x", "z"}
        assert fol.bound_vars(phi) == {"y"}

    def test_sugar_encodings(self):
        p, q = modal.Atom("p"), modal.Atom("q")
        assert modal.Or(p, q) == modal.Neg(modal.And(modal.Neg(p), modal.Neg(q)))
        assert modal.Box(p) == modal.Neg(modal.Diamond(modal.Neg(p)))

    @given(modal_formulas())
    def test_rank_monotone_under_subformulas(self, phi):
        r = rank(phi)
        for child in modal.children(phi):
            if isinstance(phi, modal.Diamond):
                assert rank(child) + 1 == r
            else:
                assert rank(child) <= r

    @given(fol_formulas())
    def test_qrank_monotone_under_subformulas(self, phi):
        for child in fol.children(phi):
            assert qrank(child) <= qrank(phi)


class TestDistanceTable:
    def test_accepts_pseudometric(self):
        d = DistanceTable(["a", "b"], {("a", "b"): F("1/2"), ("b", "a"): F("1/2")})
        assert d["a", "b"] == F("1/2") and d["a", "a"] == 0

    def test_rejects_triangle_violation(self):
        e = {("a", "b"): F("1/10"), ("b", "c"): F("1/10"), ("a", "c"): F("1/2")}
        e |= {(y, x): v for (x, y), v in e.items()}
        with pytest.raises(PseudometricError, match="triangle"):
            DistanceTable(["a", "b", "c"], e)

    def test_rejects_asymmetry(self):
        with pytest.raises(PseudometricError):
            DistanceTable(["a", "b"], {("a", "b"): F("1/2")})

    def test_text_rendering(self):
        d = DistanceTable(["a", "b"], {("a", "b"): F("1/2"), ("b", "a"): F("1/2")})
        assert d.to_text().splitlines() == ["      a   b", "  a   0 1/2", "  b 1/2   0"]
