from fractions import Fraction

import pytest
from hypothesis import given

from conftest import F, fol_formulas, modal_formulas, models
from fuzzymodal.core import fol, modal
from fuzzymodal.syntax import (
    ParseError,
    parse_fol,
    parse_modal,
    parse_model,
    parse_state_function,
    print_fol,
    print_modal,
    print_model,
    print_state_function,
)


class TestModal:
    def test_diamond_of_truncation(self):
        assert parse_modal("<>(p .- 1/2)") == modal.Diamond(modal.SubConst(modal.Atom("p"), F("1/2")))

    def test_box_is_expanded(self):
        assert parse_modal("[]0") == modal.Neg(modal.Diamond(modal.Neg(modal.Const(Fraction(0)))))

    def test_subtraction_needs_literal(self):
        with pytest.raises(ParseError, match="subtraction constant must be rational literal"):
            parse_modal("p .- q")

    def test_precedence(self):
        p, q, r = (modal.Atom(x) for x in "pqr")
        assert parse_modal("~p & q") == modal.And(modal.Neg(p), q)
        assert parse_modal("p & q | r") == modal.Or(modal.And(p, q), r)
        assert parse_modal("p -> q -> r") == modal.Implies(p, modal.Implies(q, r))
        assert parse_modal("<>p .- 0.25 .- 1/4") == modal.SubConst(
            modal.SubConst(modal.Diamond(p), F("1/4")), F("1/4"))

    def test_decimals_are_exact(self):
        assert parse_modal("0.1") == modal.Const(F("1/10"))

    @pytest.mark.parametrize("text", ["", "p &", "(p", "<>", "1.5", "p q"])
    def test_errors_carry_spans(self, text):
        with pytest.raises(ParseError) as info:
            parse_modal(text)
        span = info.value.span
        assert 0 <= span.begin <= span.end <= len(text)

    def test_empty_input(self):
        with pytest.raises(ParseError, match="formula expected"):
            parse_modal("   ")

    def test_printing(self):
        assert print_modal(modal.Const(F("1/2"))) == "1/2"
        assert print_modal(parse_modal("<>(p .- 1/2)")) == "<>(p .- 1/2)"

    @given(modal_formulas())
    def test_round_trip(self, phi):
        assert parse_modal(print_modal(phi)) == phi


class TestFol:
    def test_exists(self):
        assert parse_fol("E y. (R(x,y) & p(y))") == fol.Exists(
            "y", fol.And(fol.Rel("x", "y"), fol.AtomApp("p", "y")))

    def test_equality(self):
        assert parse_fol("x = y") == fol.Eq("x", "y")

    def test_quantifier_scope_is_maximal(self):
        assert parse_fol("E y. R(x,y) & p(y)") == fol.Exists(
            "y", fol.And(fol.Rel("x", "y"), fol.AtomApp("p", "y")))

    def test_dangling_quantifier(self):
        with pytest.raises(ParseError, match="formula expected"):
            parse_fol("E x.")

    @given(fol_formulas())
    def test_round_trip(self, phi):
        assert parse_fol(print_fol(phi)) == phi


FORK_TEXT = """\
atoms: p
states: s1 s2 s3 s4 s5 s6
val s1 p 1
val s2 p 1
val s3 p 9/10
val s4 p 1
val s5 p 4/5
val s6 p 9/10
edge s1 s2 1/2
edge s1 s3 1/2
edge s4 s5 2/5
edge s4 s6 3/10
"""


class TestModelFormat:
    def test_fork(self, fork):
        assert len(fork.states) == 6 and fork.atoms == ("p",) and len(fork.relation) == 4
        assert fork.r("s4", "s6") == F("3/10")

    def test_printing_is_canonical(self, fork):
        assert print_model(fork) == FORK_TEXT

    @given(models())
    def test_round_trip(self, m):
        assert parse_model(print_model(m)) == m

    def test_decimals_and_comments(self):
        m = parse_model("atoms: p  # one atom\nstates: a\nval a p 0.5\n")
        assert m.val("a", "p") == F("1/2")

    @pytest.mark.parametrize("text, message", [
        ("atoms: p\nstates:\n", "at least one state required"),
        ("atoms: p\n", "at least one state required"),
        ("atoms: p\nstates: a\nval a p 3/2\n", "truth value outside [0,1]"),
        ("atoms: p\nstates: a a\n", "duplicate state"),
        ("atoms: p p\nstates: a\n", "duplicate atom"),
        ("atoms: p\nstates: a\nedge a b 1\n", "unknown state"),
        ("atoms: p\nstates: a\nval a q 1\n", "undeclared atom"),
        ("atoms: p\nstates: a\nfoo a\n", "unknown directive"),
        ("atoms: p\nstates: a\nedge a a 1\nedge a a 1/2\n", "duplicate edge"),
    ])
    def test_errors(self, text, message):
        with pytest.raises(ParseError, match=message.replace("[", r"\[").replace("]", r"\]")):
            parse_model(text)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_model("atoms: p\nstates: a\nval a p 7/5\n")
        assert (info.value.span.line, info.value.span.column) == (3, 9)


class TestStateFunctions:
    def test_round_trip(self, fork):
        f = {s: F(f"{i}/6") for i, s in enumerate(fork.states)}
        assert parse_state_function(print_state_function(f), fork) == f

    def test_must_be_total(self, fork):
        with pytest.raises(ParseError, match="s6"):
            parse_state_function("\n".join(f"fun s{i} 0" for i in range(1, 6)), fork)
