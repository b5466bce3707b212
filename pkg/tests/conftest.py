from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from fuzzymodal.core import Model, fol, modal
from fuzzymodal.syntax import parse_model

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def fork() -> Model:
    return parse_model((DATA / "fork.fzm").read_text())


@pytest.fixture(scope="session")
def fork_path() -> str:
    return str(DATA / "fork.fzm")


def F(text) -> Fraction:
    return Fraction(text)


# --- hypothesis strategies ---------------------------------------------------------

twelfths = st.integers(0, 12).map(lambda k: Fraction(k, 12))
positive_twelfths = st.integers(1, 12).map(lambda k: Fraction(k, 12))


@st.composite
def models(draw, max_states=4, atoms=("p", "q")):
    n = draw(st.integers(1, max_states))
    states = [f"s{i}" for i in range(n)]
    val = {(s, p): draw(twelfths) for s in states for p in atoms}
    rel = {}
    for s in states:
        for t in states:
            if draw(st.booleans()):
                rel[s, t] = draw(positive_twelfths)
    return Model(states, list(atoms), val, rel)


def modal_formulas(atoms=("p", "q"), max_leaves=12):
    leaves = st.one_of(st.builds(modal.Const, twelfths), st.sampled_from(atoms).map(modal.Atom))

    def extend(children):
        return st.one_of(
            st.builds(modal.SubConst, children, twelfths),
            st.builds(modal.Neg, children),
            st.builds(modal.And, children, children),
            st.builds(modal.Diamond, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


VARS = ("x", "y", "z")


def fol_formulas(atoms=("p", "q"), max_leaves=10):
    var = st.sampled_from(VARS)
    leaves = st.one_of(
        st.builds(fol.Const, twelfths),
        st.builds(fol.AtomApp, st.sampled_from(atoms), var),
        st.builds(fol.Rel, var, var),
        st.builds(fol.Eq, var, var),
    )

    def extend(children):
        return st.one_of(
            st.builds(fol.SubConst, children, twelfths),
            st.builds(fol.Neg, children),
            st.builds(fol.And, children, children),
            st.builds(fol.Exists, var, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


# --- acceptance report -------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
