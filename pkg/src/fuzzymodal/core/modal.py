"""Abstract syntax of Zadeh fuzzy modal logic.

Only the primitive constructors exist as classes; disjunction, implication
and box are encoded through negation, conjunction and diamond.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Union

from .truth import truth


class ModalFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Const(ModalFormula):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", truth(self.value))


@dataclass(frozen=True)
class Atom(ModalFormula):
    name: str


@dataclass(frozen=True)
class SubConst(ModalFormula):
    """``body .- value``: truncated subtraction of a constant."""

    body: ModalFormula
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", truth(self.value))


@dataclass(frozen=True)
class Neg(ModalFormula):
    body: ModalFormula


@dataclass(frozen=True)
class And(ModalFormula):
    left: ModalFormula
    right: ModalFormula


@dataclass(frozen=True)
class Diamond(ModalFormula):
    body: ModalFormula


Formula = Union[Const, Atom, SubConst, Neg, And, Diamond]


def Or(left: ModalFormula, right: ModalFormula) -> ModalFormula:
    return Neg(And(Neg(left), Neg(right)))


def Implies(left: ModalFormula, right: ModalFormula) -> ModalFormula:
    return Or(Neg(left), right)


def Box(body: ModalFormula) -> ModalFormula:
    return Neg(Diamond(Neg(body)))


def conj(parts: Iterable[ModalFormula]) -> ModalFormula:
    parts = list(parts)
    return reduce(And, parts) if parts else Const(1)


def disj(parts: Iterable[ModalFormula]) -> ModalFormula:
    parts = list(parts)
    return reduce(Or, parts) if parts else Const(0)


def children(phi: ModalFormula) -> tuple[ModalFormula, ...]:
    if isinstance(phi, (SubConst, Neg, Diamond)):
        return (phi.body,)
    if isinstance(phi, And):
        return (phi.left, phi.right)
    return ()


def subformulas(phi: ModalFormula) -> Iterator[ModalFormula]:
    """Pre-order traversal; shared subtrees are visited once."""
    seen = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(reversed(children(node)))


def rank(phi: ModalFormula) -> int:
    """Nesting depth of diamonds and atoms (constants have rank 0)."""
    memo: dict[int, int] = {}

    def go(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Const):
            r = 0
        elif isinstance(node, Atom):
            r = 1
        elif isinstance(node, Diamond):
            r = 1 + go(node.body)
        elif isinstance(node, And):
            r = max(go(node.left), go(node.right))
        elif isinstance(node, (Neg, SubConst)):
            r = go(node.body)
        else:
            raise TypeError(f"not a modal formula: {node!r}")
        memo[key] = r
        return r

    return go(phi)


def atoms_of(phi: ModalFormula) -> set[str]:
    return {node.name for node in subformulas(phi) if isinstance(node, Atom)}


def size(phi: ModalFormula) -> int:
    """Number of nodes in the formula's DAG (shared subtrees counted once)."""
    return sum(1 for _ in subformulas(phi))
