"""Abstract syntax of Zadeh fuzzy first-order logic over one binary relation R."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .truth import truth


class FolFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Const(FolFormula):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", truth(self.value))


@dataclass(frozen=True)
class AtomApp(FolFormula):
    atom: str
    var: str


@dataclass(frozen=True)
class Rel(FolFormula):
    left: str
    right: str


@dataclass(frozen=True)
class Eq(FolFormula):
    left: str
    right: str


@dataclass(frozen=True)
class SubConst(FolFormula):
    body: FolFormula
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", truth(self.value))


@dataclass(frozen=True)
class Neg(FolFormula):
    body: FolFormula


@dataclass(frozen=True)
class And(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class Exists(FolFormula):
    var: str
    body: FolFormula


def Or(left: FolFormula, right: FolFormula) -> FolFormula:
    return Neg(And(Neg(left), Neg(right)))


def Implies(left: FolFormula, right: FolFormula) -> FolFormula:
    return Or(Neg(left), right)


def Forall(var: str, body: FolFormula) -> FolFormula:
    return Neg(Exists(var, Neg(body)))


def children(phi: FolFormula) -> tuple[FolFormula, ...]:
    if isinstance(phi, (SubConst, Neg, Exists)):
        return (phi.body,)
    if isinstance(phi, And):
        return (phi.left, phi.right)
    return ()


def subformulas(phi: FolFormula) -> Iterator[FolFormula]:
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def qrank(phi: FolFormula) -> int:
    if isinstance(phi, Exists):
        return 1 + qrank(phi.body)
    kids = children(phi)
    return max((qrank(k) for k in kids), default=0)


def free_vars(phi: FolFormula) -> frozenset[str]:
    if isinstance(phi, AtomApp):
        return frozenset([phi.var])
    if isinstance(phi, (Rel, Eq)):
        return frozenset([phi.left, phi.right])
    if isinstance(phi, Exists):
        return free_vars(phi.body) - {phi.var}
    out = frozenset()
    for k in children(phi):
        out |= free_vars(k)
    return out


def bound_vars(phi: FolFormula) -> frozenset[str]:
    return frozenset(node.var for node in subformulas(phi) if isinstance(node, Exists))


def atoms_of(phi: FolFormula) -> set[str]:
    return {node.atom for node in subformulas(phi) if isinstance(node, AtomApp)}
