"""Seeded random models, formulas and non-expansive state functions for the check harness."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import fol, modal
from .core.model import Model, State
from .core.table import DistanceTable
from .core.truth import tsub

ATOM_NAMES = ("p", "q", "r", "s", "t")


@dataclass(frozen=True)
class ModelParams:
    """Random-model shape. ``states`` and ``atoms`` are upper bounds."""

    states: int = 5
    atoms: int = 2
    density: float = 0.5
    denominator: int = 12

    def __post_init__(self):
        if self.states < 1:
            raise ValueError("states must be at least 1")
        if not 0 <= self.atoms <= len(ATOM_NAMES):
            raise ValueError(f"atoms must be between 0 and {len(ATOM_NAMES)}")
        if not 0 <= self.density <= 1:
            raise ValueError("density must lie in [0,1]")
        if self.denominator < 1:
            raise ValueError("denominator must be positive")


def case_rng(seed: int, *tags) -> random.Random:
    """Independent generator per (seed, tags), so cases don't depend on run order."""
    return random.Random(":".join(map(str, (seed,) + tags)))


def random_truth(rng: random.Random, denominator: int, positive: bool = False) -> Fraction:
    return Fraction(rng.randint(1 if positive else 0, denominator), denominator)


def random_model(rng: random.Random, params: ModelParams = ModelParams()) -> Model:
    n = rng.randint(1, params.states)
    states = [f"s{i}" for i in range(n)]
    atoms = list(ATOM_NAMES[: rng.randint(1, params.atoms)]) if params.atoms else []
    val = {}
    for s in states:
        for p in atoms:
            val[s, p] = random_truth(rng, params.denominator)
    rel = {}
    for s in states:
        for t in states:
            if rng.random() < params.density:
                rel[s, t] = random_truth(rng, params.denominator, positive=True)
    return Model(states, atoms, val, rel)


# --- modal formulas -------------------------------------------------------------


def random_modal(rng: random.Random, atoms: Sequence[str], rank: int, size: int = 6,
                 denominator: int = 12) -> modal.ModalFormula:
    """Random formula with rank <= ``rank`` and roughly ``size`` connectives."""

    def const():
        return random_truth(rng, denominator)

    def go(r, budget):
        if budget <= 0 or rng.random() < 0.2:
            if r >= 1 and atoms and rng.random() < 0.7:
                return modal.Atom(rng.choice(atoms))
            return modal.Const(const())
        kind = rng.choice(("sub", "neg", "and", "and", "dia", "dia") if r >= 1 else ("sub", "neg", "and"))
        if kind == "sub":
            return modal.SubConst(go(r, budget - 1), const())
        if kind == "neg":
            return modal.Neg(go(r, budget - 1))
        if kind == "and":
            half = (budget - 1) // 2
            return modal.And(go(r, half), go(r, budget - 1 - half))
        return modal.Diamond(go(r - 1, budget - 1))

    return go(rank, size)


def modal_corpus(rng: random.Random, atoms: Sequence[str], count: int, max_rank: int = 3) -> list[modal.ModalFormula]:
    return [random_modal(rng, atoms, rng.randint(0, max_rank), rng.randint(1, 10)) for _ in range(count)]


# --- first-order formula pool ---------------------------------------------------


def _atomic(atoms: Sequence[str], variables: Sequence[str]) -> list[fol.FolFormula]:
    out: list[fol.FolFormula] = [fol.AtomApp(p, v) for p in atoms for v in variables]
    out += [fol.Rel(u, v) for u in variables for v in variables]
    out += [fol.Eq(u, v) for u, v in itertools.combinations(variables, 2)]
    return out


def _close(base: list[fol.FolFormula], rng: random.Random, limit: int) -> list[fol.FolFormula]:
    half = Fraction(1, 2)
    out = list(base)
    out += [fol.Neg(phi) for phi in base]
    out += [fol.SubConst(phi, half) for phi in base]
    pairs = list(itertools.combinations(base, 2))
    rng.shuffle(pairs)
    out += [fol.And(a, b) for a, b in pairs[:limit]]
    out += [fol.Or(a, b) for a, b in pairs[limit: 2 * limit]]
    return out


def fol_pool(atoms: Sequence[str], free: Sequence[str], qr: int, seed: int = 0, limit: int = 24) -> list[fol.FolFormula]:
    """Formulas over ``free`` with quantifier rank <= ``qr``.

    Atomic formulas and their negations, truncations and pairwise
    combinations are listed in full; the combination step keeps a seeded
    sample of ``limit`` pairs per level so the pool stays small.
    """
    rng = random.Random(f"fol:{seed}:{qr}:{','.join(free)}")
    return _pool(list(atoms), list(free), qr, rng, limit)


def _pool(atoms, free, qr, rng, limit):
    pool = _close(_atomic(atoms, free) + [fol.Const(Fraction(1, 3))], rng, limit)
    if qr == 0:
        return pool
    y = f"y{qr}"
    while y in free:
        y += "'"
    inner = [phi for phi in _pool(atoms, free + [y], qr - 1, rng, limit) if y in fol.free_vars(phi)]
    rng.shuffle(inner)
    inner = inner[: 2 * limit]
    quantified = [fol.Exists(y, phi) for phi in inner] + [fol.Forall(y, phi) for phi in inner[:limit]]
    return pool + _close(quantified, rng, limit)


# --- non-expansive state functions ----------------------------------------------


def cone(d: DistanceTable, centre: State, c: Fraction) -> dict[State, Fraction]:
    """``c - d(centre, .)`` truncated at 0: non-expansive by the triangle inequality."""
    return {s: tsub(c, d[centre, s]) for s in d.states}


def nonexpansive_functions(rng: random.Random, model: Model, d: DistanceTable, n: int, count: int,
                           denominator: int = 12) -> Iterator[tuple[str, dict[State, Fraction]]]:
    """``count`` labelled functions, each non-expansive for ``d`` (which must be d_n).

    Kinds: cones, their complements, min/max of two cones, constants, and
    denotations of random formulas of rank <= n.
    """
    from .semantics import denote

    states = d.states

    def pick_cone():
        return cone(d, rng.choice(states), random_truth(rng, denominator))

    for _ in range(count):
        kind = rng.choice(("cone", "cone", "co-cone", "min", "max", "const", "formula", "formula"))
        if kind == "cone":
            f = pick_cone()
        elif kind == "co-cone":
            f = {s: 1 - v for s, v in pick_cone().items()}
        elif kind in ("min", "max"):
            g, h = pick_cone(), pick_cone()
            op = min if kind == "min" else max
            f = {s: op(g[s], h[s]) for s in states}
        elif kind == "const":
            c = random_truth(rng, denominator)
            f = {s: c for s in states}
        else:
            f = denote(model, random_modal(rng, model.atoms, n, rng.randint(1, 8), denominator))
        yield kind, f
