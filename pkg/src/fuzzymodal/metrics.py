"""Behavioural distances on a single model.

Three routes compute the depth-n distance: a closed-form recurrence
(``depth_distance``), least winning epsilon of the bisimulation game
(``game_distance_table``), and iterated Kantorovich lifting
(``kantorovich_distance``). They must agree exactly; the test suite and the
``check`` command compare them. Distances between states of different
models go through :func:`distance_between`, which forms the disjoint union.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .core.model import Model, State, disjoint_union
from .core.table import DistanceTable
from .core.truth import ZERO, abs_diff, grid_denominator, truth, tsub
from .games import BisimGame

DEFAULT_DELTA = Fraction(1, 100)

Raw = dict  # (State, State) -> Fraction, symmetric


def _zero(model: Model) -> Raw:
    return {(a, b): ZERO for a in model.states for b in model.states}


def _atom_gap(model: Model, a: State, b: State) -> Fraction:
    return max((abs_diff(model.val(a, p), model.val(b, p)) for p in model.atoms), default=ZERO)


def _spoiler_term(model: Model, a: State, b: State, d: Raw) -> Fraction:
    """max over a' of min(R(a,a'), min over b' of max(R(a,a') .- R(b,b'), d(a',b')))."""
    best = ZERO
    succ_b = model.successors(b)
    for a1, w in model.successors(a).items():
        if w <= best:
            continue
        # replies with R(b,b') = 0 cost at least w, hence the start value
        inner = w
        for b1, w2 in succ_b.items():
            x = w - w2 if w > w2 else ZERO
            dd = d[a1, b1]
            if dd > x:
                x = dd
            if x < inner:
                inner = x
        if inner > best:
            best = inner
    return best


def _step(model: Model, d: Raw) -> Raw:
    out: Raw = {}
    states = model.states
    for i, a in enumerate(states):
        out[a, a] = ZERO
        for b in states[i + 1:]:
            v = max(_atom_gap(model, a, b), _spoiler_term(model, a, b, d), _spoiler_term(model, b, a, d))
            out[a, b] = out[b, a] = v
    return out


def distance_sequence(model: Model, n: int) -> list[DistanceTable]:
    """Tables ``[d_0, ..., d_n]`` computed by the recurrence."""
    if n < 0:
        raise ValueError("depth must be non-negative")
    d = _zero(model)
    tables = [DistanceTable(model.states, d, "recurrence@0")]
    for k in range(1, n + 1):
        d = _step(model, d)
        tables.append(DistanceTable(model.states, d, f"recurrence@{k}"))
    return tables


def depth_distance(model: Model, n: int) -> DistanceTable:
    """Depth-n behavioural distance d_n via the one-round recurrence."""
    if n < 0:
        raise ValueError("depth must be non-negative")
    d = _zero(model)
    for _ in range(n):
        d = _step(model, d)
    return DistanceTable(model.states, d, f"recurrence@{n}")


def behavioural_distance(model: Model) -> DistanceTable:
    """Unbounded behavioural distance: iterate the recurrence until stationary.

    Values only increase and stay on the grid {k/L}, so at most
    |A|^2 * L + 1 iterations are needed.
    """
    bound = len(model) ** 2 * model.grid_denominator() + 1
    d = _zero(model)
    for _ in range(bound + 1):
        nxt = _step(model, d)
        if nxt == d:
            return DistanceTable(model.states, d, "recurrence@inf")
        d = nxt
    raise AssertionError("distance iteration failed to stabilise")


def _reachable_pairs(model: Model, a: State, b: State) -> list[tuple[State, State]]:
    """Pairs reachable from (a, b) by joint steps, closed under swapping."""
    seen = {(a, b), (b, a)}
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        for x1 in model.successors(x):
            for y1 in model.successors(y):
                if (x1, y1) not in seen:
                    seen.add((x1, y1))
                    seen.add((y1, x1))
                    stack.append((x1, y1))
    return list(seen)


def pair_distance(model: Model, a: State, b: State, depth: Optional[int] = None) -> Fraction:
    """d_depth(a, b), or the unbounded distance, from the recurrence on reachable pairs only.

    The recurrence at (x, y) reads only successor pairs, so the value agrees
    with the full table while touching far fewer entries on large models.
    """
    model.check_state(a)
    model.check_state(b)
    if depth is not None and depth < 0:
        raise ValueError("depth must be non-negative")
    pairs = _reachable_pairs(model, a, b)
    d: Raw = {pq: ZERO for pq in pairs}
    rounds = depth if depth is not None else len(pairs) * model.grid_denominator() + 1
    for _ in range(rounds):
        nxt: Raw = {}
        for x, y in pairs:
            if x == y:
                nxt[x, y] = ZERO
            elif (y, x) in nxt:
                nxt[x, y] = nxt[y, x]
            else:
                nxt[x, y] = max(_atom_gap(model, x, y), _spoiler_term(model, x, y, d), _spoiler_term(model, y, x, d))
        if nxt == d:
            break
        d = nxt
    else:
        if depth is None:
            raise AssertionError("distance iteration failed to stabilise")
    return d[a, b]


def distance_between(left: Model, a: State, right: Model, b: State, depth: Optional[int] = None) -> Fraction:
    """Distance between states of two models, computed on their disjoint union."""
    union, inj_l, inj_r = disjoint_union(left, right)
    left.check_state(a)
    right.check_state(b)
    return pair_distance(union, inj_l[a], inj_r[b], depth)


# --- game oracle ------------------------------------------------------------


def candidate_epsilons(model: Model) -> list[Fraction]:
    """Grid points k/L and midpoints (2k+1)/(2L), in increasing order."""
    L = model.grid_denominator()
    return [Fraction(k, 2 * L) for k in range(2 * L + 1)]


class GameOracle:
    """Least winning epsilon, by binary search over candidate epsilons.

    Games are cached per epsilon so repeated queries on one model share work.
    """

    def __init__(self, model: Model):
        self.model = model
        self.candidates = candidate_epsilons(model)
        self._games: dict[Fraction, BisimGame] = {}

    def game(self, eps: Fraction) -> BisimGame:
        g = self._games.get(eps)
        if g is None:
            g = self._games[eps] = BisimGame(self.model, self.model, eps)
        return g

    def distance(self, a: State, b: State, depth: Optional[int]) -> Fraction:
        self.model.check_state(a)
        self.model.check_state(b)
        lo, hi = 0, len(self.candidates) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.game(self.candidates[mid]).wins(a, b, depth):
                hi = mid
            else:
                lo = mid + 1
        return self.candidates[lo]

    def table(self, depth: Optional[int]) -> DistanceTable:
        states = self.model.states
        entries = {}
        for i, a in enumerate(states):
            for b in states[i:]:
                entries[a, b] = entries[b, a] = self.distance(a, b, depth)
        tag = "inf" if depth is None else str(depth)
        return DistanceTable(states, entries, f"game@{tag}")


def game_distance_oracle(model: Model, a: State, b: State, depth: Optional[int] = None) -> Fraction:
    """Brute-force distance: the least epsilon for which Duplicator wins."""
    return GameOracle(model).distance(a, b, depth)


def game_distance_table(model: Model, depth: Optional[int] = None) -> DistanceTable:
    return GameOracle(model).table(depth)


# --- Kantorovich lifting ------------------------------------------------------


@dataclass(frozen=True)
class LiftInput:
    """One element of [0,1]^At x F(X): an atom vector and successor weights."""

    atoms: Mapping[str, Fraction]
    weights: Mapping[State, Fraction]


def lift_input(model: Model, a: State) -> LiftInput:
    model.check_state(a)
    return LiftInput({p: model.val(a, p) for p in model.atoms}, dict(model.successors(a)))


def _check_carrier(d: DistanceTable, *inputs: LiftInput):
    carrier = set(d.states)
    for x in inputs:
        extra = set(x.weights) - carrier
        if extra:
            raise ValueError(f"successor weights outside the carrier: {sorted(extra)}")
    if set(inputs[0].atoms) != set(inputs[1].atoms):
        raise ValueError("lift inputs have different atom sets")


def _ev(weights: Mapping[State, Fraction], f: Mapping[State, Fraction]) -> Fraction:
    best = ZERO
    for s, w in weights.items():
        v = w if w < f[s] else f[s]
        if v > best:
            best = v
    return best


def _lift_grid(d: DistanceTable, x: LiftInput, y: LiftInput) -> int:
    vals = list(d.as_dict().values())
    vals += list(x.weights.values()) + list(y.weights.values())
    return grid_denominator(vals)


def kantorovich_lift(d: DistanceTable, x: LiftInput, y: LiftInput) -> Fraction:
    """Lifted distance between ``x`` and ``y`` over the pseudometric ``d``.

    The supremum over non-expansive test functions is taken over the family
    ``f(s) = c .- d(s0, s)`` for carrier states ``s0`` and grid constants
    ``c``; for any non-expansive f and the state s0 where <>f peaks on one
    side, that member with c = f(s0) lies below f and agrees with it at s0,
    so it does at least as well.
    """
    _check_carrier(d, x, y)
    atom_term = max((abs_diff(x.atoms[p], y.atoms[p]) for p in x.atoms), default=ZERO)
    support = [s for s in d.states if s in x.weights or s in y.weights]
    if not support:
        return atom_term
    L = _lift_grid(d, x, y)
    consts = [Fraction(k, L) for k in range(1, L + 1)]
    best = atom_term
    for s0 in d.states:
        row = d.row(s0)
        for c in consts:
            f = {s: tsub(c, row[s]) for s in support}
            gap = abs_diff(_ev(x.weights, f), _ev(y.weights, f))
            if gap > best:
                best = gap
    return best


def kantorovich_lift_exhaustive(d: DistanceTable, x: LiftInput, y: LiftInput, L: Optional[int] = None) -> Fraction:
    """Same supremum by enumerating every grid-valued non-expansive function.

    Only the successor support is enumerated: the objective reads f nowhere
    else, and a non-expansive function on a subset extends to the carrier by
    ``t -> max_s f(s) .- d(s, t)``, which stays on the grid. Exponential in
    the support size; meant as a cross-check on small carriers.
    """
    _check_carrier(d, x, y)
    atom_term = max((abs_diff(x.atoms[p], y.atoms[p]) for p in x.atoms), default=ZERO)
    L = L or _lift_grid(d, x, y)
    values = [Fraction(k, L) for k in range(L + 1)]
    states = [s for s in d.states if s in x.weights or s in y.weights]
    rows = [d.row(s) for s in states]
    best = atom_term
    wx = [x.weights.get(s, ZERO) for s in states]
    wy = [y.weights.get(s, ZERO) for s in states]
    # suffix maxima of the weights bound what the unassigned states can add
    rest_x = [max(wx[i:], default=ZERO) for i in range(len(states) + 1)]
    rest_y = [max(wy[i:], default=ZERO) for i in range(len(states) + 1)]
    f: list[Fraction] = []

    def extend(i, ex, ey):
        # ex, ey: <>f on each side restricted to the states assigned so far
        nonlocal best
        if i == len(states):
            gap = abs_diff(ex, ey)
            if gap > best:
                best = gap
            return
        if max(ex, rest_x[i]) - ey <= best and max(ey, rest_y[i]) - ex <= best:
            return
        for v in values:
            if all(abs_diff(v, f[j]) <= rows[j][states[i]] for j in range(i)):
                f.append(v)
                extend(i + 1, max(ex, min(wx[i], v)), max(ey, min(wy[i], v)))
                f.pop()

    extend(0, ZERO, ZERO)
    return best


def kantorovich_step(model: Model, d: DistanceTable) -> DistanceTable:
    """Apply one lifting step to ``d`` (a table on the model's states)."""
    if d.states != model.states:
        raise ValueError("distance table carrier does not match the model")
    inputs = {a: lift_input(model, a) for a in model.states}
    entries = {}
    states = model.states
    for i, a in enumerate(states):
        entries[a, a] = ZERO
        for b in states[i + 1:]:
            entries[a, b] = entries[b, a] = kantorovich_lift(d, inputs[a], inputs[b])
    depth = d.provenance.rsplit("@", 1)[-1]
    tag = f"kantorovich@{int(depth) + 1}" if depth.isdigit() else "kantorovich"
    return DistanceTable(states, entries, tag)


def kantorovich_distance(model: Model, n: int) -> DistanceTable:
    d = DistanceTable(model.states, {}, "kantorovich@0")
    for _ in range(n):
        d = kantorovich_step(model, d)
    return d


# --- logical lower bounds ----------------------------------------------------


def logical_distance_lower(model: Model, a: State, b: State, n: int, delta=DEFAULT_DELTA):
    """A rank-<=n formula separating ``a`` and ``b``, with its exact gap.

    The gap is at least d_n(a, b) - delta and never more than d_n(a, b).
    """
    from .approx import Approximator
    from .semantics import denote

    delta = truth(delta)
    phi = Approximator(model).synth_witness(a, b, n, delta)
    val = denote(model, phi)
    return abs_diff(val[a], val[b]), phi
