"""Witness formulas, modal approximation of state functions, and depth-n signatures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .core import modal
from .core.errors import NotNonExpansiveError
from .core.model import Model, State
from .core.table import DistanceTable
from .core.truth import ZERO, abs_diff, truth, tsub
from .metrics import DEFAULT_DELTA, distance_sequence
from .semantics import denote


def _neg(phi):
    if isinstance(phi, modal.Neg):
        return phi.body
    if isinstance(phi, modal.Const):
        return modal.Const(1 - phi.value)
    return modal.Neg(phi)


def _sub(phi, c):
    if c == 0:
        return phi
    if isinstance(phi, modal.Const):
        return modal.Const(tsub(phi.value, c))
    return modal.SubConst(phi, c)


def _conj(parts):
    kept = []
    seen = set()
    for x in parts:
        if isinstance(x, modal.Const) and x.value == 1:
            continue
        if id(x) not in seen:
            seen.add(id(x))
            kept.append(x)
    return modal.conj(kept)


def _disj(parts):
    return _neg(_conj(_neg(x) for x in parts))


def non_expansive_violation(f: Mapping[State, Fraction], d: DistanceTable) -> Optional[tuple[State, State]]:
    """First pair with |f(a) - f(b)| > d(a, b), or None."""
    states = d.states
    for i, a in enumerate(states):
        for b in states[i + 1:]:
            if abs_diff(f[a], f[b]) > d[a, b]:
                return (a, b)
    return None


class Approximator:
    """Builds separating and approximating formulas for one model.

    Distance tables, witnesses and pairwise approximants are cached, and the
    returned formulas share subtrees, so repeated calls stay cheap.
    """

    def __init__(self, model: Model):
        self.model = model
        self._tables: list[DistanceTable] = distance_sequence(model, 0)
        self._witness: dict = {}
        self._values: dict[int, tuple] = {}

    def table(self, n: int) -> DistanceTable:
        if n >= len(self._tables):
            self._tables = distance_sequence(self.model, n)
        return self._tables[n]

    def values(self, phi: modal.ModalFormula) -> dict[State, Fraction]:
        # phi is stored alongside its values so its id cannot be recycled
        hit = self._values.get(id(phi))
        if hit is None:
            hit = self._values[id(phi)] = (phi, denote(self.model, phi))
        return hit[1]

    def synth_witness(self, a: State, b: State, n: int, delta) -> modal.ModalFormula:
        """Formula of rank <= n whose values at a and b differ by >= d_n(a,b) - delta."""
        model = self.model
        model.check_state(a)
        model.check_state(b)
        delta = truth(delta)
        if delta <= 0:
            raise ValueError("delta must be positive")
        key = (a, b, n, delta)
        hit = self._witness.get(key) or self._witness.get((b, a, n, delta))
        if hit is not None:
            return hit
        phi = self._synth(a, b, n, delta)
        self._witness[key] = phi
        return phi

    def _synth(self, a, b, n, delta):
        model = self.model
        target = self.table(n)[a, b]
        if target == 0:
            return modal.Const(ZERO)
        gaps = [(abs_diff(model.val(a, p), model.val(b, p)), p) for p in model.atoms]
        for gap, p in gaps:
            if gap == target:
                return modal.Atom(p)
        # the successor term dominates: find Spoiler's best opening move
        prev = self.table(n - 1)
        for x, y in ((a, b), (b, a)):
            for x1, w in model.successors(x).items():
                inner = w
                for y1, w2 in model.successors(y).items():
                    inner = min(inner, max(tsub(w, w2), prev[x1, y1]))
                if inner == target:
                    f = {s: tsub(w, prev[x1, s]) for s in model.states}
                    return modal.Diamond(self.approximate_function(f, n - 1, delta / 2))
        raise AssertionError(f"no term attains d_{n}({a},{b}) = {target}")

    def pair_approximant(self, f: Mapping[State, Fraction], hi: State, lo: State, n: int, delta) -> modal.ModalFormula:
        """Rank-n formula equal to f at ``lo`` and within the witness deficit of f at ``hi``.

        Needs f(hi) >= f(lo). Its values everywhere lie in [f(lo), f(hi)].
        """
        psi = self.synth_witness(hi, lo, n, delta)
        vals = self.values(psi)
        if vals[hi] < vals[lo]:
            psi = modal.Neg(psi)
            u = 1 - vals[lo]
        else:
            u = vals[lo]
        v = f[hi] - f[lo]
        w = f[lo]
        return _neg(_sub(_neg(modal.And(_sub(psi, u), modal.Const(v))), w))

    def approximate_function(self, f: Mapping[State, Fraction], n: int, epsilon) -> modal.ModalFormula:
        """Formula of rank <= n within ``epsilon`` of ``f`` at every state.

        ``f`` must be non-expansive for d_n.
        """
        model = self.model
        epsilon = truth(epsilon)
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        missing = [s for s in model.states if s not in f]
        if missing:
            raise ValueError(f"function undefined at {missing}")
        f = {s: truth(f[s]) for s in model.states}
        d = self.table(n)
        bad = non_expansive_violation(f, d)
        if bad is not None:
            a, b = bad
            raise NotNonExpansiveError(bad, abs_diff(f[a], f[b]), d[a, b])
        if len(set(f.values())) == 1:
            return modal.Const(f[model.states[0]])

        delta = epsilon / 2
        pairwise: dict = {}

        def approx_pair(a, b):
            if f[a] == f[b]:
                return modal.Const(f[a])
            hi, lo = (a, b) if f[a] > f[b] else (b, a)
            if (hi, lo) not in pairwise:
                pairwise[hi, lo] = self.pair_approximant(f, hi, lo, n, delta)
            return pairwise[hi, lo]

        states = model.states
        rows = [_conj(approx_pair(a, b) for b in states if b != a) for a in states]
        return _disj(rows)


def synth_witness(model: Model, a: State, b: State, n: int, delta=DEFAULT_DELTA) -> modal.ModalFormula:
    return Approximator(model).synth_witness(a, b, n, delta)


def approximate_function(model: Model, f: Mapping[State, Fraction], n: int, epsilon) -> modal.ModalFormula:
    return Approximator(model).approximate_function(f, n, epsilon)


# --- depth-n signatures ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class Signature:
    """Canonical depth-n behaviour of a state.

    Depth 0 is the unit ``Signature(0, (), ())``. At depth n+1, ``atoms``
    lists ``(atom, value)`` in model order and ``successors`` lists
    ``(depth-n signature, weight)`` sorted by signature, zero weights dropped.
    """

    depth: int
    atoms: tuple = ()
    successors: tuple = ()


UNIT = Signature(0)


def signatures(model: Model, n: int) -> dict[State, Signature]:
    if n < 0:
        raise ValueError("depth must be non-negative")
    sig = dict.fromkeys(model.states, UNIT)
    for k in range(1, n + 1):
        nxt = {}
        for a in model.states:
            weights: dict[Signature, Fraction] = {}
            for t, w in model.successors(a).items():
                s = sig[t]
                if w > weights.get(s, ZERO):
                    weights[s] = w
            nxt[a] = Signature(
                k,
                tuple((p, model.val(a, p)) for p in model.atoms),
                tuple(sorted(weights.items())),
            )
        sig = nxt
    return sig


def signature(model: Model, a: State, n: int) -> Signature:
    model.check_state(a)
    return signatures(model, n)[a]


def quotient_by_signature(model: Model, n: int) -> tuple[Model, dict[State, State]]:
    """Merge states with equal depth-n signatures.

    Each class is named after its first member; edge weights between classes
    are the maximum over all member pairs.
    """
    sig = signatures(model, n)
    rep: dict[Signature, State] = {}
    proj = {}
    for s in model.states:
        proj[s] = rep.setdefault(sig[s], s)
    classes = list(dict.fromkeys(proj.values()))
    valuation = {(c, p): model.val(c, p) for c in classes for p in model.atoms}
    relation: dict = {}
    for (s, t), w in model.relation.items():
        key = (proj[s], proj[t])
        if w > relation.get(key, ZERO):
            relation[key] = w
    return Model(classes, model.atoms, valuation, relation), proj
