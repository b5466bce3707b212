"""Finite fuzzy relational models."""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import AtomMismatchError, ModelError, UnknownAtomError, UnknownStateError
from .truth import ZERO, grid_denominator, truth

State = str


class Model:
    """A finite fuzzy relational model.

    ``valuation`` maps ``(state, atom)`` and ``relation`` maps
    ``(source, target)`` to truth values; absent keys mean 0 and zero
    entries are dropped on construction. Instances are immutable.
    """

    __slots__ = ("_states", "_atoms", "_index", "_val", "_rel", "_succ", "_hash")

    def __init__(
        self,
        states: Iterable[State],
        atoms: Iterable[str] = (),
        valuation: Mapping[tuple[State, str], object] | None = None,
        relation: Mapping[tuple[State, State], object] | None = None,
    ):
        states = tuple(states)
        atoms = tuple(atoms)
        if not states:
            raise ModelError("at least one state required")
        index = {}
        for s in states:
            if not isinstance(s, str) or not s:
                raise ModelError(f"state identifiers must be non-empty strings: {s!r}")
            if s in index:
                raise ModelError(f"duplicate state {s!r}")
            index[s] = len(index)
        if len(set(atoms)) != len(atoms):
            raise ModelError("duplicate atom declaration")
        atom_set = set(atoms)

        val = {}
        for (s, p), v in (valuation or {}).items():
            if s not in index:
                raise UnknownStateError(s)
            if p not in atom_set:
                raise UnknownAtomError(p)
            v = truth(v)
            if v:
                val[s, p] = v
        rel = {}
        succ: dict[State, dict[State, Fraction]] = {s: {} for s in states}
        for (s, t), v in (relation or {}).items():
            if s not in index:
                raise UnknownStateError(s)
            if t not in index:
                raise UnknownStateError(t)
            v = truth(v)
            if v:
                rel[s, t] = v
                succ[s][t] = v
        # successor dicts ordered like the state list, for deterministic iteration
        ordered = {
            s: MappingProxyType({t: succ[s][t] for t in sorted(succ[s], key=index.__getitem__)})
            for s in states
        }
        self._states = states
        self._atoms = atoms
        self._index = MappingProxyType(index)
        self._val = MappingProxyType(val)
        self._rel = MappingProxyType(rel)
        self._succ = MappingProxyType(ordered)
        self._hash = None

    @property
    def states(self) -> tuple[State, ...]:
        return self._states

    @property
    def atoms(self) -> tuple[str, ...]:
        return self._atoms

    @property
    def valuation(self) -> Mapping[tuple[State, str], Fraction]:
        return self._val

    @property
    def relation(self) -> Mapping[tuple[State, State], Fraction]:
        return self._rel

    def __len__(self):
        return len(self._states)

    def __contains__(self, state):
        return state in self._index

    def index(self, state: State) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise UnknownStateError(state) from None

    def check_state(self, state: State) -> State:
        if state not in self._index:
            raise UnknownStateError(state)
        return state

    def val(self, state: State, atom: str) -> Fraction:
        return self._val.get((state, atom), ZERO)

    def r(self, source: State, target: State) -> Fraction:
        return self._rel.get((source, target), ZERO)

    def successors(self, state: State) -> Mapping[State, Fraction]:
        """Targets with a positive edge from ``state``, in state order."""
        return self._succ[state]

    def atom_vector(self, state: State) -> tuple[Fraction, ...]:
        return tuple(self.val(state, p) for p in self._atoms)

    def values(self) -> list[Fraction]:
        return list(self._val.values()) + list(self._rel.values())

    def grid_denominator(self) -> int:
        return grid_denominator(self.values())

    def restrict(self, keep: Iterable[State]) -> "Model":
        """Submodel on ``keep`` (kept in this model's state order)."""
        keep = set(keep)
        for s in keep:
            self.check_state(s)
        states = [s for s in self._states if s in keep]
        return Model(
            states,
            self._atoms,
            {k: v for k, v in self._val.items() if k[0] in keep},
            {k: v for k, v in self._rel.items() if k[0] in keep and k[1] in keep},
        )

    def rename(self, mapping: Mapping[State, State]) -> "Model":
        return Model(
            [mapping[s] for s in self._states],
            self._atoms,
            {(mapping[s], p): v for (s, p), v in self._val.items()},
            {(mapping[s], mapping[t]): v for (s, t), v in self._rel.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self._states == other._states
            and self._atoms == other._atoms
            and dict(self._val) == dict(other._val)
            and dict(self._rel) == dict(other._rel)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self._states, self._atoms, frozenset(self._val.items()), frozenset(self._rel.items()))
            )
        return self._hash

    def __repr__(self):
        return f"Model(states={len(self._states)}, atoms={list(self._atoms)}, edges={len(self._rel)})"


def disjoint_union(left: Model, right: Model) -> tuple[Model, dict[State, State], dict[State, State]]:
    """Coproduct ``left + right`` with both injections.

    States are tagged ``<name>/L`` and ``<name>/R``; since every state gets a
    side suffix, names from the two sides can never collide.
    """
    if left.atoms != right.atoms:
        if set(left.atoms) != set(right.atoms):
            raise AtomMismatchError(
                f"atom sets differ: {sorted(left.atoms)} vs {sorted(right.atoms)}"
            )
    inj_l = {s: f"{s}/L" for s in left.states}
    inj_r = {s: f"{s}/R" for s in right.states}
    val = {(inj_l[s], p): v for (s, p), v in left.valuation.items()}
    val.update({(inj_r[s], p): v for (s, p), v in right.valuation.items()})
    rel = {(inj_l[s], inj_l[t]): v for (s, t), v in left.relation.items()}
    rel.update({(inj_r[s], inj_r[t]): v for (s, t), v in right.relation.items()})
    union = Model(list(inj_l.values()) + list(inj_r.values()), left.atoms, val, rel)
    return union, inj_l, inj_r
