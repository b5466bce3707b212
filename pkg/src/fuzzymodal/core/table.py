"""Pseudometric tables on the state set of a model."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PseudometricError, UnknownStateError
from .truth import ZERO, format_truth

State = str


class DistanceTable:
    """Symmetric matrix of exact distances, checked to be a pseudometric.

    ``entries`` maps ``(a, b)`` pairs to values; missing pairs default to 0
    but every given pair must be consistent with symmetry. ``provenance``
    records which method produced the table (e.g. ``"recurrence@2"``).
    """

    __slots__ = ("states", "provenance", "_index", "_rows")

    def __init__(
        self,
        states: Sequence[State],
        entries: Mapping[tuple[State, State], Fraction],
        provenance: str = "",
        check: bool = True,
    ):
        self.states = tuple(states)
        self.provenance = provenance
        self._index = {s: i for i, s in enumerate(self.states)}
        n = len(self.states)
        rows = [[ZERO] * n for _ in range(n)]
        for (a, b), v in entries.items():
            i, j = self._idx(a), self._idx(b)
            rows[i][j] = Fraction(v)
        self._rows = tuple(tuple(r) for r in rows)
        if check:
            self._check()

    def _idx(self, s):
        try:
            return self._index[s]
        except KeyError:
            raise UnknownStateError(s) from None

    def _check(self):
        rows, states = self._rows, self.states
        n = len(states)
        for i in range(n):
            if rows[i][i] != 0:
                raise PseudometricError(f"reflexivity fails: d({states[i]},{states[i]}) = {rows[i][i]}")
            for j in range(n):
                v = rows[i][j]
                if not 0 <= v <= 1:
                    raise PseudometricError(f"d({states[i]},{states[j]}) = {v} outside [0,1]")
                if v != rows[j][i]:
                    raise PseudometricError(f"symmetry fails at ({states[i]},{states[j]})")
        for i in range(n):
            ri = rows[i]
            for j in range(n):
                rij = ri[j]
                rj = rows[j]
                for k in range(n):
                    if ri[k] > rij + rj[k]:
                        raise PseudometricError(
                            f"triangle inequality fails: d({states[i]},{states[k]}) = {ri[k]} > "
                            f"d({states[i]},{states[j]}) + d({states[j]},{states[k]}) = {rij + rj[k]}"
                        )

    def __getitem__(self, pair: tuple[State, State]) -> Fraction:
        a, b = pair
        return self._rows[self._idx(a)][self._idx(b)]

    def row(self, a: State) -> dict[State, Fraction]:
        r = self._rows[self._idx(a)]
        return dict(zip(self.states, r))

    def as_dict(self) -> dict[tuple[State, State], Fraction]:
        return {(a, b): self._rows[i][j] for i, a in enumerate(self.states) for j, b in enumerate(self.states)}

    def __eq__(self, other):
        if not isinstance(other, DistanceTable):
            return NotImplemented
        return self.states == other.states and self._rows == other._rows

    def __hash__(self):
        return hash((self.states, self._rows))

    def leq(self, other: "DistanceTable") -> bool:
        """Pointwise ``self <= other``."""
        return all(x <= y for r1, r2 in zip(self._rows, other._rows) for x, y in zip(r1, r2))

    def to_text(self) -> str:
        """Row-per-state text matrix with a header line of state names."""
        width = max(len(format_truth(v)) for r in self._rows for v in r)
        width = max(width, max(len(s) for s in self.states))
        lines = [" ".join([" " * width] + [s.rjust(width) for s in self.states])]
        for s, r in zip(self.states, self._rows):
            lines.append(" ".join([s.rjust(width)] + [format_truth(v).rjust(width) for v in r]))
        return "\n".join(lines)

    def __repr__(self):
        return f"DistanceTable({len(self.states)} states, provenance={self.provenance!r})"
