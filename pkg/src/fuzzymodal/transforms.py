"""Gaifman neighbourhoods, unravelling, and locality checks."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .core import fol, modal
from .core.errors import FuzzyModalError
from .core.model import Model, State
from .semantics import eval_fol, eval_modal


def gaifman_graph(model: Model) -> dict[State, set[State]]:
    """Undirected adjacency: a and b are adjacent iff R(a,b) > 0 or R(b,a) > 0."""
    adj: dict[State, set[State]] = {s: set() for s in model.states}
    for (s, t) in model.relation:
        if s != t:
            adj[s].add(t)
            adj[t].add(s)
    return adj


def _bfs(model: Model, sources: Iterable[State], radius: Optional[int] = None) -> dict[State, int]:
    adj = gaifman_graph(model)
    dist = {}
    queue = deque()
    for s in sources:
        model.check_state(s)
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        s = queue.popleft()
        if radius is not None and dist[s] >= radius:
            continue
        for t in adj[s]:
            if t not in dist:
                dist[t] = dist[s] + 1
                queue.append(t)
    return dist


def gaifman_distance(model: Model, a: State, b: State) -> Union[int, float]:
    """Number of edges on a shortest Gaifman path; ``math.inf`` if none."""
    model.check_state(b)
    return _bfs(model, [a]).get(b, math.inf)


def neighbourhood(model: Model, centres: Sequence[State], radius: int) -> set[State]:
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return set(_bfs(model, centres, radius))


def neighbourhood_restrict(model: Model, centres: Sequence[State], radius: int) -> Model:
    """Submodel on all states within Gaifman distance ``radius`` of some centre."""
    return model.restrict(neighbourhood(model, centres, radius))


# --- unravelling ----------------------------------------------------------------

_SEP = ">"


def _escape(name: str) -> str:
    return name.replace("\\", "\\\\").replace(_SEP, "\\" + _SEP).replace("@", "\\@")


def path_name(path: Sequence[State]) -> str:
    """State name of a path; separators inside state names are escaped."""
    return _SEP.join(_escape(s) for s in path)


@dataclass(frozen=True)
class TreeModel:
    model: Model
    root: State
    parent: Mapping[State, Optional[State]]
    paths: Mapping[State, tuple]


def unravel(model: Model, a: State, k: int) -> TreeModel:
    """Tree of paths from ``a`` along positive edges, of length at most k+1."""
    model.check_state(a)
    if k < 0:
        raise ValueError("depth must be non-negative")
    root = path_name([a])
    states = [root]
    parent = {root: None}
    paths = {root: (a,)}
    valuation = {(root, p): model.val(a, p) for p in model.atoms}
    relation = {}
    level = [(a,)]
    for _ in range(k):
        nxt = []
        for path in level:
            name = path_name(path)
            for t, w in model.successors(path[-1]).items():
                child = path + (t,)
                cname = path_name(child)
                states.append(cname)
                parent[cname] = name
                paths[cname] = child
                relation[name, cname] = w
                for p in model.atoms:
                    valuation[cname, p] = model.val(t, p)
                nxt.append(child)
        level = nxt
    return TreeModel(Model(states, model.atoms, valuation, relation), root, parent, paths)


def partial_unravel(model: Model, a: State, k: int) -> tuple[Model, State]:
    """Unravel to depth k, then hang a fresh copy of the model below each leaf.

    Every path of length k+1 gets its own copy, named ``<leaf>@<state>``, and
    inherits the last state's edges into that copy. Returns the model and its root.
    """
    tree = unravel(model, a, k)
    t = tree.model
    states = list(t.states)
    valuation = dict(t.valuation)
    relation = dict(t.relation)
    for leaf, path in tree.paths.items():
        if len(path) != k + 1:
            continue
        copy = {s: f"{leaf}@{_escape(s)}" for s in model.states}
        states.extend(copy.values())
        valuation.update({(copy[s], p): v for (s, p), v in model.valuation.items()})
        relation.update({(copy[s], copy[u]): v for (s, u), v in model.relation.items()})
        for u, w in model.successors(path[-1]).items():
            relation[leaf, copy[u]] = w
    return Model(states, model.atoms, valuation, relation), tree.root


# --- locality -------------------------------------------------------------------


@dataclass(frozen=True)
class LocalityResult:
    full: Fraction
    restricted: Fraction

    @property
    def equal(self) -> bool:
        return self.full == self.restricted


def locality_check(model: Model, phi, a: State, radius: int) -> LocalityResult:
    """Evaluate ``phi`` at ``a`` on the model and on the radius-ℓ neighbourhood of ``a``."""
    model.check_state(a)
    local = neighbourhood_restrict(model, [a], radius)
    if isinstance(phi, modal.ModalFormula):
        return LocalityResult(eval_modal(model, phi, a), eval_modal(local, phi, a))
    if isinstance(phi, fol.FolFormula):
        free = fol.free_vars(phi)
        if len(free) > 1:
            raise FuzzyModalError(f"formula must have at most one free variable, has {sorted(free)}")
        env = {v: a for v in free}
        return LocalityResult(eval_fol(model, phi, env), eval_fol(local, phi, env))
    raise TypeError(f"not a formula: {phi!r}")
