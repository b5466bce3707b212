"""Evaluation of modal and first-order formulas on finite models."""

from __future__ import annotations

from fractions import Fraction
from itertools import count
from typing import Mapping

from .core import fol, modal
from .core.errors import UnboundVariableError, UnknownAtomError
from .core.model import Model, State
from .core.truth import ONE, ZERO, tsub

StateFunction = Mapping[State, Fraction]


def diamond(model: Model, f: StateFunction) -> dict[State, Fraction]:
    """The extended diamond: ``(<>f)(a) = max_a' min(R(a,a'), f(a'))``."""
    out = {}
    for a in model.states:
        best = ZERO
        for t, w in model.successors(a).items():
            v = w if w < f[t] else f[t]
            if v > best:
                best = v
        out[a] = best
    return out


def diamond_apply(model: Model, f: StateFunction, a: State) -> Fraction:
    model.check_state(a)
    best = ZERO
    for t, w in model.successors(a).items():
        best = max(best, min(w, f[t]))
    return best


def denote(model: Model, phi: modal.ModalFormula) -> dict[State, Fraction]:
    """Truth value of ``phi`` at every state.

    Shared subformulas (by identity) are evaluated once, so formula DAGs built
    by the approximation code stay cheap to evaluate.
    """
    atoms = set(model.atoms)
    memo: dict[int, dict[State, Fraction]] = {}
    states = model.states

    def go(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, modal.Const):
            v = node.value
            out = dict.fromkeys(states, v)
        elif isinstance(node, modal.Atom):
            if node.name not in atoms:
                raise UnknownAtomError(node.name)
            out = {s: model.val(s, node.name) for s in states}
        elif isinstance(node, modal.Neg):
            sub = go(node.body)
            out = {s: ONE - sub[s] for s in states}
        elif isinstance(node, modal.SubConst):
            sub = go(node.body)
            c = node.value
            out = {s: tsub(sub[s], c) for s in states}
        elif isinstance(node, modal.And):
            left, right = go(node.left), go(node.right)
            out = {s: min(left[s], right[s]) for s in states}
        elif isinstance(node, modal.Diamond):
            out = diamond(model, go(node.body))
        else:
            raise TypeError(f"not a modal formula: {node!r}")
        memo[key] = out
        return out

    return go(phi)


def eval_modal(model: Model, phi: modal.ModalFormula, a: State) -> Fraction:
    model.check_state(a)
    return denote(model, phi)[a]


def eval_fol(model: Model, phi: fol.FolFormula, assignment: Mapping[str, State]) -> Fraction:
    """Value of ``phi`` under ``assignment``; quantifiers range over all states."""
    for var in fol.free_vars(phi):
        if var not in assignment:
            raise UnboundVariableError(var)
        model.check_state(assignment[var])
    atoms = set(model.atoms)
    for p in fol.atoms_of(phi):
        if p not in atoms:
            raise UnknownAtomError(p)
    return _eval_fol(model, phi, dict(assignment))


def _eval_fol(model: Model, node, env: dict) -> Fraction:
    if isinstance(node, fol.Const):
        return node.value
    if isinstance(node, fol.AtomApp):
        return model.val(env[node.var], node.atom)
    if isinstance(node, fol.Rel):
        return model.r(env[node.left], env[node.right])
    if isinstance(node, fol.Eq):
        return ONE if env[node.left] == env[node.right] else ZERO
    if isinstance(node, fol.Neg):
        return ONE - _eval_fol(model, node.body, env)
    if isinstance(node, fol.SubConst):
        return tsub(_eval_fol(model, node.body, env), node.value)
    if isinstance(node, fol.And):
        left = _eval_fol(model, node.left, env)
        if left == 0:
            return ZERO
        return min(left, _eval_fol(model, node.right, env))
    if isinstance(node, fol.Exists):
        saved = env.get(node.var, _MISSING)
        best = ZERO
        for s in model.states:
            env[node.var] = s
            v = _eval_fol(model, node.body, env)
            if v > best:
                best = v
                if best == 1:
                    break
        if saved is _MISSING:
            del env[node.var]
        else:
            env[node.var] = saved
        return best
    raise TypeError(f"not a first-order formula: {node!r}")


_MISSING = object()


def standard_translation(phi: modal.ModalFormula, x: str = "x") -> fol.FolFormula:
    """Translate a modal formula into a first-order formula with free variable ``x``.

    Bound variables are named ``v0, v1, ...`` in traversal order, skipping ``x``.
    """
    fresh = (f"v{i}" for i in count())

    def new_var():
        v = next(fresh)
        while v == x:
            v = next(fresh)
        return v

    def st(node, var):
        if isinstance(node, modal.Const):
            return fol.Const(node.value)
        if isinstance(node, modal.Atom):
            return fol.AtomApp(node.name, var)
        if isinstance(node, modal.Neg):
            return fol.Neg(st(node.body, var))
        if isinstance(node, modal.SubConst):
            return fol.SubConst(st(node.body, var), node.value)
        if isinstance(node, modal.And):
            return fol.And(st(node.left, var), st(node.right, var))
        if isinstance(node, modal.Diamond):
            y = new_var()
            return fol.Exists(y, fol.And(fol.Rel(var, y), st(node.body, y)))
        raise TypeError(f"not a modal formula: {node!r}")

    return st(phi, x)
