"""Solvers for epsilon-bisimulation games and epsilon-Ehrenfeucht-Fraisse games.

Both games are played between a *left* model and a *right* model (which may
be the same object). Configurations of the bisimulation game are pairs
``(a, b)``; EF configurations are pairs of equal-length state tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .core.errors import FuzzyModalError, GameSizeError, IllegalMoveError
from .core.model import Model, State
from .core.truth import abs_diff, format_truth, truth

SPOILER = "Spoiler"
DUPLICATOR = "Duplicator"
LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class Move:
    """A state picked in the left or right model."""

    side: str
    target: State

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}, not {self.side!r}")

    @property
    def other(self) -> str:
        return RIGHT if self.side == LEFT else LEFT


@dataclass(frozen=True)
class AtomViolation:
    """Spoiler's win without moving: the configuration breaks the winning condition."""

    detail: str


@dataclass
class GameOutcome:
    """Winner of a game plus the winner's strategy.

    For Duplicator, ``strategy`` maps ``(rounds_left, config, spoiler_move)``
    to the reply state; for Spoiler it maps ``(rounds_left, config)`` to a
    :class:`Move` or an :class:`AtomViolation`. ``rounds_left`` is ``None`` in
    the unbounded bisimulation game. The strategy covers every configuration
    reachable from ``start`` while the winner follows it.
    """

    winner: str
    start: tuple
    epsilon: Fraction
    depth: Optional[int]
    strategy: dict = field(repr=False)
    game: object = field(repr=False)

    @property
    def duplicator_wins(self) -> bool:
        return self.winner == DUPLICATOR


class BisimGame:
    """All winning regions of the epsilon-bisimulation game on ``left x right``.

    ``region(k)`` is the set of configurations from which Duplicator wins the
    depth-k game; the regions shrink with k and become constant, and the
    limit is the winning region of the unbounded game.
    """

    def __init__(self, left: Model, right: Model, epsilon):
        if left.atoms != right.atoms and set(left.atoms) != set(right.atoms):
            raise FuzzyModalError("models must share their atoms")
        self.left = left
        self.right = right
        self.epsilon = truth(epsilon)
        eps = self.epsilon
        self._atoms_ok = {
            (a, b)
            for a in left.states
            for b in right.states
            if all(abs_diff(left.val(a, p), right.val(b, p)) <= eps for p in left.atoms)
        }
        # legal Spoiler moves per state, and for each the legal replies on the other side
        self._moves = {
            LEFT: {a: {t: w for t, w in left.successors(a).items() if w > eps} for a in left.states},
            RIGHT: {b: {t: w for t, w in right.successors(b).items() if w > eps} for b in right.states},
        }
        self._regions = [frozenset((a, b) for a in left.states for b in right.states)]
        self._stable = False

    def model(self, side: str) -> Model:
        return self.left if side == LEFT else self.right

    def atoms_ok(self, a: State, b: State) -> bool:
        return (a, b) in self._atoms_ok

    def spoiler_moves(self, a: State, b: State) -> list[Move]:
        return [Move(LEFT, t) for t in self._moves[LEFT][a]] + [Move(RIGHT, t) for t in self._moves[RIGHT][b]]

    def is_legal_move(self, config, move: Move) -> bool:
        src = config[0] if move.side == LEFT else config[1]
        return move.target in self._moves[move.side][src]

    def replies(self, config, move: Move) -> list[State]:
        """Duplicator's legal answers to ``move`` from ``config``."""
        a, b = config
        src, other_src = (a, b) if move.side == LEFT else (b, a)
        w = self.model(move.side).r(src, move.target)
        need = w - self.epsilon
        return [t for t, v in self.model(move.other).successors(other_src).items() if v >= need]

    @staticmethod
    def after(config, move: Move, reply: State):
        return (move.target, reply) if move.side == LEFT else (reply, move.target)

    def _step(self, region: frozenset) -> frozenset:
        keep = []
        for cfg in region:
            if cfg not in self._atoms_ok:
                continue
            if all(
                any(self.after(cfg, mv, r) in region for r in self.replies(cfg, mv))
                for mv in self.spoiler_moves(*cfg)
            ):
                keep.append(cfg)
        return frozenset(keep)

    def region(self, k: Optional[int]) -> frozenset:
        """Duplicator's winning region with ``k`` rounds left (``None``: unbounded)."""
        if k is None:
            while not self._stable:
                self._extend()
            return self._regions[-1]
        while len(self._regions) <= k and not self._stable:
            self._extend()
        return self._regions[min(k, len(self._regions) - 1)]

    def _extend(self):
        nxt = self._step(self._regions[-1])
        if nxt == self._regions[-1]:
            self._stable = True
        else:
            self._regions.append(nxt)

    @property
    def stabilization_depth(self) -> int:
        self.region(None)
        return len(self._regions) - 1

    def wins(self, a: State, b: State, k: Optional[int]) -> bool:
        return (a, b) in self.region(k)

    def _lose_level(self, cfg) -> int:
        """Least k with ``cfg`` outside region(k); the config must be losing."""
        self.region(None)
        for k, reg in enumerate(self._regions):
            if cfg not in reg:
                return k
        raise AssertionError("configuration is winning for Duplicator")

    def spoiler_choice(self, cfg, k: Optional[int]) -> Union[Move, AtomViolation]:
        """A winning Spoiler action at a losing configuration."""
        a, b = cfg
        if not self.atoms_ok(a, b):
            bad = [
                p for p in self.left.atoms
                if abs_diff(self.left.val(a, p), self.right.val(b, p)) > self.epsilon
            ]
            p = bad[0]
            return AtomViolation(
                f"|{p}({a}) - {p}({b})| = {format_truth(abs_diff(self.left.val(a, p), self.right.val(b, p)))}"
                f" > {format_truth(self.epsilon)}"
            )
        level = self._lose_level(cfg) if k is None else k
        prev = self.region(level - 1)
        for mv in self.spoiler_moves(a, b):
            if all(self.after(cfg, mv, r) not in prev for r in self.replies(cfg, mv)):
                return mv
        raise AssertionError("no winning Spoiler move at a losing configuration")

    def duplicator_choice(self, cfg, k: Optional[int], move: Move) -> State:
        target = self.region(None if k is None else k - 1)
        for r in self.replies(cfg, move):
            if self.after(cfg, move, r) in target:
                return r
        raise AssertionError("no winning Duplicator reply at a winning configuration")

    def outcome(self, a: State, b: State, depth: Optional[int]) -> GameOutcome:
        self.left.check_state(a)
        self.right.check_state(b)
        start = (a, b)
        dup = self.wins(a, b, depth)
        strategy: dict = {}
        seen = set()
        frontier = [(depth, start)]
        while frontier:
            k, cfg = frontier.pop()
            if (k, cfg) in seen or k == 0:
                continue
            seen.add((k, cfg))
            nk = None if k is None else k - 1
            if dup:
                for mv in self.spoiler_moves(*cfg):
                    r = self.duplicator_choice(cfg, k, mv)
                    strategy[k, cfg, mv] = r
                    frontier.append((nk, self.after(cfg, mv, r)))
            else:
                choice = self.spoiler_choice(cfg, k)
                strategy[k, cfg] = choice
                if isinstance(choice, Move):
                    for r in self.replies(cfg, choice):
                        frontier.append((nk, self.after(cfg, choice, r)))
        return GameOutcome(DUPLICATOR if dup else SPOILER, start, self.epsilon, depth, strategy, self)


def bisim_wins(
    left: Model, right: Model, a: State, b: State, epsilon, depth: Optional[int] = None
) -> GameOutcome:
    """Solve the epsilon-bisimulation game from ``(a, b)``.

    ``depth=None`` solves the unbounded game.
    """
    if depth is not None and depth < 0:
        raise ValueError("depth must be non-negative")
    return BisimGame(left, right, epsilon).outcome(a, b, depth)


# --- Ehrenfeucht-Fraisse games -------------------------------------------


class EFGame:
    def __init__(self, left: Model, right: Model, epsilon, max_rounds: int = 4, max_states: int = 12):
        if set(left.atoms) != set(right.atoms):
            raise FuzzyModalError("models must share their atoms")
        if len(left) + len(right) > max_states:
            raise GameSizeError(
                f"EF game too large: {len(left)} + {len(right)} states exceeds cap {max_states}"
            )
        self.left = left
        self.right = right
        self.epsilon = truth(epsilon)
        self.max_rounds = max_rounds
        self._memo: dict = {}

    def partial_iso(self, av: Sequence[State], bv: Sequence[State]) -> bool:
        for i in range(len(av)):
            if not self._extends(av[:i], bv[:i], av[i], bv[i]):
                return False
        return True

    def _extends(self, av, bv, x, y) -> bool:
        """Whether appending ``(x, y)`` to a partial isomorphism keeps it one."""
        L, R, eps = self.left, self.right, self.epsilon
        for ai, bi in zip(av, bv):
            if (ai == x) != (bi == y):
                return False
        for p in L.atoms:
            if abs_diff(L.val(x, p), R.val(y, p)) > eps:
                return False
        if abs_diff(L.r(x, x), R.r(y, y)) > eps:
            return False
        for ai, bi in zip(av, bv):
            if abs_diff(L.r(ai, x), R.r(bi, y)) > eps or abs_diff(L.r(x, ai), R.r(y, bi)) > eps:
                return False
        return True

    def wins(self, av: tuple, bv: tuple, k: int) -> bool:
        """Duplicator wins the k-round game from a configuration already known to be a partial iso."""
        key = (av, bv, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        result = True
        if k > 0:
            result = all(self.reply(av, bv, mv, k) is not None for mv in self.moves())
        self._memo[key] = result
        return result

    def moves(self) -> list[Move]:
        return [Move(LEFT, s) for s in self.left.states] + [Move(RIGHT, s) for s in self.right.states]

    def reply(self, av, bv, mv: Move, k: int) -> Optional[State]:
        other = self.right if mv.side == LEFT else self.left
        for r in other.states:
            x, y = (mv.target, r) if mv.side == LEFT else (r, mv.target)
            if self._extends(av, bv, x, y) and self.wins(av + (x,), bv + (y,), k - 1):
                return r
        return None

    def outcome(self, av: Sequence[State], bv: Sequence[State], rounds: int) -> GameOutcome:
        av, bv = tuple(av), tuple(bv)
        if len(av) != len(bv):
            raise FuzzyModalError(f"vector length mismatch: {len(av)} vs {len(bv)}")
        if rounds < 0:
            raise ValueError("rounds must be non-negative")
        if rounds > self.max_rounds:
            raise GameSizeError(f"EF game limited to {self.max_rounds} rounds, {rounds} requested")
        for s in av:
            self.left.check_state(s)
        for s in bv:
            self.right.check_state(s)
        dup = self.partial_iso(av, bv) and self.wins(av, bv, rounds)
        strategy: dict = {}
        frontier = [(rounds, (av, bv))]
        while frontier:
            k, cfg = frontier.pop()
            if k == 0 or (k, cfg) in strategy:
                continue
            ca, cb = cfg
            if dup:
                for mv in self.moves():
                    r = self.reply(ca, cb, mv, k)
                    strategy[k, cfg, mv] = r
                    x, y = (mv.target, r) if mv.side == LEFT else (r, mv.target)
                    frontier.append((k - 1, (ca + (x,), cb + (y,))))
            else:
                if not self.partial_iso(ca, cb):
                    strategy[k, cfg] = AtomViolation("configuration is not a partial isomorphism up to epsilon")
                    continue
                for mv in self.moves():
                    if self.reply(ca, cb, mv, k) is None:
                        strategy[k, cfg] = mv
                        other = self.right if mv.side == LEFT else self.left
                        for r in other.states:
                            x, y = (mv.target, r) if mv.side == LEFT else (r, mv.target)
                            if self._extends(ca, cb, x, y):
                                frontier.append((k - 1, (ca + (x,), cb + (y,))))
                        break
        if not dup and rounds == 0:
            strategy[0, (av, bv)] = AtomViolation("configuration is not a partial isomorphism up to epsilon")
        return GameOutcome(DUPLICATOR if dup else SPOILER, (av, bv), self.epsilon, rounds, strategy, self)


def ef_wins(
    left: Model,
    right: Model,
    av: Sequence[State],
    bv: Sequence[State],
    epsilon,
    rounds: int,
    max_rounds: int = 4,
    max_states: int = 12,
) -> GameOutcome:
    """Solve the ``rounds``-round epsilon-EF game from ``(av, bv)``."""
    return EFGame(left, right, epsilon, max_rounds, max_states).outcome(av, bv, rounds)


# --- replay ---------------------------------------------------------------


@dataclass(frozen=True)
class Round:
    config: tuple
    spoiler: Move
    reply: State
    result: tuple


@dataclass
class Transcript:
    rounds: list[Round]
    end: str

    def __len__(self):
        return len(self.rounds)


def _coerce_move(item) -> Move:
    if isinstance(item, Move):
        return item
    side, target = item
    return Move(side, target)


def game_trace(outcome: GameOutcome, adversary: Iterable) -> Transcript:
    """Replay the winner's stored strategy against scripted adversary moves.

    Against a Duplicator win the script holds Spoiler moves (``Move`` or
    ``(side, target)`` pairs); against a Spoiler win it holds Duplicator's
    reply states. Illegal scripted moves raise :class:`IllegalMoveError`.
    """
    game = outcome.game
    if not isinstance(game, BisimGame):
        raise FuzzyModalError("replay is supported for bisimulation games only")
    eps = outcome.epsilon
    cfg = outcome.start
    k = outcome.depth
    rounds: list[Round] = []
    script = iter(adversary)

    def rounds_left():
        return k is None or k > 0

    while rounds_left():
        nk = None if k is None else k - 1
        if outcome.winner == DUPLICATOR:
            item = next(script, None)
            if item is None:
                stuck = not game.spoiler_moves(*cfg)
                return Transcript(rounds, "Spoiler cannot move" if stuck else "adversary stopped")
            mv = _coerce_move(item)
            if not game.is_legal_move(cfg, mv):
                src = cfg[0] if mv.side == LEFT else cfg[1]
                w = game.model(mv.side).r(src, mv.target)
                raise IllegalMoveError(
                    f"illegal Spoiler move {src}->{mv.target}: R = {format_truth(w)} is not > epsilon = {format_truth(eps)}"
                )
            reply = outcome.strategy[k, cfg, mv]
        else:
            choice = outcome.strategy[k, cfg]
            if isinstance(choice, AtomViolation):
                return Transcript(rounds, f"Spoiler wins: {choice.detail}")
            mv = choice
            legal = game.replies(cfg, mv)
            if not legal:
                return Transcript(rounds, f"Spoiler wins: no legal reply to {mv.side} move to {mv.target}")
            item = next(script, None)
            if item is None:
                return Transcript(rounds, "adversary stopped")
            reply = item.target if isinstance(item, Move) else item
            if reply not in legal:
                raise IllegalMoveError(
                    f"illegal Duplicator reply {reply}: legal replies are {', '.join(legal)}"
                )
        nxt = game.after(cfg, mv, reply)
        rounds.append(Round(cfg, mv, reply, nxt))
        cfg, k = nxt, nk
    return Transcript(rounds, "rounds exhausted")
