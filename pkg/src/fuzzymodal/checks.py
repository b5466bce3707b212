"""Property suites over seeded random models.

Each suite yields :class:`CheckRow` records, printed as
``CHECK <suite> <case-id> PASS|FAIL <detail>``. Suites are deterministic in
the seed: every case draws from its own generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .approx import Approximator, quotient_by_signature, signatures
from .core import fol, modal
from .core.model import Model, disjoint_union
from .core.table import DistanceTable
from .core.truth import ZERO, abs_diff, format_truth, tsub
from .games import BisimGame, bisim_wins, ef_wins
from .generators import (
    ModelParams,
    case_rng,
    cone,
    fol_pool,
    modal_corpus,
    nonexpansive_functions,
    random_model,
    random_truth,
)
from .metrics import (
    GameOracle,
    behavioural_distance,
    candidate_epsilons,
    distance_between,
    distance_sequence,
    kantorovich_lift,
    kantorovich_lift_exhaustive,
    kantorovich_step,
    lift_input,
)
from .semantics import denote, diamond, eval_fol, eval_modal, standard_translation
from .transforms import locality_check, neighbourhood_restrict, partial_unravel, unravel


@dataclass(frozen=True)
class CheckRow:
    suite: str
    case: str
    passed: bool
    detail: str = ""

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.suite} {self.case} {status} {self.detail}".rstrip()


@dataclass(frozen=True)
class CheckConfig:
    seed: int = 42
    models: int = 200
    params: ModelParams = field(default_factory=ModelParams)
    max_depth: int = 3
    delta: Fraction = Fraction(1, 100)
    epsilon: Fraction = Fraction(1, 20)
    formulas: int = 5          # fuzzed formulas per model
    functions: int = 50        # non-expansive functions per depth
    ef_models: int = 30
    ef_rounds: int = 2
    exhaustive_limit: int = 6  # largest successor support searched exhaustively
    chain_depth: int = 4


class _Failure(Exception):
    pass


def _expect(cond: bool, message: str):
    if not cond:
        raise _Failure(message)


def _case(suite: str, case: str, body: Callable[[], str]) -> CheckRow:
    try:
        return CheckRow(suite, case, True, body())
    except _Failure as exc:
        return CheckRow(suite, case, False, str(exc))


def _model(cfg: CheckConfig, i: int, tag: str = "m", params: Optional[ModelParams] = None) -> Model:
    return random_model(case_rng(cfg.seed, tag, i), params or cfg.params)


def _pairs(model: Model):
    return itertools.combinations(model.states, 2)


def _ft(x) -> str:
    return format_truth(x)


# --- metric coincidence ---------------------------------------------------------


def suite_coincidence(cfg: CheckConfig) -> Iterator[CheckRow]:
    """Recurrence, game oracle, Kantorovich step and witness gaps agree."""
    for i in range(cfg.models):
        def body(i=i):
            m = _model(cfg, i)
            seq = distance_sequence(m, cfg.max_depth)
            oracle = GameOracle(m)
            approx = Approximator(m)
            for n, d in enumerate(seq):
                g = oracle.table(n)
                _expect(g == d, f"n={n} game oracle differs from recurrence")
                if n:
                    _expect(kantorovich_step(m, seq[n - 1]) == d, f"n={n} Kantorovich step differs")
                for a, b in _pairs(m):
                    phi = approx.synth_witness(a, b, n, cfg.delta)
                    vals = approx.values(phi)
                    gap = abs_diff(vals[a], vals[b])
                    _expect(modal.rank(phi) <= n, f"n={n} witness for {a},{b} has rank {modal.rank(phi)}")
                    _expect(d[a, b] - cfg.delta <= gap <= d[a, b],
                            f"n={n} witness gap {_ft(gap)} vs d={_ft(d[a, b])} at {a},{b}")
            _expect(oracle.table(None) == behavioural_distance(m), "unbounded game differs from fixpoint")
            return f"states={len(m.states)} depth<={cfg.max_depth} exact"
        yield _case("coincidence", f"m{i:03d}", body)


def suite_kantorovich(cfg: CheckConfig) -> Iterator[CheckRow]:
    """Test-function family matches exhaustive search; proof witnesses are non-expansive."""
    for i in range(cfg.models):
        def body(i=i):
            m = _model(cfg, i)
            seq = distance_sequence(m, cfg.max_depth)
            inputs = {a: lift_input(m, a) for a in m.states}
            searched = 0
            for n in range(cfg.max_depth):
                d = seq[n]
                for a, b in _pairs(m):
                    x, y = inputs[a], inputs[b]
                    fam = kantorovich_lift(d, x, y)
                    if len(set(x.weights) | set(y.weights)) <= cfg.exhaustive_limit:
                        ex = kantorovich_lift_exhaustive(d, x, y)
                        _expect(fam == ex, f"n={n} {a},{b}: family {_ft(fam)} vs exhaustive {_ft(ex)}")
                        searched += 1
                for a in m.states:
                    for a1, w in m.successors(a).items():
                        f = {s: tsub(w, d[a1, s]) for s in m.states}
                        for s, t in _pairs(m):
                            _expect(abs_diff(f[s], f[t]) <= d[s, t],
                                    f"n={n} witness function from {a}->{a1} expands at {s},{t}")
            return f"exhaustive={searched}"
        yield _case("kantorovich", f"m{i:03d}", body)


# --- pseudometric axioms and monotonicity ---------------------------------------


def axiom_violation(d: DistanceTable) -> Optional[str]:
    """Independent re-check of the pseudometric axioms."""
    st = d.states
    for a in st:
        if d[a, a] != 0:
            return f"d({a},{a}) != 0"
    for a, b in itertools.combinations(st, 2):
        if d[a, b] != d[b, a]:
            return f"asymmetric at {a},{b}"
        if not 0 <= d[a, b] <= 1:
            return f"out of range at {a},{b}"
    for a, b, c in itertools.product(st, repeat=3):
        if d[a, c] > d[a, b] + d[b, c]:
            return f"triangle fails at {a},{b},{c}"
    return None


def suite_pseudometric(cfg: CheckConfig) -> Iterator[CheckRow]:
    depth = max(cfg.max_depth, 4)
    for i in range(cfg.models):
        def body(i=i):
            m = _model(cfg, i)
            seq = distance_sequence(m, depth)
            full = behavioural_distance(m)
            for d in seq + [full]:
                bad = axiom_violation(d)
                _expect(bad is None, f"{d.provenance}: {bad}")
            for d_m, d_n in zip(seq, seq[1:]):
                _expect(d_m.leq(d_n), f"{d_m.provenance} not below {d_n.provenance}")
            _expect(seq[-1].leq(full), f"{seq[-1].provenance} not below the unbounded distance")
            return f"tables={len(seq) + 1} monotone"
        yield _case("pseudometric", f"m{i:03d}", body)


# --- modal invariance and games -------------------------------------------------


def suite_invariance(cfg: CheckConfig) -> Iterator[CheckRow]:
    """Formula gaps never exceed the depth distance at the formula's rank."""
    for i in range(cfg.models):
        def body(i=i):
            rng = case_rng(cfg.seed, "inv", i)
            m = _model(cfg, i)
            seq = distance_sequence(m, cfg.max_depth)
            corpus = modal_corpus(rng, m.atoms, cfg.formulas, cfg.max_depth)
            for phi in corpus:
                r = modal.rank(phi)
                vals = denote(m, phi)
                for a, b in _pairs(m):
                    _expect(abs_diff(vals[a], vals[b]) <= seq[r][a, b],
                            f"rank {r} formula separates {a},{b} by more than d_{r}")
            # <> maps d_n-non-expansive functions to d_{n+1}-non-expansive ones
            for n in range(len(seq) - 1):
                for s0 in m.states:
                    lifted = diamond(m, cone(seq[n], s0, Fraction(1)))
                    for s, t in _pairs(m):
                        _expect(abs_diff(lifted[s], lifted[t]) <= seq[n + 1][s, t],
                                f"<> expands the depth-{n} cone at {s0} on {s},{t}")
            return f"formulas={len(corpus)}"
        yield _case("invariance", f"m{i:03d}", body)


def suite_games(cfg: CheckConfig) -> Iterator[CheckRow]:
    """Game-level laws: monotonicity, composition, stabilization, union reduction."""
    observed_zero_gap = 0
    for i in range(cfg.models):
        def body(i=i):
            nonlocal observed_zero_gap
            m = _model(cfg, i)
            eps = candidate_epsilons(m)
            games = {e: BisimGame(m, m, e) for e in eps}
            size = len(m.states) ** 2
            for e in eps:
                g = games[e]
                regions = [g.region(k) for k in range(size + 2)]
                for k in range(len(regions) - 1):
                    _expect(regions[k + 1] <= regions[k], f"eps={_ft(e)} W_{k + 1} not inside W_{k}")
                _expect(g.stabilization_depth <= size, f"eps={_ft(e)} stabilizes late")
                _expect(regions[size] == g.region(None), f"eps={_ft(e)} W_N differs from unbounded region")
            for e, e2 in zip(eps, eps[1:]):
                _expect(games[e].region(None) <= games[e2].region(None), f"not monotone from {_ft(e)} to {_ft(e2)}")
            # composition on every triple, for a few (eps, delta) pairs
            rng = case_rng(cfg.seed, "compose", i)
            for _ in range(3):
                e1, e2 = rng.choice(eps), rng.choice(eps)
                e3 = min(e1 + e2, Fraction(1))
                w1, w2 = games[e1].region(None), games[e2].region(None)
                w3 = BisimGame(m, m, e3).region(None)
                for a, b, c in itertools.product(m.states, repeat=3):
                    if (a, b) in w1 and (b, c) in w2:
                        _expect((a, c) in w3, f"composition fails at {a},{b},{c} eps={_ft(e1)}+{_ft(e2)}")
            # two-model game against the game on the disjoint union
            n_model = _model(cfg, i, "other", replace(cfg.params, atoms=len(m.atoms)))
            if n_model.atoms == m.atoms:
                u, il, ir = disjoint_union(m, n_model)
                e = rng.choice(eps)
                direct = BisimGame(m, n_model, e)
                via = BisimGame(u, u, e)
                for k in (1, 2, None):
                    for a in m.states:
                        for b in n_model.states:
                            _expect(direct.wins(a, b, k) == via.wins(il[a], ir[b], k),
                                    f"union reduction differs at {a},{b} depth {k}")
            # injections: Duplicator wins at every small positive eps
            u, il, _ = disjoint_union(m, m.rename({s: s + "'" for s in m.states}))
            for e in (Fraction(1, 100), Fraction(1, 1000)):
                for a in m.states:
                    _expect(bisim_wins(m, u, a, il[a], e).duplicator_wins, f"injection of {a} loses at eps={_ft(e)}")
            # observation only: zero distance vs winning the 0-game
            full = behavioural_distance(m)
            zero = games[ZERO].region(None) if ZERO in games else BisimGame(m, m, ZERO).region(None)
            for a, b in _pairs(m):
                if full[a, b] == 0 and (a, b) not in zero:
                    observed_zero_gap += 1
            return f"epsilons={len(eps)}"
        yield _case("games", f"m{i:03d}", body)
    yield CheckRow("games", "zero-distance-vs-0-game", True,
                   f"observed pairs with d=0 but 0-game lost: {observed_zero_gap}")


# --- locality, translation, EF --------------------------------------------------


def suite_locality(cfg: CheckConfig) -> Iterator[CheckRow]:
    for i in range(cfg.models):
        def body(i=i):
            rng = case_rng(cfg.seed, "loc", i)
            m = _model(cfg, i)
            corpus = modal_corpus(rng, m.atoms, cfg.formulas, cfg.max_depth)
            for phi in corpus:
                k = modal.rank(phi)
                st = standard_translation(phi)
                for a in m.states:
                    for target in (phi, st):
                        res = locality_check(m, target, a, k)
                        _expect(res.equal, f"rank {k} formula not {k}-local at {a}: "
                                           f"{_ft(res.full)} vs {_ft(res.restricted)}")
            for k in range(cfg.max_depth + 1):
                for a in m.states:
                    sub = neighbourhood_restrict(m, [a], k)
                    _expect(bisim_wins(m, sub, a, a, ZERO, k).duplicator_wins, f"depth-{k} 0-game lost against N^{k}({a})")
            return f"formulas={len(corpus)}"
        yield _case("locality", f"m{i:03d}", body)


def suite_translation(cfg: CheckConfig) -> Iterator[CheckRow]:
    for i in range(cfg.models):
        def body(i=i):
            rng = case_rng(cfg.seed, "st", i)
            m = _model(cfg, i)
            corpus = modal_corpus(rng, m.atoms, cfg.formulas, cfg.max_depth)
            for phi in corpus:
                st = standard_translation(phi)
                _expect(fol.free_vars(st) <= {"x"}, "translation has stray free variables")
                _expect(fol.qrank(st) <= modal.rank(phi), "translation quantifier rank exceeds modal rank")
                vals = denote(m, phi)
                for a in m.states:
                    got = eval_fol(m, st, {"x": a})
                    _expect(got == vals[a], f"at {a}: modal {_ft(vals[a])} vs translated {_ft(got)}")
            return f"formulas={len(corpus)}"
        yield _case("translation", f"m{i:03d}", body)


def suite_ef(cfg: CheckConfig) -> Iterator[CheckRow]:
    """Where Duplicator wins the n-round EF game, qr-n formulas stay within eps."""
    tiny = replace(cfg.params, states=min(cfg.params.states, 4))
    pools: dict = {}

    def pool(atoms, free, n):
        key = (atoms, tuple(free), n)
        if key not in pools:
            pools[key] = fol_pool(atoms, free, n, cfg.seed)
        return pools[key]

    for i in range(cfg.ef_models):
        def body(i=i):
            rng = case_rng(cfg.seed, "ef", i)
            m = _model(cfg, i, "ef-left", tiny)
            n_model = random_model(rng, replace(tiny, atoms=len(m.atoms)))
            if n_model.atoms != m.atoms:
                n_model = m
            vals = candidate_epsilons(m) + candidate_epsilons(n_model)
            eps = sorted({ZERO, rng.choice(vals), random_truth(rng, 4)})
            won = checked = 0
            for n in range(cfg.ef_rounds + 1):
                for e in eps:
                    for length in (1, 2) if n < cfg.ef_rounds else (1,):
                        free = ["x", "z"][:length]
                        formulas = pool(m.atoms, free, n)
                        for av in itertools.product(m.states, repeat=length):
                            for bv in itertools.product(n_model.states, repeat=length):
                                if not ef_wins(m, n_model, av, bv, e, n).duplicator_wins:
                                    continue
                                won += 1
                                ga, gb = dict(zip(free, av)), dict(zip(free, bv))
                                for phi in formulas:
                                    x, y = eval_fol(m, phi, ga), eval_fol(n_model, phi, gb)
                                    checked += 1
                                    _expect(abs_diff(x, y) <= e,
                                            f"n={n} eps={_ft(e)} {av} vs {bv}: gap {_ft(abs_diff(x, y))}")
            return f"won={won} evaluations={checked}"
        yield _case("ef", f"m{i:03d}", body)


# --- zero-distance constructions ------------------------------------------------


def suite_zero(cfg: CheckConfig) -> Iterator[CheckRow]:
    for i in range(cfg.models):
        def body(i=i):
            m = _model(cfg, i)
            other = _model(cfg, i, "other", replace(cfg.params, atoms=len(m.atoms)))
            if other.atoms != m.atoms:
                other = m
            u, il, ir = disjoint_union(m, other)
            full = behavioural_distance(u)
            for a in m.states:
                _expect(distance_between(m, a, u, il[a]) == 0, f"left injection moves {a}")
            for b in other.states:
                _expect(distance_between(other, b, u, ir[b]) == 0, f"right injection moves {b}")
            _expect(all(full[il[a], il[b]] == d for (a, b), d in behavioural_distance(m).as_dict().items()),
                    "union changes distances inside the left summand")
            k = cfg.max_depth
            for a in m.states:
                tree = unravel(m, a, k)
                for n in range(k + 1):
                    _expect(distance_between(m, a, tree.model, tree.root, n) == 0,
                            f"unravelling root of {a} at depth {k} has d_{n} > 0")
                pu, root = partial_unravel(m, a, min(k, 2))
                _expect(distance_between(m, a, pu, root) == 0, f"partial unravelling root of {a} has d > 0")
                _expect(bisim_wins(m, pu, a, root, ZERO).duplicator_wins, f"0-game lost against partial unravelling of {a}")
            for n in range(k + 1):
                sig = signatures(m, n)
                d = distance_sequence(m, n)[n]
                for a, b in _pairs(m):
                    if sig[a] == sig[b]:
                        _expect(d[a, b] == 0, f"equal depth-{n} signatures but d_{n}({a},{b}) > 0")
                q, proj = quotient_by_signature(m, n)
                for a in m.states:
                    _expect(distance_between(m, a, q, proj[a], n) == 0, f"quotient moves {a} at depth {n}")
            return f"states={len(m.states)}"
        yield _case("zero", f"m{i:03d}", body)


def loop_chain(length: int) -> Model:
    """A self-loop ``loop`` beside a chain ``c0 -> ... -> c<length>``, all weights 1."""
    states = ["loop"] + [f"c{j}" for j in range(length + 1)]
    rel = {("loop", "loop"): 1}
    rel.update({(f"c{j}", f"c{j + 1}"): 1 for j in range(length)})
    return Model(states, ["p"], {}, rel)


SELF_LOOP = fol.Rel("x", "x")


def suite_noninvariance(cfg: CheckConfig) -> Iterator[CheckRow]:
    for n in range(cfg.chain_depth + 1):
        def body(n=n):
            m = loop_chain(n + 1)
            seq = distance_sequence(m, n + 2)
            _expect(seq[n]["loop", "c0"] == 0, f"d_{n}(loop, c0) = {_ft(seq[n]['loop', 'c0'])}")
            at_loop = eval_fol(m, SELF_LOOP, {"x": "loop"})
            at_head = eval_fol(m, SELF_LOOP, {"x": "c0"})
            _expect(abs_diff(at_loop, at_head) == 1, "R(x,x) does not differ by 1")
            return (f"d_{n}=0 R(loop,loop)={_ft(at_loop)} R(c0,c0)={_ft(at_head)} "
                    f"d_{n + 2}={_ft(seq[n + 2]['loop', 'c0'])}")
        yield _case("noninvariance", f"chain{n + 1}", body)


# --- approximation --------------------------------------------------------------


def suite_approximation(cfg: CheckConfig) -> Iterator[CheckRow]:
    for n in range(cfg.max_depth + 1):
        def body(n=n):
            worst = ZERO
            pairs = 0
            for j in range(cfg.functions):
                rng = case_rng(cfg.seed, "approx", n, j)
                m = random_model(rng, cfg.params)
                approx = Approximator(m)
                d = approx.table(n)
                kind, f = next(nonexpansive_functions(rng, m, d, n, 1))
                phi = approx.approximate_function(f, n, cfg.epsilon)
                _expect(modal.rank(phi) <= n, f"f{j} ({kind}): rank {modal.rank(phi)}")
                vals = approx.values(phi)
                err = max(abs_diff(vals[s], f[s]) for s in m.states)
                _expect(err <= cfg.epsilon, f"f{j} ({kind}): error {_ft(err)}")
                worst = max(worst, err)
                for hi, lo in itertools.permutations(m.states, 2):
                    if f[hi] <= f[lo]:
                        continue
                    pairs += 1
                    delta = cfg.epsilon / 2
                    psi = approx.synth_witness(hi, lo, n, delta)
                    pv = approx.values(psi)
                    gap = abs_diff(pv[hi], pv[lo])
                    v = f[hi] - f[lo]
                    pa = approx.values(approx.pair_approximant(f, hi, lo, n, delta))
                    _expect(pa[lo] == f[lo], f"f{j}: pair ({hi},{lo}) misses f at {lo}")
                    _expect(pa[hi] == f[hi] - max(ZERO, v - gap), f"f{j}: pair ({hi},{lo}) deficit wrong at {hi}")
                    _expect(all(f[lo] <= pa[s] <= f[hi] for s in m.states), f"f{j}: pair ({hi},{lo}) leaves range")
            return f"functions={cfg.functions} pairs={pairs} worst={_ft(worst)}"
        yield _case("approximation", f"depth{n}", body)


SUITES: dict[str, Callable[[CheckConfig], Iterator[CheckRow]]] = {
    "coincidence": suite_coincidence,
    "kantorovich": suite_kantorovich,
    "pseudometric": suite_pseudometric,
    "invariance": suite_invariance,
    "games": suite_games,
    "locality": suite_locality,
    "translation": suite_translation,
    "ef": suite_ef,
    "zero": suite_zero,
    "noninvariance": suite_noninvariance,
    "approximation": suite_approximation,
}


def run_checks(cfg: CheckConfig, suites: Optional[Sequence[str]] = None) -> Iterator[CheckRow]:
    names = list(suites) if suites else list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
    for name in names:
        yield from SUITES[name](cfg)
