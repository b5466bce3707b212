"""Command-line front end: ``fuzzymodal <command> ...``.

Exit status is 0 on success, 1 when a ``check`` suite fails and 2 for usage,
parse and input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import approx, games, metrics, transforms
from .checks import SUITES, CheckConfig, run_checks
from .core import modal
from .core.errors import FuzzyModalError
from .core.model import Model, disjoint_union
from .core.truth import TruthRangeError, format_decimal, format_truth, parse_truth
from .generators import ModelParams
from .semantics import eval_fol, eval_modal, standard_translation
from .syntax import (
    ParseError,
    parse_fol,
    parse_modal,
    parse_model,
    parse_state_function,
    print_fol,
    print_modal,
    print_model,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def show(value: Fraction) -> str:
    """Exact rational, plus the decimal form when it reads differently."""
    exact = format_truth(value)
    dec = format_decimal(value)
    return exact if dec == exact else f"{exact} ({dec})"


def _truth_arg(text: str) -> Fraction:
    try:
        return parse_truth(text)
    except (TruthRangeError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _depth_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _load_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_model(path: str) -> Model:
    text = _load_text(path)
    try:
        return parse_model(text)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _formula_text(args) -> str:
    if args.formula is not None:
        return args.formula
    if args.formula_file is not None:
        return _load_text(args.formula_file)
    raise UsageError("one of --formula or --formula-file is required")


def _add_formula(p):
    p.add_argument("--formula", help="formula text")
    p.add_argument("--formula-file", help="read the formula from a file")


def _add_depth(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--depth", type=_depth_arg, help="game depth n")
    g.add_argument("--unbounded", action="store_true", help="unbounded game (default)")


# --- commands -------------------------------------------------------------------


def cmd_eval(args, out: TextIO) -> int:
    model = _load_model(args.model)
    text = _formula_text(args)
    if args.fol:
        phi = parse_fol(text)
        env = dict(args.assign or [])
        if args.state is not None:
            env.setdefault("x", args.state)
        for s in env.values():
            model.check_state(s)
        value = eval_fol(model, phi, env)
    else:
        phi = parse_modal(text)
        if args.state is None:
            for s in model.states:
                print(f"{s} {show(eval_modal(model, phi, s))}", file=out)
            return EXIT_OK
        value = eval_modal(model, phi, model.check_state(args.state))
    print(show(value), file=out)
    return EXIT_OK


def _unbounded_kantorovich(model: Model):
    d = metrics.kantorovich_distance(model, 0)
    while True:
        nxt = metrics.kantorovich_step(model, d)
        if nxt == d:
            return d
        d = nxt


def _table(model: Model, method: str, depth: Optional[int]):
    if method == "recurrence":
        return metrics.behavioural_distance(model) if depth is None else metrics.depth_distance(model, depth)
    if method == "game":
        return metrics.game_distance_table(model, depth)
    return _unbounded_kantorovich(model) if depth is None else metrics.kantorovich_distance(model, depth)


def _stable_depth(model: Model, a, b) -> int:
    """Least n with d_n(a,b) equal to the unbounded distance."""
    target = metrics.pair_distance(model, a, b)
    n = 0
    while metrics.pair_distance(model, a, b, n) != target:
        n += 1
    return n


def cmd_distance(args, out: TextIO) -> int:
    model = _load_model(args.model)
    depth = args.depth
    if (args.a is None) != (args.b is None):
        raise UsageError("--a and --b go together")
    if args.a is None:
        if args.witness:
            raise UsageError("--witness needs a state pair")
        print(_table(model, args.method, depth).to_text(), file=out)
        return EXIT_OK
    a, b = model.check_state(args.a), model.check_state(args.b)
    if args.method == "recurrence":
        value = metrics.pair_distance(model, a, b, depth)
    elif args.method == "game":
        value = metrics.game_distance_oracle(model, a, b, depth)
    else:
        value = _table(model, "kantorovich", depth)[a, b]
    print(show(value), file=out)
    if args.witness:
        n = depth if depth is not None else _stable_depth(model, a, b)
        gap, phi = metrics.logical_distance_lower(model, a, b, n, args.delta)
        print(f"witness: {print_modal(phi)}", file=out)
        print(f"rank: {modal.rank(phi)}", file=out)
        print(f"gap: {show(gap)}", file=out)
    return EXIT_OK


def _read_script(path: str, winner: str):
    items = []
    for line in _load_text(path).splitlines():
        words = line.split("#", 1)[0].split()
        if not words:
            continue
        if winner == games.DUPLICATOR:
            if len(words) != 2 or words[0] not in (games.LEFT, games.RIGHT):
                raise UsageError(f"script line {line!r}: expected '<left|right> <state>'")
            items.append(games.Move(words[0], words[1]))
        else:
            if len(words) != 1:
                raise UsageError(f"script line {line!r}: expected a reply state")
            items.append(words[0])
    return items


def cmd_game(args, out: TextIO) -> int:
    left = _load_model(args.model)
    right = _load_model(args.right) if args.right else left
    left.check_state(args.a)
    right.check_state(args.b)
    result = games.bisim_wins(left, right, args.a, args.b, args.epsilon, args.depth)
    print(result.winner, file=out)
    if args.trace is not None:
        script = _read_script(args.trace, result.winner)
        transcript = games.game_trace(result, script)
        for i, rnd in enumerate(transcript.rounds, 1):
            (x, y), mv = rnd.config, rnd.spoiler
            src = x if mv.side == games.LEFT else y
            print(f"round {i}: ({x},{y}) Spoiler {mv.side} {src}->{mv.target}, "
                  f"Duplicator -> {rnd.reply}", file=out)
        print(f"end: {transcript.end}", file=out)
    return EXIT_OK


def cmd_check(args, out: TextIO) -> int:
    params = ModelParams(args.max_states, args.atoms, args.density, args.denominator)
    cfg = CheckConfig(
        seed=args.seed,
        models=args.models,
        params=params,
        max_depth=args.max_depth,
        delta=args.delta,
        epsilon=args.epsilon,
        formulas=args.formulas,
        functions=args.functions,
        ef_models=args.ef_models,
    )
    try:
        rows = run_checks(cfg, args.suite)
        counts: dict[str, list[int]] = {}
        for row in rows:
            print(row, file=out, flush=True)
            c = counts.setdefault(row.suite, [0, 0])
            c[0 if row.passed else 1] += 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    failed = sum(c[1] for c in counts.values())
    for suite, (ok, bad) in counts.items():
        print(f"SUMMARY {suite} pass={ok} fail={bad}", file=out)
    print(f"SUMMARY total pass={sum(c[0] for c in counts.values())} fail={failed}", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_transform(args, out: TextIO) -> int:
    model = _load_model(args.model)
    op = args.op

    def need(name):
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"--op {op} needs --{name.replace('_', '-')}")
        return value

    if op == "unravel":
        tree = transforms.unravel(model, need("root"), need("depth"))
        out.write(f"# root {tree.root}\n" + print_model(tree.model))
    elif op == "partial-unravel":
        result, root = transforms.partial_unravel(model, need("root"), need("depth"))
        out.write(f"# root {root}\n" + print_model(result))
    elif op == "restrict":
        centres = [c for c in need("centres").split(",") if c]
        if not centres:
            raise UsageError("--centres needs at least one state")
        out.write(print_model(transforms.neighbourhood_restrict(model, centres, need("radius"))))
    elif op == "quotient":
        q, proj = approx.quotient_by_signature(model, need("depth"))
        lines = [f"# {s} -> {proj[s]}" for s in model.states]
        out.write("\n".join(lines) + "\n" + print_model(q))
    else:
        union, _, _ = disjoint_union(model, _load_model(need("other")))
        out.write(print_model(union))
    return EXIT_OK


def cmd_translate(args, out: TextIO) -> int:
    phi = parse_modal(_formula_text(args))
    print(print_fol(standard_translation(phi, args.var)), file=out)
    return EXIT_OK


def cmd_approximate(args, out: TextIO) -> int:
    model = _load_model(args.model)
    try:
        f = parse_state_function(_load_text(args.fun), model)
    except ParseError as exc:
        raise UsageError(f"{args.fun}:{exc}") from None
    ap = approx.Approximator(model)
    phi = ap.approximate_function(f, args.depth, args.epsilon)
    vals = ap.values(phi)
    err = max(abs(vals[s] - f[s]) for s in model.states)
    print(print_modal(phi), file=out)
    print(f"# rank {modal.rank(phi)}, max error {show(err)}", file=out)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def _assignment(text: str):
    var, sep, state = text.partition("=")
    if not sep or not var or not state:
        raise argparse.ArgumentTypeError(f"expected VAR=STATE, got {text!r}")
    return var, state


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzymodal",
        description="Fuzzy modal logic, behavioural distances and bisimulation games on finite models.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("eval", help="evaluate a formula")
    p.add_argument("--model", required=True)
    _add_formula(p)
    p.add_argument("--state", help="state to evaluate at (modal: all states if omitted; FOL: binds x)")
    p.add_argument("--fol", action="store_true", help="parse and evaluate a first-order formula")
    p.add_argument("--assign", type=_assignment, action="append", metavar="VAR=STATE",
                   help="FOL variable assignment, repeatable")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("distance", help="behavioural distance table or pair value")
    p.add_argument("--model", required=True)
    p.add_argument("--a")
    p.add_argument("--b")
    _add_depth(p)
    p.add_argument("--method", choices=("recurrence", "game", "kantorovich"), default="recurrence")
    p.add_argument("--witness", action="store_true", help="also synthesize a separating formula")
    p.add_argument("--delta", type=_truth_arg, default=metrics.DEFAULT_DELTA,
                   help="witness slack (default 1/100)")
    p.set_defaults(run=cmd_distance)

    p = sub.add_parser("game", help="solve an epsilon-bisimulation game")
    p.add_argument("--model", required=True)
    p.add_argument("--right", help="second model (default: same as --model)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--epsilon", type=_truth_arg, required=True)
    _add_depth(p)
    p.add_argument("--trace", metavar="SCRIPT",
                   help="replay the winning strategy against scripted moves ('-' reads stdin)")
    p.set_defaults(run=cmd_game)

    p = sub.add_parser("check", help="run property suites on random models")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--models", type=_depth_arg, default=200)
    p.add_argument("--suite", action="append", choices=list(SUITES), help="repeatable; default all")
    p.add_argument("--max-states", type=int, default=5)
    p.add_argument("--atoms", type=_depth_arg, default=2)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--denominator", type=int, default=12)
    p.add_argument("--max-depth", type=_depth_arg, default=3)
    p.add_argument("--delta", type=_truth_arg, default=Fraction(1, 100))
    p.add_argument("--epsilon", type=_truth_arg, default=Fraction(1, 20))
    p.add_argument("--formulas", type=_depth_arg, default=5, help="fuzzed formulas per model")
    p.add_argument("--functions", type=_depth_arg, default=50, help="approximated functions per depth")
    p.add_argument("--ef-models", type=_depth_arg, default=30)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("transform", help="emit a transformed model")
    p.add_argument("--op", required=True, choices=("unravel", "partial-unravel", "restrict", "quotient", "union"))
    p.add_argument("--model", required=True)
    p.add_argument("--root")
    p.add_argument("--depth", type=_depth_arg)
    p.add_argument("--centres", help="comma-separated states for restrict")
    p.add_argument("--radius", type=_depth_arg)
    p.add_argument("--other", help="second model for union")
    p.set_defaults(run=cmd_transform)

    p = sub.add_parser("translate", help="standard translation of a modal formula")
    _add_formula(p)
    p.add_argument("--var", default="x", help="free variable (default x)")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("approximate", help="modal formula approximating a state function")
    p.add_argument("--model", required=True)
    p.add_argument("--fun", required=True, help="file of 'fun <state> <truth>' lines")
    p.add_argument("--depth", type=_depth_arg, required=True)
    p.add_argument("--epsilon", type=_truth_arg, required=True)
    p.set_defaults(run=cmd_approximate)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.run(args, out)
    except (UsageError, ParseError, FuzzyModalError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
