"""Command line interface running the experiments of the package.

The interface is available as `python -m mtdsearch` and as the script `mtdsearch`.
Each experiment is a subcommand; results are written as CSV files or printed. The
exit code is zero if all checked invariants held.

.. autosummary::
   :nosignatures:

   create_parser
   main
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from .drivers import mtd_best
from .experiments import (
    COMPARE_COLUMNS,
    GUESS_COLUMNS,
    MEMSWEEP_ALGORITHMS,
    MEMSWEEP_COLUMNS,
    ORDERING_COLUMNS,
    ExperimentSpec,
    generate_positions,
    nondominance_hunt,
    ordering_report,
    read_spec,
    run_compare,
    run_equivalence_suite,
    run_guess_sweep,
    run_memsweep,
    summarize_rows,
    trace_pearl,
)
from .search import algorithm_tags, iterative_deepen, mt
from .sss import sss_star
from .tools.misc import parse_int_range, write_csv

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


def _parse_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _parse_tt_bits(text: str) -> tuple[int | None, ...]:
    """Parse table sizes given as `k`, `lossless`, `a..b`, or a comma separated list."""
    sizes: list[int | None] = []
    for item in _parse_list(text):
        if item.lower() == "lossless":
            sizes.append(None)
            continue
        value = parse_int_range(item)
        if isinstance(value, tuple):
            sizes.extend(range(value[0], value[1] + 1))
        else:
            sizes.append(value)
    return tuple(sizes)


def _parse_ints(text: str) -> list[int]:
    return [int(item) for item in _parse_list(text)]


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the arguments describing an experiment."""
    group = parser.add_argument_group("Experiment")
    group.add_argument("--spec", metavar="JSON", help="Read the experiment from a file")
    group.add_argument(
        "--game", choices=["pearl", "synth", "othello"], default="synth"
    )
    group.add_argument("--positions", metavar="FILE", help="Position file")
    group.add_argument(
        "--synth",
        metavar="LINE",
        default="seed=0 w=4 d=8",
        help="Template of generated synthetic trees",
    )
    group.add_argument(
        "--n-positions", type=int, default=20, help="Number of generated positions"
    )
    group.add_argument("--board-size", type=int, default=6, choices=[4, 6])
    group.add_argument(
        "--algorithms",
        type=_parse_list,
        default=None,
        help=f"Comma separated algorithms out of {', '.join(algorithm_tags())}",
    )
    group.add_argument("--depth", type=int, default=4, help="Final search depth")
    group.add_argument("--step", type=int, default=1, help="Depth increment")
    group.add_argument(
        "--tt-bits",
        type=_parse_tt_bits,
        default=None,
        help="Binary logarithm of the table size, a range a..b, or `lossless`",
    )
    group.add_argument(
        "--tt",
        choices=["lossless"],
        help="Use a table that never loses entries",
    )
    group.add_argument(
        "--first-guess", default="prev", help="Guess policy: value, prev, or prev2"
    )
    group.add_argument("--asp-width", type=int, default=8)
    group.add_argument("--mtd-step", type=int, default=4)
    group.add_argument("--no-history", action="store_true", default=False)
    group.add_argument("--no-tt-move", action="store_true", default=False)
    group.add_argument("--seed", type=int, default=0)
    group.add_argument("--workers", type=int, default=1)
    group.add_argument("--out", metavar="CSV", help="Output file")
    group.add_argument(
        "--progress", action="store_true", default=False, help="Show a progress bar"
    )


def spec_from_args(
    args: argparse.Namespace, *, tt_bits: tuple[int | None, ...] = (18,)
) -> ExperimentSpec:
    """Create the experiment described by parsed command line arguments.

    Args:
        args (:class:`argparse.Namespace`):
            The parsed arguments
        tt_bits (tuple):
            The table sizes used if the arguments do not specify any

    Returns:
        :class:`~mtdsearch.experiments.ExperimentSpec`: The experiment
    """
    if args.spec is not None:
        return read_spec(args.spec)
    if args.tt == "lossless":
        if args.tt_bits is not None:
            _logger.warning("Ignore --tt-bits since a lossless table is requested")
        tt_bits = (None,)
    elif args.tt_bits is not None:
        tt_bits = args.tt_bits
    kwargs: dict[str, Any] = {}
    if args.algorithms is not None:
        kwargs["algorithms"] = tuple(args.algorithms)
    return ExperimentSpec(
        game=args.game,
        positions=args.positions,
        synth=args.synth,
        n_positions=args.n_positions,
        board_size=args.board_size,
        depth=args.depth,
        step=args.step,
        tt_bits=tt_bits,
        guess=args.first_guess,
        asp_width=args.asp_width,
        mtd_step=args.mtd_step,
        use_history=not args.no_history,
        use_tt_move=not args.no_tt_move,
        out=args.out,
        seed=args.seed,
        workers=args.workers,
        **kwargs,
    )


def _emit(spec: ExperimentSpec, rows: Sequence[dict], columns: Sequence[str]) -> None:
    """Print the rows unless they were written to a file."""
    if spec.out is None:
        sys.stdout.write(write_csv(None, rows, columns))
    else:
        _logger.info("Wrote %d row(s) to `%s`", len(rows), spec.out)


def _cmd_compare(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    rows = run_compare(spec, progress=args.progress)
    _emit(spec, [row._asdict() for row in rows], COMPARE_COLUMNS)
    return 0


def _cmd_memsweep(args: argparse.Namespace) -> int:
    spec = spec_from_args(args, tt_bits=tuple(range(4, 17)))
    algorithms = MEMSWEEP_ALGORITHMS if args.algorithms is None else spec.algorithms
    rows = run_memsweep(spec, algorithms=algorithms, progress=args.progress)
    _emit(spec, rows, MEMSWEEP_COLUMNS)
    return 0


def _cmd_guess_sweep(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    rows = run_guess_sweep(spec, args.deltas, progress=args.progress)
    _emit(spec, rows, GUESS_COLUMNS)
    for row in summarize_rows(rows, "delta", ["leaf_evals", "leaf_pct"]):
        _logger.info(
            "delta=%d: mean leaves %.1f (%.1f%% of baseline)",
            row["delta"],
            row["leaf_evals"],
            row["leaf_pct"],
        )
    return 0


def _cmd_ordering(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    rows = ordering_report(spec, algorithm=args.algorithm, progress=args.progress)
    _emit(spec, rows, ORDERING_COLUMNS)
    return 0


def _cmd_hunt(args: argparse.Namespace) -> int:
    report = nondominance_hunt(
        args.seed,
        args.budget,
        branching=args.branching,
        depths=args.depths,
        reorder=not args.static,
        progress=args.progress,
    )
    print(report.describe())
    if report.found:
        print(f"best-first leaves: {','.join(report.sss_trace)}")
        print(f"alpha-beta leaves: {','.join(report.ab_trace)}")
    return 0


def _cmd_pearl(args: argparse.Namespace) -> int:
    report = trace_pearl()
    print("\n".join(report.lines()))
    return 0 if report.passed else 1


def _cmd_oracle_run(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    game = spec.create_game()
    for i, state in enumerate(spec.load_suite(game)):
        result = sss_star(game, state, spec.depth)
        print(f"# position {i}")
        print("\n".join(result.trace_lines()))
    return 0


def _cmd_oracle_equiv(args: argparse.Namespace) -> int:
    results = run_equivalence_suite(
        args.seed,
        args.trees,
        branching=args.branching,
        depth=args.depths,
        progress=args.progress,
    )
    failures = [(config, report) for config, report in results if not report.passed]
    for config, report in failures:
        print(f"{config.to_line()}: {report.describe()}")
    print(f"{len(results) - len(failures)} of {len(results)} trees passed")
    return 1 if failures else 0


def _cmd_search(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    game = spec.create_game()
    for i, state in enumerate(spec.load_suite(game)):
        ctx = spec.create_context(game, spec.tt_bits[0])
        if args.trace_leaves:
            ctx.stats.leaf_trace = []
        if args.algorithm == "mt":
            if args.gamma is None:
                raise ValueError("A single test requires --gamma")
            g = mt(ctx, state, spec.depth, args.gamma)
            kind = "lower" if g >= args.gamma else "upper"
            print(f"position {i}: {kind} bound {g}")
        elif args.algorithm == "mtdbest":
            first = args.gamma if args.gamma is not None else game.evaluate(state)
            best = mtd_best(ctx, state, spec.depth, first, full_output=True)
            print(
                f"position {i}: best move {best.move.ordinal} after {best.mt_calls} "
                f"test(s), bounds {best.bounds}"
            )
        else:
            result = iterative_deepen(
                ctx, state, spec.depth, args.algorithm, step=spec.step, guess=spec.guess
            )
            stats = result.stats
            print(
                f"position {i}: value {result.value} leaves {stats.leaf_evals} "
                f"nodes {stats.total_nodes} tests {stats.mt_calls}"
            )
        if ctx.stats.leaf_trace is not None:
            print(f"  leaves: {','.join(ctx.stats.leaf_trace)}")
    return 0


def _cmd_positions(args: argparse.Namespace) -> int:
    if args.game == "pearl":
        raise ValueError("The example tree has a single position")
    lines = generate_positions(
        args.game,
        args.n_positions,
        seed=args.seed,
        board_size=args.board_size,
        template=args.synth,
    )
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        _logger.info("Wrote %d position(s) to `%s`", len(lines), args.out)
    return 0


def create_parser() -> argparse.ArgumentParser:
    """Create the parser of the command line arguments."""
    parser = argparse.ArgumentParser(
        prog="mtdsearch",
        description="Compare minimax search algorithms based on null-window tests.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", default=False, help="Show progress"
    )
    parser.add_argument(
        "--debug", action="store_true", default=False, help="Show debug output"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("compare", help="Compare node counts of algorithms")
    _add_common_arguments(sub)
    sub.set_defaults(func=_cmd_compare)

    sub = commands.add_parser("memsweep", help="Vary the transposition table size")
    _add_common_arguments(sub)
    sub.set_defaults(func=_cmd_memsweep)

    sub = commands.add_parser("guess-sweep", help="Vary the first guess of MTD(f)")
    _add_common_arguments(sub)
    sub.add_argument(
        "--deltas",
        type=_parse_ints,
        default=[-50, -20, -10, -5, 0, 5, 10, 20, 50],
        help="Comma separated distortions of the first guess",
    )
    sub.set_defaults(func=_cmd_guess_sweep)

    sub = commands.add_parser("ordering", help="Report the quality of move ordering")
    _add_common_arguments(sub)
    sub.add_argument("--algorithm", default="asp-nega")
    sub.set_defaults(func=_cmd_ordering)

    sub = commands.add_parser("hunt", help="Search trees where SSS* loses")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--budget", type=int, default=100_000)
    sub.add_argument("--branching", type=parse_int_range, default=(2, 3))
    sub.add_argument("--depths", type=_parse_ints, default=[2, 3])
    sub.add_argument(
        "--static", action="store_true", default=False, help="Disable reordering"
    )
    sub.add_argument("--progress", action="store_true", default=False)
    sub.set_defaults(func=_cmd_hunt)

    sub = commands.add_parser("pearl", help="Trace the worked example tree")
    sub.set_defaults(func=_cmd_pearl)

    sub = commands.add_parser("oracle", help="Run the open list formulation of SSS*")
    oracle = sub.add_subparsers(dest="oracle_command", required=True)
    run = oracle.add_parser("run", help="Print traces of the open list search")
    _add_common_arguments(run)
    run.set_defaults(func=_cmd_oracle_run)
    equiv = oracle.add_parser("equiv", help="Compare both formulations of SSS*")
    equiv.add_argument("--trees", type=int, default=1000)
    equiv.add_argument("--seed", type=int, default=0)
    equiv.add_argument("--branching", type=parse_int_range, default=(2, 4))
    equiv.add_argument("--depths", type=parse_int_range, default=(2, 6))
    equiv.add_argument("--progress", action="store_true", default=False)
    equiv.set_defaults(func=_cmd_oracle_equiv)

    sub = commands.add_parser("search", help="Search positions with one algorithm")
    _add_common_arguments(sub)
    sub.add_argument(
        "--algorithm",
        default="mtdf",
        help="Registered algorithm, `mt` for a single test, or `mtdbest`",
    )
    sub.add_argument("--gamma", type=int, help="Test value of `mt`")
    sub.add_argument(
        "--trace-leaves",
        action="store_true",
        default=False,
        help="Print the evaluated leaves in order",
    )
    sub.set_defaults(func=_cmd_search)

    sub = commands.add_parser("positions", help="Write a suite of positions")
    _add_common_arguments(sub)
    sub.set_defaults(func=_cmd_positions)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line interface.

    Args:
        argv (list of str, optional):
            The arguments, which are read from :data:`sys.argv` if omitted

    Returns:
        int: The exit code
    """
    args = create_parser().parse_args(argv)
    if args.debug:
        level = logging.DEBUG
    elif args.verbose:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(name)s %(levelname)s: %(message)s")

    try:
        return int(args.func(args))
    except (ValueError, RuntimeError) as err:
        _logger.error("%s: %s", err.__class__.__name__, err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
