"""Experiments comparing the search algorithms on suites of positions.

The functions in this module run complete experiments described by an
:class:`ExperimentSpec` and return their results as lists of dictionaries, which
can be written to CSV files using :func:`~mtdsearch.tools.misc.write_csv`. All
algorithms of an experiment are given identical resources, i.e., transposition
tables of the same size and the same move ordering.

.. autosummary::
   :nosignatures:

   ExperimentSpec
   ComparisonRow
   run_compare
   run_memsweep
   find_level_off
   run_guess_sweep
   ordering_report
   nondominance_hunt
   trace_pearl
   run_equivalence_suite
   generate_positions
"""

from __future__ import annotations

import dataclasses
import json
import logging
from collections import defaultdict
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal, NamedTuple

import numpy as np

from pde.tools.output import display_progress

from .drivers import MtdState, mtd_plus_inf
from .games import VALUE_INF, GameBase, GameState
from .othello import OthelloGame
from .search import (
    DeepeningResult,
    SearchContext,
    SearchStats,
    algorithm_tags,
    get_algorithm,
    iterative_deepen,
)
from .sss import EquivalenceReport, SSSResult, equivalence_check, sss_star
from .tools.hashing import mix_keys
from .tools.misc import format_value, write_csv
from .transposition import TTConfig, TTStats
from .trees import PearlTree, SynthTreeConfig, SyntheticTree, random_configs

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


DEFAULT_ALGORITHMS = ("ab", "asp-nega", "sss", "dual", "mtdf", "mtdbi", "mtdstep")
"""tuple: the algorithms compared by default"""

MEMSWEEP_ALGORITHMS = ("ab", "sss", "dual")
"""tuple: the algorithms whose memory requirements are compared"""

COMPARE_COLUMNS = [
    "position",
    "algorithm",
    "depth",
    "value",
    "guess",
    "leaf_evals",
    "interior_visits",
    "transposition_hits",
    "total_nodes",
    "distinct_states",
    "mt_calls",
    "researches",
    "tt_probes",
    "tt_hits",
    "tt_stores",
    "tt_evictions",
    "wall_time",
]
"""list: columns of the CSV files written by :func:`run_compare`"""

MEMSWEEP_COLUMNS = [
    "tt_bits",
    "algorithm",
    "leaf_evals",
    "total_nodes",
    "leaf_ratio",
    "total_ratio",
]
"""list: columns of the CSV files written by :func:`run_memsweep`"""

GUESS_COLUMNS = [
    "position",
    "delta",
    "value",
    "leaf_evals",
    "total_nodes",
    "mt_calls",
    "baseline_leaf_evals",
    "baseline_total_nodes",
    "leaf_pct",
    "total_pct",
]
"""list: columns of the CSV files written by :func:`run_guess_sweep`"""

ORDERING_COLUMNS = [
    "ply",
    "cut_nodes",
    "first_move_cutoff_rate",
    "mean_moves_at_cut",
]
"""list: columns of the CSV files written by :func:`ordering_report`"""


class ValueDisagreementError(RuntimeError):
    """Signals that two algorithms determined different minimax values."""


GameName = Literal["pearl", "synth", "othello"]


@dataclass(frozen=True)
class ExperimentSpec:
    """Complete description of an experiment.

    Two experiments with equal specifications produce identical results, apart from
    the measured wall time.
    """

    game: GameName = "synth"
    """str: the game whose positions are searched"""
    positions: str | None = None
    """str: path of a position file; a suite is generated if omitted"""
    synth: str = "seed=0 w=4 d=8"
    """str: template of generated synthetic trees in the position file format"""
    n_positions: int = 20
    """int: number of generated positions"""
    board_size: int = 6
    """int: size of the Othello board"""
    algorithms: tuple[str, ...] = DEFAULT_ALGORITHMS
    """tuple: tags of the compared algorithms"""
    depth: int = 4
    """int: depth of the last iteration"""
    step: int = 1
    """int: depth increment of iterative deepening"""
    tt_bits: tuple[int | None, ...] = (18,)
    """tuple: binary logarithms of the table sizes; `None` denotes a lossless table"""
    guess: str | int = "prev"
    """str or int: first guess policy of the drivers"""
    asp_width: int = 8
    """int: half-width of the aspiration window"""
    mtd_step: int = 4
    """int: step size of the stepping driver"""
    use_history: bool = True
    """bool: whether the history heuristic orders moves"""
    use_tt_move: bool = True
    """bool: whether stored best moves are searched first"""
    out: str | None = None
    """str: path of the CSV file receiving the results"""
    seed: int = 0
    """int: seed of generated suites and Zobrist tables"""
    workers: int = 1
    """int: number of threads searching different positions"""

    def __post_init__(self):
        if self.game not in {"pearl", "synth", "othello"}:
            raise ValueError(f"Unknown game `{self.game}`")
        if not self.algorithms:
            raise ValueError("At least one algorithm is required")
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        known = set(algorithm_tags())
        for tag in self.algorithms:
            if tag not in known:
                raise ValueError(f"Unknown algorithm `{tag}`")
        if self.depth < 1 or self.step < 1:
            raise ValueError("Depth and depth step must be positive")
        if not self.tt_bits:
            raise ValueError("At least one table size is required")
        object.__setattr__(self, "tt_bits", tuple(self.tt_bits))
        for bits in self.tt_bits:
            TTConfig(bits)  # validates the size
        if isinstance(self.guess, str) and self.guess not in {"prev", "prev2"}:
            object.__setattr__(self, "guess", int(self.guess))
        if self.n_positions < 1:
            raise ValueError("At least one position is required")
        if self.workers < 1:
            raise ValueError("At least one worker is required")

    def to_dict(self) -> dict[str, Any]:
        """Return the specification as a JSON-serializable dictionary."""
        data = dataclasses.asdict(self)
        data["algorithms"] = list(self.algorithms)
        data["tt_bits"] = list(self.tt_bits)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentSpec:
        """Create a specification from a dictionary created by :meth:`to_dict`."""
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"Unknown fields {sorted(unknown)}")
        kwargs = dict(data)
        for key in ["algorithms", "tt_bits"]:
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        return cls(**kwargs)

    def to_json(self) -> str:
        """Return the specification in JSON format."""
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ExperimentSpec:
        """Create a specification from its JSON representation."""
        return cls.from_dict(json.loads(text))

    def replace(self, **kwargs) -> ExperimentSpec:
        """Return a copy with some fields changed."""
        return dataclasses.replace(self, **kwargs)

    def create_game(self) -> GameBase:
        """Return the game of the experiment."""
        if self.game == "pearl":
            return PearlTree()
        elif self.game == "othello":
            return OthelloGame(self.board_size, seed=self.seed)
        return SyntheticTree()

    def load_suite(self, game: GameBase | None = None) -> list[GameState]:
        """Return the positions of the experiment.

        Args:
            game (:class:`~mtdsearch.games.GameBase`, optional):
                The game, which is created from the specification if omitted

        Returns:
            list of :class:`~mtdsearch.games.GameState`: The positions
        """
        if game is None:
            game = self.create_game()
        if self.positions is not None:
            return game.load_positions(self.positions)
        if self.game == "pearl":
            return [game.initial_state()]
        lines = generate_positions(
            self.game,
            self.n_positions,
            seed=self.seed,
            board_size=self.board_size,
            template=self.synth,
        )
        return [game.parse_position(line) for line in lines]

    def create_context(self, game: GameBase, tt_bits: int | None) -> SearchContext:
        """Create a search context with the resources of the experiment.

        Args:
            game (:class:`~mtdsearch.games.GameBase`):
                The game
            tt_bits (int):
                The binary logarithm of the table size or `None` for a lossless table

        Returns:
            :class:`~mtdsearch.search.SearchContext`: The fresh context
        """
        return SearchContext(
            game,
            TTConfig(tt_bits),
            use_tt_move=self.use_tt_move,
            use_history=self.use_history,
            asp_width=self.asp_width,
            step_size=self.mtd_step,
        )


def generate_positions(
    game: GameName,
    count: int,
    *,
    seed: int = 0,
    board_size: int = 6,
    plies: tuple[int, int] = (4, 10),
    template: str = "seed=0 w=4 d=8",
) -> list[str]:
    """Generate a reproducible suite of positions in the position file format.

    Args:
        game (str):
            Either `othello` or `synth`
        count (int):
            The number of positions
        seed (int):
            The seed of the suite
        board_size (int):
            The size of the Othello board
        plies (tuple):
            The range of the number of random opening moves of Othello positions
        template (str):
            The configuration line of synthetic trees, whose seed is replaced

    Returns:
        list of str: The lines describing the positions
    """
    if game == "othello":
        othello = OthelloGame(board_size, seed=seed)
        suite = othello.random_suite(count, plies, seed=seed)
        return [" ".join(names) for names in suite]
    elif game == "synth":
        base = SynthTreeConfig.from_line(template)
        return [
            dataclasses.replace(base, seed=mix_keys(seed, base.seed, i)).to_line()
            for i in range(count)
        ]
    raise ValueError(f"Cannot generate positions of game `{game}`")


class ComparisonRow(NamedTuple):
    """Result of one iteration of an algorithm on a position.

    All counts are cumulative over the iterations up to and including `depth`, while
    `mt_calls` and `researches` refer to this iteration only.
    """

    position: int
    algorithm: str
    depth: int
    value: int
    guess: int
    leaf_evals: int
    interior_visits: int
    transposition_hits: int
    total_nodes: int
    distinct_states: int
    mt_calls: int
    researches: int
    tt_probes: int
    tt_hits: int
    tt_stores: int
    tt_evictions: int
    wall_time: float


def _deepen(
    spec: ExperimentSpec,
    ctx: SearchContext,
    state: GameState,
    algorithm: str,
    *,
    guess: Any = None,
) -> tuple[DeepeningResult, list[TTStats]]:
    """Run iterative deepening and record the table statistics of all iterations."""
    search = get_algorithm(algorithm)
    table_stats: list[TTStats] = []

    def tracked(ctx: SearchContext, state: GameState, depth: int, guess: int) -> int:
        value = search(ctx, state, depth, guess)
        table_stats.append(ctx.table.stats())
        return value

    result = iterative_deepen(
        ctx,
        state,
        spec.depth,
        tracked,
        step=spec.step,
        guess=spec.guess if guess is None else guess,
    )
    return result, table_stats


def _comparison_rows(
    position: int,
    algorithm: str,
    result: DeepeningResult,
    table_stats: list[TTStats],
) -> list[ComparisonRow]:
    rows = []
    cumulative = SearchStats()
    wall_time = 0.0
    for iteration, tt in zip(result.iterations, table_stats):
        cumulative.add(iteration.stats)
        wall_time += iteration.wall_time
        rows.append(
            ComparisonRow(
                position=position,
                algorithm=algorithm,
                depth=iteration.depth,
                value=iteration.value,
                guess=iteration.guess,
                leaf_evals=cumulative.leaf_evals,
                interior_visits=cumulative.interior_visits,
                transposition_hits=cumulative.transposition_hits,
                total_nodes=cumulative.total_nodes,
                distinct_states=len(cumulative.distinct_states),
                mt_calls=iteration.stats.mt_calls,
                researches=iteration.stats.researches,
                tt_probes=tt.probes,
                tt_hits=tt.hits,
                tt_stores=tt.stores,
                tt_evictions=tt.evictions,
                wall_time=round(wall_time, 6),
            )
        )
    return rows


def check_agreement(rows: Sequence[ComparisonRow]) -> None:
    """Verify that all algorithms agree on the value of each position and depth.

    Args:
        rows (list of :class:`ComparisonRow`):
            The results to check

    Raises:
        :class:`ValueDisagreementError`: If two values differ
    """
    values: dict[tuple[int, int], dict[str, int]] = defaultdict(dict)
    for row in rows:
        values[row.position, row.depth][row.algorithm] = row.value
    for (position, depth), by_algorithm in values.items():
        if len(set(by_algorithm.values())) > 1:
            raise ValueDisagreementError(
                f"Algorithms disagree on position {position} at depth {depth}: "
                f"{by_algorithm}"
            )


def _map_positions(
    spec: ExperimentSpec,
    func: Callable[[int, GameState], Any],
    suite: Sequence[GameState],
    progress: bool,
) -> list[Any]:
    """Apply a function to all positions and return the results in suite order."""
    tasks = list(enumerate(suite))
    if spec.workers == 1:
        return [
            func(i, state)
            for i, state in display_progress(tasks, total=len(tasks), enabled=progress)
        ]
    with ThreadPoolExecutor(max_workers=spec.workers) as executor:
        futures = [executor.submit(func, i, state) for i, state in tasks]
        return [
            future.result()
            for future in display_progress(
                futures, total=len(futures), enabled=progress
            )
        ]


def run_compare(
    spec: ExperimentSpec, *, progress: bool = False
) -> list[ComparisonRow]:
    """Compare the node counts of algorithms using iterative deepening.

    Every algorithm searches every position with its own fresh context, so all of
    them start with an empty table of the same size.

    Args:
        spec (:class:`ExperimentSpec`):
            The experiment, using the first of its table sizes
        progress (bool):
            Whether to show the progress of the process in a progress bar

    Returns:
        list of :class:`ComparisonRow`: One row for each position, algorithm and
        iteration. The rows are also written to :attr:`ExperimentSpec.out`.
    """
    game = spec.create_game()
    suite = spec.load_suite(game)

    def compare(position: int, state: GameState) -> list[ComparisonRow]:
        rows = []
        for algorithm in spec.algorithms:
            ctx = spec.create_context(game, spec.tt_bits[0])
            result, table_stats = _deepen(spec, ctx, state, algorithm)
            rows.extend(_comparison_rows(position, algorithm, result, table_stats))
        check_agreement(rows)
        return rows

    rows = [row for rs in _map_positions(spec, compare, suite, progress) for row in rs]
    _logger.info(
        "Compared %d algorithm(s) on %d position(s)", len(spec.algorithms), len(suite)
    )
    if spec.out is not None:
        write_csv(spec.out, (row._asdict() for row in rows), COMPARE_COLUMNS)
    return rows


def _check_ascending(tt_bits: Sequence[int | None]) -> None:
    sizes = [np.inf if bits is None else bits for bits in tt_bits]
    if any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"Table sizes {list(tt_bits)} are not ascending")


def run_memsweep(
    spec: ExperimentSpec,
    *,
    algorithms: Sequence[str] = MEMSWEEP_ALGORITHMS,
    progress: bool = False,
) -> list[dict[str, Any]]:
    """Measure the influence of the table size on the node counts.

    Every algorithm searches the whole suite with iterative deepening for all table
    sizes. The counts are summed over the suite and compared to Alpha-Beta with the
    same table size.

    Args:
        spec (:class:`ExperimentSpec`):
            The experiment, whose table sizes must be ascending
        algorithms (list of str):
            The algorithms, which must include `ab`
        progress (bool):
            Whether to show the progress of the process in a progress bar

    Returns:
        list of dict: One row for each table size and algorithm
    """
    _check_ascending(spec.tt_bits)
    if "ab" not in algorithms:
        raise ValueError("The memory sweep requires the algorithm `ab`")
    game = spec.create_game()
    suite = spec.load_suite(game)

    def sweep(position: int, state: GameState) -> dict[tuple, tuple[int, int]]:
        counts = {}
        for bits in spec.tt_bits:
            rows = []
            for algorithm in algorithms:
                ctx = spec.create_context(game, bits)
                result, table_stats = _deepen(spec, ctx, state, algorithm)
                rows.extend(_comparison_rows(position, algorithm, result, table_stats))
                counts[bits, algorithm] = (
                    result.stats.leaf_evals,
                    result.stats.total_nodes,
                )
            check_agreement(rows)
        return counts

    totals: dict[tuple, np.ndarray] = defaultdict(lambda: np.zeros(2, int))
    for counts in _map_positions(spec, sweep, suite, progress):
        for key, value in counts.items():
            totals[key] += value

    result = []
    for bits in spec.tt_bits:
        leaf_ab, total_ab = totals[bits, "ab"]
        for algorithm in algorithms:
            leaf, total = totals[bits, algorithm]
            result.append(
                {
                    "tt_bits": TTConfig(bits).label,
                    "algorithm": algorithm,
                    "leaf_evals": int(leaf),
                    "total_nodes": int(total),
                    "leaf_ratio": round(leaf / leaf_ab, 6),
                    "total_ratio": round(total / total_ab, 6),
                }
            )

    for algorithm in algorithms:
        ratios = [r["leaf_ratio"] for r in result if r["algorithm"] == algorithm]
        bits = find_level_off(list(spec.tt_bits), ratios)
        _logger.info("Leaf ratio of `%s` levels off at table size %s", algorithm, bits)
    if spec.out is not None:
        write_csv(spec.out, result, MEMSWEEP_COLUMNS)
    return result


def find_level_off(
    tt_bits: Sequence[int | None], ratios: Sequence[float], rtol: float = 0.02
) -> int | None:
    """Determine the table size beyond which a ratio does not change any more.

    Args:
        tt_bits (list of int):
            The ascending table sizes
        ratios (list of float):
            The ratios measured for the respective sizes
        rtol (float):
            The largest relative change between successive sizes considered constant

    Returns:
        int: The smallest size from which on all successive changes are below `rtol`.
        `None` is returned if the ratio still changes between the two largest sizes.
    """
    if len(tt_bits) != len(ratios):
        raise ValueError("Sizes and ratios must have equal length")
    if not ratios:
        return None
    index = len(ratios) - 1
    while index > 0:
        previous, current = ratios[index - 1], ratios[index]
        if abs(current - previous) > rtol * abs(previous):
            break
        index -= 1
    if index == len(ratios) - 1 and len(ratios) > 1:
        return None
    return tt_bits[index]


def _distorted_guess(
    final_depth: int, value: int, delta: int, static_value: int
) -> Callable[[int, Sequence[int]], int]:
    """Guess the previous value in early iterations and a distorted value last."""

    def guess(depth: int, values: Sequence[int]) -> int:
        if depth == final_depth:
            return min(max(value + delta, -VALUE_INF + 1), VALUE_INF)
        return values[-1] if values else static_value

    return guess


def run_guess_sweep(
    spec: ExperimentSpec,
    deltas: Sequence[int],
    *,
    algorithm: str = "mtdf",
    baseline: str = "asp-nega",
    progress: bool = False,
) -> list[dict[str, Any]]:
    """Measure the influence of the first guess on the size of the search tree.

    For each position, the baseline algorithm first determines the minimax value
    `f`. The driver is then run with iterative deepening, where all iterations but
    the last use the value of the previous iteration as guess and the last iteration
    uses `f + delta`.

    Args:
        spec (:class:`ExperimentSpec`):
            The experiment
        deltas (list of int):
            The distortions of the first guess
        algorithm (str):
            The driver receiving the distorted guess
        baseline (str):
            The algorithm relative to which tree sizes are reported
        progress (bool):
            Whether to show the progress of the process in a progress bar

    Returns:
        list of dict: One row for each position and distortion
    """
    if not deltas:
        raise ValueError("At least one distortion is required")
    game = spec.create_game()
    suite = spec.load_suite(game)

    def sweep(position: int, state: GameState) -> list[dict[str, Any]]:
        ctx = spec.create_context(game, spec.tt_bits[0])
        reference, _ = _deepen(spec, ctx, state, baseline)
        value = reference.value
        base_leaf = reference.stats.leaf_evals
        base_total = reference.stats.total_nodes

        rows = []
        for delta in deltas:
            guess = _distorted_guess(
                reference.depth, value, delta, game.evaluate(state)
            )
            ctx = spec.create_context(game, spec.tt_bits[0])
            result, _ = _deepen(spec, ctx, state, algorithm, guess=guess)
            if result.value != value:
                raise ValueDisagreementError(
                    f"`{algorithm}` found {result.value} instead of {value} on "
                    f"position {position} with delta {delta}"
                )
            rows.append(
                {
                    "position": position,
                    "delta": delta,
                    "value": value,
                    "leaf_evals": result.stats.leaf_evals,
                    "total_nodes": result.stats.total_nodes,
                    "mt_calls": result.iterations[-1].stats.mt_calls,
                    "baseline_leaf_evals": base_leaf,
                    "baseline_total_nodes": base_total,
                    "leaf_pct": round(100 * result.stats.leaf_evals / base_leaf, 3),
                    "total_pct": round(100 * result.stats.total_nodes / base_total, 3),
                }
            )
        return rows

    rows = [row for rs in _map_positions(spec, sweep, suite, progress) for row in rs]
    if spec.out is not None:
        write_csv(spec.out, rows, GUESS_COLUMNS)
    return rows


def summarize_rows(
    rows: Sequence[dict[str, Any]], key: str, columns: Sequence[str]
) -> list[dict[str, Any]]:
    """Average columns of rows sharing the same value of a key column.

    Args:
        rows (list of dict):
            The rows, e.g., returned by :func:`run_guess_sweep`
        key (str):
            The column identifying groups of rows
        columns (list of str):
            The numerical columns that are averaged

    Returns:
        list of dict: One row for each group in order of first appearance
    """
    groups: dict[Any, list[dict[str, Any]]] = {}
    for row in rows:
        groups.setdefault(row[key], []).append(row)
    return [
        {
            key: value,
            "count": len(group),
            **{col: float(np.mean([row[col] for row in group])) for col in columns},
        }
        for value, group in groups.items()
    ]


def ordering_report(
    spec: ExperimentSpec,
    *,
    algorithm: str = "asp-nega",
    progress: bool = False,
) -> list[dict[str, Any]]:
    """Determine the quality of the move ordering by the distance from the root.

    Args:
        spec (:class:`ExperimentSpec`):
            The experiment, whose options determine the ordering heuristics
        algorithm (str):
            The algorithm used for the iterative deepening
        progress (bool):
            Whether to show the progress of the process in a progress bar

    Returns:
        list of dict: One row for each ply with cut nodes, pooling the cut nodes of
        the last iteration of all positions
    """
    game = spec.create_game()
    suite = spec.load_suite(game)

    def measure(position: int, state: GameState) -> SearchStats:
        ctx = spec.create_context(game, spec.tt_bits[0])
        result, _ = _deepen(spec, ctx, state, algorithm)
        return result.iterations[-1].stats

    pooled = SearchStats()
    for stats in _map_positions(spec, measure, suite, progress):
        pooled.add(stats)

    rates = pooled.first_move_cutoff_rate()
    means = pooled.mean_moves_at_cut()
    rows = [
        {
            "ply": ply,
            "cut_nodes": int(pooled.cut_nodes[ply]),
            "first_move_cutoff_rate": round(float(rates[ply]), 6),
            "mean_moves_at_cut": round(float(means[ply]), 6),
        }
        for ply in np.flatnonzero(pooled.cut_nodes)
    ]
    if spec.out is not None:
        write_csv(spec.out, rows, ORDERING_COLUMNS)
    return rows


@dataclass
class HuntReport:
    """Result of the search for a tree where best-first search loses."""

    seed: int
    trees_tried: int
    config: SynthTreeConfig | None = None
    """:class:`~mtdsearch.trees.SynthTreeConfig`: the tree found, if any"""
    sss_leaves: int = 0
    ab_leaves: int = 0
    sss_trace: list[str] = field(default_factory=list)
    ab_trace: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        """bool: whether a counterexample was found"""
        return self.config is not None

    def describe(self) -> str:
        """Return a short human readable summary."""
        if not self.found:
            return f"No counterexample among {self.trees_tried} trees"
        assert self.config is not None
        return (
            f"Tree `{self.config.to_line()}` (#{self.trees_tried}): best-first search "
            f"evaluates {self.sss_leaves} leaves, Alpha-Beta {self.ab_leaves}"
        )


def _hunt_leaves(
    config: SynthTreeConfig, depths: Sequence[int], algorithm: str, reorder: bool
) -> SearchStats:
    game = SyntheticTree(config)
    ctx = SearchContext(
        game,
        TTConfig(log2_entries=None),
        use_tt_move=reorder,
        use_history=False,
        trace_leaves=True,
    )
    result = iterative_deepen(
        ctx, game.initial_state(), depths[-1], algorithm, depths=depths
    )
    return result.stats


def nondominance_hunt(
    seed: int,
    budget: int,
    *,
    branching: int | tuple[int, int] = (2, 3),
    depths: Sequence[int] = (2, 3),
    reorder: bool = True,
    progress: bool = False,
) -> HuntReport:
    """Search for a tree where iterative deepening SSS* evaluates more leaves.

    Both the sequence of tests starting at +infinity and Alpha-Beta search the same
    random trees with iterative deepening and lossless tables. With dynamic move
    ordering, stored best moves of shallow iterations are searched first, which can
    make the best-first algorithm evaluate more leaves than Alpha-Beta.

    Args:
        seed (int):
            The seed of the random trees
        budget (int):
            The maximal number of trees
        branching (int or tuple):
            The branching factor of the trees
        depths (list of int):
            The depths of the iterations
        reorder (bool):
            Whether stored best moves are searched first
        progress (bool):
            Whether to show the progress of the process in a progress bar

    Returns:
        :class:`HuntReport`: The first counterexample or the number of trees tried
    """
    if budget < 1:
        raise ValueError("Budget must be positive")
    if not depths:
        raise ValueError("At least one depth is required")
    configs = random_configs(seed, budget, branching=branching, depth=depths[-1])
    for i, config in enumerate(
        display_progress(configs, total=budget, enabled=progress), 1
    ):
        sss = _hunt_leaves(config, depths, "sss", reorder)
        ab = _hunt_leaves(config, depths, "ab", reorder)
        if sss.leaf_evals > ab.leaf_evals:
            report = HuntReport(
                seed=seed,
                trees_tried=i,
                config=config,
                sss_leaves=sss.leaf_evals,
                ab_leaves=ab.leaf_evals,
                sss_trace=list(sss.leaf_trace or []),
                ab_trace=list(ab.leaf_trace or []),
            )
            _logger.info(report.describe())
            return report
    report = HuntReport(seed=seed, trees_tried=budget)
    _logger.info(report.describe())
    return report


EXPECTED_PEARL_VALUE = 35
EXPECTED_PEARL_MT_RETURNS = [41, 36, 35, 35]
EXPECTED_PEARL_LEAVES = ["e", "g", "k", "m", "n", "o", "s", "t"]
EXPECTED_PEARL_FIRST_OPEN = ["(e,S,41)", "(m,S,36)", "(k,S,34)", "(g,S,12)"]


@dataclass
class PearlTraceReport:
    """Traces of both formulations of SSS* on the worked example tree."""

    value: int
    mt_returns: list[int]
    leaf_order: list[str]
    pass_bounds: list[list[str]]
    """list: stored bounds of all nodes after each pass"""
    sss: SSSResult
    mismatches: list[str]

    @property
    def passed(self) -> bool:
        """bool: whether all traces agree with the expected ones"""
        return not self.mismatches

    def lines(self) -> list[str]:
        """Return the report as lines of text."""
        lines = []
        for i, (returns, bounds) in enumerate(zip(self.mt_returns, self.pass_bounds)):
            lines.append(f"pass {i + 1}: g={returns} stored: {' '.join(bounds)}")
            if i < len(self.sss.snapshots):
                lines.append(f"        OPEN [{', '.join(self.sss.snapshots[i])}]")
        lines.append(f"leaves (tests):     {','.join(self.leaf_order)}")
        lines.append(f"leaves (open list): {','.join(self.sss.leaf_trace)}")
        lines.append(f"value: {self.value}")
        lines.extend(f"MISMATCH {m}" for m in self.mismatches)
        lines.append("PASS" if self.passed else "FAIL")
        return lines


def trace_pearl() -> PearlTraceReport:
    """Trace both formulations of SSS* on the worked example tree.

    Returns:
        :class:`PearlTraceReport`: The traces and all deviations from the expected
        traces
    """
    game = PearlTree()
    root = game.initial_state()
    ctx = SearchContext(
        game,
        TTConfig(log2_entries=None),
        use_tt_move=False,
        use_history=False,
        trace_leaves=True,
    )
    nodes = list(game.iter_nodes())
    pass_bounds: list[list[str]] = []

    def record(state: MtdState) -> None:
        bounds = []
        for node in nodes:
            entry = ctx.table._read(game.state_key(node))
            if entry is not None:
                lower = format_value(entry.f_minus)
                upper = format_value(entry.f_plus)
                bounds.append(f"{game.label(node)}[{lower},{upper}]")
        pass_bounds.append(bounds)

    value, mtd_state = mtd_plus_inf(ctx, root, 4, full_output=True, callback=record)
    sss = sss_star(game, root, 4)
    report = PearlTraceReport(
        value=value,
        mt_returns=[g for _, g in mtd_state.passes],
        leaf_order=list(ctx.stats.leaf_trace or []),
        pass_bounds=pass_bounds,
        sss=sss,
        mismatches=[],
    )

    def compare(name: str, actual: Any, expected: Any) -> None:
        if actual != expected:
            report.mismatches.append(f"{name}: expected {expected}, got {actual}")

    compare("value", value, EXPECTED_PEARL_VALUE)
    compare("open list value", sss.value, EXPECTED_PEARL_VALUE)
    compare("test results", report.mt_returns, EXPECTED_PEARL_MT_RETURNS)
    compare("leaf order of tests", report.leaf_order, EXPECTED_PEARL_LEAVES)
    compare("leaf order of open list", sss.leaf_trace, EXPECTED_PEARL_LEAVES)
    compare("first open list", sss.snapshots[0], EXPECTED_PEARL_FIRST_OPEN)
    for mismatch in report.mismatches:
        _logger.error("Trace mismatch: %s", mismatch)
    return report


def run_equivalence_suite(
    seed: int,
    n_trees: int,
    *,
    branching: int | tuple[int, int] = (2, 4),
    depth: int | tuple[int, int] = (2, 6),
    progress: bool = False,
) -> list[tuple[SynthTreeConfig, EquivalenceReport]]:
    """Compare both formulations of SSS* on random trees without transpositions.

    Args:
        seed (int):
            The seed of the random trees
        n_trees (int):
            The number of trees
        branching (int or tuple):
            The branching factor of the trees
        depth (int or tuple):
            The depth of the trees
        progress (bool):
            Whether to show the progress of the process in a progress bar

    Returns:
        list: The configuration and the comparison for each tree
    """
    results = []
    configs = random_configs(seed, n_trees, branching=branching, depth=depth)
    for config in display_progress(configs, total=n_trees, enabled=progress):
        game = SyntheticTree(config)
        report = equivalence_check(game, game.initial_state(), config.depth)
        results.append((config, report))
    failures = sum(not report.passed for _, report in results)
    _logger.info("Equivalence held on %d of %d trees", n_trees - failures, n_trees)
    return results


def read_spec(path: str | Path) -> ExperimentSpec:
    """Read an experiment specification from a JSON file."""
    return ExperimentSpec.from_json(Path(path).read_text(encoding="utf-8"))
