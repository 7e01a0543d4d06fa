"""Best-first search with an explicitly sorted list of open states.

This module implements the original formulation of SSS*, which maintains a list
of states `(node, status, merit)` sorted by decreasing merit and repeatedly
transforms the front state by one of six cases. The implementation deliberately
keeps the list as a plain sorted sequence. It is not meant to be fast, but to serve
as a reference against which the depth-first reformulation based on
:func:`~mtdsearch.drivers.mtd_plus_inf` can be checked leaf by leaf.

.. autosummary::
   :nosignatures:

   NodeStatus
   OpenEntry
   StockmanSearch
   SSSResult
   sss_star
   equivalence_check
"""

from __future__ import annotations

import enum
import logging
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

from .games import VALUE_INF, GameBase, GameState, Side
from .tools.misc import format_value
from .transposition import TranspositionTable, TTConfig

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


NodePath = tuple[int, ...]


class GammaCaseError(RuntimeError):
    """Signals that no case of the state transformation applies."""


class NodeStatus(enum.Enum):
    """Status of a state in the open list."""

    LIVE = "L"
    SOLVED = "S"


class OpenEntry(NamedTuple):
    """A state in the open list."""

    path: NodePath
    """tuple: ordinals of the moves leading from the root to the node"""
    status: NodeStatus
    """:class:`NodeStatus`: whether the node is still to be expanded"""
    merit: int
    """int: upper bound on the value of the root via this node"""


@dataclass
class SSSResult:
    """Outcome of a best-first search with an open list."""

    value: int
    """int: the minimax value of the root"""
    leaf_trace: list[str] = field(default_factory=list)
    """list: labels of all evaluated leaves in evaluation order"""
    leaf_values: list[int] = field(default_factory=list)
    """list: the evaluations of the leaves in `leaf_trace`"""
    snapshots: list[list[str]] = field(default_factory=list)
    """list: formatted contents of the open list at the checkpoints"""
    case_counts: Counter = field(default_factory=Counter)
    """:class:`~collections.Counter`: how often each case was applied"""
    max_open: int = 0
    """int: the largest length of the open list"""

    @property
    def leaf_evals(self) -> int:
        """int: number of evaluated leaves"""
        return len(self.leaf_trace)

    def trace_lines(self) -> list[str]:
        """Return the evaluations and snapshots as lines of text."""
        lines = [
            f"EVAL {label} {value}"
            for label, value in zip(self.leaf_trace, self.leaf_values)
        ]
        lines.extend(f"OPEN [{', '.join(snap)}]" for snap in self.snapshots)
        lines.append(f"VALUE {self.value}")
        return lines


class StockmanSearch:
    """State of a best-first search of a fixed-depth game tree.

    Nodes are identified by their path from the root, so transpositions are not
    recognized. The search horizon turns all nodes at depth `depth` into leaves;
    positions without moves are leaves, too.
    """

    def __init__(self, game: GameBase, root: GameState, depth: int):
        """
        Args:
            game (:class:`~mtdsearch.games.GameBase`):
                The game
            root (:class:`~mtdsearch.games.GameState`):
                The root of the search, where MAX must be to move
            depth (int):
                The search horizon
        """
        if root.side != Side.MAX:
            raise ValueError("The open list search requires MAX to move at the root")
        if depth < 0:
            raise ValueError("Depth must be non-negative")
        self.game = game
        self.depth = depth
        self._states: dict[NodePath, GameState] = {(): root}
        self._num_children: dict[NodePath, int] = {}
        self.leaf_trace: list[str] = []
        self.leaf_values: list[int] = []
        self.case_counts: Counter = Counter()

    def state(self, path: NodePath) -> GameState:
        """Return the position belonging to a path."""
        try:
            return self._states[path]
        except KeyError:
            parent = self.state(path[:-1])
            moves = self.game.legal_moves(parent)
            state = self.game._make_child(parent, moves[path[-1]])
            self._states[path] = state
            return state

    def num_children(self, path: NodePath) -> int:
        """Return the number of children within the search horizon."""
        if path not in self._num_children:
            if len(path) >= self.depth:
                count = 0
            else:
                count = len(self.game.legal_moves(self.state(path)))
            self._num_children[path] = count
        return self._num_children[path]

    def is_max(self, path: NodePath) -> bool:
        """Determine whether MAX is to move at a node."""
        return self.state(path).side == Side.MAX

    def has_next(self, path: NodePath) -> bool:
        """Determine whether a node has a brother to its right."""
        return bool(path) and path[-1] + 1 < self.num_children(path[:-1])

    def label(self, path: NodePath) -> str:
        """Return the label of a node used in traces."""
        return self.game.label(self.state(path))

    def format_entry(self, entry: OpenEntry) -> str:
        """Return an entry in the notation `(node,status,merit)`."""
        merit = format_value(entry.merit)
        return f"({self.label(entry.path)},{entry.status.value},{merit})"

    def _insert_sorted(self, open_list: list[OpenEntry], entry: OpenEntry) -> None:
        """Insert a solved leaf in front of all states of lesser merit.

        Among states of equal merit, the entry is placed according to the left-first
        order of the nodes in the tree.
        """
        for i, other in enumerate(open_list):
            if other.merit < entry.merit or (
                other.merit == entry.merit and other.path > entry.path
            ):
                open_list.insert(i, entry)
                return
        open_list.append(entry)

    def apply_gamma(self, open_list: list[OpenEntry]) -> list[OpenEntry]:
        """Transform the front state of the open list.

        Args:
            open_list (list of :class:`OpenEntry`):
                The sorted open list whose first entry is not the solved root

        Returns:
            list of :class:`OpenEntry`: The new open list
        """
        if not open_list:
            raise GammaCaseError("The open list is empty")
        (path, status, merit), rest = open_list[0], list(open_list[1:])

        if status == NodeStatus.SOLVED:
            if not path:
                raise GammaCaseError("The solved root terminates the search")
            parent = path[:-1]
            if not self.is_max(path):
                # case 1: the MAX parent of a solved MIN node is solved
                if not self.is_max(parent):
                    raise GammaCaseError(f"Parent of MIN node {path} is not MAX")
                self.case_counts[1] += 1
                rest = [e for e in rest if e.path[: len(parent)] != parent]
                return [OpenEntry(parent, NodeStatus.SOLVED, merit), *rest]
            if self.has_next(path):
                # case 2: continue with the brother of a solved MAX node
                self.case_counts[2] += 1
                brother = (*parent, path[-1] + 1)
                return [OpenEntry(brother, NodeStatus.LIVE, merit), *rest]
            # case 3: the last MAX child solves its MIN parent
            self.case_counts[3] += 1
            return [OpenEntry(parent, NodeStatus.SOLVED, merit), *rest]

        if self.num_children(path) == 0:
            # case 4: evaluate a leaf
            self.case_counts[4] += 1
            value = self.game.evaluate(self.state(path))
            self.leaf_trace.append(self.label(path))
            self.leaf_values.append(value)
            self._insert_sorted(
                rest, OpenEntry(path, NodeStatus.SOLVED, min(merit, value))
            )
            return rest

        first = (*path, 0)
        if self.is_max(first):
            # case 5: a MIN node is represented by its first child
            self.case_counts[5] += 1
            return [OpenEntry(first, NodeStatus.LIVE, merit), *rest]

        # case 6: a MAX node is replaced by all its children
        self.case_counts[6] += 1
        children = [
            OpenEntry((*path, i), NodeStatus.LIVE, merit)
            for i in range(self.num_children(path))
        ]
        return children + rest


Checkpoints = Literal["passes", "steps", "none"]


def sss_star(
    game: GameBase,
    root: GameState,
    depth: int,
    *,
    checkpoints: Checkpoints = "passes",
) -> SSSResult:
    """Determine the minimax value using the open-list formulation of SSS*.

    Args:
        game (:class:`~mtdsearch.games.GameBase`):
            The game
        root (:class:`~mtdsearch.games.GameState`):
            The root of the search, where MAX must be to move
        depth (int):
            The search horizon
        checkpoints (str):
            When the open list is recorded. `passes` records the list whenever a leaf
            evaluation leaves only solved states, which marks the end of a pass, and
            the final list. `steps` records the list after every transformation and
            `none` records nothing.

    Returns:
        :class:`SSSResult`: The value and the traces of the search
    """
    if checkpoints not in {"passes", "steps", "none"}:
        raise ValueError(f"Unknown checkpoints `{checkpoints}`")
    search = StockmanSearch(game, root, depth)
    open_list = [OpenEntry((), NodeStatus.LIVE, VALUE_INF)]
    result = SSSResult(value=VALUE_INF, max_open=1)

    def snapshot() -> None:
        result.snapshots.append([search.format_entry(e) for e in open_list])

    while not (open_list[0].path == () and open_list[0].status == NodeStatus.SOLVED):
        evals = len(search.leaf_trace)
        open_list = search.apply_gamma(open_list)
        result.max_open = max(result.max_open, len(open_list))
        if checkpoints == "steps":
            snapshot()
        elif checkpoints == "passes" and len(search.leaf_trace) > evals:
            if all(e.status == NodeStatus.SOLVED for e in open_list):
                snapshot()

    if checkpoints == "passes":
        snapshot()
    result.value = open_list[0].merit
    result.leaf_trace = search.leaf_trace
    result.leaf_values = search.leaf_values
    result.case_counts = search.case_counts
    _logger.debug(
        "Open list search: value=%d leaves=%d max_open=%d",
        result.value,
        result.leaf_evals,
        result.max_open,
    )
    return result


@dataclass
class EquivalenceReport:
    """Comparison of the leaves evaluated by the two formulations of SSS*."""

    values: tuple[int, int]
    """tuple: values determined by the open list search and the sequence of tests"""
    traces: tuple[list[str], list[str]]
    """tuple: leaf traces of the open list search and the sequence of tests"""

    @property
    def first_divergence(self) -> int | None:
        """int: index of the first differing leaf or `None` if traces agree"""
        reference, candidate = self.traces
        for i, (a, b) in enumerate(zip(reference, candidate)):
            if a != b:
                return i
        if len(reference) != len(candidate):
            return min(len(reference), len(candidate))
        return None

    @property
    def passed(self) -> bool:
        """bool: whether the values and the leaf traces are identical"""
        return self.values[0] == self.values[1] and self.first_divergence is None

    def describe(self) -> str:
        """Return a short human readable summary."""
        if self.passed:
            return f"PASS value={self.values[0]} leaves={len(self.traces[0])}"
        index = self.first_divergence
        return (
            f"FAIL values={self.values} first divergence at leaf {index}: "
            f"{self.traces[0][index:index + 3]} vs {self.traces[1][index:index + 3]}"
        )


def equivalence_check(
    game: GameBase,
    root: GameState,
    depth: int,
    *,
    table: TranspositionTable | TTConfig | None = None,
) -> EquivalenceReport:
    """Compare the leaves evaluated by SSS* and by a sequence of tests.

    The sequence of memory-enhanced tests starting at +infinity evaluates the same
    leaves in the same order as the open list search when both use the static move
    order and the transposition table never loses information.

    Args:
        game (:class:`~mtdsearch.games.GameBase`):
            The game, whose positions should not contain transpositions
        root (:class:`~mtdsearch.games.GameState`):
            The root of the search, where MAX must be to move
        depth (int):
            The search horizon
        table (:class:`~mtdsearch.transposition.TranspositionTable`, optional):
            The table used by the tests. Uses a lossless table if omitted.

    Returns:
        :class:`EquivalenceReport`: The comparison of both searches
    """
    from .drivers import mtd_plus_inf
    from .search import SearchContext

    if table is None:
        table = TTConfig(log2_entries=None)
    config = table.config if isinstance(table, TranspositionTable) else table
    if not config.lossless:
        warnings.warn("Equivalence only holds for lossless transposition tables")

    reference = sss_star(game, root, depth, checkpoints="none")
    ctx = SearchContext(
        game, table, use_tt_move=False, use_history=False, trace_leaves=True
    )
    value = mtd_plus_inf(ctx, root, depth)
    assert ctx.stats.leaf_trace is not None
    report = EquivalenceReport(
        values=(reference.value, value),
        traces=(reference.leaf_trace, list(ctx.stats.leaf_trace)),
    )
    if not report.passed:
        _logger.warning("Equivalence violated: %s", report.describe())
    return report
