"""Depth-first search engines sharing a transposition table.

All engines are formulated in the negamax frame internally, i.e., values are
measured from the perspective of the player to move. The public functions accept
and return values from the perspective of the MAX player, and the transposition
table stores bounds in this frame, too.

.. autosummary::
   :nosignatures:

   SearchStats
   Window
   SearchContext
   alpha_beta
   mt
   negascout
   aspiration_negascout
   order_moves
   iterative_deepen
   register_algorithm
   get_algorithm
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Hashable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .games import MAX_DEPTH, VALUE_INF, GameBase, GameState, Move, Side
from .transposition import Bound, BoundsEntry, TranspositionTable, TTConfig

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


MAX_PLY = 64
"""int: number of plies for which move ordering statistics are collected"""


@dataclass
class SearchStats:
    """Counters collected during searches.

    The per-ply arrays are indexed by the distance from the root of the search.
    """

    leaf_evals: int = 0
    interior_visits: int = 0
    transposition_hits: int = 0
    mt_calls: int = 0
    researches: int = 0
    cut_nodes: np.ndarray = field(default_factory=lambda: np.zeros(MAX_PLY, int))
    first_move_cutoffs: np.ndarray = field(
        default_factory=lambda: np.zeros(MAX_PLY, int)
    )
    moves_tried_at_cut: np.ndarray = field(
        default_factory=lambda: np.zeros(MAX_PLY, int)
    )
    leaf_trace: list[str] | None = None
    visit_trace: list[int] | None = None
    distinct_states: set[int] = field(default_factory=set)

    @property
    def total_nodes(self) -> int:
        """int: number of leaves, interior nodes, and transposition cutoffs"""
        return self.leaf_evals + self.interior_visits + self.transposition_hits

    def record_cutoff(self, ply: int, moves_tried: int) -> None:
        """Register a cutoff after trying a number of moves at a node."""
        ply = min(ply, MAX_PLY - 1)
        self.cut_nodes[ply] += 1
        self.moves_tried_at_cut[ply] += moves_tried
        if moves_tried == 1:
            self.first_move_cutoffs[ply] += 1

    def first_move_cutoff_rate(self) -> np.ndarray:
        """Return the fraction of cut nodes where the first move caused the cutoff.

        Returns:
            :class:`~numpy.ndarray`: The rate for each ply, which is `nan` for plies
            without cut nodes
        """
        with np.errstate(invalid="ignore", divide="ignore"):
            return self.first_move_cutoffs / self.cut_nodes  # type: ignore

    def mean_moves_at_cut(self) -> np.ndarray:
        """Return the mean number of moves tried at cut nodes for each ply."""
        with np.errstate(invalid="ignore", divide="ignore"):
            return self.moves_tried_at_cut / self.cut_nodes  # type: ignore

    def add(self, other: SearchStats) -> None:
        """Accumulate the counters of another instance into this one."""
        self.leaf_evals += other.leaf_evals
        self.interior_visits += other.interior_visits
        self.transposition_hits += other.transposition_hits
        self.mt_calls += other.mt_calls
        self.researches += other.researches
        self.cut_nodes += other.cut_nodes
        self.first_move_cutoffs += other.first_move_cutoffs
        self.moves_tried_at_cut += other.moves_tried_at_cut
        if self.leaf_trace is not None and other.leaf_trace is not None:
            self.leaf_trace.extend(other.leaf_trace)
        if self.visit_trace is not None and other.visit_trace is not None:
            self.visit_trace.extend(other.visit_trace)
        self.distinct_states |= other.distinct_states

    def fresh(self) -> SearchStats:
        """Return empty statistics that trace the same quantities."""
        return SearchStats(
            leaf_trace=None if self.leaf_trace is None else [],
            visit_trace=None if self.visit_trace is None else [],
        )

    def copy(self) -> SearchStats:
        """Return an independent copy."""
        result = self.fresh()
        result.add(self)
        return result

    def to_dict(self) -> dict[str, int]:
        """Return the scalar counters."""
        return {
            "leaf_evals": self.leaf_evals,
            "interior_visits": self.interior_visits,
            "transposition_hits": self.transposition_hits,
            "total_nodes": self.total_nodes,
            "distinct_states": len(self.distinct_states),
            "mt_calls": self.mt_calls,
            "researches": self.researches,
        }


class Window(NamedTuple):
    """Search window `(alpha, beta)` in the frame of the MAX player."""

    alpha: int
    beta: int

    @classmethod
    def full(cls) -> Window:
        """Return the window containing all evaluations."""
        return cls(-VALUE_INF, VALUE_INF)

    @classmethod
    def null(cls, gamma: int) -> Window:
        """Return the null window testing whether a value reaches `gamma`."""
        return cls(gamma - 1, gamma)

    def check(self) -> Window:
        """Verify the window and return it."""
        if not self.alpha < self.beta:
            raise ValueError(f"Window requires alpha < beta, got {tuple(self)}")
        if self.alpha < -VALUE_INF or self.beta > VALUE_INF:
            raise ValueError(f"Window {tuple(self)} exceeds the value range")
        return self


WindowLike = Window | tuple[int, int]


class SearchContext:
    """State shared by the searches of one position.

    The context bundles the game, the transposition table, the scores of the history
    heuristic, and the statistics. Contexts must not be shared by concurrent
    searches, but independent contexts can be used in parallel.
    """

    def __init__(
        self,
        game: GameBase,
        table: TranspositionTable | TTConfig | None = None,
        *,
        use_tt_move: bool = True,
        use_history: bool = True,
        asp_width: int = 8,
        step_size: int = 4,
        trace_leaves: bool = False,
        trace_visits: bool = False,
    ):
        """
        Args:
            game (:class:`~mtdsearch.games.GameBase`):
                The game being searched
            table (:class:`~mtdsearch.transposition.TranspositionTable`):
                The transposition table or its configuration. A table with the
                default configuration is created if omitted.
            use_tt_move (bool):
                Whether the best move stored in the table is searched first
            use_history (bool):
                Whether the remaining moves are ordered by the history heuristic
            asp_width (int):
                Half-width of the window of the aspiration search
            step_size (int):
                Size of the steps of the stepping driver
            trace_leaves (bool):
                Whether the labels of all evaluated leaves are recorded
            trace_visits (bool):
                Whether the keys of all visited nodes are recorded
        """
        if isinstance(table, TranspositionTable):
            self.table = table
        else:
            self.table = TranspositionTable(table)
        if asp_width <= 0:
            raise ValueError("Aspiration width must be positive")
        if step_size < 1:
            raise ValueError("Step size must be at least 1")
        self.game = game
        self.use_tt_move = use_tt_move
        self.use_history = use_history
        self.asp_width = asp_width
        self.step_size = step_size
        self.history: dict[tuple[Side, Hashable], int] = {}
        self.stats = SearchStats(
            leaf_trace=[] if trace_leaves else None,
            visit_trace=[] if trace_visits else None,
        )

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(game={self.game}, table={self.table}, "
            f"use_tt_move={self.use_tt_move}, use_history={self.use_history})"
        )

    def copy(self) -> SearchContext:
        """Return a context with copies of the table, the history and the stats."""
        result = SearchContext(
            self.game,
            self.table.copy(),
            use_tt_move=self.use_tt_move,
            use_history=self.use_history,
            asp_width=self.asp_width,
            step_size=self.step_size,
        )
        result.history = dict(self.history)
        result.stats = self.stats.copy()
        return result

    def age_history(self) -> None:
        """Halve all history scores, which is done between iterations."""
        self.history = {k: v // 2 for k, v in self.history.items() if v > 1}

    def _order_moves(
        self, state: GameState, moves: list[Move], tt_move: int | None
    ) -> list[Move]:
        """Order moves given the best move from the transposition table."""
        if self.use_history and self.history:
            game, side, history = self.game, state.side, self.history

            def score(move: Move) -> tuple[int, int]:
                feature = game.move_feature(state, move)
                return -history.get((side, feature), 0), move.ordinal

            ordered = sorted(moves, key=score)
        else:
            ordered = list(moves)
        if self.use_tt_move and tt_move is not None:
            if 0 <= tt_move < len(moves):
                first = moves[tt_move]
                ordered.remove(first)
                ordered.insert(0, first)
            else:
                _logger.warning("Ignore stale table move %d", tt_move)
        return ordered

    def _reward(self, state: GameState, move: Move, depth: int) -> None:
        """Increase the history score of a move that caused a cutoff."""
        if self.use_history:
            feature = (state.side, self.game.move_feature(state, move))
            bonus = 1 << min(depth, 62)
            self.history[feature] = self.history.get(feature, 0) + bonus

    def _enter(self, key: int) -> None:
        """Register the visit of a node."""
        stats = self.stats
        stats.distinct_states.add(key)
        if stats.visit_trace is not None:
            stats.visit_trace.append(key)

    def _evaluate_leaf(
        self, state: GameState, key: int, depth: int, terminal: bool
    ) -> int:
        """Evaluate a leaf, store its exact value and return it in the MAX frame."""
        value = self.game.evaluate(state)
        stats = self.stats
        stats.leaf_evals += 1
        if stats.leaf_trace is not None:
            stats.leaf_trace.append(self.game.label(state))
        # decided games stay valid at any depth but rank as leaves in their slot
        self.table.store_exact(
            key, MAX_DEPTH if terminal else depth, value, draft=depth
        )
        return value

    def _store(
        self,
        key: int,
        depth: int,
        color: int,
        g: int,
        alpha: int,
        beta: int,
        best: Move | None,
    ) -> None:
        """Store the result `g` of a search with window `(alpha, beta)`.

        All values are given in the negamax frame of the player `color`.
        """
        best_move = best.ordinal if best is not None and g > alpha else None
        if g <= alpha:  # fail low: upper bound in the negamax frame
            kind = Bound.UPPER if color > 0 else Bound.LOWER
            self.table.store(key, depth, kind, color * g, best_move)
        elif g >= beta:  # fail high: lower bound in the negamax frame
            kind = Bound.LOWER if color > 0 else Bound.UPPER
            self.table.store(key, depth, kind, color * g, best_move)
        else:
            self.table.store_exact(key, depth, color * g, best_move)

    @staticmethod
    def _bounds(entry: BoundsEntry, color: int) -> tuple[int, int]:
        """Return the bounds of an entry in the negamax frame of `color`."""
        if color > 0:
            return entry.f_minus, entry.f_plus
        return -entry.f_plus, -entry.f_minus

    def _search(
        self, state: GameState, depth: int, alpha: int, beta: int, ply: int
    ) -> int:
        """Alpha-Beta search with storage in the negamax frame."""
        key = self.game.state_key(state)
        self._enter(key)
        color = int(state.side)

        entry = self.table.probe(key)
        tt_move = None
        if entry is not None:
            if entry.depth >= depth:
                lower, upper = self._bounds(entry, color)
                if lower >= beta or upper <= alpha or lower == upper:
                    self.stats.transposition_hits += 1
                    return lower if lower >= beta or lower == upper else upper
            tt_move = entry.best_move

        moves = self.game.legal_moves(state)
        if depth == 0 or not moves:
            return color * self._evaluate_leaf(state, key, depth, not moves)

        self.stats.interior_visits += 1
        g, best, a = -VALUE_INF, None, alpha
        for tried, move in enumerate(self._order_moves(state, moves, tt_move), 1):
            child = self.game._make_child(state, move)
            value = -self._search(child, depth - 1, -beta, -a, ply + 1)
            if value > g:
                g, best = value, move
            if g >= beta:
                self.stats.record_cutoff(ply, tried)
                self._reward(state, move, depth)
                break
            a = max(a, g)

        self._store(key, depth, color, g, alpha, beta, best)
        return g

    def _mt(self, state: GameState, depth: int, gamma: int, ply: int) -> int:
        """Memory-enhanced test in the negamax frame.

        The search tests whether the value reaches `gamma`, which is the same as
        searching with the null window `(gamma - 1, gamma)`.
        """
        key = self.game.state_key(state)
        self._enter(key)
        color = int(state.side)

        entry = self.table.probe(key)
        tt_move = None
        if entry is not None:
            if entry.depth >= depth:
                lower, upper = self._bounds(entry, color)
                if lower >= gamma:
                    self.stats.transposition_hits += 1
                    return lower
                if upper < gamma:
                    self.stats.transposition_hits += 1
                    return upper
            tt_move = entry.best_move

        moves = self.game.legal_moves(state)
        if depth == 0 or not moves:
            return color * self._evaluate_leaf(state, key, depth, not moves)

        self.stats.interior_visits += 1
        g, best = -VALUE_INF, None
        for tried, move in enumerate(self._order_moves(state, moves, tt_move), 1):
            child = self.game._make_child(state, move)
            value = -self._mt(child, depth - 1, 1 - gamma, ply + 1)
            if value > g:
                g, best = value, move
            if g >= gamma:
                self.stats.record_cutoff(ply, tried)
                self._reward(state, move, depth)
                break

        self._store(key, depth, color, g, gamma - 1, gamma, best)
        return g

    def _negascout(
        self, state: GameState, depth: int, alpha: int, beta: int, ply: int
    ) -> int:
        """NegaScout search with storage in the negamax frame."""
        key = self.game.state_key(state)
        self._enter(key)
        color = int(state.side)

        entry = self.table.probe(key)
        tt_move = None
        if entry is not None:
            if entry.depth >= depth:
                lower, upper = self._bounds(entry, color)
                if lower >= beta or upper <= alpha or lower == upper:
                    self.stats.transposition_hits += 1
                    return lower if lower >= beta or lower == upper else upper
            tt_move = entry.best_move

        moves = self.game.legal_moves(state)
        if depth == 0 or not moves:
            return color * self._evaluate_leaf(state, key, depth, not moves)

        self.stats.interior_visits += 1
        g, best, a = -VALUE_INF, None, alpha
        for tried, move in enumerate(self._order_moves(state, moves, tt_move), 1):
            child = self.game._make_child(state, move)
            if tried == 1:
                value = -self._negascout(child, depth - 1, -beta, -a, ply + 1)
            else:
                # scout the move with a null window and re-search if it succeeds
                value = -self._negascout(child, depth - 1, -a - 1, -a, ply + 1)
                if a < value < beta:
                    value = -self._negascout(child, depth - 1, -beta, -value, ply + 1)
            if value > g:
                g, best = value, move
            if g >= beta:
                self.stats.record_cutoff(ply, tried)
                self._reward(state, move, depth)
                break
            a = max(a, g)

        self._store(key, depth, color, g, alpha, beta, best)
        return g


def _as_window(window: WindowLike | None) -> Window:
    if window is None:
        return Window.full()
    return Window(*window).check()


def alpha_beta(
    ctx: SearchContext, state: GameState, depth: int, window: WindowLike | None = None
) -> int:
    """Alpha-Beta search using the transposition table of the context.

    The return value `g` satisfies the following postcondition with respect to the
    minimax value `f` at the given depth: If `alpha < g < beta`, then `g = f`. If
    `g <= alpha`, then `g` is an upper bound on `f`. If `g >= beta`, then `g` is a
    lower bound on `f`.

    Args:
        ctx (:class:`SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        window (:class:`Window`, optional):
            The search window `(alpha, beta)`. The full window is used if omitted.

    Returns:
        int: The search result in the frame of the MAX player
    """
    if depth < 0:
        raise ValueError("Depth must be non-negative")
    alpha, beta = _as_window(window)
    if state.side == Side.MAX:
        return ctx._search(state, depth, alpha, beta, 0)
    return -ctx._search(state, depth, -beta, -alpha, 0)


def mt(ctx: SearchContext, state: GameState, depth: int, gamma: int) -> int:
    """Null-window Alpha-Beta search including storage of the results.

    The search tests whether the minimax value `f` reaches `gamma`. If the result `g`
    is smaller than `gamma`, it is an upper bound on `f`. Otherwise, it is a lower
    bound on `f`.

    Args:
        ctx (:class:`SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        gamma (int):
            The tested value with `-VALUE_INF < gamma <= VALUE_INF`

    Returns:
        int: The bound in the frame of the MAX player
    """
    if not -VALUE_INF < gamma <= VALUE_INF:
        raise ValueError(f"Test value {gamma} outside of the admissible range")
    if depth < 0:
        raise ValueError("Depth must be non-negative")
    ctx.stats.mt_calls += 1
    if state.side == Side.MAX:
        return ctx._mt(state, depth, gamma, 0)
    # v >= gamma is equivalent to -v < 1 - gamma
    return -ctx._mt(state, depth, 1 - gamma, 0)


def negascout(
    ctx: SearchContext, state: GameState, depth: int, window: WindowLike | None = None
) -> int:
    """NegaScout search using the transposition table of the context.

    The return value satisfies the same postcondition as :func:`alpha_beta`.

    Args:
        ctx (:class:`SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        window (:class:`Window`, optional):
            The search window `(alpha, beta)`. The full window is used if omitted.

    Returns:
        int: The search result in the frame of the MAX player
    """
    if depth < 0:
        raise ValueError("Depth must be non-negative")
    alpha, beta = _as_window(window)
    if state.side == Side.MAX:
        return ctx._negascout(state, depth, alpha, beta, 0)
    return -ctx._negascout(state, depth, -beta, -alpha, 0)


def aspiration_negascout(
    ctx: SearchContext,
    state: GameState,
    depth: int,
    center: int,
    width: int | None = None,
) -> int:
    """NegaScout search with an aspiration window around an expected value.

    If the search fails low with result `g`, it is repeated with the window
    `(-VALUE_INF, g + 1)`. If it fails high, the window `(g - 1, VALUE_INF)` is used.
    The number of repeated searches is counted in :attr:`SearchStats.researches`.

    Args:
        ctx (:class:`SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        center (int):
            The expected value
        width (int, optional):
            Half-width of the aspiration window. Uses the width of the context if
            omitted.

    Returns:
        int: The minimax value in the frame of the MAX player
    """
    if width is None:
        width = ctx.asp_width
    if width <= 0:
        raise ValueError("Aspiration width must be positive")
    center = min(max(center, -VALUE_INF + 1), VALUE_INF - 1)
    alpha = max(center - width, -VALUE_INF)
    beta = min(center + width, VALUE_INF)
    g = negascout(ctx, state, depth, Window(alpha, beta))
    if g <= alpha:
        _logger.debug("Aspiration search failed low with %d", g)
        ctx.stats.researches += 1
        g = negascout(ctx, state, depth, Window(-VALUE_INF, g + 1))
    elif g >= beta:
        _logger.debug("Aspiration search failed high with %d", g)
        ctx.stats.researches += 1
        g = negascout(ctx, state, depth, Window(g - 1, VALUE_INF))
    return g


def order_moves(
    ctx: SearchContext, state: GameState, moves: Sequence[Move] | None = None
) -> list[Move]:
    """Order moves using the transposition table and the history heuristic.

    The best move stored in the table comes first, followed by all other moves
    sorted by descending history score. Ties keep the static order.

    Args:
        ctx (:class:`SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The position
        moves (list of :class:`~mtdsearch.games.Move`, optional):
            The moves, which are generated if omitted

    Returns:
        list of :class:`~mtdsearch.games.Move`: The ordered moves
    """
    if moves is None:
        moves = ctx.game.legal_moves(state)
    entry = ctx.table.probe(ctx.game.state_key(state))
    tt_move = None if entry is None else entry.best_move
    return ctx._order_moves(state, list(moves), tt_move)


SearchFunction = Callable[[SearchContext, GameState, int, int], int]
"""type: signature `(ctx, state, depth, guess) -> value` of registered algorithms"""

_ALGORITHMS: dict[str, SearchFunction] = {}


def register_algorithm(tag: str) -> Callable[[SearchFunction], SearchFunction]:
    """Register a function determining the minimax value under a tag.

    Args:
        tag (str):
            The name used on the command line

    Returns:
        The decorator registering the function
    """

    def decorator(func: SearchFunction) -> SearchFunction:
        if tag in _ALGORITHMS:
            _logger.warning("Redefining algorithm `%s`", tag)
        _ALGORITHMS[tag] = func
        return func

    return decorator


def get_algorithm(tag: str) -> SearchFunction:
    """Return the function registered under a tag.

    Args:
        tag (str):
            The tag of the algorithm, e.g., `ab` or `mtdf`

    Returns:
        The function with signature `(ctx, state, depth, guess) -> value`
    """
    from . import drivers  # noqa: F401 (registers the drivers)

    try:
        return _ALGORITHMS[tag]
    except KeyError:
        tags = ", ".join(algorithm_tags())
        raise ValueError(f"Unknown algorithm `{tag}`. Available: {tags}") from None


def algorithm_tags() -> list[str]:
    """Return the tags of all registered algorithms."""
    from . import drivers  # noqa: F401

    return list(_ALGORITHMS)


@register_algorithm("ab")
def _alpha_beta_full(ctx: SearchContext, state: GameState, depth: int, guess: int):
    return alpha_beta(ctx, state, depth)


@register_algorithm("nega")
def _negascout_full(ctx: SearchContext, state: GameState, depth: int, guess: int):
    return negascout(ctx, state, depth)


@register_algorithm("asp-nega")
def _aspiration(ctx: SearchContext, state: GameState, depth: int, guess: int):
    return aspiration_negascout(ctx, state, depth, guess)


GuessPolicy = int | str | Callable[[int, Sequence[int]], int]


class IterationResult(NamedTuple):
    """Result of one iteration of iterative deepening."""

    depth: int
    value: int
    guess: int
    stats: SearchStats
    wall_time: float


@dataclass
class DeepeningResult:
    """Results of all iterations of iterative deepening."""

    iterations: list[IterationResult]
    stats: SearchStats
    """:class:`SearchStats`: statistics accumulated over all iterations"""

    @property
    def value(self) -> int:
        """int: the value determined by the last iteration"""
        return self.iterations[-1].value

    @property
    def depth(self) -> int:
        """int: the depth of the last iteration"""
        return self.iterations[-1].depth

    @property
    def values(self) -> list[int]:
        """list: the values of all iterations"""
        return [it.value for it in self.iterations]


def _next_guess(
    policy: GuessPolicy, depth: int, values: Sequence[int], static_value: int
) -> int:
    """Determine the first guess of an iteration."""
    if callable(policy):
        return int(policy(depth, values))
    if isinstance(policy, (int, np.integer)):
        return int(policy)
    if not values:
        return static_value
    if policy == "prev":
        return values[-1]
    elif policy == "prev2":
        return values[-2] if len(values) >= 2 else values[-1]
    raise ValueError(f"Unknown guess policy `{policy}`")


def depth_schedule(max_depth: int, step: int = 1) -> list[int]:
    """Return the depths of iterative deepening ending at `max_depth`.

    Example:
        `depth_schedule(8, 2)` returns `[2, 4, 6, 8]` and `depth_schedule(5, 2)`
        returns `[1, 3, 5]`.
    """
    if max_depth < 1:
        raise ValueError("Maximal depth must be positive")
    if step < 1:
        raise ValueError("Depth step must be positive")
    return list(range(max_depth, 0, -step))[::-1]


def iterative_deepen(
    ctx: SearchContext,
    state: GameState,
    max_depth: int,
    algorithm: str | SearchFunction = "ab",
    *,
    step: int = 1,
    depths: Sequence[int] | None = None,
    guess: GuessPolicy = "prev",
) -> DeepeningResult:
    """Search a position repeatedly with increasing depth.

    The transposition table persists across iterations, so best moves found in
    shallower searches order the moves of deeper ones. History scores are halved
    between iterations. The statistics of the context accumulate all iterations.

    Args:
        ctx (:class:`SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        max_depth (int):
            The depth of the last iteration
        algorithm (str or callable):
            The tag of a registered algorithm or a function with the same signature
        step (int):
            The depth increment between iterations
        depths (list of int, optional):
            Explicit depths of all iterations, overwriting `max_depth` and `step`
        guess:
            The policy for the value passed to the algorithm as first guess. This
            can be a fixed integer, `prev` (value of the previous iteration), `prev2`
            (value of two iterations ago), or a function `(depth, values) -> guess`
            receiving the values of all previous iterations. The first iteration
            uses the static evaluation for the policies `prev` and `prev2`.

    Returns:
        :class:`DeepeningResult`: The values and statistics of all iterations
    """
    search = get_algorithm(algorithm) if isinstance(algorithm, str) else algorithm
    schedule = list(depths) if depths is not None else depth_schedule(max_depth, step)
    if not schedule:
        raise ValueError("Iterative deepening requires at least one depth")
    static_value = ctx.game.evaluate(state)

    cumulative = ctx.stats
    iterations: list[IterationResult] = []
    values: list[int] = []
    try:
        for depth in schedule:
            first_guess = _next_guess(guess, depth, values, static_value)
            ctx.stats = cumulative.fresh()
            start = time.perf_counter()
            value = search(ctx, state, depth, first_guess)
            wall_time = time.perf_counter() - start
            iteration = IterationResult(depth, value, first_guess, ctx.stats, wall_time)
            cumulative.add(ctx.stats)
            iterations.append(iteration)
            values.append(value)
            _logger.debug(
                "Depth %d: value=%d guess=%d leaves=%d nodes=%d",
                depth,
                value,
                first_guess,
                iteration.stats.leaf_evals,
                iteration.stats.total_nodes,
            )
            ctx.age_history()
    finally:
        ctx.stats = cumulative

    return DeepeningResult(iterations=iterations, stats=cumulative)
