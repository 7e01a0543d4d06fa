"""Drivers determining the minimax value by a sequence of null-window searches.

Every driver calls :func:`~mtdsearch.search.mt` repeatedly. Each call either lowers
the upper bound `f_plus` or raises the lower bound `f_minus` on the minimax value at
the root, until both bounds coincide. The drivers differ only in how they choose the
test value of the next call. Since the transposition table keeps the bounds of the
previous calls, the sequence of searches expands the game tree in a best-first
manner.

.. autosummary::
   :nosignatures:

   MtdState
   mtd
   mtd_plus_inf
   mtd_minus_inf
   mtd_f
   mtd_bi
   mtd_step
   mtd_best
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from .games import VALUE_INF, GameState, Move, Side
from .search import SearchContext, mt, register_algorithm

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


class BoundPolicyError(ValueError):
    """Signals a test value outside the interval of the current bounds."""


@dataclass
class MtdState:
    """Bounds on the minimax value of the root maintained by a driver."""

    f_plus: int = VALUE_INF
    """int: upper bound on the value"""
    f_minus: int = -VALUE_INF
    """int: lower bound on the value"""
    bound: int = VALUE_INF
    """int: the test value of the next search"""
    g: int | None = None
    """int: the result of the last search"""
    mt_calls: int = 0
    """int: number of searches performed"""
    passes: list[tuple[int, int]] = field(default_factory=list)
    """list: test value and result of all searches"""

    @property
    def done(self) -> bool:
        """bool: whether the minimax value is determined"""
        return self.f_minus == self.f_plus


BoundPolicy = Callable[[MtdState], int]


def mtd(
    ctx: SearchContext,
    state: GameState,
    depth: int,
    first: int,
    next_bound: BoundPolicy,
    *,
    lower: int = -VALUE_INF,
    upper: int = VALUE_INF,
    full_output: bool = False,
    callback: Callable[[MtdState], None] | None = None,
):
    """Determine the minimax value using a sequence of memory-enhanced tests.

    Args:
        ctx (:class:`~mtdsearch.search.SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        first (int):
            The test value of the first search
        next_bound (callable):
            Function determining the next test value from the current state. The
            test value must satisfy `f_minus < bound <= f_plus`.
        lower (int):
            A known lower bound on the value
        upper (int):
            A known upper bound on the value
        full_output (bool):
            Whether to also return the final :class:`MtdState`
        callback (callable, optional):
            Function called with the state after each search

    Returns:
        int: The minimax value (and the :class:`MtdState` if `full_output`)
    """
    if lower > upper:
        raise ValueError(f"Invalid initial bounds [{lower}, {upper}]")
    mtd_state = MtdState(f_plus=upper, f_minus=lower, bound=first)
    while not mtd_state.done:
        bound = mtd_state.bound
        if not mtd_state.f_minus < bound <= mtd_state.f_plus:
            raise BoundPolicyError(
                f"Test value {bound} outside of ({mtd_state.f_minus}, "
                f"{mtd_state.f_plus}]"
            )
        g = mt(ctx, state, depth, bound)
        mtd_state.g = g
        mtd_state.mt_calls += 1
        mtd_state.passes.append((bound, g))
        if g < bound:
            mtd_state.f_plus = g
        else:
            mtd_state.f_minus = g
        _logger.debug(
            "Pass %d: bound=%d g=%d f-=%d f+=%d",
            mtd_state.mt_calls,
            bound,
            g,
            mtd_state.f_minus,
            mtd_state.f_plus,
        )
        if callback is not None:
            callback(mtd_state)
        if not mtd_state.done:
            mtd_state.bound = next_bound(mtd_state)

    if full_output:
        return mtd_state.f_minus, mtd_state
    return mtd_state.f_minus


def _last_result(mtd_state: MtdState) -> int:
    assert mtd_state.g is not None
    return mtd_state.g


def mtd_plus_inf(ctx: SearchContext, state: GameState, depth: int, **kwargs):
    r"""Determine the minimax value by successively lowering an upper bound.

    This driver starts testing at :data:`~mtdsearch.games.VALUE_INF` and sets the
    next test value to the result of the previous search. It expands the same
    leaves in the same order as the best-first algorithm SSS* when the table does
    not lose information.

    Args:
        ctx (:class:`~mtdsearch.search.SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        \**kwargs:
            Further arguments of :func:`mtd`

    Returns:
        int: The minimax value
    """
    return mtd(ctx, state, depth, VALUE_INF, _last_result, **kwargs)


def mtd_minus_inf(ctx: SearchContext, state: GameState, depth: int, **kwargs):
    r"""Determine the minimax value by successively raising a lower bound.

    Args:
        ctx (:class:`~mtdsearch.search.SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        \**kwargs:
            Further arguments of :func:`mtd`

    Returns:
        int: The minimax value
    """
    return mtd(
        ctx, state, depth, -VALUE_INF + 1, lambda s: _last_result(s) + 1, **kwargs
    )


def _closest_bound(mtd_state: MtdState) -> int:
    g = _last_result(mtd_state)
    return g if g < mtd_state.bound else g + 1


def mtd_f(
    ctx: SearchContext, state: GameState, depth: int, first_guess: int, **kwargs
):
    r"""Determine the minimax value starting from a guess.

    After a search failing low with result `g`, the next test value is `g`. After a
    search failing high, it is `g + 1`.

    Args:
        ctx (:class:`~mtdsearch.search.SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        first_guess (int):
            The expected minimax value
        \**kwargs:
            Further arguments of :func:`mtd`

    Returns:
        int: The minimax value
    """
    first = min(max(first_guess, -VALUE_INF + 1), VALUE_INF)
    return mtd(ctx, state, depth, first, _closest_bound, **kwargs)


def _bisect(mtd_state: MtdState) -> int:
    center = (mtd_state.f_plus + mtd_state.f_minus) // 2
    return min(max(center, mtd_state.f_minus + 1), mtd_state.f_plus)


def mtd_bi(
    ctx: SearchContext,
    state: GameState,
    depth: int,
    *,
    lower: int = -VALUE_INF,
    upper: int = VALUE_INF,
    **kwargs,
):
    r"""Determine the minimax value by bisecting the interval of possible values.

    The next test value is the mean of the current bounds rounded down, but at least
    `f_minus + 1`, so every search shrinks the interval.

    Args:
        ctx (:class:`~mtdsearch.search.SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        lower (int):
            A known lower bound on the value
        upper (int):
            A known upper bound on the value
        \**kwargs:
            Further arguments of :func:`mtd`

    Returns:
        int: The minimax value
    """
    first = _bisect(MtdState(f_plus=upper, f_minus=lower))
    return mtd(ctx, state, depth, first, _bisect, lower=lower, upper=upper, **kwargs)


def mtd_step(
    ctx: SearchContext, state: GameState, depth: int, stepsize: int, **kwargs
):
    r"""Determine the minimax value by lowering an upper bound in large steps.

    After a search failing low with result `g`, the next test value is
    `max(f_minus + 1, g - stepsize + 1)`, so a step size of one reproduces
    :func:`mtd_plus_inf`. After a search failing high, the value is confirmed by
    testing `g + 1`.

    Args:
        ctx (:class:`~mtdsearch.search.SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search
        depth (int):
            The search horizon
        stepsize (int):
            The size of the steps, which must be positive
        \**kwargs:
            Further arguments of :func:`mtd`

    Returns:
        int: The minimax value
    """
    if stepsize < 1:
        raise ValueError("Step size must be positive")

    def next_bound(mtd_state: MtdState) -> int:
        g = _last_result(mtd_state)
        if g < mtd_state.bound:
            return max(mtd_state.f_minus + 1, g - stepsize + 1)
        return g + 1

    return mtd(ctx, state, depth, VALUE_INF, next_bound, **kwargs)


@dataclass
class BestMoveResult:
    """Bounds on the values of all root moves determined by :func:`mtd_best`."""

    move: Move
    """:class:`~mtdsearch.games.Move`: the best move"""
    bounds: dict[int, tuple[int, int]]
    """dict: lower and upper bound (MAX frame) of each move indexed by its ordinal"""
    mt_calls: int
    """int: number of searches performed"""


def mtd_best(
    ctx: SearchContext,
    state: GameState,
    depth: int,
    first_guess: int | None = None,
    *,
    full_output: bool = False,
):
    """Determine a best move without necessarily determining its value.

    The procedure proves that the lower bound on the value of one move is not
    smaller than the upper bounds on the values of all other moves. It first
    establishes a lower bound on the presumed best move by lowering its upper bound
    starting from `first_guess`. It then tests whether any other move exceeds this
    lower bound. If a move does, it becomes the presumed best move and the test of
    the others starts over.

    Args:
        ctx (:class:`~mtdsearch.search.SearchContext`):
            The search context
        state (:class:`~mtdsearch.games.GameState`):
            The root of the search, which must have at least one move
        depth (int):
            The search horizon, which must be positive
        first_guess (int, optional):
            The first test value for the presumed best move in the frame of the MAX
            player. If omitted, the search starts from the most optimistic value of
            the player to move.
        full_output (bool):
            Whether to return a :class:`BestMoveResult` instead of the move

    Returns:
        :class:`~mtdsearch.games.Move`: The best move
    """
    if depth < 1:
        raise ValueError("Selecting a move requires a positive depth")
    game = ctx.game
    moves = game.legal_moves(state)
    if not moves:
        raise ValueError("Cannot select a move in a terminal position")
    color = int(state.side)
    lo = {m.ordinal: -VALUE_INF for m in moves}
    hi = {m.ordinal: VALUE_INF for m in moves}
    calls = 0

    def test(move: Move, gamma: int) -> None:
        """Test whether the value of a move (root frame) reaches gamma."""
        nonlocal calls
        calls += 1
        ctx.stats.mt_calls += 1
        child = game._make_child(state, move)
        # the child tests the negated value, i.e., whether -v < 1 - gamma
        g = -ctx._mt(child, depth - 1, 1 - gamma, 1)
        if g >= gamma:
            lo[move.ordinal] = g
        else:
            hi[move.ordinal] = g

    if len(moves) > 1:
        entry = ctx.table.probe(game.state_key(state))
        tt_move = None if entry is None else entry.best_move
        if ctx.use_tt_move and tt_move is not None and tt_move < len(moves):
            best = moves[tt_move]
        else:
            best = moves[0]

        if first_guess is None:
            gamma = VALUE_INF
        else:
            gamma = min(max(color * first_guess, -VALUE_INF + 1), VALUE_INF)
        while True:
            # lower the upper bound of the presumed best move until it is proven
            while lo[best.ordinal] == -VALUE_INF:
                test(best, gamma)
                gamma = hi[best.ordinal]

            # prove that no other move exceeds the lower bound of the best move
            for move in moves:
                if move is best or hi[move.ordinal] <= lo[best.ordinal]:
                    continue
                test(move, lo[best.ordinal] + 1)
                if lo[move.ordinal] > lo[best.ordinal]:
                    _logger.debug("Switch best move to %d", move.ordinal)
                    best = move
                    break
            else:
                break
    else:
        best = moves[0]

    if not full_output:
        return best
    if state.side == Side.MAX:
        bounds = {k: (lo[k], hi[k]) for k in lo}
    else:
        bounds = {k: (-hi[k], -lo[k]) for k in lo}
    return BestMoveResult(move=best, bounds=bounds, mt_calls=calls)


@register_algorithm("sss")
def _sss(ctx: SearchContext, state: GameState, depth: int, guess: int):
    return mtd_plus_inf(ctx, state, depth)


@register_algorithm("dual")
def _dual(ctx: SearchContext, state: GameState, depth: int, guess: int):
    return mtd_minus_inf(ctx, state, depth)


@register_algorithm("mtdf")
def _mtdf(ctx: SearchContext, state: GameState, depth: int, guess: int):
    return mtd_f(ctx, state, depth, guess)


@register_algorithm("mtdbi")
def _mtdbi(ctx: SearchContext, state: GameState, depth: int, guess: int):
    lower, upper = ctx.game.value_bounds(state)
    return mtd_bi(ctx, state, depth, lower=lower, upper=upper)


@register_algorithm("mtdstep")
def _mtdstep(ctx: SearchContext, state: GameState, depth: int, guess: int):
    return mtd_step(ctx, state, depth, ctx.step_size)
