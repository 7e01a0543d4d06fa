"""Othello on small square boards using compiled bitboard operations.

The board of size :math:`n \\times n` is represented by two integer bit masks, one
for the discs of each player. Square `i = row * n + col` corresponds to bit `i`, and
squares are named by a column letter and a row number, so `a1` is square 0. Black
moves first and is the MAX player.

.. autosummary::
   :nosignatures:

   make_othello_kernels
   square_weights
   OthelloState
   OthelloGame
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Callable, Iterator, Sequence
from typing import NamedTuple

import numpy as np
from numba.extending import register_jitable

from pde.tools.numba import jit

from .games import (
    GameBase,
    GameState,
    IllegalMoveError,
    Move,
    PositionParseError,
    Side,
)
from .tools.hashing import make_zobrist_table

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


PASS = -1
"""int: square index denoting a pass move"""

PASS_NAME = "--"
"""str: notation of a pass move in position files"""

TERMINAL_BONUS = 1000
"""int: value added to the disc differential of decided games"""

# bonuses of discs on special squares, see `square_weights`
CORNER_WEIGHT = 20
X_SQUARE_WEIGHT = -8
C_SQUARE_WEIGHT = -4
EDGE_WEIGHT = 2


class OthelloKernels(NamedTuple):
    """Compiled functions operating on the bit masks of one board size."""

    legal_mask: Callable[[int, int], int]
    """function: mask of squares where the first player may move"""
    flip_mask: Callable[[int, int, int], int]
    """function: mask of discs flipped by placing a disc on a square"""
    popcount: Callable[[int], int]
    """function: number of set bits"""


@functools.lru_cache
def make_othello_kernels(size: int = 6) -> OthelloKernels:
    """Create compiled functions for move generation on a square board.

    Args:
        size (int):
            Side length of the board. Supported sizes are 4 and 6.

    Returns:
        :class:`OthelloKernels`: The compiled functions
    """
    if size not in {4, 6}:
        raise NotImplementedError(f"Othello boards of size {size} are not supported")

    num_squares = size * size
    full = (1 << num_squares) - 1
    not_first_col = 0  # squares not in column `a`
    not_last_col = 0  # squares not in the last column
    for square in range(num_squares):
        if square % size != 0:
            not_first_col |= 1 << square
        if square % size != size - 1:
            not_last_col |= 1 << square
    max_run = size - 2  # longest run of flippable discs in one direction

    @register_jitable
    def shift(bits: int, direction: int) -> int:
        """Shift all discs one square into one of the eight directions."""
        if direction == 0:  # east
            return (bits << 1) & not_first_col
        elif direction == 1:  # west
            return (bits >> 1) & not_last_col
        elif direction == 2:  # north
            return (bits << size) & full
        elif direction == 3:  # south
            return bits >> size
        elif direction == 4:  # north-east
            return (bits << (size + 1)) & not_first_col & full
        elif direction == 5:  # north-west
            return (bits << (size - 1)) & not_last_col & full
        elif direction == 6:  # south-east
            return (bits >> (size - 1)) & not_first_col
        else:  # south-west
            return (bits >> (size + 1)) & not_last_col

    def legal_mask(own: int, opp: int) -> int:
        empty = ~(own | opp) & full
        moves = 0
        for direction in range(8):
            run = shift(own, direction) & opp
            for _ in range(max_run - 1):
                run |= shift(run, direction) & opp
            moves |= shift(run, direction) & empty
        return moves

    def flip_mask(own: int, opp: int, square: int) -> int:
        flipped = 0
        start = 1 << square
        for direction in range(8):
            run = 0
            cur = shift(start, direction)
            while cur != 0 and (cur & opp) != 0:
                run |= cur
                cur = shift(cur, direction)
            if (cur & own) != 0:
                flipped |= run
        return flipped

    def popcount(bits: int) -> int:
        count = 0
        while bits != 0:
            bits &= bits - 1
            count += 1
        return count

    return OthelloKernels(jit(legal_mask), jit(flip_mask), jit(popcount))


def square_weights(size: int = 6) -> np.ndarray:
    """Return the positional bonus of a disc on each square of a board.

    Corners are worth most, since discs there can never be flipped. The squares
    next to a corner are penalized because they give away the corner, most of all
    the diagonal neighbors (X-squares). Remaining edge squares are worth more than
    interior squares, which carry no bonus.

    Args:
        size (int):
            Side length of the board

    Returns:
        :class:`~numpy.ndarray`: Integer weights indexed by `row * size + col`
    """
    weights = np.zeros((size, size), dtype=int)
    weights[[0, -1], :] = EDGE_WEIGHT
    weights[:, [0, -1]] = EDGE_WEIGHT
    for row, col in [(0, 0), (0, size - 1), (size - 1, 0), (size - 1, size - 1)]:
        dr = 1 if row == 0 else -1
        dc = 1 if col == 0 else -1
        weights[row + dr, col] = weights[row, col + dc] = C_SQUARE_WEIGHT
        weights[row + dr, col + dc] = X_SQUARE_WEIGHT
        weights[row, col] = CORNER_WEIGHT
    return weights.ravel()


class OthelloState(GameState):
    """A position of an Othello game.

    Attributes:
        black (int): Bit mask of the black discs
        white (int): Bit mask of the white discs
        key (int): Zobrist key of the position including the side to move
    """

    __slots__ = ["black", "key", "white"]

    def __init__(self, black: int, white: int, side: Side, ply: int, key: int):
        super().__init__(side, ply)
        self.black = black
        self.white = white
        self.key = key

    def __eq__(self, other):
        if not isinstance(other, OthelloState):
            return NotImplemented
        return (
            self.black == other.black
            and self.white == other.white
            and self.side == other.side
        )

    def __hash__(self):
        return hash((self.black, self.white, int(self.side)))

    def __repr__(self):
        return (
            f"OthelloState(black={self.black:#x}, white={self.white:#x}, "
            f"side={self.side.name}, ply={self.ply})"
        )


class OthelloGame(GameBase):
    """Othello with standard flanking rules on a small board.

    A player without legal placement has to pass, which is an explicit move that
    consumes a ply. The game ends when neither player can place a disc. The
    evaluation is the disc differential plus the positional bonuses of the discs,
    see :func:`square_weights`, plus the mobility differential. Decided games are
    scored by the disc differential shifted by :data:`TERMINAL_BONUS`.
    """

    name = "othello"

    def __init__(self, size: int = 6, *, seed: int = 0):
        """
        Args:
            size (int):
                Side length of the board (4 or 6)
            seed (int):
                Seed of the Zobrist table
        """
        self.size = size
        self.num_squares = size * size
        self.kernels = make_othello_kernels(size)
        # keys for discs of both colors on each square and for the side to move
        self._zobrist = make_zobrist_table((2, self.num_squares + 1), seed=seed)
        self._side_key: int = self._zobrist[0, self.num_squares]
        self.weights = square_weights(size)
        # one mask of squares for each distinct nonzero bonus
        self._weight_masks: list[tuple[int, int]] = []
        for weight in np.unique(self.weights[self.weights != 0]):
            squares = np.flatnonzero(self.weights == weight)
            mask = sum(1 << int(square) for square in squares)
            self._weight_masks.append((int(weight), mask))

    def __repr__(self):
        return f"{self.__class__.__name__}(size={self.size})"

    def square_name(self, square: int) -> str:
        """Return the coordinate name of a square, e.g., `a1` for square 0."""
        if square == PASS:
            return PASS_NAME
        row, col = divmod(square, self.size)
        return f"{chr(ord('a') + col)}{row + 1}"

    def square_index(self, name: str) -> int:
        """Return the index of a square given by its coordinate name."""
        if name == PASS_NAME:
            return PASS
        if len(name) != 2:
            raise ValueError(f"Invalid square `{name}`")
        col = ord(name[0].lower()) - ord("a")
        row = int(name[1]) - 1
        if not (0 <= col < self.size and 0 <= row < self.size):
            raise ValueError(f"Square `{name}` is not on the board")
        return row * self.size + col

    def _board_key(self, black: int, white: int) -> int:
        key = 0
        for color, bits in enumerate([black, white]):
            while bits:
                low = bits & -bits
                key ^= self._zobrist[color, low.bit_length() - 1]
                bits ^= low
        return key

    def make_state(
        self, black: int, white: int, side: Side = Side.MAX, ply: int = 0
    ) -> OthelloState:
        """Create a state from the bit masks of both players.

        Args:
            black (int): Bit mask of the black discs
            white (int): Bit mask of the white discs
            side (:class:`~mtdsearch.games.Side`): The player to move
            ply (int): The number of moves played

        Returns:
            :class:`OthelloState`: The position
        """
        if black & white:
            raise ValueError("Squares cannot be occupied by both players")
        key = self._board_key(black, white)
        if side == Side.MIN:
            key ^= self._side_key
        return OthelloState(black, white, Side(side), ply, key)

    def initial_state(self) -> OthelloState:
        mid = self.size // 2
        n = self.size
        white = (1 << ((mid - 1) * n + mid - 1)) | (1 << (mid * n + mid))
        black = (1 << ((mid - 1) * n + mid)) | (1 << (mid * n + mid - 1))
        return self.make_state(black, white)

    def _own_opp(self, state: OthelloState) -> tuple[int, int]:
        if state.side == Side.MAX:
            return state.black, state.white
        return state.white, state.black

    def legal_moves(self, state: OthelloState) -> list[Move]:  # type: ignore
        own, opp = self._own_opp(state)
        mask = int(self.kernels.legal_mask(own, opp))
        if mask == 0:
            if self.kernels.legal_mask(opp, own) == 0:
                return []  # neither side can move
            return [Move(0, PASS)]
        moves = []
        while mask:
            low = mask & -mask
            moves.append(Move(len(moves), low.bit_length() - 1))
            mask ^= low
        return moves

    def _make_child(  # type: ignore
        self, state: OthelloState, move: Move
    ) -> OthelloState:
        key = state.key ^ self._side_key
        if move.content == PASS:
            return OthelloState(
                state.black, state.white, state.side.opponent, state.ply + 1, key
            )

        own, opp = self._own_opp(state)
        square: int = move.content
        flipped = int(self.kernels.flip_mask(own, opp, square))
        if flipped == 0 or (own | opp) & (1 << square):
            raise IllegalMoveError(f"Cannot place a disc on {self.square_name(square)}")
        color = 0 if state.side == Side.MAX else 1
        key ^= self._zobrist[color, square]
        bits = flipped
        while bits:
            low = bits & -bits
            sq = low.bit_length() - 1
            key ^= self._zobrist[0, sq] ^ self._zobrist[1, sq]
            bits ^= low
        own |= flipped | (1 << square)
        opp &= ~flipped
        if state.side == Side.MAX:
            black, white = own, opp
        else:
            black, white = opp, own
        return OthelloState(black, white, state.side.opponent, state.ply + 1, key)

    def disc_difference(self, state: OthelloState) -> int:
        """Return the number of black discs minus the number of white discs."""
        return state.black.bit_count() - state.white.bit_count()

    def positional_score(self, state: OthelloState) -> int:
        """Return the positional bonuses of black minus those of white."""
        score = 0
        for weight, mask in self._weight_masks:
            count = (state.black & mask).bit_count() - (state.white & mask).bit_count()
            score += weight * count
        return score

    def evaluate(self, state: OthelloState) -> int:  # type: ignore
        diff = self.disc_difference(state)
        black_moves = int(self.kernels.legal_mask(state.black, state.white))
        white_moves = int(self.kernels.legal_mask(state.white, state.black))
        if black_moves == 0 and white_moves == 0:
            return int(np.sign(diff)) * TERMINAL_BONUS + diff
        popcount = self.kernels.popcount
        mobility = popcount(black_moves) - popcount(white_moves)
        return diff + self.positional_score(state) + int(mobility)

    def state_key(self, state: OthelloState) -> int:  # type: ignore
        return state.key

    def move_feature(self, state: GameState, move: Move) -> int:
        return move.content  # type: ignore

    def value_bounds(self, state: GameState) -> tuple[int, int]:
        bound = TERMINAL_BONUS + self.num_squares
        return -bound, bound

    def render(self, state: OthelloState) -> str:
        """Return a text diagram of the board with row 1 at the top."""
        lines = ["  " + " ".join(chr(ord("a") + c) for c in range(self.size))]
        for row in range(self.size):
            cells = []
            for col in range(self.size):
                bit = 1 << (row * self.size + col)
                if state.black & bit:
                    cells.append("X")
                elif state.white & bit:
                    cells.append("O")
                else:
                    cells.append(".")
            lines.append(f"{row + 1} " + " ".join(cells))
        lines.append(f"{state.side.name} to move")
        return "\n".join(lines)

    def play(
        self, names: Sequence[str], state: OthelloState | None = None
    ) -> OthelloState:
        """Replay a sequence of moves given by their square names.

        Args:
            names (list of str):
                The moves, where `--` denotes a pass
            state (:class:`OthelloState`, optional):
                The start position. Uses the initial position if omitted.

        Returns:
            :class:`OthelloState`: The position after all moves
        """
        if state is None:
            state = self.initial_state()
        for name in names:
            square = self.square_index(name)
            for move in self.legal_moves(state):
                if move.content == square:
                    state = self._make_child(state, move)
                    break
            else:
                raise IllegalMoveError(
                    f"Move `{name}` is not legal after {state.ply} plies"
                )
        return state

    def parse_position(self, line: str) -> OthelloState:
        try:
            return self.play(line.split())
        except IllegalMoveError as err:
            raise PositionParseError(str(err)) from err

    def random_suite(
        self, count: int = 20, plies: int | tuple[int, int] = (4, 10), *, seed: int = 0
    ) -> Iterator[list[str]]:
        """Generate move sequences of random games.

        The sequences are obtained by playing uniformly random legal moves from the
        initial position. Sequences ending in a decided game are discarded.

        Args:
            count (int):
                Number of sequences
            plies (int or tuple):
                Number of moves in each sequence or an inclusive range thereof
            seed (int):
                Seed of the random number generator

        Yields:
            list of str: The moves of a sequence in position file notation
        """
        rng = np.random.default_rng(seed)
        low, high = (plies, plies) if isinstance(plies, int) else plies
        produced = 0
        while produced < count:
            length = int(rng.integers(low, high + 1))
            state = self.initial_state()
            names: list[str] = []
            for _ in range(length):
                moves = self.legal_moves(state)
                if not moves:
                    break
                move = moves[int(rng.integers(len(moves)))]
                names.append(self.square_name(move.content))
                state = self._make_child(state, move)
            if self.legal_moves(state):
                produced += 1
                yield names
            else:
                _logger.debug("Discard decided game after %d plies", state.ply)
