"""Abstractions for two-player zero-sum games searched by this package.

A game is described by a subclass of :class:`GameBase`, which knows how to generate
moves, apply them, evaluate positions and derive a hash key from a position. The
positions themselves are instances of :class:`GameState`, which are immutable and
only store what the respective game needs.

All values are integers measured from the perspective of the MAX player. The search
algorithms internally use the negamax formulation, but convert at their boundaries,
so users only see values in the MAX frame.

.. autosummary::
   :nosignatures:

   Side
   Move
   GameState
   GameBase
   minimax_value
   root_move_values
"""

from __future__ import annotations

import enum
import logging
import warnings
from abc import ABCMeta, abstractmethod
from collections.abc import Hashable
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


VALUE_INF: int = int(np.iinfo(np.int32).max) // 2 - 1
"""int: finite sentinel exceeding the magnitude of every evaluation"""

MAX_DEPTH: int = 255
"""int: depth assigned to stored results of terminal positions"""


class IllegalMoveError(ValueError):
    """Signals that a move is not legal in the given position."""


class PositionParseError(ValueError):
    """Signals that a line of a position file could not be interpreted."""

    def __init__(self, msg: str, lineno: int | None = None):
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)
        self.lineno = lineno


class Side(enum.IntEnum):
    """The player to move, which doubles as the sign of the negamax frame."""

    MAX = 1
    MIN = -1

    @property
    def opponent(self) -> Side:
        """:class:`Side`: the other player"""
        return Side(-self.value)


class Move(NamedTuple):
    """A transition between two states.

    The `ordinal` is the position of the move in the static (left-to-right) move list
    of its parent state, while `content` is game specific.
    """

    ordinal: int
    content: Any = None


class GameState:
    """Base class of all positions.

    Subclasses add the actual position content. Instances are treated as immutable
    after construction.
    """

    __slots__ = ["ply", "side"]

    def __init__(self, side: Side, ply: int = 0):
        """
        Args:
            side (:class:`Side`):
                The player to move
            ply (int):
                The number of moves made since the root of the game
        """
        if ply < 0:
            raise ValueError("Ply must be non-negative")
        self.side = Side(side)
        self.ply = ply

    def __repr__(self):
        return f"{self.__class__.__name__}(side={self.side.name}, ply={self.ply})"


class GameBase(metaclass=ABCMeta):
    """Base class defining the interface of a game.

    All methods are pure functions of the states they are given. Subclasses are
    registered by their `name`, so they can be constructed from command line
    arguments using :meth:`from_name`.
    """

    name: str = "base"
    """str: short identifier of the game"""

    _subclasses: dict[str, type[GameBase]] = {}  # collect all inheriting classes

    def __init_subclass__(cls, **kwargs):
        """Register subclasses to reconstruct them from their name."""
        super().__init_subclass__(**kwargs)
        if cls.name != "base":
            if cls.name in cls._subclasses:
                warnings.warn(f"Redefining game {cls.name}")
            cls._subclasses[cls.name] = cls

    @classmethod
    def from_name(cls, name: str, **kwargs) -> GameBase:
        r"""Create a game from its registered name.

        Args:
            name (str):
                The name of the game, e.g. `pearl`, `synth`, or `othello`
            \**kwargs:
                Arguments passed to the constructor of the game class
        """
        try:
            game_class = cls._subclasses[name]
        except KeyError:
            names = ", ".join(sorted(cls._subclasses))
            raise ValueError(f"Unknown game `{name}`. Available: {names}") from None
        return game_class(**kwargs)

    def __repr__(self):
        return f"{self.__class__.__name__}()"

    @abstractmethod
    def initial_state(self) -> GameState:
        """Return the root position of the game."""

    @abstractmethod
    def legal_moves(self, state: GameState) -> list[Move]:
        """Return the moves in static order.

        Args:
            state (:class:`GameState`):
                The position

        Returns:
            list of :class:`Move`: The moves, which is empty for terminal states
        """

    @abstractmethod
    def _make_child(self, state: GameState, move: Move) -> GameState:
        """Create the child without checking the legality of the move."""

    @abstractmethod
    def evaluate(self, state: GameState) -> int:
        """Return the static evaluation of a state in the MAX frame.

        Args:
            state (:class:`GameState`):
                The position, which is a leaf at the current search horizon

        Returns:
            int: The value, which satisfies `-VALUE_INF < value < VALUE_INF`
        """

    @abstractmethod
    def state_key(self, state: GameState) -> int:
        """Return a 64-bit key identifying the state.

        Args:
            state (:class:`GameState`):
                The position

        Returns:
            int: The key, which is equal for interchangeable states
        """

    def apply_move(self, state: GameState, move: Move) -> GameState:
        """Return the state reached by playing a move.

        Args:
            state (:class:`GameState`):
                The position
            move (:class:`Move`):
                A move taken from :meth:`legal_moves` of `state`

        Returns:
            :class:`GameState`: The child state
        """
        moves = self.legal_moves(state)
        if not 0 <= move.ordinal < len(moves) or moves[move.ordinal] != move:
            raise IllegalMoveError(f"Move {move} is not legal in {state}")
        return self._make_child(state, move)

    def children(self, state: GameState) -> list[tuple[Move, GameState]]:
        """Return all moves together with the states they lead to."""
        moves = self.legal_moves(state)
        return [(move, self._make_child(state, move)) for move in moves]

    def is_terminal(self, state: GameState) -> bool:
        """Determine whether the game is over in the given state."""
        return not self.legal_moves(state)

    def move_feature(self, state: GameState, move: Move) -> Hashable:
        """Return the feature under which the history heuristic scores a move.

        The default groups moves by their ordinal, bucketing all ordinals from 7 on.
        """
        return min(move.ordinal, 7)

    def label(self, state: GameState) -> str:
        """Return a short human readable identifier of a state."""
        return f"{self.state_key(state):016x}"

    def value_bounds(self, state: GameState) -> tuple[int, int]:
        """Return bounds on all evaluations in the game tree below a state.

        Args:
            state (:class:`GameState`):
                The root of the game tree

        Returns:
            tuple: Lower and upper bound, which may be attained
        """
        return -VALUE_INF + 1, VALUE_INF - 1

    def parse_position(self, line: str) -> GameState:
        """Create a state from a single line of a position file.

        Args:
            line (str):
                The line without comments and surrounding white space

        Returns:
            :class:`GameState`: The described position
        """
        raise NotImplementedError(f"Game `{self.name}` does not support position files")

    def load_positions(self, path: str | Path) -> list[GameState]:
        """Read benchmark positions from a file.

        The file is UTF-8 text with one position per line. Everything following a `#`
        is ignored, as are empty lines.

        Args:
            path (str or :class:`~pathlib.Path`):
                The file to read

        Returns:
            list of :class:`GameState`: The positions in the order of the file
        """
        positions = []
        with Path(path).open(encoding="utf-8") as fp:
            for lineno, raw_line in enumerate(fp, start=1):
                line = raw_line.split("#", 1)[0].strip()
                if not line:
                    continue
                try:
                    positions.append(self.parse_position(line))
                except PositionParseError as err:
                    raise PositionParseError(str(err), lineno) from err
                except (ValueError, KeyError) as err:
                    raise PositionParseError(f"{err} in `{line}`", lineno) from err
        _logger.info("Read %d position(s) from `%s`", len(positions), path)
        return positions


def minimax_value(game: GameBase, state: GameState, depth: int) -> int:
    """Determine the minimax value by exhaustive search without any pruning.

    This brute-force procedure serves as the reference for testing all other
    algorithms.

    Args:
        game (:class:`GameBase`):
            The game
        state (:class:`GameState`):
            The root of the search
        depth (int):
            The search horizon

    Returns:
        int: The minimax value in the MAX frame
    """
    moves = game.legal_moves(state)
    if depth == 0 or not moves:
        return game.evaluate(state)
    values = [minimax_value(game, game._make_child(state, m), depth - 1) for m in moves]
    return max(values) if state.side == Side.MAX else min(values)


def root_move_values(game: GameBase, state: GameState, depth: int) -> list[int]:
    """Determine the minimax value of each root move by exhaustive search.

    Args:
        game (:class:`GameBase`):
            The game
        state (:class:`GameState`):
            The root of the search
        depth (int):
            The search horizon of the root, so children are searched with `depth - 1`

    Returns:
        list of int: The values in the MAX frame in static move order
    """
    return [
        minimax_value(game, child, depth - 1) for _, child in game.children(state)
    ]
