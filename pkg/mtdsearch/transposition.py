"""Transposition tables storing bounds on the values of searched positions.

Each entry holds a lower bound `f_minus` and an upper bound `f_plus` on the minimax
value of a position, both measured from the perspective of the MAX player, together
with the best move found and the depth to which the position was searched. Missing
bounds are represented by the sentinels :math:`\\pm` :data:`~mtdsearch.games.VALUE_INF`.

.. autosummary::
   :nosignatures:

   TTConfig
   BoundsEntry
   TTStats
   TranspositionTable
"""

from __future__ import annotations

import copy
import enum
import logging
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .games import VALUE_INF

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


ReplacementPolicy = Literal["deep", "always"]

_ENTRY_DTYPE = np.dtype(
    [
        ("key", np.uint64),
        ("f_minus", np.int32),
        ("f_plus", np.int32),
        ("best_move", np.int32),
        ("depth", np.int16),
        ("draft", np.int16),
        ("used", np.bool_),
    ]
)


class Bound(enum.Enum):
    """Kind of a bound stored in the table."""

    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class TTConfig:
    """Size and replacement policy of a transposition table."""

    log2_entries: int | None = 18
    """int: binary logarithm of the number of slots; `None` for a lossless table"""
    policy: ReplacementPolicy = "deep"
    """str: `deep` keeps entries of deeper searches, `always` replaces entries"""

    def __post_init__(self):
        if self.log2_entries is not None and not 4 <= self.log2_entries <= 30:
            raise ValueError(
                f"Table size 2^{self.log2_entries} not in the range 2^4 to 2^30"
            )
        if self.policy not in {"deep", "always"}:
            raise ValueError(f"Unknown replacement policy `{self.policy}`")

    @property
    def lossless(self) -> bool:
        """bool: whether the table never evicts entries"""
        return self.log2_entries is None

    @property
    def label(self) -> str:
        """str: short description used in output files"""
        return "lossless" if self.log2_entries is None else str(self.log2_entries)

    @classmethod
    def from_flag(cls, value: str | int | None, **kwargs) -> TTConfig:
        """Create a configuration from a command line value.

        Args:
            value (str or int):
                The binary logarithm of the table size or `lossless`

        Returns:
            :class:`TTConfig`: The configuration
        """
        if value is None or (isinstance(value, str) and value.lower() == "lossless"):
            return cls(None, **kwargs)
        return cls(int(value), **kwargs)

    def create(self) -> TranspositionTable:
        """Create an empty table with this configuration."""
        return TranspositionTable(self)


class BoundsEntry(NamedTuple):
    """Information stored about a single position."""

    key: int
    """int: full 64-bit key of the position"""
    f_minus: int
    """int: lower bound on the value"""
    f_plus: int
    """int: upper bound on the value"""
    best_move: int | None
    """int: ordinal of the best move, if known"""
    depth: int
    """int: remaining depth of the search that produced the bounds"""

    @property
    def exact(self) -> bool:
        """bool: whether both bounds coincide"""
        return self.f_minus == self.f_plus


class TTStats(NamedTuple):
    """Usage statistics of a transposition table."""

    probes: int
    hits: int
    stores: int
    evictions: int
    occupancy: int
    capacity: int | None


class TranspositionTable:
    """Hash-addressed storage of search bounds.

    A bounded table has :math:`2^k` slots and places a key in slot `key mod 2^k`,
    where the full key is kept to verify probes. A lossless table keeps every entry.
    Stores into a slot holding the same key at the same depth update the given
    bound; storing a bound contradicting the other one resets the latter.

    Besides the depth deciding whether bounds can be used, each slot keeps the
    draft of its entry, which ranks entries of different positions competing for
    the slot under the `deep` policy. Leaves have draft zero even when the value of
    a decided game is stored with unlimited depth.
    """

    def __init__(self, config: TTConfig | None = None):
        """
        Args:
            config (:class:`TTConfig`, optional):
                The configuration. The default creates a table with :math:`2^{18}`
                slots and the `deep` replacement policy.
        """
        self.config = TTConfig() if config is None else config
        if self.config.log2_entries is None:
            self._mask = 0
            self._data: np.ndarray | None = None
            self._entries: dict[int, BoundsEntry] = {}
        else:
            self._mask = (1 << self.config.log2_entries) - 1
            self._data = np.zeros(self._mask + 1, dtype=_ENTRY_DTYPE)
            self._entries = {}
        self._reset_stats()

    def _reset_stats(self) -> None:
        self.probes = 0
        self.hits = 0
        self.stores = 0
        self.evictions = 0
        self._occupancy = 0

    def __repr__(self):
        return f"{self.__class__.__name__}(config={self.config})"

    def __len__(self) -> int:
        if self._data is None:
            return len(self._entries)
        return self._occupancy

    @property
    def capacity(self) -> int | None:
        """int: number of slots or `None` for lossless tables"""
        return None if self._data is None else self._mask + 1

    def _read(self, key: int) -> BoundsEntry | None:
        """Return the entry of a key without counting the access."""
        if self._data is None:
            return self._entries.get(key)
        row = self._data[key & self._mask]
        if not row["used"] or int(row["key"]) != key:
            return None
        best_move = int(row["best_move"])
        return BoundsEntry(
            key=key,
            f_minus=int(row["f_minus"]),
            f_plus=int(row["f_plus"]),
            best_move=None if best_move < 0 else best_move,
            depth=int(row["depth"]),
        )

    def _write(self, entry: BoundsEntry, draft: int) -> None:
        """Write an entry, overwriting the occupant of its slot."""
        if self._data is None:
            self._entries[entry.key] = entry
            return
        slot = entry.key & self._mask
        if not self._data["used"][slot]:
            self._occupancy += 1
        elif int(self._data["key"][slot]) != entry.key:
            self.evictions += 1
        best_move = -1 if entry.best_move is None else entry.best_move
        self._data[slot] = (
            entry.key,
            entry.f_minus,
            entry.f_plus,
            best_move,
            entry.depth,
            draft,
            True,
        )

    def probe(self, key: int) -> BoundsEntry | None:
        """Look up the information stored about a position.

        Args:
            key (int):
                The key of the position

        Returns:
            :class:`BoundsEntry`: The entry or `None` if the key is not stored
        """
        self.probes += 1
        entry = self._read(key)
        if entry is not None:
            self.hits += 1
        return entry

    def _accepts(
        self, key: int, depth: int, draft: int
    ) -> tuple[bool, BoundsEntry | None]:
        """Decide whether a store is accepted and return the entry to merge with."""
        policy = self.config.policy
        existing = self._read(key)
        if existing is not None:
            if existing.depth == depth:
                return True, existing
            if existing.depth > depth and policy == "deep":
                return False, existing
            return True, None  # fresh entry with the same key
        if self._data is not None:
            row = self._data[key & self._mask]
            if row["used"] and policy == "deep" and draft < int(row["draft"]):
                return False, None
        return True, None

    def store(
        self,
        key: int,
        depth: int,
        kind: Bound | str,
        value: int,
        best_move: int | None = None,
        *,
        draft: int | None = None,
    ) -> bool:
        """Store a bound on the value of a position.

        Args:
            key (int):
                The key of the position
            depth (int):
                The remaining depth of the search that determined the bound
            kind (:class:`Bound` or str):
                Whether `value` is a lower or an upper bound
            value (int):
                The bound from the perspective of the MAX player
            best_move (int, optional):
                The ordinal of the best move
            draft (int, optional):
                The priority of the entry when replacing other positions, which
                defaults to `depth`

        Returns:
            bool: Whether the information was stored
        """
        kind = Bound(kind)
        if not -VALUE_INF < value < VALUE_INF:
            raise ValueError(f"Cannot store sentinel value {value}")
        draft = depth if draft is None else draft
        accept, existing = self._accepts(key, depth, draft)
        if not accept:
            return False

        if existing is None:
            f_minus, f_plus, previous_move = -VALUE_INF, VALUE_INF, None
            old = self._read(key)
            if old is not None:
                previous_move = old.best_move
        else:
            f_minus, f_plus = existing.f_minus, existing.f_plus
            previous_move = existing.best_move

        if kind == Bound.LOWER:
            f_minus = value
            if f_plus < value:
                f_plus = VALUE_INF
        else:
            f_plus = value
            if f_minus > value:
                f_minus = -VALUE_INF

        if best_move is None:
            best_move = previous_move
        self._write(BoundsEntry(key, f_minus, f_plus, best_move, depth), draft)
        self.stores += 1
        return True

    def store_exact(
        self,
        key: int,
        depth: int,
        value: int,
        best_move: int | None = None,
        *,
        draft: int | None = None,
    ) -> bool:
        """Store the exact value of a position.

        Args:
            key (int):
                The key of the position
            depth (int):
                The remaining depth of the search that determined the value
            value (int):
                The value from the perspective of the MAX player
            best_move (int, optional):
                The ordinal of the best move
            draft (int, optional):
                The priority of the entry when replacing other positions, which
                defaults to `depth`

        Returns:
            bool: Whether the information was stored
        """
        if not -VALUE_INF < value < VALUE_INF:
            raise ValueError(f"Cannot store sentinel value {value}")
        draft = depth if draft is None else draft
        accept, existing = self._accepts(key, depth, draft)
        if not accept:
            return False
        if best_move is None:
            old = self._read(key)
            best_move = None if old is None else old.best_move
        self._write(BoundsEntry(key, value, value, best_move, depth), draft)
        self.stores += 1
        return True

    def entries(self) -> Iterator[BoundsEntry]:
        """Iterate over all stored entries."""
        if self._data is None:
            yield from self._entries.values()
        else:
            for slot in np.flatnonzero(self._data["used"]):
                entry = self._read(int(self._data["key"][slot]))
                if entry is not None:
                    yield entry

    def clear(self) -> None:
        """Remove all entries and reset the statistics."""
        if self._data is None:
            self._entries.clear()
        else:
            self._data = np.zeros_like(self._data)
        self._reset_stats()

    def stats(self) -> TTStats:
        """Return usage statistics accumulated since the last :meth:`clear`."""
        return TTStats(
            probes=self.probes,
            hits=self.hits,
            stores=self.stores,
            evictions=self.evictions,
            occupancy=len(self),
            capacity=self.capacity,
        )

    def copy(self) -> TranspositionTable:
        """Return an independent copy of the table including its statistics."""
        result = copy.copy(self)
        if self._data is not None:
            result._data = self._data.copy()
        result._entries = dict(self._entries)
        return result
