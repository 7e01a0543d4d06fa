"""Miscellaneous functions.

.. autosummary::
   :nosignatures:

   format_value
   parse_int_range
   write_csv
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

from ..games import VALUE_INF


def format_value(value: int) -> str:
    """Return a human readable representation of a search value.

    The sentinels :data:`~mtdsearch.games.VALUE_INF` and its negative are shown as
    `+inf` and `-inf`, respectively.

    Args:
        value (int):
            The value to format

    Returns:
        str: The formatted value
    """
    if value >= VALUE_INF:
        return "+inf"
    elif value <= -VALUE_INF:
        return "-inf"
    else:
        return str(value)


def parse_int_range(text: str) -> int | tuple[int, int]:
    """Parse an integer or an inclusive range of the form `min..max`.

    Args:
        text (str):
            The text to parse, e.g. `3` or `2..4`

    Returns:
        int or tuple: A single integer or a tuple `(min, max)`
    """
    if ".." in text:
        low, high = (int(part) for part in text.split("..", 1))
        if high < low:
            raise ValueError(f"Empty range `{text}`")
        if low == high:
            return low
        return low, high
    return int(text)


def write_csv(
    path: str | Path | None,
    rows: Iterable[Mapping[str, Any]],
    columns: Sequence[str],
) -> str:
    """Write rows with fixed columns in CSV format.

    Args:
        path (str or :class:`~pathlib.Path`, optional):
            The file to which the data is written. If `None`, nothing is written to
            disk and only the text is returned.
        rows (iterable of dict):
            The rows to write. Keys that are not listed in `columns` are ignored.
        columns (sequence of str):
            The column names, which also determine their order

    Returns:
        str: The CSV text
    """
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    text = buffer.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
