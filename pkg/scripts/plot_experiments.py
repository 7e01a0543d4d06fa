#!/usr/bin/env python3
"""Plot the CSV files written by the experiments of the `mtdsearch` package.

The kind of experiment is inferred from the columns of the file. Memory sweeps show
the leaf count relative to Alpha-Beta as a function of the table size, guess sweeps
show the tree size relative to the baseline as a function of the distortion of the
first guess, and ordering reports show the fraction of first-move cutoffs by ply.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import matplotlib.pyplot as plt

PACKAGE_PATH = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PACKAGE_PATH))

from mtdsearch.experiments import summarize_rows  # noqa: E402


def read_rows(path: Path) -> list[dict[str, str]]:
    """Read all rows of a CSV file."""
    with path.open(encoding="utf-8", newline="") as fp:
        return list(csv.DictReader(fp))


def detect_kind(rows: list[dict[str, str]]) -> str:
    """Determine the experiment that produced the rows."""
    if not rows:
        raise ValueError("The file does not contain any rows")
    columns = set(rows[0])
    if "leaf_ratio" in columns:
        return "memsweep"
    elif "delta" in columns:
        return "guess-sweep"
    elif "first_move_cutoff_rate" in columns:
        return "ordering"
    raise ValueError(f"Cannot plot files with columns {sorted(columns)}")


def plot_memsweep(ax, rows: list[dict[str, str]]) -> None:
    """Plot leaf ratios against the table size."""
    for algorithm in dict.fromkeys(row["algorithm"] for row in rows):
        selected = [r for r in rows if r["algorithm"] == algorithm]
        sizes = [r["tt_bits"] for r in selected]
        ratios = [float(r["leaf_ratio"]) for r in selected]
        ax.plot(sizes, ratios, "o-", label=algorithm)
    ax.axhline(1, color="k", lw=0.5)
    ax.set_xlabel("Binary logarithm of the table size")
    ax.set_ylabel("Leaf evaluations relative to Alpha-Beta")
    ax.legend()


def plot_guess_sweep(ax, rows: list[dict[str, str]]) -> None:
    """Plot the mean tree size against the distortion of the first guess."""
    data = [
        {
            "delta": int(r["delta"]),
            "leaf_pct": float(r["leaf_pct"]),
            "total_pct": float(r["total_pct"]),
        }
        for r in rows
    ]
    summary = sorted(
        summarize_rows(data, "delta", ["leaf_pct", "total_pct"]),
        key=lambda r: r["delta"],
    )
    deltas = [r["delta"] for r in summary]
    ax.plot(deltas, [r["leaf_pct"] for r in summary], "o-", label="leaf nodes")
    ax.plot(deltas, [r["total_pct"] for r in summary], "s-", label="total nodes")
    ax.axhline(100, color="k", lw=0.5)
    ax.set_xlabel("Distortion of the first guess")
    ax.set_ylabel("Tree size relative to the baseline [%]")
    ax.legend()


def plot_ordering(ax, rows: list[dict[str, str]]) -> None:
    """Plot the fraction of first-move cutoffs against the ply."""
    plies = [int(r["ply"]) for r in rows]
    rates = [100 * float(r["first_move_cutoff_rate"]) for r in rows]
    ax.plot(plies, rates, "o-")
    ax.set_ylim(0, 100)
    ax.set_xlabel("Ply")
    ax.set_ylabel("Cutoffs caused by the first move [%]")


PLOTTERS = {
    "memsweep": plot_memsweep,
    "guess-sweep": plot_guess_sweep,
    "ordering": plot_ordering,
}


def plot_file(path: Path, output: Path | None = None) -> Path:
    """Create a figure of the experiment stored in a CSV file.

    Args:
        path (:class:`~pathlib.Path`):
            The CSV file
        output (:class:`~pathlib.Path`, optional):
            The image file, which defaults to the CSV file with suffix `.png`

    Returns:
        :class:`~pathlib.Path`: The image file
    """
    rows = read_rows(path)
    kind = detect_kind(rows)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    PLOTTERS[kind](ax, rows)
    ax.set_title(f"{kind}: {path.stem}")
    fig.tight_layout()
    if output is None:
        output = path.with_suffix(".png")
    fig.savefig(output)
    plt.close(fig)
    return output


def main() -> int:
    """Plot all files given on the command line."""
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("files", nargs="+", type=Path, help="CSV files to plot")
    parser.add_argument(
        "-o", "--out", type=Path, help="Image file (only for a single input file)"
    )
    args = parser.parse_args()
    if args.out is not None and len(args.files) > 1:
        parser.error("--out requires a single input file")
    for path in args.files:
        print(f"Wrote `{plot_file(path, args.out)}`")
    return 0


if __name__ == "__main__":
    sys.exit(main())
