"""Minimax search algorithms built on memory-enhanced null-window tests."""

# determine the package version
try:
    # try reading version of the automatically generated module
    from ._version import __version__
except ImportError:
    # determine version automatically from CVS information
    from importlib.metadata import PackageNotFoundError, version

    try:
        __version__ = version("py-mtdsearch")
    except PackageNotFoundError:
        # package is not installed, so we cannot determine any version
        __version__ = "unknown"
    del PackageNotFoundError, version  # clean name space

from .drivers import mtd, mtd_best, mtd_bi, mtd_f, mtd_minus_inf, mtd_plus_inf, mtd_step
from .games import VALUE_INF, GameBase, GameState, Move, Side, minimax_value
from .othello import OthelloGame
from .search import (
    SearchContext,
    alpha_beta,
    aspiration_negascout,
    iterative_deepen,
    mt,
    negascout,
)
from .sss import equivalence_check, sss_star
from .transposition import TranspositionTable, TTConfig
from .trees import ExplicitTree, PearlTree, SynthTreeConfig, SyntheticTree
