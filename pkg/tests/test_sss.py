import pytest

from mtdsearch.games import VALUE_INF
from mtdsearch.search import SearchContext, alpha_beta
from mtdsearch.sss import (
    GammaCaseError,
    NodeStatus,
    OpenEntry,
    StockmanSearch,
    equivalence_check,
    sss_star,
)
from mtdsearch.transposition import TTConfig
from mtdsearch.trees import ExplicitTree, PearlTree, SyntheticTree, random_configs

LIVE, SOLVED = NodeStatus.LIVE, NodeStatus.SOLVED

# paths of some nodes of the worked example tree
E, N, G = (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)
K, L, M, O = (1, 0, 0, 0), (1, 0, 1), (1, 0, 1, 0), (1, 0, 1, 1)


def test_pearl_open_list():
    """Test the open list search on the worked example tree."""
    result = sss_star(PearlTree(), PearlTree().initial_state(), 4)
    assert result.value == 35
    assert result.leaf_trace == ["e", "g", "k", "m", "n", "o", "s", "t"]
    assert result.leaf_values == [41, 12, 34, 36, 5, 35, 50, 36]
    assert result.leaf_evals == 8
    assert len(result.snapshots) == 4
    assert result.snapshots[0] == ["(e,S,41)", "(m,S,36)", "(k,S,34)", "(g,S,12)"]
    assert result.snapshots[-1] == ["(a,S,35)"]
    assert sum(result.case_counts.values()) > 8
    assert result.case_counts[4] == 8

    lines = result.trace_lines()
    assert lines[0] == "EVAL e 41"
    assert lines[8].startswith("OPEN [(e,S,41)")
    assert lines[-1] == "VALUE 35"

    steps = sss_star(PearlTree(), PearlTree().initial_state(), 4, checkpoints="steps")
    assert len(steps.snapshots) == sum(steps.case_counts.values())
    assert steps.snapshots[0] == ["(b,L,+inf)", "(h,L,+inf)"]
    assert not sss_star(
        PearlTree(), PearlTree().initial_state(), 4, checkpoints="none"
    ).snapshots
    with pytest.raises(ValueError):
        sss_star(PearlTree(), PearlTree().initial_state(), 4, checkpoints="all")


def test_gamma_cases():
    """Test the individual transformations of the open list."""
    tree = PearlTree()
    search = StockmanSearch(tree, tree.initial_state(), 4)

    # the live root is replaced by its children and b by its only child
    open_list = search.apply_gamma([OpenEntry((), LIVE, VALUE_INF)])
    assert open_list == [
        OpenEntry((0,), LIVE, VALUE_INF),
        OpenEntry((1,), LIVE, VALUE_INF),
    ]
    open_list = search.apply_gamma(open_list)
    assert open_list[0] == OpenEntry((0, 0), LIVE, VALUE_INF)
    assert search.case_counts[6] == 1
    assert search.case_counts[5] == 1

    # a solved MAX node is followed by its brother, which is then evaluated
    open_list = search.apply_gamma([OpenEntry(E, SOLVED, 41), OpenEntry(M, SOLVED, 36)])
    assert open_list == [OpenEntry(N, LIVE, 41), OpenEntry(M, SOLVED, 36)]
    assert search.case_counts[2] == 1
    open_list = search.apply_gamma(open_list)
    assert open_list == [OpenEntry(M, SOLVED, 36), OpenEntry(N, SOLVED, 5)]
    assert search.leaf_trace == ["n"]
    assert search.leaf_values == [5]

    # the last child solves the MIN node l, which in turn solves i
    open_list = [
        OpenEntry(O, SOLVED, 35),
        OpenEntry(K, SOLVED, 34),
        OpenEntry(G, SOLVED, 12),
    ]
    open_list = search.apply_gamma(open_list)
    assert open_list[0] == OpenEntry(L, SOLVED, 35)
    assert search.case_counts[3] == 1
    open_list = search.apply_gamma(open_list)
    assert open_list == [OpenEntry((1, 0), SOLVED, 35), OpenEntry(G, SOLVED, 12)]
    assert search.case_counts[1] == 1

    with pytest.raises(GammaCaseError):
        search.apply_gamma([])
    with pytest.raises(GammaCaseError):
        search.apply_gamma([OpenEntry((), SOLVED, 35)])


def test_open_list_order():
    """Test that solved leaves are inserted by merit and position."""
    tree = ExplicitTree.from_nested([[5], [5], [9]])
    result = sss_star(tree, tree.initial_state(), 2, checkpoints="steps")
    assert result.value == 9
    # ties keep the left-to-right order of the tree
    assert ["(0.0,S,5)", "(1,L,+inf)", "(2,L,+inf)"] not in result.snapshots
    assert ["(2.0,S,9)", "(0.0,S,5)", "(1.0,S,5)"] in result.snapshots
    assert result.leaf_trace == ["0.0", "1.0", "2.0"]


def test_open_list_errors():
    """Test invalid arguments of the open list search."""
    tree = PearlTree()
    with pytest.raises(ValueError):
        StockmanSearch(tree, tree.node("h"), 3)
    with pytest.raises(ValueError):
        StockmanSearch(tree, tree.initial_state(), -1)
    result = sss_star(tree, tree.initial_state(), 0)
    assert result.value == 0
    assert result.leaf_trace == ["a"]


@pytest.mark.parametrize("config", random_configs(31, 20, depth=(1, 5)))
def test_equivalence_random_trees(config):
    """Test that the sequence of tests evaluates the leaves of the open list."""
    game = SyntheticTree(config)
    report = equivalence_check(game, game.initial_state(), config.depth)
    assert report.passed, report.describe()
    assert report.first_divergence is None
    assert report.describe().startswith("PASS")


UNIFORM_CONFIGS = random_configs(
    41, 20, branching=(2, 4), depth=(2, 5), fixed_branching=True
)


def check_dominance(config):
    """Check that the open list search only evaluates leaves Alpha-Beta evaluates."""
    game = SyntheticTree(config)
    root = game.initial_state()
    result = sss_star(game, root, config.depth, checkpoints="none")

    ctx = SearchContext(
        game, TTConfig(None), use_tt_move=False, use_history=False, trace_leaves=True
    )
    assert alpha_beta(ctx, root, config.depth) == result.value
    assert set(result.leaf_trace) <= set(ctx.stats.leaf_trace)
    assert result.leaf_evals <= ctx.stats.leaf_evals
    assert result.max_open <= config.storage_bound("max")


@pytest.mark.parametrize("config", UNIFORM_CONFIGS)
def test_dominance_over_alpha_beta(config):
    """Test that the open list search never evaluates leaves Alpha-Beta skips."""
    check_dominance(config)


@pytest.mark.slow
def test_dominance_over_alpha_beta_many():
    """Test the dominance of the open list search on many trees."""
    configs = random_configs(
        42, 500, branching=(2, 4), depth=(2, 6), fixed_branching=True
    )
    for config in configs:
        check_dominance(config)


def test_equivalence_report():
    """Test the comparison of diverging traces."""
    tree = PearlTree()
    root = tree.initial_state()
    with pytest.warns(UserWarning):
        report = equivalence_check(tree, root, 4, table=TTConfig(4))
    assert report.values == (35, 35)

    # altered traces are reported at their first difference
    report = equivalence_check(tree, root, 4)
    report.traces = (report.traces[0], report.traces[1][:-1] + ["x"])
    assert not report.passed
    assert report.first_divergence == 7
    assert report.describe().startswith("FAIL")
    report.traces = (report.traces[0], report.traces[0][:5])
    assert report.first_divergence == 5
