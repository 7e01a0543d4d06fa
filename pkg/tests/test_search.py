import numpy as np
import pytest

from mtdsearch.games import MAX_DEPTH, VALUE_INF, minimax_value
from mtdsearch.search import (
    SearchContext,
    SearchStats,
    Window,
    algorithm_tags,
    alpha_beta,
    aspiration_negascout,
    depth_schedule,
    get_algorithm,
    iterative_deepen,
    mt,
    negascout,
    order_moves,
)
from mtdsearch.transposition import TTConfig
from mtdsearch.trees import PearlTree, SynthTreeConfig, SyntheticTree, random_configs

CONFIGS = random_configs(11, 12, branching=(2, 4), depth=(2, 5))


def lossless_context(game, **kwargs):
    """Create a context with a table that never loses entries."""
    return SearchContext(game, TTConfig(None), **kwargs)


def check_postcondition(game, root, depth, window):
    """Check the bounds returned by fail-soft searches with a window."""
    f = minimax_value(game, root, depth)
    alpha, beta = window
    for search in [alpha_beta, negascout]:
        g = search(lossless_context(game), root, depth, (alpha, beta))
        if alpha < g < beta:
            assert g == f
        elif g <= alpha:
            assert f <= g
        else:
            assert f >= g


def random_window(rng):
    """Draw a window with distinct ends covering the values of synthetic trees."""
    window = rng.choice(np.arange(-120, 121), size=2, replace=False)
    return tuple(sorted(int(v) for v in window))


@pytest.mark.parametrize("config", CONFIGS[:6])
def test_alpha_beta_postcondition(config, rng):
    """Test the bounds returned by Alpha-Beta for arbitrary windows."""
    game = SyntheticTree(config)
    root = game.initial_state()
    f = minimax_value(game, root, config.depth)
    assert alpha_beta(lossless_context(game), root, config.depth) == f
    assert negascout(lossless_context(game), root, config.depth) == f

    for _ in range(20):
        check_postcondition(game, root, config.depth, random_window(rng))


@pytest.mark.slow
def test_alpha_beta_postcondition_many(rng):
    """Test the bounds returned by Alpha-Beta on many trees, windows and depths."""
    for config in random_configs(12, 200, branching=(2, 4), depth=(2, 6)):
        game = SyntheticTree(config)
        depth = int(rng.integers(1, config.depth + 1))
        check_postcondition(game, game.initial_state(), depth, random_window(rng))


def check_mt_equivalence(game, root, depth, gamma):
    """Check that a test equals Alpha-Beta with a null window around `gamma`."""
    f = minimax_value(game, root, depth)
    ctx1 = lossless_context(game, trace_visits=True)
    ctx2 = lossless_context(game, trace_visits=True)
    g1 = mt(ctx1, root, depth, gamma)
    g2 = alpha_beta(ctx2, root, depth, Window.null(gamma))
    assert g1 == g2
    assert ctx1.stats.visit_trace == ctx2.stats.visit_trace
    assert (g1 >= gamma) == (f >= gamma)
    if g1 >= gamma:
        assert f >= g1
    else:
        assert f <= g1

    # the same holds for a second test reusing the information of the first
    ctx3 = ctx1.copy()
    g1 = mt(ctx1, root, depth, gamma + 3)
    g3 = alpha_beta(ctx3, root, depth, Window.null(gamma + 3))
    assert g1 == g3
    assert ctx1.stats.visit_trace == ctx3.stats.visit_trace
    assert ctx1.stats.mt_calls == 2


@pytest.mark.parametrize("config", CONFIGS)
def test_mt_is_null_window_alpha_beta(config):
    """Test that a test with storage equals Alpha-Beta with a null window."""
    game = SyntheticTree(config)
    root = game.initial_state()
    f = minimax_value(game, root, config.depth)
    for gamma in [f - 7, f, f + 1, f + 30]:
        check_mt_equivalence(game, root, config.depth, gamma)


@pytest.mark.slow
def test_mt_is_null_window_alpha_beta_many(rng):
    """Test the equality of both null-window searches on many trees."""
    for config in random_configs(13, 200, branching=(2, 4), depth=(2, 6)):
        game = SyntheticTree(config)
        root = game.initial_state()
        gamma = minimax_value(game, root, config.depth) + int(rng.integers(-10, 11))
        check_mt_equivalence(game, root, config.depth, gamma)


def test_mt_min_root():
    """Test the conversion of values at roots where MIN is to move."""
    game = PearlTree()
    h = game.node("h")
    assert minimax_value(game, h, 3) == 35
    ctx = lossless_context(game)
    assert mt(ctx, h, 3, 36) < 36
    assert mt(ctx, h, 3, 35) >= 35
    assert alpha_beta(lossless_context(game), h, 3) == 35
    assert negascout(lossless_context(game), h, 3, (30, 40)) == 35


def test_small_table_keeps_root():
    """Test that evaluated end positions do not block the slots of a small table."""
    game = SyntheticTree(SynthTreeConfig(3, branching=4, depth=6))
    root = game.initial_state()
    ctx = SearchContext(game, TTConfig(4))
    f = alpha_beta(ctx, root, 6)
    assert f == minimax_value(game, root, 6)

    entry = ctx.table.probe(game.state_key(root))
    assert entry is not None
    assert entry.depth == 6
    assert entry.exact and entry.f_minus == f
    assert any(e.depth < MAX_DEPTH for e in ctx.table.entries())


def test_search_arguments():
    """Test the validation of search arguments."""
    game = PearlTree()
    root = game.initial_state()
    ctx = SearchContext(game)
    with pytest.raises(ValueError):
        mt(ctx, root, 4, -VALUE_INF)
    with pytest.raises(ValueError):
        mt(ctx, root, -1, 0)
    with pytest.raises(ValueError):
        alpha_beta(ctx, root, 4, (5, 5))
    with pytest.raises(ValueError):
        negascout(ctx, root, 4, (-VALUE_INF - 1, 0))
    with pytest.raises(ValueError):
        SearchContext(game, asp_width=0)
    with pytest.raises(ValueError):
        SearchContext(game, step_size=0)
    assert Window.full().check() == (-VALUE_INF, VALUE_INF)
    assert Window.null(3) == (2, 3)


def test_aspiration_search():
    """Test the repeated searches of the aspiration window."""
    config = SynthTreeConfig(seed=5, branching=3, depth=4)
    game = SyntheticTree(config)
    root = game.initial_state()
    f = minimax_value(game, root, 4)

    for center, researches in [(f, 0), (f + 50, 1), (f - 50, 1)]:
        ctx = SearchContext(game)
        assert aspiration_negascout(ctx, root, 4, center) == f
        assert ctx.stats.researches == researches
    ctx = SearchContext(game, asp_width=300)
    assert aspiration_negascout(ctx, root, 4, f + 50) == f
    assert ctx.stats.researches == 0
    with pytest.raises(ValueError):
        aspiration_negascout(ctx, root, 4, f, width=-1)


def test_pearl_alpha_beta():
    """Test the counters of Alpha-Beta on the worked example tree."""
    game = PearlTree()
    ctx = lossless_context(
        game, use_tt_move=False, use_history=False, trace_leaves=True
    )
    assert alpha_beta(ctx, game.initial_state(), 4) == 35
    assert ctx.stats.leaf_trace == ["e", "n", "g", "k", "m", "o", "s", "t"]
    assert ctx.stats.leaf_evals == 8
    assert ctx.stats.transposition_hits == 0
    assert ctx.stats.total_nodes == len(ctx.stats.distinct_states) == 19
    stored = ctx.table.probe(game.state_key(game.initial_state()))
    assert stored.exact and stored.f_minus == 35
    assert stored.best_move == 1


def test_move_ordering():
    """Test that stored moves and the history heuristic order moves."""
    game = PearlTree()
    root = game.initial_state()
    ctx = SearchContext(game)
    alpha_beta(ctx, root, 4)
    assert [m.ordinal for m in order_moves(ctx, root)] == [1, 0]
    assert ctx.history

    scores = dict(ctx.history)
    ctx.age_history()
    for feature, score in ctx.history.items():
        assert score == scores[feature] // 2

    ctx = SearchContext(game, use_tt_move=False, use_history=False)
    alpha_beta(ctx, root, 4)
    assert [m.ordinal for m in order_moves(ctx, root)] == [0, 1]
    assert not ctx.history


def test_search_stats():
    """Test accumulating search statistics."""
    stats = SearchStats(leaf_trace=[])
    stats.record_cutoff(1, 1)
    stats.record_cutoff(1, 3)
    stats.record_cutoff(100, 2)
    assert stats.cut_nodes[1] == 2
    assert stats.cut_nodes[-1] == 1
    rates = stats.first_move_cutoff_rate()
    assert rates[1] == 0.5
    assert np.isnan(rates[0])
    assert stats.mean_moves_at_cut()[1] == 2

    stats.leaf_evals = 3
    stats.leaf_trace.extend(["a", "b", "c"])
    stats.distinct_states.update({1, 2})
    clone = stats.copy()
    clone.add(stats)
    assert clone.leaf_evals == 6
    assert clone.leaf_trace == ["a", "b", "c"] * 2
    assert clone.cut_nodes[1] == 4
    assert clone.to_dict()["distinct_states"] == 2
    assert stats.leaf_evals == 3
    assert stats.fresh().visit_trace is None


def test_registry():
    """Test the registry of algorithms."""
    tags = algorithm_tags()
    for tag in ["ab", "nega", "asp-nega", "sss", "dual", "mtdf", "mtdbi", "mtdstep"]:
        assert tag in tags
        assert callable(get_algorithm(tag))
    with pytest.raises(ValueError, match="Unknown algorithm"):
        get_algorithm("minimax")


@pytest.mark.parametrize("algorithm", ["ab", "asp-nega", "sss", "mtdf", "mtdbi"])
def test_iterative_deepening(algorithm):
    """Test the values and guesses of iterative deepening."""
    config = SynthTreeConfig(seed=8, branching=(2, 4), depth=5)
    game = SyntheticTree(config)
    root = game.initial_state()
    ctx = SearchContext(game)
    result = iterative_deepen(ctx, root, 5, algorithm)
    assert result.values == [minimax_value(game, root, d) for d in range(1, 6)]
    assert result.depth == 5
    assert result.value == minimax_value(game, root, 5)
    assert result.iterations[0].guess == game.evaluate(root)
    for previous, iteration in zip(result.iterations, result.iterations[1:]):
        assert iteration.guess == previous.value
        assert iteration.wall_time >= 0
    total = sum(it.stats.leaf_evals for it in result.iterations)
    assert result.stats.leaf_evals == ctx.stats.leaf_evals == total

    ctx = SearchContext(game)
    result = iterative_deepen(ctx, root, 5, algorithm, step=2, guess=7)
    assert [it.depth for it in result.iterations] == [1, 3, 5]
    assert all(it.guess == 7 for it in result.iterations)


def test_guess_policies():
    """Test the policies determining the first guess."""
    game = PearlTree()
    root = game.initial_state()
    result = iterative_deepen(SearchContext(game), root, 4, "mtdf", guess="prev2")
    guesses = [it.guess for it in result.iterations]
    values = result.values
    assert guesses[:2] == [0, values[0]]
    assert guesses[2:] == values[:2]

    result = iterative_deepen(
        SearchContext(game), root, 4, "mtdf", guess=lambda d, v: 10 * d
    )
    assert [it.guess for it in result.iterations] == [10, 20, 30, 40]

    result = iterative_deepen(SearchContext(game), root, 4, "ab", depths=[2, 4])
    assert [it.depth for it in result.iterations] == [2, 4]
    assert result.value == 35

    with pytest.raises(ValueError):
        iterative_deepen(SearchContext(game), root, 4, "mtdf", guess="next")
    with pytest.raises(ValueError):
        iterative_deepen(SearchContext(game), root, 4, "ab", depths=[])


def test_depth_schedule():
    """Test the depths of iterative deepening."""
    assert depth_schedule(4) == [1, 2, 3, 4]
    assert depth_schedule(8, 2) == [2, 4, 6, 8]
    assert depth_schedule(5, 2) == [1, 3, 5]
    assert depth_schedule(2, 5) == [2]
    for args in [(0, 1), (3, 0)]:
        with pytest.raises(ValueError):
            depth_schedule(*args)
