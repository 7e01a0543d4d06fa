import pytest

from mtdsearch.drivers import (
    BoundPolicyError,
    mtd,
    mtd_best,
    mtd_bi,
    mtd_f,
    mtd_minus_inf,
    mtd_plus_inf,
    mtd_step,
)
from mtdsearch.games import VALUE_INF, Side, minimax_value, root_move_values
from mtdsearch.search import SearchContext
from mtdsearch.transposition import TTConfig
from mtdsearch.trees import ExplicitTree, PearlTree, SyntheticTree, random_configs

CONFIGS = random_configs(21, 15, branching=(2, 4), depth=(2, 5))


def static_context(game, bits=None, **kwargs):
    """Create a context searching moves in their static order."""
    return SearchContext(
        game, TTConfig(bits), use_tt_move=False, use_history=False, **kwargs
    )


def test_pearl_sequence():
    """Test the sequence of tests on the worked example tree."""
    game = PearlTree()
    root = game.initial_state()
    ctx = static_context(game, trace_leaves=True)
    seen = []
    value, state = mtd_plus_inf(
        ctx, root, 4, full_output=True, callback=lambda s: seen.append(s.g)
    )
    assert value == 35
    assert state.done
    assert state.mt_calls == ctx.stats.mt_calls == 4
    assert state.passes == [(VALUE_INF, 41), (41, 36), (36, 35), (35, 35)]
    assert seen == [41, 36, 35, 35]
    assert ctx.stats.leaf_trace == ["e", "g", "k", "m", "n", "o", "s", "t"]

    # a perfect guess requires a single search of each kind
    value, state = mtd_f(static_context(game), root, 4, 35, full_output=True)
    assert value == 35
    assert state.passes == [(35, 35), (36, 35)]

    for guess in [-1000, 0, 20, 100, VALUE_INF]:
        assert mtd_f(static_context(game), root, 4, guess) == 35
    assert mtd_minus_inf(static_context(game), root, 4) == 35


def test_bisection():
    """Test the bisection of the value range."""
    game = PearlTree()
    root = game.initial_state()
    lower, upper = game.value_bounds(root)
    assert (lower, upper) == (0, 50)
    value, state = mtd_bi(
        static_context(game), root, 4, lower=lower, upper=upper, full_output=True
    )
    assert value == 35
    assert state.mt_calls <= 7
    assert state.passes[0][0] == 25
    assert mtd_bi(static_context(game), root, 4) == 35


def test_constant_tree():
    """Test trees whose leaves all have the same value."""
    tree = ExplicitTree.from_nested([[7, 7, 7], [7, 7], [[7, 7], 7]])
    root = tree.initial_state()
    for driver in [mtd_plus_inf, mtd_minus_inf]:
        value, state = driver(static_context(tree), root, 3, full_output=True)
        assert value == 7
        assert state.mt_calls == 2
    value, state = mtd_f(static_context(tree), root, 3, 7, full_output=True)
    assert value == 7
    assert state.mt_calls == 2
    value, state = mtd_bi(
        static_context(tree), root, 3, lower=7, upper=7, full_output=True
    )
    assert value == 7
    assert state.mt_calls == 0


@pytest.mark.parametrize("config", CONFIGS)
@pytest.mark.parametrize("bits", [None, 4])
def test_drivers_agree(config, bits):
    """Test that all drivers determine the minimax value."""
    game = SyntheticTree(config)
    root = game.initial_state()
    d = config.depth
    f = minimax_value(game, root, d)

    assert mtd_plus_inf(SearchContext(game, TTConfig(bits)), root, d) == f
    assert mtd_minus_inf(SearchContext(game, TTConfig(bits)), root, d) == f
    for guess in [f - 15, f, f + 4]:
        assert mtd_f(SearchContext(game, TTConfig(bits)), root, d, guess) == f
    assert mtd_bi(SearchContext(game, TTConfig(bits)), root, d) == f
    assert (
        mtd_bi(SearchContext(game, TTConfig(bits)), root, d, lower=-100, upper=100)
        == f
    )
    for step in [2, 5, 50]:
        assert mtd_step(SearchContext(game, TTConfig(bits)), root, d, step) == f


def enumerate_nodes(game, root):
    """Map the keys of all nodes of a synthetic tree to the nodes."""
    nodes, stack = {}, [root]
    while stack:
        state = stack.pop()
        nodes[game.state_key(state)] = state
        stack.extend(game._make_child(state, m) for m in game.legal_moves(state))
    return nodes


DRIVER_CALLS = {
    "sss": lambda ctx, root, d, **kw: mtd_plus_inf(ctx, root, d, **kw),
    "dual": lambda ctx, root, d, **kw: mtd_minus_inf(ctx, root, d, **kw),
    "mtdf": lambda ctx, root, d, **kw: mtd_f(ctx, root, d, 0, **kw),
    "bi": lambda ctx, root, d, **kw: mtd_bi(ctx, root, d, **kw),
    "step": lambda ctx, root, d, **kw: mtd_step(ctx, root, d, 7, **kw),
}


@pytest.mark.parametrize("config", CONFIGS[:8])
@pytest.mark.parametrize("bits", [None, 4])
def test_stored_bounds_bracket_values(config, bits):
    """Test that all bounds left in the table enclose the minimax values."""
    game = SyntheticTree(config)
    root = game.initial_state()
    nodes = enumerate_nodes(game, root)
    for driver in DRIVER_CALLS.values():
        ctx = SearchContext(game, TTConfig(bits))
        driver(ctx, root, config.depth)
        assert len(ctx.table) > 0
        for entry in ctx.table.entries():
            value = minimax_value(game, nodes[entry.key], entry.depth)
            assert entry.f_minus <= value <= entry.f_plus


@pytest.mark.parametrize("config", CONFIGS)
def test_bounds_narrow_monotonically(config):
    """Test that each test tightens the bounds on the value of the root."""
    game = SyntheticTree(config)
    root = game.initial_state()
    f = minimax_value(game, root, config.depth)
    for name, driver in DRIVER_CALLS.items():
        bounds = []
        value, state = driver(
            SearchContext(game, TTConfig(None)),
            root,
            config.depth,
            full_output=True,
            callback=lambda s: bounds.append((s.f_minus, s.f_plus)),
        )
        assert value == f, name
        assert len(bounds) == state.mt_calls
        lower, upper = zip(*bounds)
        assert list(lower) == sorted(lower), name
        assert list(upper) == sorted(upper, reverse=True), name
        assert all(lo <= f <= up for lo, up in bounds)
        assert bounds[-1] == (f, f)


@pytest.mark.parametrize("config", CONFIGS[:8])
def test_unit_step_reproduces_upper_bound_sequence(config):
    """Test that steps of size one lower the upper bound like the plain driver."""
    game = SyntheticTree(config)
    root = game.initial_state()
    ctx1 = static_context(game, trace_leaves=True)
    ctx2 = static_context(game, trace_leaves=True)
    v1, s1 = mtd_plus_inf(ctx1, root, config.depth, full_output=True)
    v2, s2 = mtd_step(ctx2, root, config.depth, 1, full_output=True)
    assert v1 == v2
    assert s1.passes == s2.passes
    assert ctx1.stats.leaf_trace == ctx2.stats.leaf_trace


def test_dual_sequence_on_negated_tree():
    """Test that raising a lower bound mirrors lowering an upper bound."""
    tree = PearlTree()
    negated = tree.negated()
    ctx1 = static_context(tree, trace_leaves=True)
    ctx2 = static_context(negated, trace_leaves=True)
    v1, s1 = mtd_minus_inf(ctx1, tree.initial_state(), 4, full_output=True)
    v2, s2 = mtd_plus_inf(ctx2, negated.initial_state(), 4, full_output=True)
    assert v1 == -v2 == 35
    assert [g for _, g in s1.passes] == [-g for _, g in s2.passes]
    assert ctx1.stats.leaf_trace == ctx2.stats.leaf_trace

    for config in CONFIGS[:5]:
        game = SyntheticTree(config)
        root = game.initial_state()
        explicit = ExplicitTree.from_nested(nested(game, root))
        neg = explicit.negated()
        ctx1 = static_context(explicit, trace_leaves=True)
        ctx2 = static_context(neg, trace_leaves=True)
        v1 = mtd_minus_inf(ctx1, explicit.initial_state(), config.depth)
        v2 = mtd_plus_inf(ctx2, neg.initial_state(), config.depth)
        assert v1 == -v2 == minimax_value(game, root, config.depth)
        assert ctx1.stats.leaf_trace == ctx2.stats.leaf_trace


def nested(game, state):
    """Convert a game tree into the nested description of explicit trees."""
    children = game.children(state)
    if not children:
        return game.evaluate(state)
    return [nested(game, child) for _, child in children]


def test_bound_policy_errors():
    """Test the validation of test values."""
    game = PearlTree()
    root = game.initial_state()
    with pytest.raises(BoundPolicyError):
        mtd(static_context(game), root, 4, VALUE_INF, lambda s: s.f_plus + 1)
    with pytest.raises(BoundPolicyError):
        mtd(static_context(game), root, 4, -VALUE_INF, lambda s: s.g)
    with pytest.raises(ValueError):
        mtd(static_context(game), root, 4, 0, lambda s: s.g, lower=5, upper=4)
    with pytest.raises(ValueError):
        mtd_step(static_context(game), root, 4, 0)


def test_best_move_pearl():
    """Test selecting the best move of the worked example tree."""
    game = PearlTree()
    root = game.initial_state()
    result = mtd_best(static_context(game), root, 4, full_output=True)
    assert result.move.ordinal == 1
    assert result.mt_calls == 4
    assert result.bounds[0] == (12, 12)
    assert 13 <= result.bounds[1][0] <= 35
    assert result.bounds[1][1] == VALUE_INF
    assert mtd_best(SearchContext(game), root, 4) == result.move

    # MIN prefers the left child of node h
    h = game.node("h")
    result = mtd_best(static_context(game), h, 3, full_output=True)
    assert result.move.ordinal == 0
    lower, upper = result.bounds[0]
    assert lower <= 35 <= upper
    assert result.bounds[1][0] >= upper

    # nodes with a single move do not require any search
    result = mtd_best(static_context(game), game.node("b"), 3, full_output=True)
    assert result.move.ordinal == 0
    assert result.mt_calls == 0

    with pytest.raises(ValueError):
        mtd_best(static_context(game), root, 0)
    with pytest.raises(ValueError):
        mtd_best(static_context(game), game.node("e"), 2)


@pytest.mark.parametrize("config", CONFIGS)
def test_best_move_random_trees(config):
    """Test that the selected move attains the minimax value."""
    game = SyntheticTree(config)
    root = game.initial_state()
    values = root_move_values(game, root, config.depth)
    for guess in [None, 0, max(values)]:
        ctx = SearchContext(game, TTConfig(None))
        result = mtd_best(ctx, root, config.depth, guess, full_output=True)
        assert values[result.move.ordinal] == max(values)
        for ordinal, (lower, upper) in result.bounds.items():
            assert lower <= values[ordinal] <= upper
        assert ctx.stats.mt_calls == result.mt_calls
    assert root.side == Side.MAX
