import pytest

from mtdsearch.games import MAX_DEPTH, VALUE_INF
from mtdsearch.transposition import Bound, TranspositionTable, TTConfig


@pytest.mark.parametrize("bits", [None, 4])
def test_store_bounds(bits):
    """Test merging bounds stored for the same position."""
    table = TranspositionTable(TTConfig(bits))
    assert table.probe(3) is None

    assert table.store(3, 2, "lower", 5, best_move=1)
    entry = table.probe(3)
    assert (entry.f_minus, entry.f_plus, entry.best_move) == (5, VALUE_INF, 1)
    assert not entry.exact

    table.store(3, 2, Bound.UPPER, 8)
    entry = table.probe(3)
    assert (entry.f_minus, entry.f_plus, entry.best_move) == (5, 8, 1)

    # a contradicting bound resets the other one
    table.store(3, 2, Bound.UPPER, 2)
    entry = table.probe(3)
    assert (entry.f_minus, entry.f_plus) == (-VALUE_INF, 2)

    table.store_exact(3, 2, 4)
    assert table.probe(3).exact
    assert table.probe(3).best_move == 1

    # results of a different depth replace the bounds
    table.store(3, 4, "lower", 1)
    entry = table.probe(3)
    assert (entry.f_minus, entry.f_plus, entry.depth) == (1, VALUE_INF, 4)

    stats = table.stats()
    assert stats.probes == 7
    assert stats.hits == 6
    assert stats.stores == 5
    assert stats.occupancy == len(table) == 1
    assert stats.capacity == (None if bits is None else 16)

    with pytest.raises(ValueError):
        table.store(3, 2, "lower", VALUE_INF)
    with pytest.raises(ValueError):
        table.store_exact(3, 2, -VALUE_INF)
    with pytest.raises(ValueError):
        table.store(3, 2, "exact", 0)


def test_replacement_policies():
    """Test the replacement of entries in bounded tables."""
    table = TranspositionTable(TTConfig(4, policy="deep"))
    assert table.store(1, 3, "lower", 0)
    assert not table.store(1, 2, "lower", 0)  # shallower result of the same position
    assert not table.store(17, 2, "lower", 0)  # shallower result in the same slot
    assert table.probe(1) is not None
    assert table.store(17, 5, "upper", 9)
    assert table.probe(1) is None
    assert table.probe(17).f_plus == 9
    assert table.evictions == 1
    assert len(table) == 1

    table = TranspositionTable(TTConfig(4, policy="always"))
    table.store(1, 3, "lower", 0)
    assert table.store(17, 2, "lower", 0)
    assert table.probe(1) is None
    assert table.probe(17).depth == 2

    # lossless tables keep every entry
    table = TranspositionTable(TTConfig(None))
    for key in range(100):
        table.store_exact(key << 20, 1, key)
    assert len(table) == 100
    assert sorted(e.f_minus for e in table.entries()) == list(range(100))
    assert table.stats().evictions == 0


def test_table_copy_and_clear():
    """Test copying and clearing tables."""
    table = TranspositionTable(TTConfig(6))
    table.store_exact(5, 1, 10)
    clone = table.copy()
    clone.store_exact(5, 1, 20)
    clone.store_exact(6, 1, 30)
    assert table.probe(5).f_minus == 10
    assert table.probe(6) is None
    assert clone.probe(5).f_minus == 20
    assert [e.key for e in clone.entries()] == [5, 6]

    clone.clear()
    assert len(clone) == 0
    assert clone.probe(5) is None
    assert clone.stats().probes == 1
    assert len(table) == 1


def test_config():
    """Test the configuration of tables."""
    assert TTConfig().log2_entries == 18
    assert TranspositionTable().capacity == 1 << 18
    assert TTConfig.from_flag("lossless").lossless
    assert TTConfig.from_flag(None).label == "lossless"
    assert TTConfig.from_flag("12").label == "12"
    assert TTConfig.from_flag(8, policy="always").policy == "always"
    for kwargs in [{"log2_entries": 3}, {"log2_entries": 31}, {"policy": "never"}]:
        with pytest.raises(ValueError):
            TTConfig(**kwargs)


def test_replacement_by_draft():
    """Test that values of decided games only rank as leaves in their slot."""
    table = TranspositionTable(TTConfig(4, policy="deep"))
    assert table.store_exact(1, MAX_DEPTH, 7, draft=0)
    assert table.probe(1).depth == MAX_DEPTH
    assert not table.store(1, 3, "lower", 0)  # the stored value is final

    # another position searched to depth 1 replaces the leaf
    assert table.store(17, 1, "upper", 4)
    assert table.probe(1) is None
    assert table.probe(17).depth == 1
    assert not table.store_exact(33, MAX_DEPTH, 2, draft=0)
    assert not table.store_exact(33, 0, 2)
    assert table.store(33, 1, "lower", 2)  # ties replace
    assert table.probe(17) is None

    # leaves replace leaves
    assert table.store_exact(2, MAX_DEPTH, 5, draft=0)
    assert table.store_exact(18, 0, -3)
    assert table.probe(2) is None
    assert table.probe(18).exact
    assert table.evictions == 3
