import pytest

from mtdsearch.cli import create_parser, main, spec_from_args
from mtdsearch.experiments import (
    COMPARE_COLUMNS,
    MEMSWEEP_COLUMNS,
    ORDERING_COLUMNS,
    ExperimentSpec,
)

SYNTH = ["--synth", "seed=0 w=3 d=4", "--n-positions", "2", "--depth", "3"]


def test_pearl(capsys):
    """Test tracing the worked example tree."""
    assert main(["pearl"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("pass 1: g=41")
    assert lines[-1] == "PASS"


def test_compare(tmp_path, capsys):
    """Test comparing algorithms from the command line."""
    path = tmp_path / "compare.csv"
    args = ["compare", *SYNTH, "--tt-bits", "10", "--out", str(path)]
    assert main(args + ["--algorithms", "ab,mtdf"]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(COMPARE_COLUMNS)
    assert len(lines) == 1 + 2 * 2 * 3
    assert capsys.readouterr().out == ""

    # results are printed if no file is given
    assert main(["compare", *SYNTH, "--algorithms", "sss", "--tt", "lossless"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 2 * 3


def test_compare_spec_file(tmp_path, capsys):
    """Test reading the experiment from a file."""
    spec = ExperimentSpec(game="pearl", algorithms=("ab",), tt_bits=(None,))
    path = tmp_path / "spec.json"
    path.write_text(spec.to_json())
    assert main(["compare", "--spec", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 4
    assert lines[-1].split(",")[:4] == ["0", "ab", "4", "35"]


def test_memsweep(capsys):
    """Test the memory sweep from the command line."""
    args = ["memsweep", *SYNTH, "--tt-bits", "4..6,lossless", "--algorithms"]
    assert main(args + ["ab,sss"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(MEMSWEEP_COLUMNS)
    assert len(lines) == 1 + 4 * 2
    assert lines[-2].startswith("lossless,ab,")
    assert {line.split(",")[1] for line in lines[1:]} == {"ab", "sss"}

    assert main(args + ["ab,mtdf"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(",")[1] for line in lines[1:3]] == ["ab", "mtdf"]

    # the sweep requires Alpha-Beta as reference
    assert main(args + ["sss,dual"]) == 1


def test_guess_sweep(capsys):
    """Test the distortion of the first guess from the command line."""
    assert main(["guess-sweep", *SYNTH, "--deltas=-10,0,10"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 2 * 3


def test_ordering(capsys):
    """Test the report of the move ordering from the command line."""
    assert main(["ordering", *SYNTH, "--no-history"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(ORDERING_COLUMNS)
    assert len(lines) > 1


def test_hunt(capsys):
    """Test searching for trees where best-first search loses."""
    assert main(["hunt", "--budget", "5", "--static"]) == 0
    assert "No counterexample among 5 trees" in capsys.readouterr().out


def test_oracle(capsys):
    """Test the open list formulation from the command line."""
    assert main(["oracle", "run", "--game", "pearl"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# position 0"
    assert lines[1] == "EVAL e 41"
    assert lines[-1] == "VALUE 35"

    assert main(["oracle", "equiv", "--trees", "5", "--depths", "2..3"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "5 of 5 trees passed"


def test_search(capsys):
    """Test searching positions with a single algorithm."""
    pearl = ["search", "--game", "pearl", "--tt", "lossless"]
    assert main(pearl + ["--algorithm", "mt", "--gamma", "36"]) == 0
    assert capsys.readouterr().out.strip() == "position 0: upper bound 35"
    assert main(pearl + ["--algorithm", "mt", "--gamma", "35"]) == 0
    assert capsys.readouterr().out.strip() == "position 0: lower bound 35"

    assert main(pearl + ["--algorithm", "mtdf"]) == 0
    assert capsys.readouterr().out.startswith("position 0: value 35 ")
    assert main(pearl + ["--algorithm", "mtdbest"]) == 0
    assert capsys.readouterr().out.startswith("position 0: best move 1 ")

    static = ["--no-tt-move", "--no-history", "--trace-leaves"]
    assert main(pearl + static + ["--algorithm", "mt", "--gamma", "100"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["position 0: upper bound 41", "  leaves: e,g,k,m"]

    assert main(pearl + ["--algorithm", "mt"]) == 1
    assert main(pearl + ["--algorithm", "minimax"]) == 1


def test_positions(tmp_path, capsys):
    """Test writing suites of positions."""
    path = tmp_path / "othello.txt"
    args = ["positions", "--game", "othello", "--board-size", "4"]
    assert main(args + ["--n-positions", "3", "--out", str(path)]) == 0
    assert len(path.read_text().splitlines()) == 3

    assert main(["positions", "--n-positions", "2", "--synth", "seed=4 w=3 d=5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert all(" w=3 d=5 " in line for line in lines)

    assert main(["positions", "--game", "pearl"]) == 1


def test_spec_from_args():
    """Test converting command line arguments into experiments."""
    parser = create_parser()
    args = parser.parse_args(["compare", "--first-guess", "3", "--tt-bits", "8,12"])
    spec = spec_from_args(args)
    assert spec.guess == 3
    assert spec.tt_bits == (8, 12)
    assert spec.use_history

    args = parser.parse_args(["compare", "--tt", "lossless", "--no-tt-move"])
    spec = spec_from_args(args)
    assert spec.tt_bits == (None,)
    assert not spec.use_tt_move
    assert spec_from_args(parser.parse_args(["compare"])).tt_bits == (18,)

    with pytest.raises(SystemExit):
        parser.parse_args(["compare", "--game", "chess"])
    with pytest.raises(SystemExit):
        parser.parse_args([])
    assert main(["compare", "--algorithms", "ab,minimax"]) == 1
