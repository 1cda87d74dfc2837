import csv
import json

import pytest

from blockseq import Params, PartialSystem, Sequencing, bose_sts, is_ell_good, random_partial
from blockseq.cli import main
from blockseq.io import (
    format_design,
    format_sequencing,
    parse_design,
    parse_sequencing,
    read_design,
    write_design,
    write_sequencing,
)

from conftest import FANO_BLOCKS

FANO_TEXT = "# Fano plane\n7 3 2 1\n\n" + "\n".join(" ".join(map(str, b)) for b in FANO_BLOCKS) + "  # last\n"


@pytest.fixture
def fano_file(tmp_path):
    path = tmp_path / "fano.pdsys"
    path.write_text(FANO_TEXT)
    return path


def test_parse_design_with_comments():
    sys_ = parse_design(FANO_TEXT)
    assert sys_.params == Params(7, 3, 2, 1)
    assert sys_.blocks.tolist() == [list(b) for b in FANO_BLOCKS]


def test_parse_design_sorts_blocks():
    assert parse_design("5 3 2 1\n4 2 0\n").blocks.tolist() == [[0, 2, 4]]


def test_design_roundtrip(tmp_path):
    sys_ = random_partial(Params(20, 4, 3, 2), 40, 3)
    text = format_design(sys_)
    assert format_design(parse_design(text)) == text
    path = tmp_path / "d.pdsys"
    write_design(sys_, path)
    raw = path.read_bytes()
    assert raw.decode() == text and b"\r" not in raw and b" \n" not in raw


def test_sequencing_roundtrip(tmp_path):
    text = "3\n0\n2\n1\n"
    assert format_sequencing(parse_sequencing(text)) == text
    assert parse_sequencing("3 0\n 2 1").order.tolist() == [3, 0, 2, 1]
    path = tmp_path / "s.seq"
    write_sequencing(Sequencing([1, 0]), path)
    assert path.read_text() == "1\n0\n"


def test_bounds_command(capsys):
    assert main(["bounds", "--k", "3", "--t", "2", "--lambda", "1", "--n", "9999"]) == 0
    out = capsys.readouterr().out
    for line in ["alpha = 0.0908", "sigma = 534.16", "s = 535", "ell_max = 9", "condition = true"]:
        assert line in out


def test_bounds_without_n(capsys):
    assert main(["bounds", "--k", "5", "--t", "2", "--lambda", "1"]) == 0
    out = capsys.readouterr().out
    assert "alpha = 0.0908" in out and "alpha_large_k = 1.309307" in out and "sigma" not in out


def test_verify_max_ell(fano_file, tmp_path, capsys):
    seq = tmp_path / "id.seq"
    seq.write_text("".join(f"{i}\n" for i in range(7)))
    assert main(["verify", "--design", str(fano_file), "--seq", str(seq), "--cyclic"]) == 0
    assert "max ell = 2" in capsys.readouterr().out
    assert main(["verify", "--design", str(fano_file), "--seq", str(seq), "--ell", "2"]) == 0
    assert main(["verify", "--design", str(fano_file), "--seq", str(seq), "--ell", "3"]) == 1


def test_missing_design_is_usage_error(tmp_path):
    assert main(["sequence", "--design", str(tmp_path / "missing.pdsys"), "--ell", "3", "-o", str(tmp_path / "x.seq")]) == 2


def test_unknown_command_and_bad_file(tmp_path):
    assert main(["frobnicate"]) == 2
    bad = tmp_path / "bad.pdsys"
    bad.write_text("7 3 2 1\n0 1\n")
    assert main(["oracle", "--design", str(bad)]) == 2


def test_gen_sequence_verify_pipeline(tmp_path, capsys):
    design = tmp_path / "sts.pdsys"
    assert main(["gen", "--construction", "bose", "--n", "1101", "-o", str(design)]) == 0
    assert read_design(design).num_blocks == 1101 * 1100 // 6
    out, report = tmp_path / "out.seq", tmp_path / "run.json"
    assert main(["sequence", "--design", str(design), "--ell", "3", "--seed", "5", "-o", str(out), "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert set(data) == {"params", "ell", "sigma", "s", "seed", "mode", "resample_count",
                         "repair_moves", "phase_ms", "verified"}
    assert data["params"] == {"n": 1101, "k": 3, "t": 2, "lambda": 1}
    assert data["seed"] == 5 and data["verified"] is True and data["s"] == 178
    assert main(["verify", "--design", str(design), "--seq", str(out), "--ell", "3"]) == 0


def test_sequence_stuck_exit_code(fano_file, tmp_path):
    assert main(["sequence", "--design", str(fano_file), "--ell", "2", "-o", str(tmp_path / "f.seq")]) == 3


def test_sequence_nonconvergence_exit_code(tmp_path):
    design = tmp_path / "s15.pdsys"
    write_design(bose_sts(15), design)
    argv = ["sequence", "--design", str(design), "--ell", "2", "--s-override", "3", "--max-resamples", "2", "-o", str(tmp_path / "x.seq")]
    with pytest.warns(RuntimeWarning):
        assert main(argv) == 3


def test_seed_from_environment(tmp_path, monkeypatch):
    design = tmp_path / "r.pdsys"
    monkeypatch.setenv("BLOCKSEQ_SEED", "17")
    assert main(["gen", "--construction", "random", "--n", "30", "--k", "4", "--t", "3", "--lambda", "1", "--blocks", "50", "-o", str(design)]) == 0
    assert read_design(design).blocks.tolist() == random_partial(Params(30, 4, 3, 1), 50, 17).blocks.tolist()
    out, report = tmp_path / "r.seq", tmp_path / "r.json"
    main(["sequence", "--design", str(design), "--ell", "1", "-o", str(out), "--report", str(report)])
    assert json.loads(report.read_text())["seed"] == 17


def test_gen_random_needs_params(tmp_path):
    assert main(["gen", "--construction", "random", "--n", "30", "-o", str(tmp_path / "x")]) == 2


def test_oracle_command(fano_file, capsys):
    assert main(["oracle", "--design", str(fano_file)]) == 0
    out = capsys.readouterr().out
    assert "max ell = 3 (cyclic)" in out
    witness = Sequencing([int(v) for v in out.split("witness = ")[1].split()])
    assert is_ell_good(parse_design(FANO_TEXT), witness, 3)


def test_bench_csv(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--family", "sts", "--n", "1105,1101", "--seeds", "1..2", "-o", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["n", "ell_requested", "s", "resamples", "repair_moves", "verified", "wall_ms"]
    assert [(r["n"], r["ell_requested"]) for r in rows] == [("1105", "3"), ("1105", "3"), ("1101", "3"), ("1101", "3")]
    assert all(r["verified"] == "true" for r in rows)


def test_bench_rejects_impossible_order(tmp_path):
    assert main(["bench", "--n", "1100", "-o", str(tmp_path / "b.csv")]) == 2
