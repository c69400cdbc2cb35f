"""Tests for the command-line entry point."""
import json

from cantor_normality.main import build_parser, main


def test_seq_prints_the_prefix(capsys):
    assert main(["seq", "--spec", "champernowne", "--n", "5", "--quiet"]) == 0
    assert capsys.readouterr().out.split() == ["3", "4", "5", "6", "7"]


def test_seq_writes_a_file_and_manifest(tmp_path):
    out = tmp_path / "q.txt"
    assert main(["seq", "--spec", "periodic-23", "--n", "4", "--out", str(out), "--quiet"]) == 0
    assert out.read_text().split() == ["2", "3", "2", "3"]
    manifest = json.loads((tmp_path / "q.txt.manifest.json").read_text())
    assert str(out) in manifest["outputs"]
    assert manifest["command"][0] == "seq"


def test_expand_and_value(tmp_path, capsys):
    assert main(["expand", "--spec", "periodic-23", "--x", "5/6", "--n", "3", "--quiet"]) == 0
    assert capsys.readouterr().out.split() == ["1", "2", "0"]

    digits = tmp_path / "digits.txt"
    digits.write_text("1\n2\n")
    assert main(["value", "--spec", "periodic-23", "--digits", str(digits), "--n", "2", "--quiet"]) == 0
    assert capsys.readouterr().out.strip() == "5/6"


def test_unknown_preset(capsys):
    assert main(["seq", "--spec", "no-such-sequence", "--n", "3"]) == 2
    assert "Error:" in capsys.readouterr().err


def test_missing_source():
    assert main(["seq", "--n", "3", "--quiet"]) == 2


def test_rational_rotation_horizon(tmp_path, capsys):
    spec = tmp_path / "rotation.json"
    spec.write_text(json.dumps({
        "type": "rotation",
        "alpha": "2/7",
        "cells": [["0", "5/7", 2], ["5/7", "1", 3]],
    }))
    # the stand-in is valid for at most (7 - 1) // 2 = 3 terms
    assert main(["seq", "--spec", str(spec), "--n", "3", "--quiet"]) == 0
    capsys.readouterr()
    assert main(["seq", "--spec", str(spec), "--n", "10", "--quiet"]) == 4


def test_stats_json_report(tmp_path):
    out = tmp_path / "stats.json"
    code = main(["stats", "--spec", "periodic-23", "--x", "1/5", "--n", "200",
                 "--block-len", "1", "--out", str(out), "--quiet"])
    assert code == 0
    assert out.exists()
    assert (tmp_path / "stats.json.manifest.json").exists()


def test_stats_csv_report(tmp_path):
    out = tmp_path / "stats.csv"
    code = main(["stats", "--spec", "periodic-23", "--x", "1/5", "--n", "200",
                 "--block-len", "1", "--format", "csv", "--out", str(out), "--quiet"])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "ell,D,B,count,expectation_num,expectation_den,ratio"
    assert any(line.startswith("1,0,2,") for line in lines)
    assert (tmp_path / "stats.csv.manifest.json").exists()


def test_repro_writes_paired_files(tmp_path):
    prefix = tmp_path / "ex31"
    assert main(["repro", "ex31", "--n", "200", "--out", str(prefix), "--quiet"]) == 0
    bases = (tmp_path / "ex31.bases.txt").read_text().split()
    digits = (tmp_path / "ex31.digits.txt").read_text().split()
    assert len(bases) == len(digits)
    assert "2" not in digits and "3" not in digits
    report = json.loads((tmp_path / "ex31.json").read_text())
    assert report["name"] == "ex31"
    items = [v["item"] for v in report["validation"]]
    assert "star discrepancy" in items
    assert "N_n((2))" in items
    assert (tmp_path / "ex31.json.manifest.json").exists()


def test_repro_rebase(tmp_path):
    prefix = tmp_path / "rebase"
    assert main(["repro", "rebase", "--n", "30", "--pattern", "2,3", "--out", str(prefix), "--quiet"]) == 0
    assert len((tmp_path / "rebase.digits.txt").read_text().split()) == 60


def test_grid_svg(tmp_path):
    out = tmp_path / "grid.svg"
    assert main(["grid", "--spec", "doubling", "--block-len", "1", "--format", "svg",
                 "--out", str(out), "--quiet"]) == 0
    assert out.read_text().startswith("<svg")


def test_bad_construction_parameters(tmp_path):
    code = main(["repro", "ex35", "--a", "4", "--b", "2", "--n", "10",
                 "--out", str(tmp_path / "ex35"), "--quiet"])
    assert code == 2


def test_parser_requires_a_command():
    parser = build_parser()
    args = parser.parse_args(["complexity", "--spec", "thue-morse", "--k", "1,2"])
    assert args.command == "complexity"
    assert args.k == "1,2"
