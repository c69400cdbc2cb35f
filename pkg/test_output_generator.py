"""Tests for JSON/CSV/PNG export and run manifests."""
import csv
import json
from fractions import Fraction

from PIL import Image

from cantor_normality.generators import BasicSequence, preset
from cantor_normality.models import DoublingCoding, ExclusionSet, RunManifest, Verdict
from cantor_normality.normality import cell_rectangles, normality_report
from cantor_normality.output_generator import (
    NORMALITY_CSV_COLUMNS, export_normality_csv, export_rectangles_csv, export_rectangles_png,
    export_report_json, load_exclusion,
    read_int_file, to_jsonable, write_int_file, write_manifest,
)


def test_fractions_become_exact_strings():
    data = to_jsonable({"ratio": Fraction(5, 12), "verdict": Verdict.PASS, (0, 1): [Fraction(1, 3)]})
    assert data["ratio"] == "5/12"
    assert data["ratio_decimal"] == round(5 / 12, 12)
    assert data["verdict"] == "PASS"
    assert data["0,1"] == ["1/3"]


def test_report_json(tmp_path):
    path = tmp_path / "report.json"
    export_report_json({"count": 3, "width": Fraction(1, 64)}, str(path), metadata={"seed": 7})
    data = json.loads(path.read_text())
    assert data["report"] == {"count": 3, "width": "1/64", "width_decimal": 0.015625}
    assert data["metadata"] == {"seed": 7}


def test_int_files(tmp_path):
    path = str(tmp_path / "values.txt")
    write_int_file([2, 3, 5], path)
    assert read_int_file(path) == [2, 3, 5]
    assert read_int_file(path, count=2) == [2, 3]


def test_exclusion_file(tmp_path):
    path = tmp_path / "exclude.txt"
    path.write_text("4\n\n1\n")
    assert load_exclusion(str(path)).indices == ExclusionSet.from_indices([1, 4]).indices


def test_rectangle_exports(tmp_path):
    rectangles = cell_rectangles(DoublingCoding(), 1)
    csv_path = tmp_path / "grid.csv"
    export_rectangles_csv(rectangles, str(csv_path))
    with open(csv_path, newline='') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['B', 'D', 'x0', 'x1', 'y0', 'y1']
    assert len(rows) > len(rectangles)  # header plus at least one piece each

    png_path = tmp_path / "grid.png"
    export_rectangles_png(rectangles, str(png_path), size=120)
    with Image.open(png_path) as image:
        assert image.size == (120, 120)


def test_manifest_sits_next_to_the_output(tmp_path):
    out = tmp_path / "seq.txt"
    out.write_text("2\n")
    manifest = RunManifest(tool_version="1.0.0", command=["seq"], config={}, outputs={str(out): "abc"})
    path = write_manifest(manifest, str(out))
    assert path == f"{out}.manifest.json"
    assert json.loads(open(path).read())["tool_version"] == "1.0.0"


def test_normality_csv_lists_block_and_uniform_rows(tmp_path):
    report = normality_report(BasicSequence(preset("periodic-23")), "1/7", 300, 1)
    path = tmp_path / "stats.csv"
    export_normality_csv(report, str(path))
    with open(path, newline='') as f:
        rows = list(csv.reader(f))
    assert rows[0] == NORMALITY_CSV_COLUMNS
    assert rows[0] == ['ell', 'D', 'B', 'count', 'expectation_num', 'expectation_den', 'ratio']
    block_rows = [r for r in rows[1:] if r[2] == ""]
    uniform_rows = [r for r in rows[1:] if r[2] != ""]
    assert [r[1] for r in block_rows] == ["0", "1", "2"]
    assert block_rows[0][4:6] == ["125", "1"]
    assert sorted((r[1], r[2]) for r in uniform_rows) == [
        ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3"), ("2", "3"),
    ]
    weights = {r[2]: r[4:6] for r in uniform_rows}
    assert weights == {"2": ["75", "1"], "3": ["50", "1"]}
