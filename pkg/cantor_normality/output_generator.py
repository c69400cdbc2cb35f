"""Write reports, sequence files, cell grids and run manifests.

Supports multiple output formats:
- JSON: exact rationals as "p/q" strings with a decimal companion field
- CSV: one row per report record, exact rationals as "p/q"
- SVG / PNG: cell-rectangle grids
- Text: human-readable summary

No output file carries a timestamp, so re-running a command reproduces it
byte for byte. Timing goes to the manifest only.
"""
import csv
import dataclasses
import hashlib
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
from PIL import Image, ImageDraw

from .errors import BadParams
from .generators import read_int_stream
from .models import CellRectangle, ExclusionSet, NormalityReport, RunManifest

DECIMAL_PLACES = 12

PALETTE = [
    (66, 133, 244), (234, 67, 53), (251, 188, 5), (52, 168, 83),
    (171, 71, 188), (0, 172, 193), (255, 112, 67), (158, 157, 36),
]


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(_key(x) for x in k)
    if isinstance(k, Enum):
        return str(k.value)
    return str(k)


def to_jsonable(obj: Any) -> Any:
    """Convert reports to JSON-ready values; Fractions become "p/q" strings."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, np.generic):
        return obj.item()
    if dataclasses.is_dataclass(obj):
        return to_jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            key = _key(k)
            out[key] = to_jsonable(v)
            if isinstance(v, Fraction):
                out[f"{key}_decimal"] = round(float(v), DECIMAL_PLACES)
        return out
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if callable(obj):
        return getattr(obj, "__name__", "predicate")
    return str(obj)  # sympy expressions


def export_report_json(report: Any, output_path: str, metadata: Optional[Dict] = None) -> None:
    """Export any report dataclass to JSON."""
    data = to_jsonable(report)
    if metadata:
        data = {"report": data, "metadata": to_jsonable(metadata)}

    with open(output_path, 'w') as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def _cell(value) -> str:
    if isinstance(value, (tuple, list)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, Enum):
        return str(value.value)
    if value is None:
        return ""
    return str(value)


def export_rows_csv(rows: Sequence[Any], output_path: str) -> None:
    """Export a list of record dataclasses to CSV, one row per record."""
    with open(output_path, 'w', newline='') as csvfile:
        writer = csv.writer(csvfile)
        if not rows:
            return
        names = [f.name for f in dataclasses.fields(rows[0])]
        writer.writerow(names)
        for r in rows:
            writer.writerow([_cell(getattr(r, name)) for name in names])


NORMALITY_CSV_COLUMNS = ['ell', 'D', 'B', 'count', 'expectation_num', 'expectation_den', 'ratio']


def export_normality_csv(report: NormalityReport, output_path: str) -> None:
    """
    Export a normality report as flat CSV.

    Each length contributes its N_n(D) rows with an empty B column, followed
    by its N_n(D, B) rows. Expectations are split into numerator and
    denominator; ratios are exact "p/q" strings, empty when undefined.
    """
    with open(output_path, 'w', newline='') as csvfile:
        writer = csv.writer(csvfile)
        writer.writerow(NORMALITY_CSV_COLUMNS)
        for ell in range(1, report.ell_max + 1):
            rows = [(r, ()) for r in report.rows if r.ell == ell]
            rows += [(u, u.B) for u in report.uniform_rows if u.ell == ell]
            for r, B in rows:
                writer.writerow([
                    ell, _cell(r.D), _cell(B), r.count,
                    r.expectation.numerator, r.expectation.denominator,
                    _cell(r.ratio),
                ])


# =============================================================================
# SEQUENCE FILES
# =============================================================================

def write_int_file(values: Iterable[int], output_path: str) -> None:
    """Newline-separated decimal integers."""
    with open(output_path, 'w') as f:
        for v in values:
            f.write(f"{v}\n")


def read_int_file(path: str, count: Optional[int] = None) -> List[int]:
    values = []
    for v in read_int_stream(path):
        if count is not None and len(values) >= count:
            break
        values.append(v)
    return values


def load_exclusion(path: str) -> ExclusionSet:
    """Exclusion indices from a newline-separated integer file."""
    indices = read_int_file(path)
    if any(i < 0 for i in indices):
        raise BadParams(f"{path}: exclusion indices must be >= 0")
    return ExclusionSet.from_indices(indices, label=path)


# =============================================================================
# CELL GRIDS
# =============================================================================

def export_rectangles_csv(rectangles: Sequence[CellRectangle], output_path: str) -> None:
    """One row per horizontal piece of each rectangle E_B x I_{D,B}."""
    with open(output_path, 'w', newline='') as csvfile:
        writer = csv.writer(csvfile)
        writer.writerow(['B', 'D', 'x0', 'x1', 'y0', 'y1'])
        for r in rectangles:
            for x0, x1 in r.horizontal:
                writer.writerow([_cell(r.B), _cell(r.D), str(x0), str(x1), str(r.vertical[0]), str(r.vertical[1])])


def _colour(B: tuple, blocks: List[tuple]) -> tuple:
    return PALETTE[blocks.index(B) % len(PALETTE)]


def export_rectangles_svg(rectangles: Sequence[CellRectangle], output_path: str, size: int = 600) -> None:
    """SVG grid: x is the cylinder coordinate, y the digit interval (0 at the bottom)."""
    blocks = sorted({r.B for r in rectangles})
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white" stroke="black"/>',
    ]
    for r in rectangles:
        red, green, blue = _colour(r.B, blocks)
        y0, y1 = r.vertical
        for x0, x1 in r.horizontal:
            lines.append(
                f'<rect x="{float(x0) * size:.4f}" y="{float(1 - y1) * size:.4f}" '
                f'width="{float(x1 - x0) * size:.4f}" height="{float(y1 - y0) * size:.4f}" '
                f'fill="rgb({red},{green},{blue})" fill-opacity="0.6" stroke="black" stroke-width="0.5">'
                f'<title>B={_cell(r.B)} D={_cell(r.D)}</title></rect>'
            )
    lines.append('</svg>')
    with open(output_path, 'w') as f:
        f.write("\n".join(lines) + "\n")


def export_rectangles_png(rectangles: Sequence[CellRectangle], output_path: str, size: int = 600) -> None:
    """Same grid as the SVG, rasterised with Pillow."""
    blocks = sorted({r.B for r in rectangles})
    image = Image.new("RGB", (size, size), "white")
    draw = ImageDraw.Draw(image)
    for r in rectangles:
        y0, y1 = r.vertical
        for x0, x1 in r.horizontal:
            left, top = round(float(x0) * size), round(float(1 - y1) * size)
            right = max(round(float(x1) * size) - 1, left)
            bottom = max(round(float(1 - y0) * size) - 1, top)
            box = [left, top, right, bottom]
            draw.rectangle(box, fill=_colour(r.B, blocks), outline=(0, 0, 0))
    image.save(output_path, format="PNG")


# =============================================================================
# MANIFESTS AND TEXT REPORTS
# =============================================================================

def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def manifest_path(output_path: str) -> str:
    return f"{output_path}.manifest.json"


def write_manifest(manifest: RunManifest, output_path: str) -> str:
    """Write `<output_path>.manifest.json` and return its path."""
    path = manifest_path(output_path)
    with open(path, 'w') as f:
        json.dump(to_jsonable(manifest), f, indent=2)
        f.write("\n")
    return path


def generate_report_text(title: str, sections: Dict[str, Dict[str, Any]]) -> str:
    """
    Generate a plain-text summary.

    Args:
        title: Header line
        sections: Section title -> {label: value}

    Returns:
        Formatted string
    """
    lines = []
    lines.append("=" * 70)
    lines.append(title)
    lines.append("=" * 70)

    def add_section(name: str, items: Dict[str, Any]):
        """Add a section with label/value lines."""
        if not items:
            return
        lines.append(f"\n{name}")
        lines.append("-" * 50)
        for label, value in items.items():
            shown = f"{value} (~{float(value):.6f})" if isinstance(value, Fraction) else str(value)
            lines.append(f"  {label:<36} {shown}")

    for name, items in sections.items():
        add_section(name, items)

    lines.append("\n" + "=" * 70)
    return "\n".join(lines)
