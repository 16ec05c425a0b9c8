"""
Text renderers for tables, paths, regions and complexes.

Paths are drawn on a half-unit grid: vertices and box centres on even rows,
step characters on odd rows. Boxes show their label, or the letter of their
strip when a partition is given.
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional

from dyck import DyckPartition
from hecke import PolynomialTable
from models import RouquierTerms, TranslationPair, VerificationReport
from paths import UP, Path, box_set

LABEL_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"
STRIP_CHARS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _canvas(rows: int, cols: int) -> List[List[str]]:
    return [[" "] * cols for _ in range(rows)]


def _draw_path(canvas: List[List[str]], lam: Path, top: int) -> None:
    for k in range(1, lam.n + 1):
        low = min(lam.heights[k - 1], lam.heights[k])
        row = 2 * (top - low) - 1
        canvas[row][2 * k - 1] = "/" if lam.step(k) == UP else "\\"


def _join(canvas: List[List[str]]) -> str:
    lines = ["".join(row).rstrip() for row in canvas]
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines)


def render_region(lower: Path, upper: Path, partition: Optional[DyckPartition] = None) -> str:
    """Both paths with the boxes between them, labelled by x or by strip letter."""
    top = max(max(lower.heights), max(upper.heights)) + 1
    bottom = max(min(min(lower.heights), min(upper.heights)) - 1, 0)
    canvas = _canvas(2 * (top - bottom) + 1, 2 * lower.n + 1)
    _draw_path(canvas, lower, top)
    if upper != lower:
        _draw_path(canvas, upper, top)
    if partition is not None:
        letters = {}
        for index, strip in enumerate(partition.sorted_strips()):
            for box in strip.boxes:
                letters[box] = STRIP_CHARS[index % len(STRIP_CHARS)]
    else:
        letters = {box: LABEL_CHARS[box.label % len(LABEL_CHARS)] for box in box_set(lower, upper)}
    for box, char in letters.items():
        canvas[2 * (top - box.y)][2 * box.x] = char
    return _join(canvas)


def render_path(lam: Path) -> str:
    return render_region(lam, lam)


def render_table_csv(table: PolynomialTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["lambda", "mu", "polynomial"])
    for lower, upper, value in table.rows():
        writer.writerow([lower.steps, upper.steps, str(value)])
    return buffer.getvalue()


def table_to_json(table: PolynomialTable) -> Dict[str, Any]:
    return {
        "kind": table.kind,
        "n": table.n,
        "i": table.i,
        "paths": [lam.steps for lam in table.paths],
        "entries": [
            {"lambda": lower.steps, "mu": upper.steps, "polynomial": value.to_json()}
            for lower, upper, value in table.rows() if not value.is_zero()
        ],
    }


def render_table_ascii(table: PolynomialTable) -> str:
    """Matrix with rows lambda and columns mu; zero entries print as '.'"""
    cells = [[lower.steps] + [str(table.get(lower, upper)) if not table.get(lower, upper).is_zero() else "."
                              for upper in table.paths]
             for lower in table.paths]
    header = [f"{table.kind}"] + [upper.steps for upper in table.paths]
    widths = [max(len(row[c]) for row in cells + [header]) for c in range(len(header))]
    lines = ["  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)).rstrip() for row in [header] + cells]
    return "\n".join(lines)


def render_table(table: PolynomialTable, fmt: str) -> str:
    if fmt == "csv":
        return render_table_csv(table)
    if fmt == "json":
        return dump_json(table_to_json(table))
    return render_table_ascii(table) + "\n"


def render_rouquier(terms: RouquierTerms) -> str:
    """One column per homological degree, lowest degree first."""
    degrees = sorted(terms.terms)
    columns = []
    for degree in degrees:
        entries = [f"{s.path.steps}({s.shift})" if s.shift else s.path.steps for s in terms.terms[degree]]
        columns.append([str(degree)] + entries)
    depth = max(len(column) for column in columns)
    widths = [max(len(cell) for cell in column) for column in columns]
    lines = []
    for row in range(depth):
        cells = [column[row].ljust(width) if row < len(column) else " " * width
                 for column, width in zip(columns, widths)]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def render_pair(lam: Path, order, pair: TranslationPair) -> str:
    return f"{lam.steps} {','.join(map(str, order))}: {pair.tensor_notation()}"


def render_partitions(lam: Path, mu: Path, partitions: List[DyckPartition], fmt: str) -> str:
    if fmt == "json":
        return dump_json({
            "lambda": lam.steps,
            "mu": mu.steps,
            "partitions": [p.to_json() for p in partitions],
        })
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["index", "size", "strips"])
        for index, p in enumerate(partitions):
            writer.writerow([index, p.size, " ".join(str(s) for s in p.sorted_strips())])
        return buffer.getvalue()
    blocks = [f"#{index} size={p.size}\n{render_region(lam, mu, p)}" for index, p in enumerate(partitions)]
    return "\n\n".join(blocks) + "\n"


def render_report(report: VerificationReport) -> str:
    lines = [report.summary()]
    lines.extend(f"  {m}" for m in report.mismatches)
    return "\n".join(lines) + "\n"


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
