"""Tabular and graphical export of trajectories.

CSV rows carry one time step each with columns ``t``, then per variable
``<var>_re``, ``<var>_fu`` and per alpha ``<var>_a<alpha>_lo`` /
``<var>_a<alpha>_hi``.  Serialisation uses 17 significant digits so a
re-read reproduces every double bit-exactly.  The JSON form mirrors the
table and additionally maps each alpha key to its band columns.  SVG output
is self-contained: nothing but polylines, a frame and text labels.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from ..dynamics import Trajectory

__all__ = [
    "ExportTable",
    "band_color",
    "emit_svg",
    "export_csv",
    "export_json",
    "read_csv",
    "trajectory_table",
]


@dataclass
class ExportTable:
    columns: list[str]
    rows: list[list[float]]
    alphas: tuple[float, ...] = ()
    band_columns: dict = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} cells, header has {width}")

    def column(self, name: str) -> np.ndarray:
        return np.array([row[self.columns.index(name)] for row in self.rows])


def alpha_key(alpha: float) -> str:
    return f"{alpha:g}"


def trajectory_table(traj: Trajectory, indices=None) -> ExportTable:
    """Flatten a trajectory (bands included when attached) into a table."""
    if indices is None:
        indices = range(len(traj))
    columns = ["t"]
    band_columns: dict = {}
    for name in traj.names:
        columns.extend([f"{name}_re", f"{name}_fu"])
    if traj.bands is not None:
        for name in traj.names:
            band_columns[name] = {}
            for alpha in traj.alphas:
                lo = f"{name}_a{alpha_key(alpha)}_lo"
                hi = f"{name}_a{alpha_key(alpha)}_hi"
                band_columns[name][alpha_key(alpha)] = [lo, hi]
                columns.extend([lo, hi])
    rows = []
    for i in indices:
        row = [float(traj.times[i])]
        for k in range(len(traj.names)):
            row.extend([float(traj.coeffs[i, 2 * k]), float(traj.coeffs[i, 2 * k + 1])])
        if traj.bands is not None:
            for name in traj.names:
                for j in range(len(traj.alphas)):
                    row.extend(
                        [float(traj.bands[name][i, j, 0]), float(traj.bands[name][i, j, 1])]
                    )
        rows.append(row)
    return ExportTable(columns, rows, tuple(traj.alphas or ()), band_columns)


def export_csv(table: ExportTable, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([f"{v:.17g}" for v in row])


def read_csv(path) -> ExportTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        columns = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return ExportTable(columns, rows)


def export_json(table: ExportTable, path) -> None:
    payload = {
        "columns": table.columns,
        "alphas": list(table.alphas),
        "bands": table.band_columns,
        "rows": table.rows,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def band_color(alpha: float) -> str:
    """Grayscale stroke for an alpha level: white at 0 through black at 1."""
    gray = round(235 * (1.0 - alpha))
    return f"#{gray:02x}{gray:02x}{gray:02x}"


def emit_svg(series, path, x_label: str = "", y_label: str = "", size=(800, 600)) -> None:
    """Write polyline series to a standalone SVG file.

    ``series`` is an iterable of ``(xs, ys, stroke, width)``; data is
    scaled into the viewport with a small margin and the y axis pointing
    up.
    """
    series = [
        (np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), stroke, width)
        for xs, ys, stroke, width in series
    ]
    if not series:
        raise ValueError("nothing to plot")
    x_min = min(s[0].min() for s in series)
    x_max = max(s[0].max() for s in series)
    y_min = min(s[1].min() for s in series)
    y_max = max(s[1].max() for s in series)
    if x_max == x_min:
        x_min, x_max = x_min - 0.5, x_max + 0.5
    if y_max == y_min:
        y_min, y_max = y_min - 0.5, y_max + 0.5
    w, h = size
    margin = 50.0
    sx = (w - 2 * margin) / (x_max - x_min)
    sy = (h - 2 * margin) / (y_max - y_min)

    def to_px(xs, ys):
        px = margin + (xs - x_min) * sx
        py = h - margin - (ys - y_min) * sy
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{w - 2 * margin}" '
        f'height="{h - 2 * margin}" fill="none" stroke="#888" stroke-width="1"/>',
    ]
    for xs, ys, stroke, width in series:
        px, py = to_px(xs, ys)
        pts = " ".join(f"{x:.6g},{y:.6g}" for x, y in zip(px, py))
        parts.append(
            f'<polyline fill="none" stroke="{stroke}" stroke-width="{width:g}" points="{pts}"/>'
        )
    label_style = 'font-family="sans-serif" font-size="14"'
    parts.append(f'<text x="{w / 2:.0f}" y="{h - 12}" {label_style} text-anchor="middle">{x_label}</text>')
    parts.append(
        f'<text x="16" y="{h / 2:.0f}" {label_style} text-anchor="middle" '
        f'transform="rotate(-90 16 {h / 2:.0f})">{y_label}</text>'
    )
    for value, px, py, anchor in (
        (x_min, margin, h - margin + 16, "middle"),
        (x_max, w - margin, h - margin + 16, "middle"),
        (y_min, margin - 6, h - margin, "end"),
        (y_max, margin - 6, margin + 4, "end"),
    ):
        parts.append(f'<text x="{px:.0f}" y="{py:.0f}" {label_style} text-anchor="{anchor}">{value:.4g}</text>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
