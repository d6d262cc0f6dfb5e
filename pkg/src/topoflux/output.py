"""Deterministic CSV / JSON / SVG emission for trajectories and summaries.

Floats print through repr (shortest round-trip form), so re-parsing a CSV
recovers the in-memory values exactly and identical runs produce identical
bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .dynamics import Trajectory

CSV_COLUMNS = (
    "t_ns",
    "re_rho11",
    "im_rho11",
    "re_rho22",
    "im_rho22",
    "re_rho12",
    "im_rho12",
    "re_rho21",
    "im_rho21",
    "trace",
    "purity",
    "min_eig",
)


def _fmt(x) -> str:
    return repr(float(x))


def trajectory_rows(traj: Trajectory):
    for i in range(len(traj)):
        yield (
            traj.times[i],
            traj.rho11[i].real,
            traj.rho11[i].imag,
            traj.rho22[i].real,
            traj.rho22[i].imag,
            traj.rho12[i].real,
            traj.rho12[i].imag,
            traj.rho21[i].real,
            traj.rho21[i].imag,
            traj.trace[i],
            traj.purity[i],
            traj.min_eigenvalue[i],
        )


def write_trajectory_csv(traj: Trajectory, path) -> Path:
    path = Path(path)
    lines = [",".join(CSV_COLUMNS)]
    for row in trajectory_rows(traj):
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_trajectory_csv(path) -> dict:
    """Parse a trajectory CSV back into column arrays (round-trip checks)."""
    lines = Path(path).read_text().strip().split("\n")
    header = lines[0].split(",")
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    cols = {name: [] for name in CSV_COLUMNS}
    for line in lines[1:]:
        for name, cell in zip(CSV_COLUMNS, line.split(",")):
            cols[name].append(float(cell))
    return {name: np.array(vals) for name, vals in cols.items()}


def write_json(payload: dict, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def write_matrix_csv(header: list[str], rows: list[list[float]], path) -> Path:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_trajectory_svg(traj: Trajectory, path, width=640, height=400) -> Path:
    """Hand-emitted line plot of rho11, rho22, |rho12| against time."""
    path = Path(path)
    t = np.asarray(traj.times, dtype=float)
    series = [
        ("rho11", "#1f77b4", np.real(traj.rho11)),
        ("rho22", "#d62728", np.real(traj.rho22)),
        ("|rho12|", "#2ca02c", np.abs(traj.rho12)),
    ]
    margin = 50
    t_span = max(t[-1] - t[0], 1e-30)

    def x_px(tv):
        return margin + (tv - t[0]) / t_span * (width - 2 * margin)

    def y_px(v):
        return height - margin - v * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 12}" text-anchor="middle" '
        f'font-size="13">t (ns)</text>',
        f'<text x="14" y="{height // 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 14 {height // 2})">population / coherence</text>',
    ]
    for idx, (label, color, values) in enumerate(series):
        pts = " ".join(
            f"{x_px(tv):.2f},{y_px(min(max(v, 0.0), 1.0)):.2f}" for tv, v in zip(t, values)
        )
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(
            f'<text x="{width - margin + 4}" y="{margin + 16 * idx + 10}" '
            f'font-size="12" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")
    return path


def emit_outputs(traj: Trajectory, out_dir, stem: str, formats=("csv",), summary: dict | None = None):
    """Write the requested artifact files for one trajectory; returns the paths."""
    if len(traj) == 0:
        raise ValueError("cannot emit an empty trajectory")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        written.append(write_trajectory_csv(traj, out_dir / f"{stem}.csv"))
    if "svg" in formats:
        written.append(write_trajectory_svg(traj, out_dir / f"{stem}.svg"))
    if "json" in formats and summary is not None:
        written.append(write_json(summary, out_dir / f"{stem}_summary.json"))
    return written
