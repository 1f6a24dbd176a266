"""Serialization and rendering of results.

JSON output uses one canonical form (sorted keys, compact separators) so
that parsing an emitted record and re-serializing it is byte identical.
Newton polygons are written as delimited ``m,v_m`` rows, as a standalone
SVG (one polyline for the hull, one circle per point, slope labels), and
as a rendered figure; sweeps get a per-cell CSV and a summary figure.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .compositions import Composition
from .numerals import FieldShape, Numeral
from .verify import EMPTY, FAIL, PASS, SKIPPED, VerificationReport


def canonical_json(obj) -> str:
    """The one JSON form used everywhere: sorted keys, no spaces."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def composition_record(comp: "Composition | Sequence[int]", shape: FieldShape) -> dict:
    parts = list(comp.parts if isinstance(comp, Composition) else comp)
    return {
        "parts": parts,
        "weight": sum((j + 1) * x for j, x in enumerate(parts)),
        "base_p": [Numeral.from_int(x, shape.p).base_p_str for x in parts],
    }


def dual_repr(value: int, p: int) -> str:
    """Decimal plus base-p rendering, like ``32 (1012_3)``."""
    return f"{value} ({Numeral.from_int(value, p).base_p_str})"


def polygon_csv(points: Sequence[tuple[int, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "v_m"])
    for m, v in points:
        writer.writerow([m, v])
    return buf.getvalue()


def polygon_svg(points: Sequence[tuple[int, int]]) -> str:
    """Standalone SVG of the polygon: hull polyline, point circles, slope labels."""
    pts = list(points)
    width, height, margin = 480.0, 360.0, 40.0
    max_m = max(m for m, _ in pts) or 1
    max_v = max(v for _, v in pts) or 1
    sx = (width - 2 * margin) / max_m
    sy = (height - 2 * margin) / max_v

    def place(m: int, v: int) -> tuple[float, float]:
        return margin + m * sx, height - margin - v * sy

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:g} {height:g}">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
    ]
    path = " ".join(f"{x:.2f},{y:.2f}" for x, y in (place(m, v) for m, v in pts))
    lines.append(
        f'<polyline points="{path}" fill="none" stroke="black" stroke-width="1.5"/>'
    )
    for m, v in pts:
        x, y = place(m, v)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="black"/>')
    for i in range(1, len(pts)):
        slope = pts[i][1] - pts[i - 1][1]
        x0, y0 = place(*pts[i - 1])
        x1, y1 = place(*pts[i])
        lines.append(
            f'<text x="{(x0 + x1) / 2 + 4:.2f}" y="{(y0 + y1) / 2 - 4:.2f}"'
            f' font-size="11" font-family="monospace">{slope}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def save_polygon_figure(
    points: Sequence[tuple[int, int]],
    path: str,
    title: str = "",
) -> None:
    """Render the polygon with matplotlib (PNG or whatever the suffix says)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pts = list(points)
    xs = [m for m, _ in pts]
    ys = [v for _, v in pts]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(xs, ys, "o-", color="black", markersize=5)
    for i in range(1, len(pts)):
        slope = pts[i][1] - pts[i - 1][1]
        ax.annotate(
            str(slope),
            ((xs[i - 1] + xs[i]) / 2, (ys[i - 1] + ys[i]) / 2),
            textcoords="offset points",
            xytext=(4, 4),
            fontsize=9,
        )
    ax.set_xlabel("m")
    ax.set_ylabel("v_m")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def report_record(report: VerificationReport) -> dict:
    return {
        "kind": report.kind,
        "p": report.shape.p,
        "s": report.shape.s,
        "q": report.shape.q,
        "params": report.params,
        "cells": len(report.outcomes),
        "counts": report.counts(),
        "elapsed_seconds": round(report.elapsed, 3),
        "failures": [
            {"cell": list(oc.cell), "detail": oc.detail} for oc in report.failures()
        ],
    }


def report_cells_csv(report: VerificationReport) -> str:
    first = "m" if report.kind == "split-optimality" else "k"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([first, "n", "status", "detail"])
    for oc in report.outcomes:
        writer.writerow(
            [
                oc.cell[0],
                oc.cell[1],
                oc.status,
                canonical_json(oc.detail) if oc.detail else "",
            ]
        )
    return buf.getvalue()


def save_sweep_figure(report: VerificationReport, path: str) -> None:
    """Stacked per-row outcome counts, one bar per m (or k) value."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = sorted({oc.cell[0] for oc in report.outcomes})
    statuses = [PASS, EMPTY, SKIPPED, FAIL]
    colors = {"pass": "#4a7", "empty": "#ccc", "skipped": "#fb5", "fail": "#d33"}
    counts = {st: [0] * len(rows) for st in statuses}
    index = {r: i for i, r in enumerate(rows)}
    for oc in report.outcomes:
        counts[oc.status][index[oc.cell[0]]] += 1
    fig, ax = plt.subplots(figsize=(6, 4))
    bottom = [0] * len(rows)
    for st in statuses:
        if not any(counts[st]):
            continue
        ax.bar(rows, counts[st], bottom=bottom, label=st, color=colors[st])
        bottom = [b + c for b, c in zip(bottom, counts[st])]
    label = "m" if report.kind == "split-optimality" else "k"
    ax.set_xlabel(label)
    ax.set_ylabel("cells")
    ax.set_xticks(rows)
    ax.set_title(report.kind)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
