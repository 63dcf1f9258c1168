"""Deterministic CSV, JSON and SVG writers for simulation and study results."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .analysis import DivergenceReport, PipReport
from .ballistics import Infeasible, KinState, RetargetSolution
from .chaos_core import ScanReport
from .guidance import SimResult

TRAJECTORY_HEADER = ("t", "px", "py", "pz", "vx", "vy", "vz")


def fmt(v) -> str:
    """Shortest round-trip decimal for floats; ints and bools pass through."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def write_csv(path: Path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    _write(path, buf.getvalue())


def _json_float(v):
    v = float(v)
    return v if math.isfinite(v) else None


def write_json(path: Path, obj):
    _write(path, json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n")


def _state(s: KinState) -> dict:
    return {"t": s.t, "p": list(s.p), "v": list(s.v)}


def _solution(sol: RetargetSolution) -> dict:
    return {"v_new": list(sol.v_new), "tof": sol.tof, "dv": sol.dv, "dtheta": sol.dtheta}


def events_doc(result: SimResult) -> list:
    out = []
    for e in result.events:
        d = {
            "index": e.index,
            "time": e.time,
            "state_before": _state(e.state_before),
            "target": list(e.target),
            "adopted": e.adopted,
        }
        if isinstance(e.solution, Infeasible):
            d["solution"] = None
            d["infeasible"] = {"reason": e.solution.reason, "best": _solution(e.solution.best)}
        else:
            d["solution"] = _solution(e.solution)
        out.append(d)
    return out


def result_doc(result: SimResult) -> dict:
    return {
        "impact": list(result.impact),
        "impact_time": result.impact_time,
        "miss_from_A": result.miss_from_A,
        "hit_neighborhood": result.hit_neighborhood,
        "committed_target": list(result.committed_target),
        "target": {"center": list(result.target.center), "radius": result.target.radius},
        "map_a": result.map_a,
        "variable_targets": [list(p) for p in result.targets],
        "n_events": len(result.events),
        "n_adopted": sum(e.adopted for e in result.events),
    }


def write_trajectory_csv(path: Path, result: SimResult):
    write_csv(path, TRAJECTORY_HEADER, result.samples.tolist())


def trajectory_svg(result: SimResult, size: int = 640) -> str:
    """Ground track with the target disc, variable targets and impact point."""
    c, r = result.target.center, result.target.radius
    xs = [float(v) for v in result.samples[:, 1]]
    ys = [float(v) for v in result.samples[:, 2]]
    pts = list(result.targets) + [result.impact]
    lo_x = min(xs + [c.x - r] + [p[0] for p in pts])
    hi_x = max(xs + [c.x + r] + [p[0] for p in pts])
    lo_y = min(ys + [c.y - r] + [p[1] for p in pts])
    hi_y = max(ys + [c.y + r] + [p[1] for p in pts])
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def sx(x):
        return f"{(x - lo_x + pad) * scale:.3f}"

    def sy(y):  # SVG y grows downward
        return f"{size - (y - lo_y + pad) * scale:.3f}"

    track = " ".join(f"{sx(x)},{sy(y)}" for x, y in zip(xs, ys))
    mark = max(2.0, 0.01 * size)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<circle cx="{sx(c.x)}" cy="{sy(c.y)}" r="{r * scale:.3f}" fill="none" '
        'stroke="#c0392b" stroke-width="1.5"/>',
        f'<polyline points="{track}" fill="none" stroke="#1f4e79" stroke-width="1"/>',
    ]
    for i, p in enumerate(result.targets, start=1):
        lines.append(
            f'<circle cx="{sx(p[0])}" cy="{sy(p[1])}" r="{mark:.3f}" fill="#e67e22">'
            f"<title>T{i}</title></circle>"
        )
    ix, iy = result.impact
    lines.append(
        f'<path d="M {sx(ix)} {sy(iy)} m -{mark:.3f} -{mark:.3f} l {2 * mark:.3f} {2 * mark:.3f} '
        f'm 0 -{2 * mark:.3f} l -{2 * mark:.3f} {2 * mark:.3f}" stroke="black" stroke-width="1.5"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_scan(out_dir: Path, report: ScanReport, emit):
    rows = [(e.params.a, e.params.b, e.lle, e.diverged) for e in report]
    if "csv" in emit:
        write_csv(out_dir / "scan.csv", ("a", "b", "lle", "diverged"), rows)
    if "json" in emit:
        write_json(out_dir / "scan.json", [
            {"kind": e.params.kind.value, "a": e.params.a, "b": e.params.b,
             "lle": _json_float(e.lle), "diverged": e.diverged, "failure": e.failure}
            for e in report
        ])


def write_divergence(out_dir: Path, report: DivergenceReport, emit):
    if "csv" in emit:
        write_csv(out_dir / "divergence.csv", ("epsilon", "spread"),
                  zip(report.epsilons, report.spreads))
    if "json" in emit:
        write_json(out_dir / "divergence.json", {
            "epsilons": list(report.epsilons),
            "spreads": list(report.spreads),
            "n_retargets": report.n_retargets,
        })


def write_pip(out_dir: Path, reports: list[PipReport], emit):
    if "csv" in emit:
        write_csv(out_dir / "pip.csv", ("observe_time", "error", "predicted_x", "predicted_y"),
                  [(r.observe_time, r.error, r.predicted.x, r.predicted.y) for r in reports])
    if "json" in emit:
        write_json(out_dir / "pip.json", [
            {"observe_time": r.observe_time, "error": r.error,
             "predicted": list(r.predicted), "actual": list(r.actual)}
            for r in reports
        ])


def write_simulation(out_dir: Path, result: SimResult, emit):
    if "csv" in emit:
        write_trajectory_csv(out_dir / "trajectory.csv", result)
    if "json" in emit:
        write_json(out_dir / "events.json", events_doc(result))
        write_json(out_dir / "result.json", result_doc(result))
    if "svg" in emit:
        _write(out_dir / "trajectory.svg", trajectory_svg(result))
