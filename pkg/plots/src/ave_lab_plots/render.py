"""Render unit-circle trace CSVs into side-by-side figure panels.

Input files follow the trace schema produced by ``ave-lab trace``: the exact
header ``theta,x1,x2,fx1,fx2`` with theta ascending, one closed curve per
file.  Each panel shows the image curve with equal-aspect axes, a marked
origin, and an annotation carrying the homotopy parameter t and the winding
number of the curve about the origin.  The winding number is recomputed here
from the CSV points on purpose, so the annotation cross-checks the producer
instead of echoing it.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_HEADER = "theta,x1,x2,fx1,fx2"

# Fixed ids and no timestamps: identical inputs give identical SVG bytes.
plt.rcParams["svg.hashsalt"] = "ave-lab-plots"


class TraceCsvError(ValueError):
    """Malformed trace CSV."""


@dataclass(frozen=True)
class TraceCsv:
    path: str
    theta: list[float]
    x1: list[float]
    x2: list[float]
    fx1: list[float]
    fx2: list[float]


def load_trace_csv(path: str | Path) -> TraceCsv:
    """Parse and validate one trace CSV file."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != EXPECTED_HEADER:
        raise TraceCsvError(f"{path}: header must be exactly {EXPECTED_HEADER!r}")
    columns: list[list[float]] = [[], [], [], [], []]
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise TraceCsvError(f"{path}:{lineno}: expected 5 fields, got {len(parts)}")
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise TraceCsvError(f"{path}:{lineno}: {exc}") from exc
        if not all(math.isfinite(v) for v in values):
            raise TraceCsvError(f"{path}:{lineno}: non-finite value")
        for col, v in zip(columns, values):
            col.append(v)
    theta = columns[0]
    if len(theta) < 3:
        raise TraceCsvError(f"{path}: need at least 3 sample rows")
    if any(b <= a for a, b in zip(theta, theta[1:])):
        raise TraceCsvError(f"{path}: theta column must be strictly ascending")
    return TraceCsv(str(path), *columns)


def winding_of_curve(xs: list[float], ys: list[float]) -> int | None:
    """Winding number of the closed polyline about the origin.

    None when a vertex sits (numerically) on the origin or the accumulated
    angle is not close to a full number of turns.
    """
    radii = [math.hypot(x, y) for x, y in zip(xs, ys)]
    if min(radii) <= 1e-9 * max(1.0, max(radii)):
        return None
    angles = [math.atan2(y, x) for x, y in zip(xs, ys)]
    total = 0.0
    for a, b in zip(angles, angles[1:] + angles[:1]):
        delta = b - a
        while delta > math.pi:
            delta -= 2.0 * math.pi
        while delta <= -math.pi:
            delta += 2.0 * math.pi
        total += delta
    turns = total / (2.0 * math.pi)
    nearest = round(turns)
    if abs(turns - nearest) >= 0.01:
        return None
    return int(nearest)


def _t_label(trace: TraceCsv, explicit: float | None) -> str:
    if explicit is not None:
        return f"{explicit:g}"
    stem = Path(trace.path).stem
    if stem.startswith("trace_t"):
        return stem[len("trace_t"):]
    return "?"


def render(
    trace_paths: list[str | Path],
    out_path: str | Path,
    title: str = "",
    t_values: list[float] | None = None,
) -> Path:
    """Draw one equal-aspect panel per CSV and write the figure file.

    The output format follows the file suffix (SVG recommended for diffable
    artifacts, PNG works too).  Returns the output path.
    """
    traces = [load_trace_csv(p) for p in trace_paths]
    if not traces:
        raise TraceCsvError("no input CSV files given")
    if t_values is not None and len(t_values) != len(traces):
        raise TraceCsvError(
            f"got {len(t_values)} t labels for {len(traces)} trace files"
        )

    fig, axes = plt.subplots(1, len(traces), figsize=(4.2 * len(traces), 4.4))
    if len(traces) == 1:
        axes = [axes]
    for idx, (ax, trace) in enumerate(zip(axes, traces)):
        xs = trace.fx1 + trace.fx1[:1]
        ys = trace.fx2 + trace.fx2[:1]
        ax.plot(xs, ys, color="tab:blue", linewidth=1.4)
        ax.plot([0.0], [0.0], marker="+", color="black", markersize=9, markeredgewidth=1.6)
        winding = winding_of_curve(trace.fx1, trace.fx2)
        label = _t_label(trace, t_values[idx] if t_values is not None else None)
        wtext = "undefined" if winding is None else str(winding)
        ax.set_title(f"t = {label}, winding = {wtext}")
        ax.set_aspect("equal", adjustable="datalim")
        ax.grid(True, alpha=0.3)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, metadata={"Date": None} if out.suffix == ".svg" else None)
    plt.close(fig)
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render ave-lab trace CSVs into a multi-panel figure",
    )
    parser.add_argument("--in", dest="inputs", nargs="+", required=True, help="trace CSV files")
    parser.add_argument("--out", required=True, help="output image file (suffix picks the format)")
    parser.add_argument("--title", default="", help="figure title")
    parser.add_argument(
        "--t", dest="t_values", nargs="*", type=float, default=None,
        help="per-panel homotopy parameters (default: parsed from filenames)",
    )
    args = parser.parse_args(argv)
    try:
        out = render(args.inputs, args.out, title=args.title, t_values=args.t_values)
    except (TraceCsvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
