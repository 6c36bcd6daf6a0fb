"""Parameter sweeps, figure presets, and CSV/SVG emission.

A sweep is defined by a GridSpec: one or two swept axes plus fixed values
for the remaining parameters.  run_grid evaluates every point row-major
(first axis outer, second inner), never aborts on a point failure — the
error is recorded in that row's status — and is deterministic: the same
grid produces byte-identical CSV output regardless of worker count,
because every point is a pure function of its parameters and results are
collected in task order.

CSV rows carry the full parameter tuple, every observable, and a status
column; floats are written with repr(), Python's shortest round-trip
decimal form.  The file contains exactly one header line plus one line
per grid point — no comment or metadata lines, so an N-point sweep is an
(N+1)-line file.  Figure metadata lives in the SVG output as XML comments.

The figure presets reproduce the package's reference plots:

  fig1a  concurrence/lambda^2 heatmap over (Omega, D), flat spacetime
  fig1b  same heatmap with a GW background (A=0.05), t0=0
  fig1c  same with t0=1
  fig2   theta_gw vs omega, curves over Omega and D panels, t0=0
  fig3   same as fig2 with t0=1
  fig4   psi_gw vs omega, curves over Omega and D panels, t0=0
  fig5   same as fig4 with t0=1
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import closedform
from .model import (
    CONFIG_DEFAULTS,
    IncompleteGrid,
    params_from_mapping,
)

__all__ = [
    "AXIS_NAMES",
    "CSV_HEADER",
    "AxisSpec",
    "GridSpec",
    "GridPoint",
    "FigurePreset",
    "PRESETS",
    "run_grid",
    "run_preset",
    "emit_csv",
    "emit_svg",
    "build_figure",
]

AXIS_NAMES = ("A", "omega_sigma", "Omega_sigma", "D_sigma", "t0_sigma")

CSV_HEADER = (
    "omega_sigma,Omega_sigma,D_sigma,t0_sigma,A,"
    "p_norm,re_x_m,im_x_m,re_c_m,im_c_m,re_x_gw,im_x_gw,re_c_gw,im_c_gw,"
    "theta_m,theta_gw,concurrence,psi_m,psi_gw,corr,status"
)


@dataclass(frozen=True)
class AxisSpec:
    """One swept axis: an inclusive linear range with at least two points."""

    name: str
    minimum: float
    maximum: float
    count: int

    def __post_init__(self) -> None:
        if self.name not in AXIS_NAMES:
            raise ValueError(
                f"unknown axis {self.name!r} (axes: {', '.join(AXIS_NAMES)})"
            )
        if self.count < 2:
            raise ValueError(f"axis {self.name}: count must be >= 2, got {self.count}")
        if not self.minimum < self.maximum:
            raise ValueError(
                f"axis {self.name}: need min < max, got {self.minimum!r} "
                f">= {self.maximum!r}"
            )

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(
            float(v) for v in np.linspace(self.minimum, self.maximum, self.count)
        )


@dataclass(frozen=True)
class GridSpec:
    """One or two swept axes plus fixed values for everything else.

    Missing fixed parameters take the library defaults (A=0, lambda=1,
    omega_sigma=2, Omega_sigma=1, D_sigma=1, t0_sigma=0).
    """

    axis1: AxisSpec
    axis2: AxisSpec | None = None
    fixed: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        axis_names = {self.axis1.name}
        if self.axis2 is not None:
            if self.axis2.name == self.axis1.name:
                raise ValueError(f"both axes sweep {self.axis1.name!r}")
            axis_names.add(self.axis2.name)
        for key in self.fixed:
            if key not in AXIS_NAMES and key != "lambda":
                raise ValueError(f"unknown fixed parameter {key!r}")
            if key in axis_names:
                raise ValueError(f"{key!r} is both swept and fixed")

    def point_values(self) -> list[tuple[tuple[str, float], ...]]:
        """Full parameter mapping per point, row-major (axis1 outer)."""
        base = dict(CONFIG_DEFAULTS)
        base.pop("lambda", None)
        base.update(self.fixed)
        out: list[tuple[tuple[str, float], ...]] = []
        for v1 in self.axis1.values:
            if self.axis2 is None:
                merged = dict(base)
                merged[self.axis1.name] = v1
                out.append(tuple(sorted(merged.items())))
            else:
                for v2 in self.axis2.values:
                    merged = dict(base)
                    merged[self.axis1.name] = v1
                    merged[self.axis2.name] = v2
                    out.append(tuple(sorted(merged.items())))
        return out


@dataclass(frozen=True)
class GridPoint:
    """One evaluated grid point: parameters, report (if ok), and status."""

    values: tuple[tuple[str, float], ...]
    report: closedform.HarvestReport | None
    status: str

    def value(self, name: str) -> float:
        return dict(self.values)[name]

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _evaluate_point(items: tuple[tuple[str, float], ...]) -> GridPoint:
    """Pure evaluation of one grid point; errors land in the status field."""
    try:
        params = params_from_mapping(dict(items))
        report = closedform.evaluate(params)
        return GridPoint(values=items, report=report, status="ok")
    except Exception as exc:
        status = f"{type(exc).__name__}: {exc}".replace(",", ";")
        status = " ".join(status.split())
        return GridPoint(values=items, report=None, status=status)


def run_grid(spec: GridSpec, *, workers: int = 1) -> list[GridPoint]:
    """Evaluate a grid row-major; failures are per-point, never fatal.

    With workers > 1 the points are evaluated in a process pool; results
    are collected in submission order (executor.map preserves order), and
    each point is a pure function of its parameter tuple, so output is
    identical to the single-process run.
    """
    tasks = spec.point_values()
    if workers <= 1:
        return [_evaluate_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_point, tasks, chunksize=64))


# --- CSV -------------------------------------------------------------------


def _csv_row(point: GridPoint) -> str:
    p = dict(point.values)
    fields = [
        repr(p["omega_sigma"]),
        repr(p["Omega_sigma"]),
        repr(p["D_sigma"]),
        repr(p["t0_sigma"]),
        repr(p["A"]),
    ]
    r = point.report
    if r is None:
        fields.extend(["nan"] * 15)
    else:
        fields.extend(
            repr(float(v))
            for v in (
                r.p_norm,
                r.x_m.real,
                r.x_m.imag,
                r.c_m.real,
                r.c_m.imag,
                r.x_gw.real,
                r.x_gw.imag,
                r.c_gw.real,
                r.c_gw.imag,
                r.theta_m,
                r.theta_gw,
                r.concurrence,
                r.psi_m,
                r.psi_gw,
                r.corr,
            )
        )
    fields.append(point.status)
    return ",".join(fields)


def emit_csv(points: Sequence[GridPoint], path: str) -> str:
    """Write grid results as CSV: header line plus one line per point.

    No comment or metadata lines are emitted, so the file always has
    exactly len(points) + 1 lines.  Floats use repr() — the shortest
    decimal form that round-trips to the identical double.
    """
    lines = [CSV_HEADER]
    lines.extend(_csv_row(pt) for pt in points)
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


# --- figure presets ---------------------------------------------------------


@dataclass(frozen=True)
class FigurePreset:
    """A reference figure: grids to run plus how to render them."""

    figure_id: str
    kind: str  # "heatmap" | "lines"
    quantity: str  # HarvestReport field to plot
    grids: tuple[GridSpec, ...]
    description: str


def _fig1_grid(A: float, t0: float) -> GridSpec:
    return GridSpec(
        axis1=AxisSpec("Omega_sigma", -2.0, 2.0, 61),
        axis2=AxisSpec("D_sigma", 0.25, 4.0, 61),
        fixed={"omega_sigma": 2.0, "t0_sigma": t0, "A": A},
    )


_LINE_OMEGAS = (0.5, 1.0, 1.5, 2.0)
_LINE_DS = (0.5, 2.0)


def _line_grids(t0: float) -> tuple[GridSpec, ...]:
    grids = []
    for D in _LINE_DS:
        for Om in _LINE_OMEGAS:
            grids.append(
                GridSpec(
                    axis1=AxisSpec("omega_sigma", 0.2, 8.0, 101),
                    fixed={
                        "Omega_sigma": Om,
                        "D_sigma": D,
                        "t0_sigma": t0,
                        "A": 0.05,
                    },
                )
            )
    return tuple(grids)


PRESETS: dict[str, FigurePreset] = {
    "fig1a": FigurePreset(
        "fig1a",
        "heatmap",
        "concurrence",
        (_fig1_grid(A=0.0, t0=0.0),),
        "concurrence per lambda^2 over (Omega, D), flat spacetime",
    ),
    "fig1b": FigurePreset(
        "fig1b",
        "heatmap",
        "concurrence",
        (_fig1_grid(A=0.05, t0=0.0),),
        "concurrence per lambda^2 over (Omega, D), GW background, t0=0",
    ),
    "fig1c": FigurePreset(
        "fig1c",
        "heatmap",
        "concurrence",
        (_fig1_grid(A=0.05, t0=1.0),),
        "concurrence per lambda^2 over (Omega, D), GW background, t0=1",
    ),
    "fig2": FigurePreset(
        "fig2",
        "lines",
        "theta_gw",
        _line_grids(t0=0.0),
        "GW shift of |X| per unit strain vs omega, t0=0",
    ),
    "fig3": FigurePreset(
        "fig3",
        "lines",
        "theta_gw",
        _line_grids(t0=1.0),
        "GW shift of |X| per unit strain vs omega, t0=1",
    ),
    "fig4": FigurePreset(
        "fig4",
        "lines",
        "psi_gw",
        _line_grids(t0=0.0),
        "GW shift of the correlation function per unit strain vs omega, t0=0",
    ),
    "fig5": FigurePreset(
        "fig5",
        "lines",
        "psi_gw",
        _line_grids(t0=1.0),
        "GW shift of the correlation function per unit strain vs omega, t0=1",
    ),
}


def run_preset(preset: FigurePreset, *, workers: int = 1) -> list[GridPoint]:
    """Run every grid of a preset and concatenate the points in order."""
    points: list[GridPoint] = []
    for grid in preset.grids:
        points.extend(run_grid(grid, workers=workers))
    return points


# --- SVG -------------------------------------------------------------------

# Dark-blue -> teal -> yellow perceptual ramp (anchor stops).
_RAMP = (
    (0.0, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.5, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.0, (253, 231, 37)),
)

_LINE_COLORS = (
    "#4053d3",
    "#ddb310",
    "#b51d14",
    "#00beff",
    "#fb49b0",
    "#00b25d",
    "#cacaca",
    "#5d5d5d",
)


def _ramp_color(t: float) -> str:
    t = min(1.0, max(0.0, t))
    for (t0, c0), (t1, c1) in zip(_RAMP, _RAMP[1:]):
        if t <= t1:
            u = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            rgb = tuple(round(a + u * (b - a)) for a, b in zip(c0, c1))
            return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"
    r, g, b = _RAMP[-1][1]
    return f"rgb({r},{g},{b})"


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    """Round tick locations covering [lo, hi]."""
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / max(n - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * abs(step):
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:g}"


def _require_complete(points: Sequence[GridPoint], expected: int) -> None:
    if len(points) != expected:
        raise IncompleteGrid(
            f"expected {expected} grid points, got {len(points)}"
        )
    bad = [pt for pt in points if not pt.ok]
    if bad:
        raise IncompleteGrid(
            f"{len(bad)} of {len(points)} grid points failed; first: "
            f"{bad[0].status}"
        )


def _svg_heatmap(preset: FigurePreset, points: Sequence[GridPoint]) -> str:
    grid = preset.grids[0]
    assert grid.axis2 is not None
    xs = grid.axis1.values
    ys = grid.axis2.values
    _require_complete(points, len(xs) * len(ys))

    vals = {}
    for pt in points:
        assert pt.report is not None
        vals[(pt.value(grid.axis1.name), pt.value(grid.axis2.name))] = float(
            getattr(pt.report, preset.quantity)
        )
    vmin = min(vals.values())
    vmax = max(vals.values())
    span = vmax - vmin if vmax > vmin else 1.0

    width, height = 860, 640
    ml, mr, mt, mb = 80, 140, 50, 70
    pw, ph = width - ml - mr, height - mt - mb
    cw, ch = pw / len(xs), ph / len(ys)

    def px(i: int) -> float:
        return ml + i * cw

    def py(j: int) -> float:
        # larger axis2 value toward the top
        return mt + (len(ys) - 1 - j) * ch

    cells = []
    for i, xv in enumerate(xs):
        for j, yv in enumerate(ys):
            v = vals[(xv, yv)]
            color = _ramp_color((v - vmin) / span)
            cells.append(
                f'<rect x="{px(i):.2f}" y="{py(j):.2f}" '
                f'width="{cw + 0.5:.2f}" height="{ch + 0.5:.2f}" '
                f'fill="{color}"/>'
            )

    axes = [
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" '
        f'stroke="#333" stroke-width="1"/>'
    ]
    for t in _ticks(xs[0], xs[-1]):
        fx = ml + (t - xs[0]) / (xs[-1] - xs[0]) * pw
        axes.append(
            f'<line x1="{fx:.2f}" y1="{mt + ph}" x2="{fx:.2f}" '
            f'y2="{mt + ph + 5}" stroke="#333"/>'
        )
        axes.append(
            f'<text x="{fx:.2f}" y="{mt + ph + 20}" text-anchor="middle" '
            f'font-size="12">{_fmt(t)}</text>'
        )
    for t in _ticks(ys[0], ys[-1]):
        fy = mt + ph - (t - ys[0]) / (ys[-1] - ys[0]) * ph
        axes.append(
            f'<line x1="{ml - 5}" y1="{fy:.2f}" x2="{ml}" y2="{fy:.2f}" '
            f'stroke="#333"/>'
        )
        axes.append(
            f'<text x="{ml - 9}" y="{fy + 4:.2f}" text-anchor="end" '
            f'font-size="12">{_fmt(t)}</text>'
        )
    axes.append(
        f'<text x="{ml + pw / 2:.2f}" y="{height - 25}" text-anchor="middle" '
        f'font-size="14">{grid.axis1.name}</text>'
    )
    axes.append(
        f'<text x="22" y="{mt + ph / 2:.2f}" text-anchor="middle" '
        f'font-size="14" transform="rotate(-90 22 {mt + ph / 2:.2f})">'
        f"{grid.axis2.name}</text>"
    )

    # Color bar.
    bx, bw_ = ml + pw + 30, 22
    nseg = 64
    bar = []
    for k in range(nseg):
        t = (k + 0.5) / nseg
        yy = mt + ph - (k + 1) * ph / nseg
        bar.append(
            f'<rect x="{bx}" y="{yy:.2f}" width="{bw_}" '
            f'height="{ph / nseg + 0.5:.2f}" fill="{_ramp_color(t)}"/>'
        )
    bar.append(
        f'<rect x="{bx}" y="{mt}" width="{bw_}" height="{ph}" fill="none" '
        f'stroke="#333"/>'
    )
    for frac, val in ((0.0, vmin), (0.5, (vmin + vmax) / 2), (1.0, vmax)):
        yy = mt + ph - frac * ph
        bar.append(
            f'<text x="{bx + bw_ + 6}" y="{yy + 4:.2f}" font-size="11">'
            f"{val:.3g}</text>"
        )
    bar.append(
        f'<text x="{bx + bw_ / 2:.2f}" y="{mt - 10}" text-anchor="middle" '
        f'font-size="12">{preset.quantity}</text>'
    )

    fixed = {
        k: v for k, v in sorted(grid.fixed.items())
    }
    meta = (
        f"<!-- figure={preset.figure_id} kind=heatmap "
        f"quantity={preset.quantity} "
        f"x={grid.axis1.name}[{_fmt(xs[0])}..{_fmt(xs[-1])} n={len(xs)}] "
        f"y={grid.axis2.name}[{_fmt(ys[0])}..{_fmt(ys[-1])} n={len(ys)}] "
        f"fixed={fixed!r} -->"
    )
    title = (
        f'<text x="{ml + pw / 2:.2f}" y="28" text-anchor="middle" '
        f'font-size="15">{preset.description}</text>'
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">\n'
        f"{meta}\n"
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        + title
        + "\n"
        + "\n".join(cells)
        + "\n"
        + "\n".join(axes)
        + "\n"
        + "\n".join(bar)
        + "\n</svg>\n"
    )


def _svg_lines(preset: FigurePreset, points: Sequence[GridPoint]) -> str:
    sizes = [g.axis1.count for g in preset.grids]
    _require_complete(points, sum(sizes))

    # Split the concatenated points back into per-grid curves.
    curves: list[tuple[GridSpec, list[GridPoint]]] = []
    idx = 0
    for g, n in zip(preset.grids, sizes):
        curves.append((g, list(points[idx : idx + n])))
        idx += n

    xaxis = preset.grids[0].axis1
    all_y = [
        float(getattr(pt.report, preset.quantity))
        for _, pts in curves
        for pt in pts
    ]
    ymin, ymax = min(all_y), max(all_y)
    if ymax == ymin:
        ymax = ymin + 1.0
    pad = 0.05 * (ymax - ymin)
    ymin -= pad
    ymax += pad

    width, height = 860, 600
    ml, mr, mt, mb = 90, 210, 40, 70
    pw, ph = width - ml - mr, height - mt - mb
    x0, x1 = xaxis.minimum, xaxis.maximum

    def fx(v: float) -> float:
        return ml + (v - x0) / (x1 - x0) * pw

    def fy(v: float) -> float:
        return mt + (ymax - v) / (ymax - ymin) * ph

    body = [
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" '
        f'stroke="#333" stroke-width="1"/>'
    ]
    for t in _ticks(x0, x1):
        body.append(
            f'<line x1="{fx(t):.2f}" y1="{mt + ph}" x2="{fx(t):.2f}" '
            f'y2="{mt + ph + 5}" stroke="#333"/>'
        )
        body.append(
            f'<text x="{fx(t):.2f}" y="{mt + ph + 20}" text-anchor="middle" '
            f'font-size="12">{_fmt(t)}</text>'
        )
    for t in _ticks(ymin, ymax):
        body.append(
            f'<line x1="{ml - 5}" y1="{fy(t):.2f}" x2="{ml}" '
            f'y2="{fy(t):.2f}" stroke="#333"/>'
        )
        body.append(
            f'<text x="{ml - 9}" y="{fy(t) + 4:.2f}" text-anchor="end" '
            f'font-size="12">{_fmt(t)}</text>'
        )
    if ymin < 0.0 < ymax:
        body.append(
            f'<line x1="{ml}" y1="{fy(0.0):.2f}" x2="{ml + pw}" '
            f'y2="{fy(0.0):.2f}" stroke="#999" stroke-dasharray="4 4"/>'
        )

    legend = []
    for k, (g, pts) in enumerate(curves):
        color = _LINE_COLORS[k % len(_LINE_COLORS)]
        coords = " ".join(
            f"{fx(pt.value(xaxis.name)):.2f},"
            f"{fy(float(getattr(pt.report, preset.quantity))):.2f}"
            for pt in pts
        )
        body.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="1.8"/>'
        )
        label = (
            f"Omega={_fmt(g.fixed['Omega_sigma'])}, "
            f"D={_fmt(g.fixed['D_sigma'])}"
        )
        ly = mt + 16 + 18 * k
        legend.append(
            f'<line x1="{ml + pw + 14}" y1="{ly - 4}" x2="{ml + pw + 40}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2.5"/>'
        )
        legend.append(
            f'<text x="{ml + pw + 46}" y="{ly}" font-size="12">{label}</text>'
        )

    body.append(
        f'<text x="{ml + pw / 2:.2f}" y="{height - 25}" text-anchor="middle" '
        f'font-size="14">{xaxis.name}</text>'
    )
    body.append(
        f'<text x="26" y="{mt + ph / 2:.2f}" text-anchor="middle" '
        f'font-size="14" transform="rotate(-90 26 {mt + ph / 2:.2f})">'
        f"{preset.quantity}</text>"
    )
    title = (
        f'<text x="{ml + pw / 2:.2f}" y="24" text-anchor="middle" '
        f'font-size="15">{preset.description}</text>'
    )
    t0v = preset.grids[0].fixed.get("t0_sigma", 0.0)
    meta = (
        f"<!-- figure={preset.figure_id} kind=lines "
        f"quantity={preset.quantity} "
        f"x={xaxis.name}[{_fmt(x0)}..{_fmt(x1)} n={xaxis.count}] "
        f"curves={len(curves)} t0_sigma={_fmt(t0v)} -->"
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">\n'
        f"{meta}\n"
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        + title
        + "\n"
        + "\n".join(body)
        + "\n"
        + "\n".join(legend)
        + "\n</svg>\n"
    )


def emit_svg(
    preset: FigurePreset, points: Sequence[GridPoint], path: str
) -> str:
    """Render a preset's points to a standalone SVG file.

    Heatmap for two-axis presets, line chart for one-axis presets.
    Raises IncompleteGrid if any point is missing or failed: a partial
    figure would silently misrepresent the grid.
    """
    if preset.kind == "heatmap":
        text = _svg_heatmap(preset, points)
    elif preset.kind == "lines":
        text = _svg_lines(preset, points)
    else:
        raise ValueError(f"unknown figure kind {preset.kind!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def build_figure(
    figure_id: str, out_dir: str, *, workers: int = 1
) -> tuple[str, str]:
    """Run a preset end to end: evaluate, write CSV and SVG, return paths."""
    import os

    if figure_id not in PRESETS:
        raise ValueError(
            f"unknown figure {figure_id!r} (have: {', '.join(sorted(PRESETS))})"
        )
    preset = PRESETS[figure_id]
    points = run_preset(preset, workers=workers)
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{figure_id}.csv")
    svg_path = os.path.join(out_dir, f"{figure_id}.svg")
    emit_csv(points, csv_path)
    emit_svg(preset, points, svg_path)
    return csv_path, svg_path
