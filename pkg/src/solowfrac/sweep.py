"""Single solves and parameter-sweep grids with deterministic CSV emission.

A sweep varies one parameter (p, q, mu or alpha) over a linear range and
tabulates k(t) over a time grid for each value, producing the flat records
behind the 3-D surface figures.  Cells (one per axis value and method) are
pure and may be evaluated in parallel; assembly is order-independent and the
emitted CSV is byte-identical across runs and degrees of parallelism.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .model import ModelParams
from .oracles import solve_abm_fractional, solve_exact_classical
from .series import DEFAULT_ORDER, build_series, eval_series

__all__ = [
    "SweepConfig",
    "SweepGrid",
    "Row",
    "PRESETS",
    "run_solve",
    "run_sweep",
    "grid_to_csv",
    "parse_csv",
    "sidecar_metadata",
    "gnuplot_script",
]

CSV_HEADER = "t,axis,k,trusted,method"
AXES = ("p", "q", "mu", "alpha")
METHODS = ("series", "abm", "exact", "both")

# t, axis value, k, trusted, method
Row = tuple[float, float, float, bool, str]


@dataclass(frozen=True)
class SweepConfig:
    base: ModelParams
    axis: str
    axis_range: tuple[float, float, int]
    t_range: tuple[float, int]  # (t_max, count); grids always start at t = 0
    order: int = DEFAULT_ORDER
    method: str = "series"

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        lo, hi, count = self.axis_range
        if count < 2:
            raise ValueError(f"axis count must be at least 2, got {count}")
        if not hi > lo:
            raise ValueError("axis range must be increasing")
        t_max, t_count = self.t_range
        if not t_max > 0:
            raise ValueError(f"t_max must be positive, got {t_max}")
        if t_count < 2:
            raise ValueError(f"time count must be at least 2, got {t_count}")
        # The whole axis must produce valid parameter sets.
        for v in (lo, hi):
            self.base.with_(**{self.axis: v})

    def axis_values(self) -> list[float]:
        lo, hi, count = self.axis_range
        step = (hi - lo) / (count - 1)
        return [lo + i * step for i in range(count)]

    def times(self) -> list[float]:
        t_max, count = self.t_range
        step = t_max / (count - 1)
        return [i * step for i in range(count)]

    def methods(self) -> list[str]:
        if self.method != "both":
            return [self.method]
        second = "exact" if self.base.alpha == 1.0 and self.axis != "alpha" else "abm"
        return ["series", second]

    def as_dict(self) -> dict:
        return {
            "base": {
                "p": self.base.p, "q": self.base.q, "mu": self.base.mu,
                "alpha": self.base.alpha, "k0": self.base.k0,
            },
            "axis": self.axis,
            "axis_range": list(self.axis_range),
            "t_range": list(self.t_range),
            "order": self.order,
            "method": self.method,
        }


@dataclass(frozen=True)
class SweepGrid:
    config: SweepConfig
    rows: tuple[Row, ...]


def _reference_base(alpha: float = 1.0) -> ModelParams:
    return ModelParams(p=0.5, q=0.2, mu=1.0 / 3.0, alpha=alpha, k0=1.0)


# Figure-replication presets.  Axis ranges are artifact choices within
# standard economic ranges; t in [0, 2] with 41 points, 21 axis values,
# truncation order 5.
PRESETS: dict[str, SweepConfig] = {
    "fig-ktq": SweepConfig(
        base=_reference_base(), axis="q", axis_range=(0.1, 0.4, 21),
        t_range=(2.0, 41),
    ),
    "fig-ktp": SweepConfig(
        base=_reference_base(), axis="p", axis_range=(0.2, 1.0, 21),
        t_range=(2.0, 41),
    ),
    "fig-ktmu": SweepConfig(
        base=_reference_base(), axis="mu", axis_range=(0.1, 0.9, 21),
        t_range=(2.0, 41),
    ),
    "fig-ktq-frac": SweepConfig(
        base=_reference_base(alpha=0.8), axis="q", axis_range=(0.1, 0.4, 21),
        t_range=(2.0, 41),
    ),
    "fig-ktalpha": SweepConfig(
        base=_reference_base(alpha=0.8), axis="alpha", axis_range=(0.3, 1.0, 21),
        t_range=(2.0, 41),
    ),
}


def _abm_on_grid(params: ModelParams, times: list[float]) -> list[float]:
    """ABM values exactly on the requested uniform grid (stride sampling)."""
    count = len(times)
    t_max = times[-1]
    per = max(1, math.ceil(256 / (count - 1)))
    steps = (count - 1) * per
    traj = solve_abm_fractional(params, t_end=t_max, steps=steps)
    return [traj.values[i * per] for i in range(count)]


def _solve_rows(params: ModelParams, times: list[float], order: int,
                method: str, axis_value: float) -> list[Row]:
    """Rows for one (axis value, method) cell; failures become untrusted NaNs."""
    try:
        if method == "series":
            sol = build_series(params, order)
            out = []
            for t in times:
                k, trusted = eval_series(sol, t)
                out.append((t, axis_value, k, trusted, method))
            return out
        if method == "exact":
            traj = solve_exact_classical(params, times)
            return [(t, axis_value, k, True, method)
                    for t, k in zip(traj.times, traj.values)]
        if method == "abm":
            vals = _abm_on_grid(params, times)
            return [(t, axis_value, k, True, method) for t, k in zip(times, vals)]
    except (ValueError, ArithmeticError):
        return [(t, axis_value, float("nan"), False, method) for t in times]
    raise ValueError(f"unknown method {method!r}")


def run_solve(params: ModelParams, t_max: float, samples: int,
              method: str, order: int = DEFAULT_ORDER) -> list[Row]:
    """Single trajectory as flat rows.

    The axis column is fixed to 0.0 (no swept parameter).  Validation
    failures propagate (the CLI maps them to exit code 2).
    """
    if method not in ("series", "abm", "exact", "both"):
        raise ValueError(f"unknown method {method!r}")
    if method == "exact" and params.alpha != 1.0:
        raise ValueError("method 'exact' requires alpha = 1")
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}")
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    times = [i * t_max / (samples - 1) for i in range(samples)]
    methods = [method] if method != "both" else (
        ["series", "exact"] if params.alpha == 1.0 else ["series", "abm"]
    )
    # Build per-method trajectories once, then interleave t-major.
    rows: list[Row] = []
    per_method: dict[str, list[Row]] = {}
    for m in methods:
        if m == "series":
            sol = build_series(params, order)
            per_method[m] = [(t, 0.0, *eval_series(sol, t), m) for t in times]
        elif m == "exact":
            traj = solve_exact_classical(params, times)
            per_method[m] = [(t, 0.0, k, True, m) for t, k in zip(traj.times, traj.values)]
        else:
            vals = _abm_on_grid(params, times)
            per_method[m] = [(t, 0.0, k, True, m) for t, k in zip(times, vals)]
    for i in range(len(times)):
        for m in methods:
            rows.append(per_method[m][i])
    return rows


def run_sweep(config: SweepConfig, jobs: int = 1) -> SweepGrid:
    """Evaluate the full grid; deterministic t-major, then axis, then method order."""
    times = config.times()
    methods = config.methods()
    axis_values = config.axis_values()

    cells = [
        (config.base.with_(**{config.axis: v}), v, m)
        for v in axis_values
        for m in methods
    ]

    def run_cell(cell) -> list[Row]:
        params, v, m = cell
        return _solve_rows(params, times, config.order, m, v)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cell_rows = list(pool.map(run_cell, cells))
    else:
        cell_rows = [run_cell(c) for c in cells]

    # Cell results arrive (axis, method)-major with t inside; reorder t-major.
    rows: list[Row] = []
    for t_idx in range(len(times)):
        for cell_idx in range(len(cells)):
            rows.append(cell_rows[cell_idx][t_idx])
    return SweepGrid(config=config, rows=tuple(rows))


def _fmt(x: float) -> str:
    return "%.17g" % x


def grid_to_csv(grid: SweepGrid) -> str:
    """CSV text: header `t,axis,k,trusted,method`, LF endings, 17 significant digits."""
    lines = [CSV_HEADER]
    for t, axis, k, trusted, method in grid.rows:
        lines.append(f"{_fmt(t)},{_fmt(axis)},{_fmt(k)},{'true' if trusted else 'false'},{method}")
    return "\n".join(lines) + "\n"


def rows_to_csv(rows: list[Row], header: str = "t,k,trusted,method") -> str:
    """CSV for single solves (no axis column)."""
    lines = [header]
    for t, _axis, k, trusted, method in rows:
        lines.append(f"{_fmt(t)},{_fmt(k)},{'true' if trusted else 'false'},{method}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> tuple[str, list[Row]]:
    """Parse an emitted grid CSV back into rows (round-trip safe)."""
    lines = text.strip("\n").split("\n")
    header = lines[0]
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows: list[Row] = []
    for line in lines[1:]:
        t, axis, k, trusted, method = line.split(",")
        rows.append((float(t), float(axis), float(k), trusted == "true", method))
    return header, rows


def rows_from_parsed_to_csv(rows: list[Row]) -> str:
    lines = [CSV_HEADER]
    for t, axis, k, trusted, method in rows:
        lines.append(f"{_fmt(t)},{_fmt(axis)},{_fmt(k)},{'true' if trusted else 'false'},{method}")
    return "\n".join(lines) + "\n"


def sidecar_metadata(grid: SweepGrid) -> str:
    """Deterministic JSON sidecar describing the run (no timestamps)."""
    meta = {
        "format": "solowfrac sweep grid v1",
        "csv_header": CSV_HEADER,
        "config": grid.config.as_dict(),
        "row_count": len(grid.rows),
    }
    return json.dumps(meta, indent=2, sort_keys=True) + "\n"


def gnuplot_script(csv_path: str, config: SweepConfig) -> str:
    """Companion gnuplot script for a quick surface rendering of the grid."""
    return "\n".join([
        "set datafile separator ','",
        "set dgrid3d 41,21",
        "set hidden3d",
        f"set xlabel 't'",
        f"set ylabel '{config.axis}'",
        "set zlabel 'k'",
        f"splot '{csv_path}' every ::1 using 1:2:3 with lines title 'k(t, {config.axis})'",
        "pause -1",
    ]) + "\n"
