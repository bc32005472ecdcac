"""Command-line frontend: solve, sweep, equilibria, verify, compare.

Exit codes: 0 success, 1 verification/comparison failure, 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .equilibrium import find_equilibria
from .model import ModelParams
from .series import DEFAULT_ORDER, build_series, eval_series
from .sweep import (
    PRESETS,
    SweepConfig,
    gnuplot_script,
    grid_to_csv,
    rows_to_csv,
    run_solve,
    run_sweep,
    sidecar_metadata,
)

# Flat key=value config files.  Values feed the same validation as the flags.
CONFIG_KEYS = {
    "p": float, "q": float, "mu": float, "alpha": float, "k0": float,
    "order": int, "t_max": float, "samples": int, "method": str,
    "axis": str, "axis_min": float, "axis_max": float, "axis_count": int,
    "t_count": int, "preset": str,
}


def _read_config(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = CONFIG_KEYS[key](val.strip())
    return values


def _add_param_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=float, default=None, help="productivity coefficient (> 0)")
    sp.add_argument("--q", type=float, default=None, help="depreciation/labour-growth rate (> 0)")
    sp.add_argument("--mu", type=float, default=None, help="capital elasticity in (0, 1)")
    sp.add_argument("--alpha", type=float, default=None, help="fractional order in (0, 1]")
    sp.add_argument("--k0", type=float, default=None, help="initial capital-labour ratio (> 0)")
    sp.add_argument("--config", default=None, help="flat key=value config file")


def _merged(args, config: dict, key: str, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in config:
        return config[key]
    return default


def _params_from(args, config: dict) -> ModelParams:
    return ModelParams(
        p=_merged(args, config, "p", 0.5),
        q=_merged(args, config, "q", 0.2),
        mu=_merged(args, config, "mu", 1.0 / 3.0),
        alpha=_merged(args, config, "alpha", 1.0),
        k0=_merged(args, config, "k0", 1.0),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solowfrac",
        description="Series and oracle solvers for the classical and "
                    "Caputo-fractional Solow-Swan capital accumulation model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="single trajectory to CSV")
    _add_param_flags(p_solve)
    p_solve.add_argument("--order", type=int, default=None, help=f"series truncation (default {DEFAULT_ORDER})")
    p_solve.add_argument("--t-max", type=float, default=None, dest="t_max")
    p_solve.add_argument("--samples", type=int, default=None)
    p_solve.add_argument("--method", choices=["series", "abm", "exact", "both"], default=None)
    p_solve.add_argument("--out", default=None, help="output CSV path (default stdout)")

    p_sweep = sub.add_parser("sweep", help="parameter sweep grid to CSV")
    _add_param_flags(p_sweep)
    p_sweep.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p_sweep.add_argument("--axis", choices=["p", "q", "mu", "alpha"], default=None)
    p_sweep.add_argument("--axis-min", type=float, default=None, dest="axis_min")
    p_sweep.add_argument("--axis-max", type=float, default=None, dest="axis_max")
    p_sweep.add_argument("--axis-count", type=int, default=None, dest="axis_count")
    p_sweep.add_argument("--t-max", type=float, default=None, dest="t_max")
    p_sweep.add_argument("--t-count", type=int, default=None, dest="t_count")
    p_sweep.add_argument("--order", type=int, default=None)
    p_sweep.add_argument("--method", choices=["series", "abm", "exact", "both"], default=None)
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel cell evaluation")
    p_sweep.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p_sweep.add_argument("--gnuplot-script", default=None, dest="gnuplot_script",
                         help="also write a companion gnuplot script to this path")

    p_eq = sub.add_parser("equilibria", help="fixed points and stability")
    _add_param_flags(p_eq)
    p_eq.add_argument("--json", action="store_true", help="print JSON instead of a table")
    p_eq.add_argument("--out", default=None, help="also write the JSON report here")

    p_verify = sub.add_parser("verify", help="run all transform identity checks")
    _add_param_flags(p_verify)

    p_cmp = sub.add_parser("compare", help="series vs oracle on the trusted region")
    _add_param_flags(p_cmp)
    p_cmp.add_argument("--order", type=int, default=None)
    p_cmp.add_argument("--t-max", type=float, default=None, dest="t_max")
    p_cmp.add_argument("--samples", type=int, default=None)
    p_cmp.add_argument("--tol", type=float, default=1e-3, help="max allowed relative gap")

    return parser


def _cmd_solve(args, config) -> int:
    params = _params_from(args, config)
    rows = run_solve(
        params,
        t_max=_merged(args, config, "t_max", 2.0),
        samples=int(_merged(args, config, "samples", 41)),
        method=_merged(args, config, "method", "series"),
        order=int(_merged(args, config, "order", DEFAULT_ORDER)),
    )
    csv_text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def _sweep_config_from(args, config) -> SweepConfig:
    preset_name = _merged(args, config, "preset", None)
    if preset_name is not None:
        base_cfg = PRESETS[preset_name]
    else:
        axis = _merged(args, config, "axis", None)
        if axis is None:
            raise ValueError("sweep requires --preset or --axis with a range")
        lo = _merged(args, config, "axis_min", None)
        hi = _merged(args, config, "axis_max", None)
        if lo is None or hi is None:
            raise ValueError("sweep requires --axis-min and --axis-max")
        base_cfg = SweepConfig(
            base=_params_from(args, config),
            axis=axis,
            axis_range=(lo, hi, int(_merged(args, config, "axis_count", 21))),
            t_range=(_merged(args, config, "t_max", 2.0), int(_merged(args, config, "t_count", 41))),
            order=int(_merged(args, config, "order", DEFAULT_ORDER)),
            method=_merged(args, config, "method", "series"),
        )
        return base_cfg
    # Preset with optional overrides.
    overrides = {}
    axis = _merged(args, config, "axis", None)
    if axis is not None:
        overrides["axis"] = axis
    lo = _merged(args, config, "axis_min", base_cfg.axis_range[0])
    hi = _merged(args, config, "axis_max", base_cfg.axis_range[1])
    count = int(_merged(args, config, "axis_count", base_cfg.axis_range[2]))
    overrides["axis_range"] = (lo, hi, count)
    t_max = _merged(args, config, "t_max", base_cfg.t_range[0])
    t_count = int(_merged(args, config, "t_count", base_cfg.t_range[1]))
    overrides["t_range"] = (t_max, t_count)
    overrides["order"] = int(_merged(args, config, "order", base_cfg.order))
    overrides["method"] = _merged(args, config, "method", base_cfg.method)
    base = base_cfg.base
    for key in ("p", "q", "mu", "alpha", "k0"):
        v = _merged(args, config, key, None)
        if v is not None:
            base = base.with_(**{key: v})
    return SweepConfig(
        base=base,
        axis=overrides.get("axis", base_cfg.axis),
        axis_range=overrides["axis_range"],
        t_range=overrides["t_range"],
        order=overrides["order"],
        method=overrides["method"],
    )


def _cmd_sweep(args, config) -> int:
    sweep_cfg = _sweep_config_from(args, config)
    grid = run_sweep(sweep_cfg, jobs=max(1, args.jobs))
    csv_text = grid_to_csv(grid)
    if args.out:
        out = Path(args.out)
        out.write_text(csv_text)
        Path(str(out) + ".meta.json").write_text(sidecar_metadata(grid))
        if args.gnuplot_script:
            Path(args.gnuplot_script).write_text(gnuplot_script(str(out), sweep_cfg))
    else:
        sys.stdout.write(csv_text)
    return 0


def _render_equilibria_table(report, params) -> str:
    rows = [
        ("fixed point k = 0", "0", report.k_zero_stability),
        ("fixed point k* = (p/q)^(1/(1-mu))", "%.12g" % report.k_star, report.k_star_stability),
        ("RHS derivative at k*", "%.12g" % report.derivative_at_star, ""),
        ("inflection candidate (pmu/q)^(1/(1-mu))", "%.12g" % report.inflection_candidate, ""),
    ]
    width = max(len(r[0]) for r in rows)
    lines = [f"equilibria for p={params.p:g} q={params.q:g} mu={params.mu:g}"]
    for name, val, note in rows:
        lines.append(f"  {name:<{width}s}  {val:>16s}  {note}")
    return "\n".join(lines)


def _cmd_equilibria(args, config) -> int:
    params = _params_from(args, config)
    report = find_equilibria(params)
    if args.json:
        sys.stdout.write(json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_render_equilibria_table(report, params) + "\n")
    if args.out:
        Path(args.out).write_text(json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_verify(args, config) -> int:
    from .transforms import run_all_verifications

    params = _params_from(args, config) if (args.config or args.alpha is not None) else None
    reports = run_all_verifications(params)
    failed = []
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        sys.stdout.write(f"{status}  {rep.name:<42s} max deviation {rep.max_deviation:.3e} "
                         f"(tol {rep.tol:.1e})\n")
        if not rep.passed:
            failed.append(rep)
    if failed:
        sys.stdout.write("failing identities:\n")
        for rep in failed:
            for label, dev in rep.failing_rows():
                sys.stdout.write(f"  {rep.name}: {label} deviation {dev:.3e}\n")
        return 1
    return 0


def _cmd_compare(args, config) -> int:
    from .oracles import solve_abm_fractional, solve_exact_classical

    params = _params_from(args, config)
    t_max = _merged(args, config, "t_max", 0.5)
    samples = int(_merged(args, config, "samples", 21))
    order = int(_merged(args, config, "order", 8))
    sol = build_series(params, order)
    times = [i * t_max / (samples - 1) for i in range(samples)]
    if params.alpha == 1.0:
        oracle = solve_exact_classical(params, times).values
        oracle_name = "exact-classical"
    else:
        from .sweep import _abm_on_grid
        oracle = _abm_on_grid(params, times)
        oracle_name = "abm-fractional"
    worst = 0.0
    compared = 0
    for t, ref in zip(times, oracle):
        val, trusted = eval_series(sol, t)
        if not trusted:
            continue
        compared += 1
        worst = max(worst, abs(val - ref) / abs(ref))
    sys.stdout.write(
        f"series (order {order}) vs {oracle_name}: {compared}/{len(times)} trusted points, "
        f"max relative gap {worst:.3e} (tol {args.tol:.1e})\n"
    )
    return 0 if worst <= args.tol and compared > 0 else 1


_COMMANDS = {
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "equilibria": _cmd_equilibria,
    "verify": _cmd_verify,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _read_config(args.config) if getattr(args, "config", None) else {}
        return _COMMANDS[args.command](args, config)
    except (ValueError, ArithmeticError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
