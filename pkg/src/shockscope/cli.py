"""Command-line front end: plot-ready CSV/JSON for every evaluator.

Outputs are deterministic: CSV carries 17 significant digits with LF line
endings, JSON is dumped with sorted keys, and every artifact gets a run
manifest (command, full parameter record, outputs, version) so a rerun
reproduces files byte for byte.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .ancient import WindowFn, ancient_report
from .entire import EntireSolution, closed_lebesgue_u, grid_values, psi_gamma
from .flux import burgers_flux, flux_from_json, rankine_hugoniot, shock_profile
from .measure import (
    combine,
    dirac,
    lebesgue,
    measure_from_json,
)
from .merger import (
    MergerSchedule,
    MergerSolution,
    merger_diag,
    merger_u,
    repair_diag,
)
from .solver import Grid, SolverConfig, extract_shift, run_conservation

__all__ = ["main"]


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _manifest(command: str, params: dict, outputs: list[str], seed=None) -> dict:
    return {
        "command": command,
        "params": params,
        "seed": seed,
        "outputs": outputs,
        "version": __version__,
    }


def _write_manifest(path: str, manifest: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _load_text_or_inline(spec: str) -> str:
    """Argument is either inline JSON or a path to a JSON file."""
    s = spec.strip()
    if s.startswith("{"):
        return s
    return Path(spec).read_text()


def _measure_arg(spec: str):
    return measure_from_json(_load_text_or_inline(spec))


def _flux_arg(spec: str):
    return flux_from_json(_load_text_or_inline(spec))


def _floats(csv_text: str) -> list[float]:
    return [float(v) for v in csv_text.split(",") if v.strip()]


def cmd_eval(args) -> int:
    mu = _measure_arg(args.measure)
    sol = EntireSolution(mu)
    ts = np.linspace(args.t0, args.t1, args.nt)
    xs = np.linspace(args.x0, args.x1, args.nx)
    vals = grid_values(sol, ts, xs)
    if not np.all(np.isfinite(vals)):
        raise SystemExit("non-finite solution values on the requested grid")
    params = {
        "measure": json.loads(_load_text_or_inline(args.measure)),
        "t0": args.t0, "t1": args.t1, "nt": args.nt,
        "x0": args.x0, "x1": args.x1, "nx": args.nx,
        "format": args.format,
    }
    if args.format == "csv":
        rows = (
            (t, x, vals[i, j])
            for i, t in enumerate(ts)
            for j, x in enumerate(xs)
        )
        _write_csv(args.out, "t,x,u", rows)
        _write_manifest(args.out + ".manifest.json",
                        _manifest("eval", params, [args.out]))
    else:
        payload = {
            "manifest": _manifest("eval", params, [args.out]),
            "t": [float(v) for v in ts],
            "x": [float(v) for v in xs],
            "u": [[float(v) for v in row] for row in vals],
        }
        with open(args.out, "w", newline="\n") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_ancient(args) -> int:
    mu = _measure_arg(args.measure)
    speeds = _floats(args.speeds)
    ladder = _floats(args.t_ladder)
    window = WindowFn.constant(args.window) if args.window else None
    reports = [
        ancient_report(mu, c, ladder, window=window, eps=args.eps) for c in speeds
    ]
    params = {
        "measure": json.loads(_load_text_or_inline(args.measure)),
        "speeds": speeds, "t_ladder": ladder,
        "window": args.window, "eps": args.eps,
    }
    payload = {
        "manifest": _manifest("ancient", params, [args.out]),
        "reports": reports,
    }
    with open(args.out, "w", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return 0


def _initial_data(spec: str, x: np.ndarray) -> np.ndarray:
    obj = json.loads(_load_text_or_inline(spec))
    kind = obj["kind"]
    if kind == "constant":
        return np.full_like(x, float(obj["value"]))
    if kind == "step":
        return np.where(x < 0.0, float(obj["left"]), float(obj["right"]))
    if kind == "tanh":
        alpha, beta = float(obj["alpha"]), float(obj["beta"])
        steep = float(obj.get("steepness", 1.0))
        return 0.5 * (alpha + beta) - 0.5 * (beta - alpha) * np.tanh(steep * x)
    raise SystemExit(f"unknown initial-data kind: {kind}")


def cmd_pde(args) -> int:
    flux = _flux_arg(args.flux)
    xs = np.linspace(args.x0, args.x1, args.nx)
    u0 = Grid(args.x0, args.x1, args.nx, _initial_data(args.u0, xs))
    snap_times = _floats(args.snapshots) if args.snapshots else []
    config = SolverConfig(cfl_safety=args.cfl)
    snaps = run_conservation(flux, u0, args.T, config, snapshot_times=snap_times)
    rows = (
        (snap.time, x, v)
        for snap in snaps
        for x, v in zip(snap.x(), snap.values)
    )
    _write_csv(args.out, "t,x,u", rows)
    outputs = [args.out]
    params = {
        "flux": json.loads(_load_text_or_inline(args.flux)),
        "u0": json.loads(_load_text_or_inline(args.u0)),
        "T": args.T, "x0": args.x0, "x1": args.x1, "nx": args.nx,
        "snapshots": snap_times, "cfl": args.cfl,
    }
    shift_path = args.out + ".shift.json"
    beta = float(u0.values[0])
    alpha = float(u0.values[-1])
    if alpha < beta:
        trace = extract_shift(snaps[1:], alpha, beta)
        payload = {
            "manifest": _manifest("pde", params, outputs + [shift_path]),
            "level": trace.level,
            "samples": [{"t": t, "s": s} for t, s in trace.samples],
        }
        with open(shift_path, "w", newline="\n") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
        outputs.append(shift_path)
    _write_manifest(args.out + ".manifest.json", _manifest("pde", params, outputs))
    return 0


def cmd_merger(args) -> int:
    obj = json.loads(_load_text_or_inline(args.schedule))
    sched = MergerSchedule(N=int(obj["N"]), times=tuple(float(v) for v in obj["times"]))
    sol = MergerSolution(sched)
    outputs = []
    params = {
        "schedule": {"N": sched.N, "times": list(sched.times)},
        "k": args.k, "delta": args.delta, "x_window": args.x_window,
    }
    if args.out_field:
        ts = np.linspace(args.t0, args.t1, args.nt)
        xs = np.linspace(args.x0, args.x1, args.nx)
        rows = ((t, x, sol.value(float(t), float(x))) for t in ts for x in xs)
        _write_csv(args.out_field, "t,x,u", rows)
        outputs.append(args.out_field)
        params.update(
            {"t0": args.t0, "t1": args.t1, "nt": args.nt,
             "x0": args.x0, "x1": args.x1, "nx": args.nx}
        )
    tau_m, err_m = merger_diag(sol, args.k, x_window=args.x_window)
    tau_r, err_r = repair_diag(sol, args.k, args.delta, args.x_window)
    diag = {
        "manifest": _manifest("merger", params, outputs + [args.out]),
        "merge": {"tau": tau_m, "sup_err": err_m},
        "repair": {"tau": tau_r, "sup_err": err_r, "delta": args.delta},
    }
    with open(args.out, "w", newline="\n") as fh:
        json.dump(diag, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return 0


def cmd_shock(args) -> int:
    flux = _flux_arg(args.flux)
    prof = shock_profile(flux, args.alpha, args.beta)
    ys = np.linspace(args.y0, args.y1, args.ny)
    _write_csv(args.out, "y,phi", ((y, prof(float(y))) for y in ys))
    params = {
        "flux": json.loads(_load_text_or_inline(args.flux)),
        "alpha": args.alpha, "beta": args.beta,
        "y0": args.y0, "y1": args.y1, "ny": args.ny,
        "c": prof.c, "d": prof.d,
    }
    _write_manifest(args.out + ".manifest.json", _manifest("shock", params, [args.out]))
    return 0


def _selfcheck() -> list[tuple[str, bool]]:
    checks = []

    mm = combine(dirac(-2.0, 0.25), dirac(0.0, 0.5), dirac(2.0, 0.25))
    sol = EntireSolution(mm)
    ok = all(
        abs(sol.value(t, x) + 2 * math.sinh(x) / (math.exp(-t) + math.cosh(x))) < 1e-10
        for t in (-10.0, 0.0, 4.0)
        for x in (-8.0, -1.0, 0.5, 7.0)
    )
    checks.append(("three-atom closed form", ok))

    leb = EntireSolution(lebesgue(-1.0, 1.0))
    ok = all(
        abs(leb.value(t, x) - closed_lebesgue_u(t, x)) < 1e-8
        for t in (-4.0, 3.0)
        for x in (-2.0, 0.7)
    )
    checks.append(("uniform-density closed form", ok))

    ok = abs(psi_gamma(0.5, 1.1) - sol.value(math.log(2.0), 1.1)) < 1e-12
    checks.append(("merger-family snapshot identity", ok))

    c, d = rankine_hugoniot(burgers_flux(), -2.0, 2.0)
    checks.append(("rankine-hugoniot", (c, d) == (0.0, 2.0)))

    prof = shock_profile(burgers_flux(), -1.0, 1.0)
    ys = np.linspace(-5, 5, 11)
    ok = bool(np.max(np.abs(prof(ys) + np.tanh(ys / 2))) < 1e-8)
    checks.append(("profile ODE vs closed form", ok))

    g = Grid.from_function(lambda x: np.full_like(x, 0.7), -5, 5, 51)
    snaps = run_conservation(burgers_flux(), g, 0.5)
    checks.append(
        ("constant steady state", bool(np.max(np.abs(snaps[-1].values - 0.7)) < 1e-12))
    )

    msol = MergerSolution(MergerSchedule(10, (1.0, 200.0)))
    odd_ok = all(
        abs(merger_u(msol, 3.0, x) + merger_u(msol, 3.0, -x)) < 1e-12
        for x in (0.0, 1.5, 6.0)
    )
    checks.append(("merger odd symmetry", odd_ok))
    return checks


def cmd_selfcheck(args) -> int:
    checks = _selfcheck()
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(ok for _, ok in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shockscope",
        description=(
            "Evaluators and diagnostics for viscous conservation laws: "
            "measure-represented entire Burgers solutions, ancient-frame "
            "limits, shock profiles, finite-difference runs, and the "
            "shock-merger construction. SHOCKSCOPE_THREADS caps grid "
            "parallelism."
        ),
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    pe = sub.add_parser("eval", help="solution values on a (t,x) grid")
    pe.add_argument("--measure", required=True, help="measure JSON (inline or path)")
    pe.add_argument("--t0", type=float, required=True)
    pe.add_argument("--t1", type=float, required=True)
    pe.add_argument("--nt", type=int, default=101)
    pe.add_argument("--x0", type=float, required=True)
    pe.add_argument("--x1", type=float, required=True)
    pe.add_argument("--nx", type=int, default=101)
    pe.add_argument("--out", required=True)
    pe.add_argument("--format", choices=("csv", "json"), default="csv")
    pe.set_defaults(fn=cmd_eval)

    pa = sub.add_parser("ancient", help="backward-in-time frame classification")
    pa.add_argument("--measure", required=True)
    pa.add_argument("--speeds", required=True, help="comma-separated frame speeds")
    pa.add_argument("--t-ladder", required=True, help="comma-separated times < 0")
    pa.add_argument("--window", type=float, default=None,
                    help="constant spatial half-width (default |t|^0.9)")
    pa.add_argument("--eps", type=float, default=None)
    pa.add_argument("--out", required=True)
    pa.set_defaults(fn=cmd_ancient)

    pp = sub.add_parser("pde", help="finite-difference conservation-law run")
    pp.add_argument("--flux", required=True, help="flux JSON (inline or path)")
    pp.add_argument("--u0", required=True, help="initial-data JSON")
    pp.add_argument("--T", type=float, required=True)
    pp.add_argument("--x0", type=float, required=True)
    pp.add_argument("--x1", type=float, required=True)
    pp.add_argument("--nx", type=int, required=True)
    pp.add_argument("--snapshots", default="", help="comma-separated output times")
    pp.add_argument("--cfl", type=float, default=0.4)
    pp.add_argument("--out", required=True)
    pp.set_defaults(fn=cmd_pde)

    pm = sub.add_parser("merger", help="merger construction diagnostics")
    pm.add_argument("--schedule", required=True, help='{"N":10,"times":[...]} or path')
    pm.add_argument("--k", type=int, default=2)
    pm.add_argument("--delta", type=float, default=1.0)
    pm.add_argument("--x-window", type=float, default=5.0)
    pm.add_argument("--out", required=True, help="diagnostics JSON path")
    pm.add_argument("--out-field", default="", help="optional t,x,u CSV path")
    pm.add_argument("--t0", type=float, default=0.0)
    pm.add_argument("--t1", type=float, default=10.0)
    pm.add_argument("--nt", type=int, default=21)
    pm.add_argument("--x0", type=float, default=-20.0)
    pm.add_argument("--x1", type=float, default=20.0)
    pm.add_argument("--nx", type=int, default=81)
    pm.set_defaults(fn=cmd_merger)

    ps = sub.add_parser("shock", help="tabulate a viscous shock profile")
    ps.add_argument("--flux", required=True)
    ps.add_argument("--alpha", type=float, required=True)
    ps.add_argument("--beta", type=float, required=True)
    ps.add_argument("--y0", type=float, default=-20.0)
    ps.add_argument("--y1", type=float, default=20.0)
    ps.add_argument("--ny", type=int, default=401)
    ps.add_argument("--out", required=True)
    ps.set_defaults(fn=cmd_shock)

    pc = sub.add_parser("selfcheck", help="run the quick invariant battery")
    pc.set_defaults(fn=cmd_selfcheck)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
