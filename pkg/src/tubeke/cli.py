"""Command-line interface and axis sweep.

Subcommands
-----------
solve      shoot for the center value and cache the radial profile as JSON
eval       evaluate the profile (and optionally its derivatives) at one x
metric     metric tensor, determinant, and derivative jet at a point
curvature  curvature tensor plus either one bisectional value or extremes
sweep      CSV table of profile + curvature quantities along the real axis
verify     run a named verification suite and report pass/fail per check

Exit status: 0 on success, 1 when a verification suite (or the shooting
itself) fails, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import TubeParams, ShootingConfig
from .potential_solver import (
    PotentialSolution,
    load_solution,
    solution_from_dict,
    solve_potential,
)
from .tube_geometry import Point
from .metric_tensor import metric_jet
from .curvature import (
    SearchConfig,
    TangentPair,
    bis_extremes_from_jet,
    bisectional,
    sectional_max_from_jet,
    tensor_from_jet,
)
from .diagnostics import SUITE_NAMES, run_suite

__all__ = ["SweepRow", "axis_sweep", "main"]

SWEEP_COLUMNS = ("x", "F", "f", "f1", "f2", "f3", "Z",
                 "det_g", "bis_min", "bis_max", "sect_max")


@dataclass(frozen=True)
class SweepRow:
    x: float
    F: float
    f: float
    f1: float
    f2: float
    f3: float
    Z: float
    det_g: float
    bis_min: float
    bis_max: float
    sect_max: float


def _row_at(sol: PotentialSolution, x: float, config: SearchConfig) -> SweepRow:
    F = float(sol.eval_F(x))
    f, f1, f2, f3 = (float(v) for v in sol.eval_f_derivs(x, 3))
    Z = float(sol.eval_Z(x, 0)[0])
    jet = metric_jet(sol, Point(0j, complex(x)))
    tensor = tensor_from_jet(jet)
    ext = bis_extremes_from_jet(jet, tensor, config)
    sm, _ = sectional_max_from_jet(jet, tensor, config)
    return SweepRow(x=x, F=F, f=f, f1=f1, f2=f2, f3=f3, Z=Z, det_g=jet.det,
                    bis_min=ext.min, bis_max=ext.max, sect_max=sm)


_WORKER_SOL = None
_WORKER_CFG = None


def _sweep_init(sol_data, config):
    global _WORKER_SOL, _WORKER_CFG
    _WORKER_SOL = solution_from_dict(sol_data)
    _WORKER_CFG = config


def _sweep_task(x):
    return _row_at(_WORKER_SOL, float(x), _WORKER_CFG)


def axis_sweep(sol: PotentialSolution, x_min: float = 0.0,
               x_max: float = 1.0 - 1e-4, n: int = 500,
               config: SearchConfig | None = None, jobs: int = 1) -> list:
    """Tabulate profile and curvature quantities at n points of [x_min, x_max].

    Points on the real-z2 axis represent every orbit of the automorphism
    group with X >= 0, so this one table captures the whole geometry.
    With jobs > 1 rows are computed by a process pool (each worker rebuilds
    the solution once from its dict form); rows come back in x order either
    way and are checked to be finite.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not (-1.0 < x_min < 1.0) or not (-1.0 < x_max < 1.0):
        raise ValueError("sweep endpoints must lie in (-1, 1)")
    if n > 1 and not x_min < x_max:
        raise ValueError("need x_min < x_max for a multi-point sweep")
    config = config or SearchConfig()
    xs = np.linspace(x_min, x_max, n)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_sweep_init,
                                 initargs=(sol.to_dict(), config)) as pool:
            rows = list(pool.map(_sweep_task, xs, chunksize=max(1, n // (8 * jobs))))
    else:
        rows = [_row_at(sol, float(x), config) for x in xs]
    for row in rows:
        values = [getattr(row, c) for c in SWEEP_COLUMNS]
        if not all(np.isfinite(values)):
            raise RuntimeError(f"non-finite sweep row at x={row.x}")
    return rows


def write_sweep_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([repr(getattr(row, c)) for c in SWEEP_COLUMNS])


def _parse_vector(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected 4 comma-separated reals, got {text!r}")
    a, b, c, d = (float(s) for s in parts)
    return np.array([complex(a, b), complex(c, d)], dtype=complex)


def _vector_reals(v) -> list:
    return [float(v[0].real), float(v[0].imag), float(v[1].real), float(v[1].imag)]


def _point_reals(z: Point) -> list:
    return [z.z1.real, z.z1.imag, z.z2.real, z.z2.imag]


def _cmd_solve(args) -> int:
    params = TubeParams(p=args.p)
    config = ShootingConfig(
        f_blowup_threshold=args.f_max,
        c0_tolerance=args.tol,
        step_tolerance=min(args.tol, 1e-12),
    )
    sol = solve_potential(params, config)
    sol.save(args.out)
    print(json.dumps({
        "p": params.p,
        "F0": sol.F0,
        "blowup_x": sol.achieved_blowup_x,
        "nodes": len(sol.xs),
        "out": str(args.out),
    }))
    return 0


def _cmd_eval(args) -> int:
    sol = load_solution(args.sol)
    out = {"x": args.x, "F": float(sol.eval_F(args.x)),
           "f": float(sol.eval_f_derivs(args.x, 0)[0])}
    if args.derivs:
        _, f1, f2, f3 = (float(v) for v in sol.eval_f_derivs(args.x, 3))
        out.update({"f1": f1, "f2": f2, "f3": f3,
                    "Z": float(sol.eval_Z(args.x, 0)[0])})
    print(json.dumps(out))
    return 0


def _cmd_metric(args) -> int:
    sol = load_solution(args.sol)
    z = Point.parse(args.point)
    jet = metric_jet(sol, z)
    print(json.dumps({
        "point": _point_reals(z),
        "X": jet.x_value,
        "g": [[jet.metric[0, 0], jet.metric[0, 1]],
              [jet.metric[1, 0], jet.metric[1, 1]]],
        "det": jet.det,
        "d3": {"".join(map(str, k)): v for k, v in jet.d3.items()},
        "d4": {"".join(map(str, k)): v for k, v in jet.d4.items()},
    }))
    return 0


def _cmd_curvature(args) -> int:
    if not args.extremes and (args.v is None or args.w is None):
        raise ValueError("provide both --v and --w, or --extremes")
    sol = load_solution(args.sol)
    z = Point.parse(args.point)
    jet = metric_jet(sol, z)
    tensor = tensor_from_jet(jet)
    out = {"point": _point_reals(z), "X": jet.x_value, "tensor": tensor.as_dict()}
    if args.v is not None and args.w is not None:
        pair = TangentPair(v=_parse_vector(args.v), w=_parse_vector(args.w))
        out["bis"] = bisectional(sol, z, pair)
    if args.extremes:
        ext = bis_extremes_from_jet(jet, tensor)
        sm, vstar = sectional_max_from_jet(jet, tensor)
        out["extremes"] = {
            "min": ext.min,
            "argmin": {"v": _vector_reals(ext.argmin.v),
                       "w": _vector_reals(ext.argmin.w)},
            "max": ext.max,
            "argmax": {"v": _vector_reals(ext.argmax.v),
                       "w": _vector_reals(ext.argmax.w)},
            "sect_max": sm,
            "arg_sect_max": _vector_reals(vstar),
        }
    print(json.dumps(out))
    return 0


def _cmd_sweep(args) -> int:
    sol = load_solution(args.sol)
    rows = axis_sweep(sol, x_min=args.x_min, x_max=args.x_max, n=args.n,
                      jobs=args.jobs)
    write_sweep_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    params = TubeParams(p=args.p)
    sol = solve_potential(params)
    report = run_suite(args.suite, params, sol, seed=args.seed)
    for line in report.lines():
        print(line)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    return 0 if report.overall else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tubeke",
        description="Kähler-Einstein metrics of the tube domains T_p: "
                    "radial potential, metric, curvature, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="shoot for the potential and cache it")
    p_solve.add_argument("--p", type=int, required=True, help="domain parameter (>= 1)")
    p_solve.add_argument("--tol", type=float, default=1e-12,
                         help="bisection tolerance on the center value")
    p_solve.add_argument("--f-max", type=float, default=1e8,
                         help="slope threshold treated as blow-up")
    p_solve.add_argument("--out", required=True, help="output JSON path")
    p_solve.set_defaults(func=_cmd_solve)

    p_eval = sub.add_parser("eval", help="evaluate the cached profile at one x")
    p_eval.add_argument("--sol", required=True, help="solution JSON from solve")
    p_eval.add_argument("--x", type=float, required=True)
    p_eval.add_argument("--derivs", action="store_true",
                        help="include f', f'', f''' and Z = e^{3F}")
    p_eval.set_defaults(func=_cmd_eval)

    p_metric = sub.add_parser("metric", help="metric tensor and jet at a point")
    p_metric.add_argument("--sol", required=True)
    p_metric.add_argument("--point", required=True,
                          help="z as re1,im1,re2,im2")
    p_metric.set_defaults(func=_cmd_metric)

    p_curv = sub.add_parser("curvature",
                            help="curvature tensor, bisectional values, extremes")
    p_curv.add_argument("--sol", required=True)
    p_curv.add_argument("--point", required=True, help="z as re1,im1,re2,im2")
    p_curv.add_argument("--v", help="first tangent vector as re1,im1,re2,im2")
    p_curv.add_argument("--w", help="second tangent vector as re1,im1,re2,im2")
    p_curv.add_argument("--extremes", action="store_true",
                        help="search for extremal bisectional/sectional values")
    p_curv.set_defaults(func=_cmd_curvature)

    p_sweep = sub.add_parser("sweep", help="CSV sweep along the real-z2 axis")
    p_sweep.add_argument("--sol", required=True)
    p_sweep.add_argument("--x-min", type=float, default=0.0)
    p_sweep.add_argument("--x-max", type=float, default=1.0 - 1e-4)
    p_sweep.add_argument("--n", type=int, default=500)
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="worker processes for the curvature searches")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--p", type=int, required=True)
    p_verify.add_argument("--suite", default="all",
                          choices=list(SUITE_NAMES) + ["all"])
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--report", help="write the report as JSON here")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
