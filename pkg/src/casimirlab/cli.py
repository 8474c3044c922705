"""Command line interface.

Subcommands: ``force`` (one force value as JSON), ``sweep`` (force curve
as CSV), ``density`` (closed-form density profile as CSV), ``simulate``
(Monte Carlo run, JSON summary plus CSV density), and ``verify``
(self-check suites, JSON report).

Conventions: CSV files use comma separators, ``.`` decimal points, LF
line endings, and 17 significant digits so every float round-trips; JSON
is UTF-8 with sorted keys.  Outputs depend only on the flags and seeds,
except that the number of worker threads honors CASIMIR_THREADS.  Exit
codes: 0 success, 1 failed verification, 2 invalid input, 3 numerical or
simulation failure, 4 file I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import closed_form, lattice, pde
from .model import (
    Boundary,
    CasimirError,
    ForceResult,
    InvalidParameter,
    Method,
    ModelParams,
    NonPositiveBeta,
    NonPositiveL,
    OutOfDomain,
    WrongMode,
)
from .verify import SUITES, run_suite

__all__ = ["main", "build_parser"]

_INPUT_ERRORS = (
    NonPositiveBeta,
    NonPositiveL,
    InvalidParameter,
    OutOfDomain,
    WrongMode,
    lattice.InvalidGeometry,
)


def _fmt(value: float) -> str:
    """Format a float with 17 significant digits (exact round-trip)."""
    return format(float(value), ".17g")


def _write_csv(path: str, header: str, rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(header + "\n")
        for row in rows:
            cells = [cell if isinstance(cell, str) else _fmt(cell) for cell in row]
            handle.write(",".join(cells) + "\n")


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _model(args: argparse.Namespace) -> ModelParams:
    return ModelParams(beta=args.beta, L=args.L, boundary=Boundary(args.mode))


def _force_value(params: ModelParams, method: str, tol: float) -> ForceResult:
    if method == "closed":
        if params.boundary is Boundary.REFLECTING:
            return closed_form.force_reflecting(params)
        return closed_form.force_absorbing(params, tol=tol)
    if method == "oracle":
        if params.boundary is Boundary.REFLECTING:
            return pde.reflecting_force_oracle(params)
        return pde.absorbing_force_oracle(params)
    return closed_form.force_absorbing_flux_limit(params)


def cmd_force(args: argparse.Namespace) -> int:
    params = _model(args)
    result = _force_value(params, args.method, args.tol)
    payload = {
        "mode": params.boundary.value,
        "beta": params.beta,
        "L": params.L,
        "method": result.method.value,
        "value": result.value,
        "uncertainty": result.uncertainty,
    }
    sys.stdout.write(_dump_json(payload))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if not (args.L_min < args.L_max):
        raise InvalidParameter("--L-min must be smaller than --L-max")
    if args.points < 2:
        raise InvalidParameter("--points must be at least 2")
    rows = []
    for L in np.linspace(args.L_min, args.L_max, args.points):
        params = ModelParams(beta=args.beta, L=float(L), boundary=Boundary(args.mode))
        result = _force_value(params, "closed", args.tol)
        rows.append([float(L), result.value, result.method.value, args.beta])
    _write_csv(args.out, "L,force,method,beta", rows)
    return 0


def cmd_density(args: argparse.Namespace) -> int:
    params = _model(args)
    if args.grid < 2:
        raise InvalidParameter("--grid must be at least 2")
    # Outside span long enough that the profile visibly flattens to its
    # bulk value sqrt(beta / 2).
    span = max(params.L, 5.0 / math.sqrt(2.0 * params.beta))
    outside = np.linspace(-span, 0.0, args.grid + 1)[:-1]
    inside = np.linspace(0.0, params.L, args.grid + 1)
    rows = []
    if params.boundary is Boundary.REFLECTING:
        flat = closed_form.rho_reflecting_outside(params)
        for x in outside:
            rows.append([float(x), flat, "closed-form"])
        level = closed_form.rho_reflecting_inside(params)
        for x in inside:
            rows.append([float(x), level, "closed-form"])
    else:
        for x in outside:
            rows.append([float(x), closed_form.density_outside_absorbing(params, float(x)), "closed-form"])
        for x in inside:
            # The series vanishes at both walls; pin the limit exactly.
            if x == 0.0 or x == params.L:
                rho = 0.0
            else:
                rho = closed_form.density_inside_absorbing(params, float(x))
            rows.append([float(x), rho, "closed-form"])
    _write_csv(args.out, "x,rho,source", rows)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    params = lattice.SimParams(
        model=_model(args),
        eps=args.eps,
        W_out=args.W_out,
        t_sample=args.t_sample,
        replicas=args.replicas,
        seed=args.seed,
        t_burn=args.t_burn,
        sample_dt=args.sample_dt,
        batches=args.batches,
        max_events=args.max_events,
    )
    estimate = lattice.simulate(params)
    payload = {
        "params": {
            "mode": params.model.boundary.value,
            "beta": params.model.beta,
            "L": params.model.L,
            "eps": params.eps,
            "eps_eff": params.eps_eff,
            "W_out": params.W_out,
            "w_out_eff": params.w_out_eff,
            "t_burn": params.t_burn_eff,
            "t_sample": params.t_sample,
            "sample_dt": params.sample_dt,
            "batches": params.batches,
            "replicas": params.replicas,
            "seed": params.seed,
        },
        "parity_mean": estimate.parity_mean,
        "parity_se": estimate.parity_se,
        "force": {
            "value": estimate.force_estimate.value,
            "uncertainty": estimate.force_estimate.uncertainty,
            "mode": estimate.force_estimate.mode.value,
            "method": estimate.force_estimate.method.value,
        },
        "metadata": estimate.metadata,
    }
    text = _dump_json(payload)
    with open(args.out + ".json", "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    rows = [
        [float(x), float(rho), float(se)]
        for x, rho, se in zip(
            estimate.density.x, estimate.density.rho, estimate.density.rho_se
        )
    ]
    _write_csv(args.out + ".csv", "x,rho,se", rows)
    sys.stdout.write(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, seed=args.seed)
    text = _dump_json(report.as_dict())
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    sys.stdout.write(text)
    return 0 if report.overall else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir",
        description="Casimir forces in annihilating particle systems with walls.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--mode", required=True, choices=[b.value for b in Boundary],
            help="wall type",
        )
        p.add_argument("--beta", type=float, required=True, help="immigration intensity")

    force = sub.add_parser("force", help="one closed-form or oracle force value")
    add_model_flags(force)
    force.add_argument("--L", type=float, required=True, help="wall separation")
    force.add_argument(
        "--method", choices=["closed", "oracle", "flux-limit"], default="closed"
    )
    force.add_argument("--tol", type=float, default=1e-13, help="quadrature tolerance")
    force.set_defaults(func=cmd_force)

    sweep = sub.add_parser("sweep", help="force as a function of separation, CSV")
    add_model_flags(sweep)
    sweep.add_argument("--L-min", dest="L_min", type=float, required=True)
    sweep.add_argument("--L-max", dest="L_max", type=float, required=True)
    sweep.add_argument("--points", type=int, required=True)
    sweep.add_argument("--tol", type=float, default=1e-13, help="quadrature tolerance")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.set_defaults(func=cmd_sweep)

    density = sub.add_parser("density", help="closed-form density profile, CSV")
    add_model_flags(density)
    density.add_argument("--L", type=float, required=True, help="wall separation")
    density.add_argument("--grid", type=int, required=True, help="points per segment")
    density.add_argument("--out", required=True, help="output CSV path")
    density.set_defaults(func=cmd_density)

    simulate = sub.add_parser("simulate", help="lattice Monte Carlo run")
    add_model_flags(simulate)
    simulate.add_argument("--L", type=float, required=True, help="wall separation")
    simulate.add_argument("--eps", type=float, required=True, help="lattice spacing")
    simulate.add_argument("--W-out", dest="W_out", type=float, required=True)
    simulate.add_argument("--t-sample", dest="t_sample", type=float, required=True)
    simulate.add_argument("--t-burn", dest="t_burn", type=float, default=None)
    simulate.add_argument("--sample-dt", dest="sample_dt", type=float, default=0.25)
    simulate.add_argument("--batches", type=int, default=20)
    simulate.add_argument("--replicas", type=int, required=True)
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument("--max-events", dest="max_events", type=int, default=2_000_000_000)
    simulate.add_argument("--out", required=True, help="output base path (.json, .csv)")
    simulate.set_defaults(func=cmd_simulate)

    verify = sub.add_parser("verify", help="run self-check suites")
    verify.add_argument("--suite", choices=list(SUITES), default="all")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--out", default=None, help="also write the report here")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except CasimirError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
