"""Command-line driver: instanton, macro, solve and shoot subcommands.

Outputs are plot-ready CSV profiles plus a JSON report with stable key
order and a content hash, so identical invocations produce byte-identical
files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .errors import UphillError
from .grid import KERNEL_NAME, GridSpec, Profile, build_grid, build_kernel
from .instanton import solve_instanton, tail_rate
from .macro import MacroSpec, solve_macro_profile
from .newton import SolverConfig, local_current, outer_solve
from .seed import apply_H, build_m0, glue_value, seed_current
from .shooting import shoot
from .thermo import ThermoParams


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path: str, columns: dict) -> str:
    """Write named columns to CSV; returns the sha256 of the bytes."""
    names = list(columns)
    rows = len(next(iter(columns.values())))
    lines = [",".join(names)]
    for i in range(rows):
        lines.append(",".join(_fmt(columns[c][i]) for c in names))
    data = ("\n".join(lines) + "\n").encode()
    with open(path, "wb") as fh:
        fh.write(data)
    return hashlib.sha256(data).hexdigest()


def write_json(path: str, payload: dict):
    with open(path, "wb") as fh:
        fh.write(json.dumps(payload, sort_keys=True, indent=2).encode() + b"\n")


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--beta", type=float, required=True)
    parser.add_argument("--dx", type=float, default=0.05)
    parser.add_argument("--out", type=str, required=True)


def _add_solver_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--epsilon", type=float, required=True)
    parser.add_argument("--alpha", type=float, default=1.0)
    parser.add_argument("--inner-tol", type=float, default=1e-12)
    parser.add_argument("--outer-tol", type=float, default=1e-10)
    parser.add_argument("--max-inner", type=int, default=50)
    parser.add_argument("--max-outer", type=int, default=200)
    parser.add_argument("--check", action="store_true", help="run invariant checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uphill",
        description="Stationary current-carrying profiles of the 1d "
        "nonlocal mean-field chain",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_inst = sub.add_parser("instanton", help="zero-current interface profile")
    _add_common(p_inst)
    p_inst.add_argument("--half-length", type=float, default=20.0)
    p_inst.add_argument("--tol", type=float, default=1e-13)

    p_macro = sub.add_parser("macro", help="macroscopic profile on [0,1]")
    _add_common(p_macro)
    p_macro.add_argument("--mu-minus", type=float, required=True)
    p_macro.add_argument("--mu-plus", type=float, required=True)
    p_macro.add_argument("--samples", type=int, default=201)

    p_solve = sub.add_parser("solve", help="full solve at fixed current")
    _add_common(p_solve)
    _add_solver_flags(p_solve)
    p_solve.add_argument("--mu0", type=float, required=True)
    p_solve.add_argument("--j", type=float, default=None,
                         help="current; defaults to the seed-current formula")
    p_solve.add_argument("--seed-only", action="store_true",
                         help="emit the seed pair without iterating")
    p_solve.add_argument("--sweep", type=str, default=None,
                         help="run one solve per value: name=v1,v2,... "
                         "(name in mu0, epsilon, j)")

    p_shoot = sub.add_parser("shoot", help="tune the current to a boundary target")
    _add_common(p_shoot)
    _add_solver_flags(p_shoot)
    p_shoot.add_argument("--mu", type=float, required=True)
    p_shoot.add_argument("--eta", type=float, default=None)
    return parser


def _config_from(args) -> SolverConfig:
    return SolverConfig(
        inner_tol=args.inner_tol,
        outer_tol=args.outer_tol,
        max_inner=args.max_inner,
        max_outer=args.max_outer,
        alpha=args.alpha,
    )


def _flags_dict(args) -> dict:
    skip = {"command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _export_solution(args, params, kernel, grid, m, h, report_dict) -> dict:
    current = local_current(params, kernel, m)
    csv_path = f"{args.out}.csv"
    sha = write_csv(
        csv_path,
        {"x": grid.nodes(), "m": m.values, "h": h.values, "current": current.values},
    )
    j = report_dict.get("j", float("nan"))
    payload = {
        "report": report_dict,
        "flags": _flags_dict(args),
        "kernel": KERNEL_NAME,
        "csv_sha256": sha,
        "uphill": bool(j > 0 and m.values[-1] > m.values[0]),
    }
    write_json(f"{args.out}.json", payload)
    return payload


def run_checks(params, kernel, grid, m, h, report) -> list:
    """Invariant checks behind --check; returns (name, ok) pairs."""
    x = grid.nodes()
    checks = []
    current = local_current(params, kernel, m).values
    inside = np.abs(x) <= grid.half_length - 2.0
    target = report.j * grid.epsilon
    if target > 0:
        rel = np.max(np.abs(current[inside] - target)) / target
        checks.append(("current_constant_2pct", bool(rel < 0.02)))
    checks.append(
        ("uphill_certificate", bool(report.j > 0 and m.values[0] < 0 < m.values[-1]))
    )
    pos = m.values[grid.center:]
    i_max = int(np.argmax(pos))
    single_bump = bool(
        np.all(np.diff(pos[: i_max + 1]) > -1e-12)
        and np.all(np.diff(pos[i_max:]) < 1e-12)
        and pos[i_max] > pos[-1]
    )
    checks.append(("single_interior_bump", single_bump))
    checks.append(("contractive_gamma", bool(report.gamma < 1.0)))
    checks.append(("residual", bool(report.residual < 10 * 1e-8)))
    return checks


def cmd_instanton(args) -> int:
    params = ThermoParams.from_beta(args.beta)
    m = solve_instanton(params, args.half_length, args.dx, tol=args.tol)
    rate = tail_rate(m, params)
    grid = m.grid
    sha = write_csv(f"{args.out}.csv", {"x": grid.nodes(), "m": m.values})
    write_json(
        f"{args.out}.json",
        {
            "flags": _flags_dict(args),
            "kernel": KERNEL_NAME,
            "m_beta": params.m_beta,
            "tail_rate": rate,
            "csv_sha256": sha,
        },
    )
    return 0


def cmd_macro(args) -> int:
    spec = MacroSpec(beta=args.beta, mu_minus=args.mu_minus, mu_plus=args.mu_plus)
    xs = np.linspace(0.0, 1.0, args.samples)
    ms = np.array([solve_macro_profile(spec, x) for x in xs])
    sha = write_csv(f"{args.out}.csv", {"x": xs, "M": ms})
    write_json(
        f"{args.out}.json",
        {"flags": _flags_dict(args), "j_M": spec.j_M, "csv_sha256": sha},
    )
    return 0


def cmd_solve(args) -> int:
    if args.sweep:
        return _run_sweep(args)
    params = ThermoParams.from_beta(args.beta)
    grid = build_grid(args.epsilon, args.dx)
    kernel = build_kernel(grid)
    j = args.j
    if j is None:
        j = seed_current(params, args.mu0, glue_value(params, grid))
    if args.seed_only:
        m = build_m0(params, grid, kernel, args.mu0)
        h = apply_H(params, grid, m, j)
        _export_solution(args, params, kernel, grid, m, h, {"j": j, "seed_only": True})
        return 0
    config = _config_from(args)
    m, h, report = outer_solve(params, kernel, grid, args.mu0, j, config)
    _export_solution(args, params, kernel, grid, m, h, report.as_dict())
    if args.check:
        checks = run_checks(params, kernel, grid, m, h, report)
        for name, ok in checks:
            print(f"{name}: {'pass' if ok else 'FAIL'}")
        return 0 if all(ok for _, ok in checks) else 1
    return 0


def _run_sweep(args) -> int:
    name, _, values = args.sweep.partition("=")
    name = name.strip()
    if name not in {"mu0", "epsilon", "j"}:
        raise UphillError(f"--sweep parameter must be mu0, epsilon or j, not {name!r}")
    status = 0
    base_out = args.out
    for raw in values.split(","):
        value = float(raw)
        sub_args = argparse.Namespace(**vars(args))
        sub_args.sweep = None
        setattr(sub_args, name, value)
        sub_args.out = f"{base_out}_{name}{raw.strip()}"
        status = max(status, cmd_solve(sub_args))
    return status


def cmd_shoot(args) -> int:
    params = ThermoParams.from_beta(args.beta)
    grid = build_grid(args.epsilon, args.dx)
    kernel = build_kernel(grid)
    config = _config_from(args)
    result = shoot(params, kernel, grid, args.mu, eta=args.eta, config=config)
    payload = _export_solution(
        args, params, kernel, grid, result.m, result.h, result.report.as_dict()
    )
    payload["history"] = [[jv, mv] for jv, mv in result.history]
    payload["monotone"] = result.monotone
    write_json(f"{args.out}.json", payload)
    if args.check:
        checks = run_checks(params, kernel, grid, result.m, result.h, result.report)
        for name, ok in checks:
            print(f"{name}: {'pass' if ok else 'FAIL'}")
        return 0 if all(ok for _, ok in checks) else 1
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "beta", None) is not None and args.beta <= 1.0:
        print("error: beta must exceed 1", file=sys.stderr)
        return 2
    handlers = {
        "instanton": cmd_instanton,
        "macro": cmd_macro,
        "solve": cmd_solve,
        "shoot": cmd_shoot,
    }
    try:
        return handlers[args.command](args)
    except UphillError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1


def main():  # console entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
