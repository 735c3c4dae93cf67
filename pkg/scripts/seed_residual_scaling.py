#!/usr/bin/env python3
"""Measure how the seed residual shrinks with the scaling parameter.

The glued seed (interface slice + rescaled macroscopic branch) is not an
exact fixed point of m = tanh{beta[J*m + h]}; its defect should shrink
like sqrt(eps).  This script tabulates the sup-norm defect over a range
of eps and prints the successive ratios (expected ~sqrt(2) per halving,
i.e. ~2 per quartering).

Usage: python scripts/seed_residual_scaling.py [--beta 1.25] [--mu0 0.6]
"""

import argparse

import uphill as up
from uphill.newton import fixed_point_residual
from uphill.seed import apply_H, build_m0, glue_value, seed_current


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--beta", type=float, default=1.25)
    ap.add_argument("--mu0", type=float, default=0.6)
    ap.add_argument("--dx", type=float, default=0.05)
    ap.add_argument(
        "--inv-eps", type=int, nargs="+", default=[10, 20, 40, 80, 160],
        help="list of 1/eps values",
    )
    args = ap.parse_args()

    params = up.ThermoParams.from_beta(args.beta)
    print(f"beta={args.beta}  m_beta={params.m_beta:.7f}  mu0={args.mu0}")
    print(f"{'1/eps':>6} {'residual':>12} {'ratio':>8} {'res/sqrt(eps)':>14}")
    prev = None
    for inv in args.inv_eps:
        eps = 1.0 / inv
        grid = up.build_grid(eps, args.dx)
        kernel = up.build_kernel(grid)
        m0 = build_m0(params, grid, kernel, args.mu0)
        j = seed_current(params, args.mu0, glue_value(params, grid))
        h0 = apply_H(params, grid, m0, j)
        res = fixed_point_residual(params, kernel, m0, h0)
        ratio = f"{prev / res:8.3f}" if prev is not None else " " * 8
        print(f"{inv:6d} {res:12.6e} {ratio} {res / eps**0.5:14.6e}")
        prev = res


if __name__ == "__main__":
    main()
