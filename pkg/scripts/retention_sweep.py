"""Trace the allocation as incumbent retention probability moves from W/S to 1.

Spot-checks a few interior points against the grid oracle.

    python scripts/retention_sweep.py --points 21 --check 3
"""

import argparse

import numpy as np

from selectorate.model import BASELINE_PARAMS, SQRT_FAMILY
from selectorate.solver import oracle_for_regime, relative_deviation, solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--check", type=int, default=3, help="interior points to verify with the oracle")
    ap.add_argument("--resolution", type=int, default=4000)
    args = ap.parse_args()

    params = BASELINE_PARAMS
    rhos = np.linspace(params.coalition_share, 1.0, args.points)
    print(f"{'rho':>7} {'g':>10} {'z':>9} {'D':>11}")
    for rho in rhos:
        sol = solve(params, SQRT_FAMILY, "general", float(rho))
        print(f"{rho:7.4f} {sol.g:10.4f} {sol.z:9.4f} {sol.discretionary_resources:11.3f}")

    picks = np.linspace(0, args.points - 1, args.check + 2).round().astype(int)[1:-1]
    for rho in rhos[picks]:
        sol = solve(params, SQRT_FAMILY, "general", float(rho))
        og, oz, _ = oracle_for_regime(params, SQRT_FAMILY, "general", float(rho), args.resolution)
        dev = max(relative_deviation(sol.g, og), relative_deviation(sol.z, oz))
        print(f"oracle at rho={rho:.4f}: ({og:.4f}, {oz:.4f}), max relative deviation {dev:.2e}")


if __name__ == "__main__":
    main()
