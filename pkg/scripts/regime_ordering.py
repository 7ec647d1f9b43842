"""Count how often each regime-ordering inequality holds over random polities.

    python scripts/regime_ordering.py --cases 1000 --seed 0
"""

import argparse
import numpy as np

from selectorate.sampling import random_polity
from selectorate.solver import solve_asymmetric, solve_equal


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    counts = {"g_asym <= g_equal": 0, "z_asym <= z_equal": 0, "D_asym >= 0": 0}
    shares, flips = [], []
    for _ in range(args.cases):
        params, fns = random_polity(rng)
        eq, asym = solve_equal(params, fns), solve_asymmetric(params, fns)
        counts["g_asym <= g_equal"] += asym.g <= eq.g
        counts["z_asym <= z_equal"] += asym.z <= eq.z
        counts["D_asym >= 0"] += asym.discretionary_resources >= 0
        shares.append(params.coalition_share)
        flips.append(asym.z > eq.z)
    for name, n in counts.items():
        print(f"{name:20s} {n}/{args.cases}")
    shares, flips = np.array(shares), np.array(flips)
    for lo, hi in ((0, 0.05), (0.05, 0.2), (0.2, 0.5), (0.5, 1.0)):
        mask = (shares >= lo) & (shares < hi)
        if mask.any():
            print(f"W/S in [{lo}, {hi}): z_asym > z_equal in {flips[mask].mean():.0%} of {mask.sum()}")


if __name__ == "__main__":
    main()
