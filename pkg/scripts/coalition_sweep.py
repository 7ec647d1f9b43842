"""Sweep coalition size for both regimes and write CSV, SVG and a gap summary.

    python scripts/coalition_sweep.py --out results/coalition
"""

import argparse
from pathlib import Path

from selectorate.cli import SWEEP_COLUMNS, sweep_rows, sweep_svgs, to_csv
from selectorate.model import BASELINE_PARAMS, SQRT_FAMILY
from selectorate.statics import coalition_sweep, detect_gap_decay


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/coalition", help="output stem")
    ap.add_argument("--from", dest="lo", type=float, default=300.0)
    ap.add_argument("--to", dest="hi", type=float, default=9000.0)
    ap.add_argument("--steps", type=int, default=30)
    args = ap.parse_args()

    result = coalition_sweep(BASELINE_PARAMS, SQRT_FAMILY, args.lo, args.hi, args.steps)
    stem = Path(args.out)
    stem.parent.mkdir(parents=True, exist_ok=True)
    stem.with_suffix(".csv").write_text(to_csv(SWEEP_COLUMNS, sweep_rows(result), 6))
    for path, svg in sweep_svgs(result, str(stem)).items():
        path.write_text(svg)

    print(f"{'W':>8} {'g asym':>10} {'g equal':>10} {'z asym':>9} {'z equal':>9} {'D asym':>11}")
    for row in result.rows:
        a, e = row.solutions["asymmetric"], row.solutions["equal"]
        print(f"{row.param_value:8.1f} {a.g:10.3f} {e.g:10.3f} {a.z:9.4f} {e.z:9.4f} {a.discretionary_resources:11.2f}")
    for name, d in detect_gap_decay(result).items():
        print(f"{name}: {d.first:.4g} -> {d.last:.4g}, shrinking on {d.shrink_fraction:.0%} of steps")


if __name__ == "__main__":
    main()
