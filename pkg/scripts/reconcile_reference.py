"""Print solver, oracle and reference triples at the baseline polity with point checks.

    python scripts/reconcile_reference.py --resolution 4000
"""

import argparse
import json

from selectorate.model import BASELINE_PARAMS, SQRT_FAMILY
from selectorate.report import reconcile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolution", type=int, default=4000)
    args = ap.parse_args()
    doc = reconcile(BASELINE_PARAMS, SQRT_FAMILY, args.resolution)
    print(json.dumps(doc, indent=2))


if __name__ == "__main__":
    main()
