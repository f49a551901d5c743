"""Trade-off between first-pair advantage and the number of significant pairs.

Sweeps a common sharpness lambda = eta for all-2->1 and all-3->1 schedules
from the singlet and writes plot-ready CSV (one row per sharpness value).

    python scripts/tradeoff_sweep.py --pairs 60 --steps 40 --output tradeoff.csv
"""

import argparse
import csv
import sys

import numpy as np

from seqrac.config import ExperimentConfig
from seqrac.engine import PairConfig
from seqrac.experiments import sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=60)
    ap.add_argument("--steps", type=int, default=40)
    ap.add_argument("--threshold", type=float, default=0.520)
    ap.add_argument("--output", default="-")
    args = ap.parse_args()

    values = np.round(np.linspace(0.05, 1.0, args.steps), 6)
    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["task", "sharpness", "first_pair_pmin", "significant_count"])
    for task, p, col in (("2to1", 1.0, "pmin_2to1_first"), ("3to1", 0.0, "pmin_3to1_first")):
        cfg = ExperimentConfig(
            schedule=(PairConfig(p, 1.0, 1.0),) * args.pairs,
            significance_threshold=args.threshold,
            precision=6,
        )
        for row in sweep(cfg, "lambda=eta", values):
            writer.writerow([task, row["value"], f"{row[col]:.6f}", row["significant_count"]])
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
