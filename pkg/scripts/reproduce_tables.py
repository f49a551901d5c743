"""Regenerate both minimum-success tables and check them against the stored values.

    python scripts/reproduce_tables.py [--outdir results]
"""

import argparse
import sys
from pathlib import Path

from seqrac.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    status = 0
    for table in ("table1", "table2"):
        path = outdir / f"{table}.csv"
        code = cli_main(["reproduce", table, "--output", str(path)])
        print(f"{table}: {'ok' if code == 0 else 'MISMATCH'} -> {path}")
        status = max(status, code)
    return status


if __name__ == "__main__":
    sys.exit(main())
