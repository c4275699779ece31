#!/usr/bin/env python3
"""Run the full synthetic benchmark and write the report files.

Produces results/report.csv and results/report.md, mirroring what
`kpng bench --synthetic` prints. Useful as a one-shot experiment driver:

    python scripts/run_benchmark.py --k 10 --level 3 --out-dir results
"""

import argparse
import time
from pathlib import Path

from kpng.bench import markdown_table, run_synthetic, write_csv
from kpng.pngcodec import EncodeOptions


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument("--level", type=int, default=3)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    t0 = time.time()
    records = run_synthetic(args.k, EncodeOptions(level=args.level))
    elapsed = time.time() - t0

    table = markdown_table(records)
    write_csv(records, out_dir / "report.csv")
    (out_dir / "report.md").write_text(table)
    print(table, end="")
    print(f"\n{len(records)} images in {elapsed:.1f}s; reports in {out_dir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
