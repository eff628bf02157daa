"""Checkpointed long-run table computation for the Blue-Red path classes.

Grows the class tables to a large K in chunks, saving the binary table file
after every chunk, so an interrupted or budget-killed run resumes where it
stopped. Prints the D-class P-position census and the rare/common summary at
the end.

Example:
    python scripts/long_run_tables.py --kmax 1000000 --checkpoint tables.bin
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from coloring_games import oriented_paths as op
from coloring_games.games import MemoryBudgetExceeded


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, required=True)
    ap.add_argument("--checkpoint", required=True, help="binary table file")
    ap.add_argument("--mode", choices=(op.MODE_NAIVE, op.MODE_ACCELERATED),
                    default=op.MODE_ACCELERATED)
    ap.add_argument("--every", type=int, default=50_000, help="chunk size")
    args = ap.parse_args()

    if os.path.exists(args.checkpoint):
        table = op.load_table(args.checkpoint)
        print(f"resuming from K={table.K}", file=sys.stderr)
    else:
        table = op.compute_tables(min(args.every, args.kmax), mode=args.mode)
        op.save_table(table, args.checkpoint)

    t0 = time.perf_counter()
    try:
        while table.K < args.kmax:
            target = min(table.K + args.every, args.kmax)
            table = op.extend_table(table, target, mode=args.mode)
            op.save_table(table, args.checkpoint)
            rate = table.K / (time.perf_counter() - t0 + 1e-9)
            print(f"K={table.K} ({rate:.0f} rows/s)", file=sys.stderr)
    except MemoryBudgetExceeded as exc:
        print(f"stopped at K={table.K}: {exc}", file=sys.stderr)
        print(f"checkpoint retained: {args.checkpoint}", file=sys.stderr)
        return 3

    zeros = op.enumerate_p_positions(table, op.CLASS_D)
    report = op.classify_rare_common(table)
    print(f"K={table.K} mode={table.mode}")
    print(f"D-class P-positions: {len(zeros)} (last at {zeros[-1] if zeros else '-'})")
    print(f"max value: {report.max_value}")
    print(f"largest rare index: {report.max_rare_index}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
