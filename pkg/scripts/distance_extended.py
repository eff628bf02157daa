"""Outcome table for the 2-distance 2-coloring game on paths.

Solves every length up to --max-n with the memoized engine and prints the
outcome table with per-length timing. Lengths beyond 13 get noticeably
heavier; 17 takes a few seconds.

Example:
    python scripts/distance_extended.py --max-n 17
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from coloring_games.games import Position, outcome
from coloring_games.graphs import build_family
from coloring_games.rulesets import DistanceColoring


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=17)
    ap.add_argument("--k", type=int, default=2, help="number of colors")
    args = ap.parse_args()

    print(f"{'n':>3}  outcome  {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        pos = Position.start(build_family("path", n), args.k, DistanceColoring(2))
        t0 = time.perf_counter()
        result = outcome(pos)
        print(f"{n:>3}  {result:>7}  {time.perf_counter() - t0:>8.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
