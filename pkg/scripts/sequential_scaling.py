"""Runtime scaling of the linear-time sequential path decision.

Times decide_path on one random order per size, prints a table and the
fitted log-log exponent. Sizes default to 10^3..10^6.

Example:
    python scripts/sequential_scaling.py --seed 7 --max-exp 6
"""

import argparse
import os
import random
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import numpy as np

from coloring_games.sequential import decide_path


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--min-exp", type=int, default=3)
    ap.add_argument("--max-exp", type=int, default=6)
    ap.add_argument("--trials", type=int, default=3, help="best-of timing trials")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    sizes = [10**e for e in range(args.min_exp, args.max_exp + 1)]
    times = []
    print(f"{'n':>9}  {'seconds':>10}  outcome")
    for n in sizes:
        perm = list(range(n))
        rng.shuffle(perm)
        perm = tuple(perm)
        reps = max(1, 10**args.max_exp // n // 10)
        best = float("inf")
        for _ in range(args.trials):
            t0 = time.perf_counter()
            for _ in range(reps):
                outcome = decide_path(perm)
            best = min(best, (time.perf_counter() - t0) / reps)
        times.append(best)
        print(f"{n:>9}  {best:>10.6f}  {outcome}")

    slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
    print(f"fitted exponent: {slope:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
