"""Compare the compiled box-search kernel against the pure-Python twin.

Runs enumerate_norm over a small workload grid with each kernel forced
in turn (the pure path via CARPET_PURE_PYTHON) and prints a timing
table.  Numbers are best-of-N wall clock, not statistics; the point is
the order of magnitude and that both kernels return identical vectors.

Usage: python3 benchmarks/bench_kernels.py [--repeats 3]
"""

import argparse
import os
import time

from carpet.enumeration import enumerate_norm, kernel_name
from carpet.lattice import GramLattice

WORKLOADS = [
    ("tangent", ((-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)),
     -1, (4, 6, 8)),
    ("sparse", ((3, 0, 0, 0), (0, -1, 0, 0), (0, 0, -63, 0), (0, 0, 0, -63)),
     -1, (8, 16)),
    ("paired", ((-2, 5, 0, 0), (5, 0, 0, 0), (0, 0, -10, 5), (0, 0, 5, -10)),
     -2, (6, 8)),
]


def best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if kernel_name() != "compiled":
        print("compiled kernel unavailable; timing the pure kernel only")

    header = f"{'lattice':8} {'d':>3} {'bound':>5} {'vectors':>7} " \
             f"{'compiled':>10} {'pure':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, gram, d, bounds in WORKLOADS:
        ell = GramLattice(gram)
        for bound in bounds:
            os.environ.pop("CARPET_PURE_PYTHON", None)
            fast = enumerate_norm(ell, d, bound)
            t_fast = (best_time(lambda: enumerate_norm(ell, d, bound),
                                args.repeats)
                      if kernel_name() == "compiled" else float("nan"))
            os.environ["CARPET_PURE_PYTHON"] = "1"
            try:
                slow = enumerate_norm(ell, d, bound)
                t_slow = best_time(lambda: enumerate_norm(ell, d, bound),
                                   args.repeats)
            finally:
                os.environ.pop("CARPET_PURE_PYTHON", None)
            if [v.coords for v in fast] != [v.coords for v in slow]:
                raise SystemExit(f"kernel mismatch on {name} bound {bound}")
            ratio = t_slow / t_fast if t_fast == t_fast and t_fast > 0 else float("nan")
            print(f"{name:8} {d:>3} {bound:>5} {len(fast):>7} "
                  f"{t_fast * 1e3:>8.2f}ms {t_slow * 1e3:>8.2f}ms "
                  f"{ratio:>7.1f}x")


if __name__ == "__main__":
    main()
