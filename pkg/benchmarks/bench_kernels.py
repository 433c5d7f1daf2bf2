"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 4]
"""

import argparse
import sys
import timeit

from sact import _kernels_py
from sact.algebra import _cells, build_universe, enumerate_monoids

try:
    from sact import _kernels
except ImportError:
    _kernels = None


def workloads(size):
    """(name, callable taking a kernel module) over every act of every order-3 monoid."""
    acts = []
    for M in enumerate_monoids(3):
        acts.extend(build_universe(M, size).acts)
    pairs = [(A, B) for A in acts for B in acts if A.monoid == B.monoid and A.size and B.size][:4000]
    cells = [_cells(A) for A in acts]

    def canon(k):
        for A, c in zip(acts, cells):
            k.canon_search(A.flat, A.monoid.size, A.size, c)

    def homs(k):
        for A, B in pairs:
            k.hom_search(A.flat, A.monoid.size, A.size, B.flat, B.size)

    def congruences(k):
        for A in acts:
            k.congruence_search(A.flat, A.monoid.size, A.size)

    return len(acts), len(pairs), [("canon_search", canon), ("hom_search", homs), ("congruence_search", congruences)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=4, help="largest act size (<= 4)")
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e .` first", file=sys.stderr)
        return 1
    n_acts, n_pairs, jobs = workloads(args.size)
    print(f"{n_acts} acts, {n_pairs} act pairs, best of {args.repeat}")
    print(f"{'kernel':20} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for name, fn in jobs:
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:20} {py * 1e3:10.1f} {cy * 1e3:12.1f} {py / cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
