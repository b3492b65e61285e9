"""Compare the compiled kernels against the pure-Python reference.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from gcomplex import _pykernels
from gcomplex.families import hoffman_singleton, moebius_ladder, petersen
from gcomplex.spectral import _minor_rows

try:
    from gcomplex import _ckernels
except ImportError:
    _ckernels = None


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    hs = hoffman_singleton()
    minor = _minor_rows(moebius_ladder(40), 0)
    small = _minor_rows(moebius_ladder(12), 0)
    return [
        ("canonical labeling, Hoffman-Singleton", lambda k: k.canonical_labeling(hs.adj)),
        ("enumerate connected (8, 12)", lambda k: list(k.enumerate_rows(8, 12, -1, True))),
        ("Bareiss determinant, 11x11 minor (machine ints)", lambda k: k.bareiss_det(small)),
        ("Bareiss determinant, 39x39 minor (big ints)", lambda k: k.bareiss_det(minor)),
        ("synchrony histogram, Petersen t=2 k=4", lambda k: k.sync_histogram(petersen().adj, 2, 4)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'kernel':50s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in cases():
        py = _best(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:50s} {py:10.4f} {'n/a':>10s} {'':>8s}")
            continue
        cy = _best(lambda: fn(_ckernels), args.repeat)
        print(f"{name:50s} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
