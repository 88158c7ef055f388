"""Compare the compiled lattice kernels with the numpy/scipy fallback.

    python benchmarks/bench_kernels.py [--cells 500 2000 8000] [--repeat 5]

Prints the best wall time per backend, the speedup and the relative
difference of the results.
"""

import argparse
import sys
import timeit

import numpy as np

from boundary_lax.monodromy import _kernels_py

try:
    from boundary_lax.monodromy import _kernels as _compiled
except ImportError:
    _compiled = None


def _inputs(cells, N=2, seed=0):
    rng = np.random.default_rng(seed)
    gens = rng.normal(scale=1.0 / cells, size=(cells, N, N))
    vals = rng.normal(size=(cells + 1, N, N))
    w = np.full(cells + 1, 1.0 / cells)
    return gens, vals, w


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cells", type=int, nargs="+", default=[500, 2000, 8000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled kernels are not built; only the fallback is available", file=sys.stderr)
    print(f"{'kernel':22s} {'cells':>6s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s} {'rel diff':>9s}")
    for cells in args.cells:
        gens, vals, w = _inputs(cells)
        for name, call in (
            ("ordered_expm_product", lambda m: m.ordered_expm_product(gens)),
            ("ordered_pair_sum", lambda m: m.ordered_pair_sum(vals, w)),
        ):
            tp = _best(lambda: call(_kernels_py), args.repeat)
            ref = call(_kernels_py)
            if _compiled is None:
                print(f"{name:22s} {cells:6d} {tp:10.5f} {'-':>10s} {'-':>8s} {'-':>9s}")
                continue
            tc = _best(lambda: call(_compiled), args.repeat)
            diff = np.linalg.norm(call(_compiled) - ref) / np.linalg.norm(ref)
            print(f"{name:22s} {cells:6d} {tp:10.5f} {tc:10.5f} {tp / tc:8.1f} {diff:9.1e}")


if __name__ == "__main__":
    main()
