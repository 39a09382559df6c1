"""Time the compiled and pure-Python row-reduction kernels on the same inputs.

    python3 benchmarks/bench_rref.py [--sizes 8 16 32 48] [--repeat 3] [--seed 0]

Also times a full cohomology computation (the workload the kernel serves)
under each backend.  Outputs of the two kernels are compared for equality.
"""

import argparse
import random
import time

from homlie.action import module_action
from homlie.cohomology import cohomology_group
from homlie.examples import gl2, sl2
from homlie.exactla import Subspace, available_backends, set_backend
from homlie.exactla import _backend


def random_rows(rng, n, m, rank, bound=9):
    """``n x m`` integer rows of the given rank (products of random factors)."""
    left = [[rng.randint(-bound, bound) for _ in range(rank)] for _ in range(n)]
    right = [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(rank)]
    return [[sum(left[i][k] * right[k][j] for k in range(rank)) for j in range(m)] for i in range(n)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
    rng = random.Random(args.seed)
    header = f"{'size':>6} {'rank':>5}" + "".join(f" {b + ' (ms)':>14}" for b in backends)
    if len(backends) > 1:
        header += f" {'speedup':>8}"
    print(header)
    for n in args.sizes:
        rows = random_rows(rng, n, n + 4, max(1, (3 * n) // 4))
        results, times = {}, {}
        for b in backends:
            kernel = _backend._KERNELS[b]
            results[b] = kernel(rows, n + 4)
            times[b] = best_of(lambda k=kernel: k(rows, n + 4), args.repeat)
        outs = list(results.values())
        if any(o != outs[0] for o in outs[1:]):
            raise SystemExit(f"kernels disagree at size {n}")
        line = f"{n:>6} {len(outs[0][1]):>5}" + "".join(f" {1000 * times[b]:>14.2f}" for b in backends)
        if len(backends) > 1:
            line += f" {times['python'] / times['cython']:>7.1f}x"
        print(line)

    print()
    print("cohomology H^0..H^3 (seconds)")
    for name, L in (("sl2 adjoint", sl2()), ("gl2 adjoint", gl2())):
        act = module_action(L, Subspace.full(L.dim))
        line = f"{name:>14}"
        dims = {}
        for b in backends:
            set_backend(b)
            t = best_of(lambda: [cohomology_group(act, n) for n in range(4)], 1)
            dims[b] = [cohomology_group(act, n).dim for n in range(4)]
            line += f" {b}={t:.3f}"
        if len({tuple(d) for d in dims.values()}) != 1:
            raise SystemExit(f"backends disagree on {name}")
        print(line + f"  dims={dims[backends[0]]}")


if __name__ == "__main__":
    main()
