"""Benchmark the compiled elimination kernels against the pure-Python twins.

Both implementations are imported side by side (no reinstall needed) and
run on identical inputs: random integer matrices, plus the structured
constraint matrices that the first-chaos computation actually produces.

Usage: python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import time

from noise_lattice import _kernels_py
from noise_lattice.finmeas import indicator
from noise_lattice.linalg import scale_row_to_int
from noise_lattice.ntba import mk_parity_ntba
from noise_lattice.sigma import cond_exp

try:
    from noise_lattice import _speedups
except ImportError:
    _speedups = None


def first_chaos_constraint_matrix(n: int):
    """The stacked co-atom constraint rows for the pair-sign algebra."""
    B = mk_parity_ntba(n)
    space = B.space
    rows = []
    for k in range(B.n_atoms):
        x = B.coatom(k).realize()
        xc = B.atoms[k]
        cols = []
        for i in range(space.size):
            ei = indicator(space, [i])
            img = ei - cond_exp(x, ei) - cond_exp(xc, ei)
            cols.append(scale_row_to_int(img.values))
        rows.extend(
            [cols[j][i] for j in range(space.size)] for i in range(space.size)
        )
    return rows


def random_matrix(rng, nr, nc):
    return [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]


def timeit(fn, *args, repeat: int):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(0)
    workloads = [
        ("echelon random 96x48", "row_echelon_int", (random_matrix(rng, 96, 48),)),
        ("echelon random 192x64", "row_echelon_int", (random_matrix(rng, 192, 64),)),
        (
            "echelon chaos constraints n=5 (192x64)",
            "row_echelon_int",
            (first_chaos_constraint_matrix(5),),
        ),
        (
            "orthogonalize 48 vecs dim 48",
            "orthogonalize_int",
            (random_matrix(rng, 48, 48), [rng.randint(1, 8) for _ in range(48)]),
        ),
    ]

    print(f"{'workload':42s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, fn_name, fn_args in workloads:
        t_pure, r_pure = timeit(getattr(_kernels_py, fn_name), *fn_args, repeat=args.repeat)
        if _speedups is None:
            print(f"{name:42s} {t_pure*1e3:9.1f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_fast, r_fast = timeit(getattr(_speedups, fn_name), *fn_args, repeat=args.repeat)
        assert r_pure == r_fast, f"backend mismatch on {name}"
        print(
            f"{name:42s} {t_pure*1e3:9.1f}ms {t_fast*1e3:9.1f}ms {t_pure/t_fast:7.2f}x"
        )
    if _speedups is None:
        print("\ncompiled kernels not built; run: python setup.py build_ext --inplace")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
