"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

import numpy as np

import netrobust as nr
from netrobust import _kernels


def _em_case(n, steps):
    g = nr.random_regular(n, 4, 0)
    indptr, indices, weights = g.csr
    degree = np.zeros(g.n)
    np.add.at(degree, np.repeat(np.arange(g.n), np.diff(indptr)), weights)
    noise = np.random.default_rng(0).standard_normal((steps, g.n))

    def run(mod):
        x = np.zeros(g.n)
        mod.em_advance(indptr, indices, weights, degree, x, noise, 0.01, 0.1, np.empty(steps))
    return run


def _bfs_case(n):
    g = nr.random_regular(n, 3, 1)
    indptr, indices, _ = g.csr
    return lambda mod: mod.bfs_all_pairs(indptr, indices, g.n)


def _jacobi_case(n):
    lap = nr.laplacian(nr.random_regular(n, 3, 2))
    return lambda mod: mod.jacobi_eigenvalues(lap.copy(), 1e-12, 100)


CASES = [
    ("em_advance n=100 steps=20000", _em_case(100, 20000)),
    ("bfs_all_pairs n=400", _bfs_case(400)),
    ("jacobi_eigenvalues n=60", _jacobi_case(60)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = [b for b in ("cython", "python") if b in _kernels.BACKENDS]
    if "cython" not in names:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'kernel':32s}" + "".join(f"{b:>12s}" for b in names) + ("     speedup" if len(names) == 2 else ""))
    for label, run in CASES:
        times = []
        for b in names:
            mod = _kernels.get(b)
            times.append(min(timeit.repeat(lambda: run(mod), number=1, repeat=args.repeat)))
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
