"""Benchmark the compiled kernels against the NumPy fallback.

Runs the three hot loops (shadow half-sums, illuminated-boundary
accumulation, point containment) on random bodies of each dimension and
prints a speedup table. Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--dirs 20000]
"""

import argparse
import time

import numpy as np

from shadowcalc import bodies
from shadowcalc.kernels import _numpy as numpy_backend

try:
    from shadowcalc.kernels import _speedups as compiled_backend
except ImportError:
    compiled_backend = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(dim, n_dirs, repeat):
    poly = bodies.random_polytope(dim, 40, seed=dim)
    rng = np.random.default_rng(dim + 1)
    dirs = rng.standard_normal((n_dirs, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    points = rng.uniform(-2.0, 2.0, (n_dirs, dim))
    normals = poly.facet_normals()
    offsets = poly.facet_offsets()
    measures = poly.facet_measures()
    centroids = poly.facet_centroids()

    cases = {
        "shadow_halfsum": lambda mod: mod.shadow_halfsum_batch(
            dirs, normals, measures),
        "illuminated": lambda mod: mod.illuminated_batch(
            dirs, normals, measures, centroids, 1e-9),
        "contains": lambda mod: mod.contains_batch(
            points, normals, offsets, 1e-9),
    }
    rows = []
    for name, call in cases.items():
        t_numpy = _time(lambda: call(numpy_backend), repeat)
        if compiled_backend is not None:
            t_compiled = _time(lambda: call(compiled_backend), repeat)
            speedup = t_numpy / t_compiled
        else:
            t_compiled, speedup = float("nan"), float("nan")
        rows.append((dim, name, poly.n_facets, t_numpy * 1e3,
                     t_compiled * 1e3, speedup))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repeats; the best run is reported")
    parser.add_argument("--dirs", type=int, default=20_000,
                        help="batch size (directions / points)")
    args = parser.parse_args()

    if compiled_backend is None:
        print("note: compiled extension unavailable, timing NumPy only\n")
    header = (f"{'dim':>3} {'kernel':<16} {'facets':>6} "
              f"{'numpy ms':>10} {'compiled ms':>12} {'speedup':>8}")
    print(header)
    print("-" * len(header))
    for dim in (2, 3, 4, 5):
        for row in bench(dim, args.dirs, args.repeat):
            print(f"{row[0]:>3} {row[1]:<16} {row[2]:>6} "
                  f"{row[3]:>10.3f} {row[4]:>12.3f} {row[5]:>8.2f}")


if __name__ == "__main__":
    main()
