#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 9,9,3 20,30,4 --repeats 50
    python3 benchmarks/bench_kernels.py --output results.json

Times ``penalty_grad`` per call and the full ``descent`` loop per restart
for both backends on random instances.  The numpy numbers do not depend on
the SIGNRANK_NO_NUMBA flag; both implementations are imported directly.
"""

import argparse
import json
import time

import numpy as np

from signrank import kernels


def _random_instance(m, n, r, seed):
    rng = np.random.default_rng(seed)
    U = rng.standard_normal((m, r))
    V = rng.standard_normal((r, n))
    S = rng.choice(np.array([-1, 0, 1], dtype=np.int8), size=(m, n), p=[0.4, 0.2, 0.4])
    free = np.ones((m, r)), np.ones((r, n))
    return U, V, S, free


def bench_penalty(sizes, repeats):
    rows = []
    for m, n, r in sizes:
        U, V, S, _ = _random_instance(m, n, r, seed=m * 1000 + n)
        timings = {}
        for name, fn in (("numba", kernels.penalty_grad_numba), ("numpy", kernels.penalty_grad_numpy)):
            if fn is None:
                timings[name] = float("nan")
                continue
            fn(U, V, S, 1e-2, 4.0)  # warm up / JIT
            t0 = time.perf_counter()
            for _ in range(repeats):
                fn(U, V, S, 1e-2, 4.0)
            timings[name] = (time.perf_counter() - t0) / repeats
        rows.append({"kernel": "penalty_grad", "m": m, "n": n, "r": r, **timings})
    return rows


def bench_descent(sizes, iters):
    rows = []
    dep = kernels.empty_dependent()
    for m, n, r in sizes:
        U0, V0, S, (fu, fv) = _random_instance(m, n, r, seed=m * 7 + n)
        timings = {}
        for name, fn in (("numba", kernels.descent_numba), ("numpy", kernels.descent_numpy)):
            if fn is None:
                timings[name] = float("nan")
                continue
            fn(U0.copy(), V0.copy(), S, 1e-2, 4.0, 10, 0.05, *dep, fu, fv)  # warm up
            t0 = time.perf_counter()
            fn(U0.copy(), V0.copy(), S, 1e-2, 4.0, iters, 0.05, *dep, fu, fv)
            timings[name] = time.perf_counter() - t0
        rows.append({"kernel": f"descent[{iters} iters]", "m": m, "n": n, "r": r, **timings})
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        nargs="+",
        default=["9,9,3", "20,30,4", "50,60,5"],
        help="m,n,r triples",
    )
    parser.add_argument("--repeats", type=int, default=200)
    parser.add_argument("--iters", type=int, default=2000, help="descent iterations")
    parser.add_argument("--output", help="also dump results as JSON")
    args = parser.parse_args()

    sizes = [tuple(int(v) for v in spec.split(",")) for spec in args.sizes]
    print(f"active backend: {kernels.BACKEND}")
    if kernels.penalty_grad_numba is None:
        print("numba unavailable or disabled; only numpy timings below")

    results = bench_penalty(sizes, args.repeats) + bench_descent(sizes, args.iters)
    header = f"{'kernel':>22} {'size':>10} {'numba':>12} {'numpy':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for row in results:
        size = f"{row['m']}x{row['n']}r{row['r']}"
        nb, np_ = row["numba"], row["numpy"]
        speed = np_ / nb if nb and nb == nb and nb > 0 else float("nan")
        print(f"{row['kernel']:>22} {size:>10} {nb * 1e6:>10.1f}us {np_ * 1e6:>10.1f}us {speed:>8.1f}x")

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=1)
        print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
