#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Times sieve-backed range resolution (the hot loop of survivor searches)
and the bulk X/big-omega block computation on both backends, verifying
they produce identical results while they are at it.

    python benchmarks/compare_backends.py --max 1000000 --repeat 3
"""

import argparse
import time

import numpy as np

from xmap import _fallback
from xmap.arithmetic import PrimeOracle

try:
    from xmap import _speedups
except ImportError:
    _speedups = None


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def bench_resolve(kernel, n_max, budget, repeat):
    def run():
        status = np.zeros(kernel.limit + 1, dtype=np.uint8)
        kernel.resolve_range(status, 2, n_max + 1, budget, 0)
        return status

    return best_of(repeat, run)


def bench_x_block(kernel, n_max, repeat):
    return best_of(repeat, lambda: kernel.x_block(2, n_max + 1))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=10**6)
    parser.add_argument("--budget", type=int, default=1000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"building sieve to {args.max} ...")
    oracle = PrimeOracle(args.max)
    pure = _fallback.Kernel(oracle.spf, oracle.primes)
    # the fallback precomputes sigma/Pi/omega tables once; time that one-off
    t0 = time.perf_counter()
    pure.x_block(2, 3)
    t_tables = time.perf_counter() - t0

    rows = []
    t_pure_res, st_pure = bench_resolve(pure, args.max, args.budget, args.repeat)
    t_pure_blk, blk_pure = bench_x_block(pure, args.max, args.repeat)
    rows.append(("python", t_tables, t_pure_res, t_pure_blk))

    if _speedups is not None:
        comp = _speedups.Kernel(oracle.spf, oracle.primes)
        t_comp_res, st_comp = bench_resolve(comp, args.max, args.budget, args.repeat)
        t_comp_blk, blk_comp = bench_x_block(comp, args.max, args.repeat)
        rows.append(("compiled", 0.0, t_comp_res, t_comp_blk))
        assert np.array_equal(st_pure, st_comp), "backends disagree on statuses"
        assert np.array_equal(blk_pure[0], blk_comp[0]), "backends disagree on X"
        assert np.array_equal(blk_pure[1], blk_comp[1]), "backends disagree on omega"
    else:
        print("compiled kernel not built; timing the fallback only")

    survivors = int((st_pure == 1).sum())
    print(f"\nrange [2, {args.max}], budget {args.budget}, {survivors} survivors")
    print(f"{'backend':<10} {'table prep':>11} {'resolve_range':>14} {'x_block':>10}")
    for name, t_prep, t_res, t_blk in rows:
        print(f"{name:<10} {t_prep:>10.3f}s {t_res:>13.3f}s {t_blk:>9.3f}s")
    if len(rows) == 2:
        total_pure = rows[0][1] + rows[0][2]
        total_comp = rows[1][2]
        print(f"\nspeedup (prep + resolve): {total_pure / total_comp:.1f}x")


if __name__ == "__main__":
    main()
