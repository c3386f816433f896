#!/usr/bin/env python3
"""Compare the compiled evaluation kernels against the pure-Python fallback.

The workload mirrors the acceptance property suite: many random valid
per-bit-map families, each verified strictly monotone over its full 2**n
domain, plus full image tables for anchored instances.

Usage: python benchmarks/kernel_bench.py [--count 2000] [--bits 12]
"""

import argparse
import random
import time

from millionaire import _kernels_py, kernels


def make_families(count, bits, seed=7):
    rng = random.Random(seed)
    families = []
    for _ in range(count):
        n = rng.randint(max(1, bits - 3), bits)
        zeros, ones, running = [], [], 0
        for _ in range(n):
            z = rng.randint(-1000, 1000)
            gap = running + rng.randint(1, 60)
            zeros.append(z)
            ones.append(z + gap)
            running += gap
        families.append((zeros, ones))
    return families


def time_backend(impl, families):
    start = time.perf_counter()
    for zeros, ones in families:
        if impl.monotone_violation(zeros, ones) != -1:
            raise AssertionError("workload family not monotone")
    mono = time.perf_counter() - start

    start = time.perf_counter()
    for zeros, ones in families[: max(1, len(families) // 4)]:
        impl.opf_table(zeros, ones)
    table = time.perf_counter() - start
    return mono, table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--bits", type=int, default=12)
    args = parser.parse_args()

    families = make_families(args.count, args.bits)
    print(f"workload: {args.count} families, up to {args.bits} bits each")

    rows = [("pure-python", _kernels_py)]
    if kernels.HAVE_COMPILED:
        from millionaire import _kernels

        rows.append(("compiled", _kernels))
    else:
        print("compiled extension not available; timing the fallback only")

    results = {}
    for name, impl in rows:
        mono, table = time_backend(impl, families)
        results[name] = (mono, table)
        print(f"{name:>12}: monotonicity sweep {mono:8.3f}s   image tables {table:8.3f}s")

    if len(results) == 2:
        pm, pt = results["pure-python"]
        cm, ct = results["compiled"]
        print(f"{'speedup':>12}: monotonicity sweep {pm / cm:7.1f}x   image tables {pt / ct:7.1f}x")


if __name__ == "__main__":
    main()
