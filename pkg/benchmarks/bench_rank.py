"""Compare the compiled and numpy F_p elimination kernels.

Usage: python benchmarks/bench_rank.py [--sizes 100 300 600] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lefschetz import kernels
from lefschetz.engine import mult_matrix
from lefschetz.ideals import sec5_cubic8
from lefschetz.linalg import FieldSpec
from lefschetz.quotient import build_quotient


def best_time(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[100, 300, 600])
    parser.add_argument("--primes", type=int, nargs="+", default=[32003, 2147483629])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    names = sorted(backends)
    print(f"{'workload':<34}" + "".join(f"{n:>12}" for n in names))
    rng = np.random.default_rng(0)
    for p in args.primes:
        for size in args.sizes:
            a = rng.integers(0, p, size=(size, size))
            row = [best_time(lambda m=backends[n]: m.rank_modp(a, p), args.repeat) for n in names]
            print(f"{f'random {size}x{size} mod {p}':<34}" + "".join(f"{t:>11.4f}s" for t in row))

    # sparse structured matrices from an actual Lefschetz check
    q = build_quotient(sec5_cubic8())
    mats = [mult_matrix(q, i, 1, FieldSpec(32003)).data for i in range(q.socle_degree)]
    row = [
        best_time(lambda m=backends[n]: [m.rank_modp(x, 32003) for x in mats], args.repeat) for n in names
    ]
    print(f"{'eight-variable l maps mod 32003':<34}" + "".join(f"{t:>11.4f}s" for t in row))


if __name__ == "__main__":
    main()
