"""Time the graph kernels: numba against the numpy/python fallback.

    python benchmarks/bench_kernels.py [--sizes 8 10 12 14] [--graphs 20]
"""

import argparse
import time

import numpy as np

from sympheights import _kernels
from sympheights.graphs import random_graph
from sympheights.harness import make_rng


def timed(fn, graphs, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [fn(np.array(G.adj, dtype=np.int64), G.n) for G in graphs]
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12, 14])
    ap.add_argument("--graphs", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"active backend: {_kernels.BACKEND}")
    if _kernels.BACKEND != "numba":
        print("numba disabled; timing the fallback only")
    rng = make_rng(args.seed)
    pairs = [
        ("clique", _kernels.clique_number, _kernels.clique_number_numpy),
        ("matching", _kernels.max_nonedge_matching, _kernels.max_nonedge_matching_python),
    ]
    # warm-up so compile time stays out of the numbers
    G0 = random_graph(rng, 4, 0.5)
    for _, fast, _slow in pairs:
        fast(np.array(G0.adj, dtype=np.int64), G0.n)

    print(f"{'kernel':<10}{'n':>4}{'active s':>12}{'fallback s':>12}{'speedup':>10}")
    for n in args.sizes:
        graphs = [random_graph(rng, n, float(rng.uniform(0.2, 0.8))) for _ in range(args.graphs)]
        for name, fast, slow in pairs:
            tf, rf = timed(fast, graphs, args.repeat)
            ts, rs = timed(slow, graphs, 1)
            assert rf == rs, f"{name} disagrees at n={n}"
            print(f"{name:<10}{n:>4}{tf:>12.4f}{ts:>12.4f}{ts / tf:>9.1f}x")


if __name__ == "__main__":
    main()
