"""Compare the numba and numpy kernel backends on the workloads that dominate runtime.

    python3 benchmarks/bench_kernels.py [--repeat N] [--m-graph 5]

Each workload is run once per backend to warm up (JIT compilation for numba),
then timed ``--repeat`` times; the best time is reported. Results of the two
backends are compared for equality so the benchmark doubles as a smoke test.
"""

import argparse
import time

import numpy as np

from crooked import codes, gf2m, graphs, vbf
from crooked.kernels import get_backend


def _equal(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def workloads(m_graph: int):
    f9 = vbf.from_power(gf2m.field_new(9), 3)
    f9_table = f9.table
    D9 = f9.derivatives

    f3 = vbf.from_power(gf2m.field_new(3), 3)
    ctx3 = f3.ctx
    exp = np.asarray(ctx3.exp_table, dtype=np.int64)
    elems = np.arange(ctx3.q, dtype=np.int64)
    even = np.bitwise_count(np.arange(1 << ctx3.q, dtype=np.uint64)) % 2 == 0
    words = codes.preparata_enumerate(f3).vectors

    G = graphs.build_crooked_graph(vbf.from_power(gf2m.field_new(m_graph), 3))
    bits, nbr = G.bits, G.nbr
    G3 = graphs.build_crooked_graph(f3)

    def drg(K):
        dist0 = K.bfs_distances(bits, nbr, 0)
        c, a, b = K.layer_counts(nbr, dist0)
        D = int(dist0.max())
        first = [int(np.flatnonzero(dist0 == d)[0]) for d in range(D + 1)]
        return K.first_irregular(bits, nbr, c[first], a[first], b[first])

    def prep(K):
        s_sum = K.subset_xor(exp)
        s_target = f3.table[s_sum] ^ K.subset_xor(f3.table[exp])
        return K.preparata_scan(s_sum, s_target, K.subset_xor(elems), K.subset_xor(f3.table), even)

    return [
        ("derivative table, m=9", lambda K: K.derivative_table(f9_table)),
        ("condition-2 multiplicities, m=9", lambda K: K.max_row_multiplicity(D9)),
        ("hyperplane functionals, m=9", lambda K: K.hyperplane_functionals(D9, 9)),
        ("P_f scan, m=3", prep),
        ("P_f min distance, m=3", lambda K: K.min_pairwise_distance(words)),
        (f"full DRG check, m={m_graph} ({G.N} vertices)", drg),
        ("common neighbours, m=3", lambda K: K.common_neighbour_counts(G3.bits)),
    ]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--m-graph", type=int, default=5, choices=(3, 5, 7))
    args = p.parse_args(argv)

    backends = {name: get_backend(name) for name in ("numba", "numpy")}
    print(f"{'workload':<40} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, work in workloads(args.m_graph):
        results = {b: work(K) for b, K in backends.items()}  # warm-up
        if not _equal(results["numba"], results["numpy"]):
            raise SystemExit(f"backends disagree on {name!r}")
        t = {b: best_of(lambda K=K: work(K), args.repeat) for b, K in backends.items()}
        print(f"{name:<40} {t['numba'] * 1e3:>8.2f}ms {t['numpy'] * 1e3:>8.2f}ms {t['numpy'] / t['numba']:>7.1f}x")


if __name__ == "__main__":
    main()
