"""Timing comparison of the two max-flow backends.

Runs the same seeded cut instances through the pure-Python solver and the
compiled kernel, checks that both return identical flows and partitions,
and prints a timing table.  The compiled backend pays a one-time JIT cost
on first use, so it is warmed before measuring.

Usage: python benchmarks/bench_maxflow.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

from dpcut import (
    NoiseSpec,
    RngStream,
    build_instance,
    min_st_cut_exact,
    perturb,
    random_graph,
    synthetic_standin,
)


def _cases():
    g1 = random_graph(120, 0.3, max_weight=50, seed=1)
    g2 = random_graph(300, 0.12, max_weight=50, seed=2)
    # experiment-shaped instance: contracted stand-in with noise edges,
    # the graph the private mechanism actually solves
    g3, s3, t3 = build_instance(synthetic_standin(500, 6320, seed=9), seed=4)
    g3n = perturb(g3, s3, t3, NoiseSpec(epsilon=0.5), RngStream(7)).graph
    return [
        ("random n=120 p=0.30", g1, 0, 119),
        ("random n=300 p=0.12", g2, 0, 299),
        ("stand-in instance", g3, s3, t3),
        ("stand-in + noise edges", g3n, s3, t3),
    ]


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5, help="take the best of N runs")
    args = ap.parse_args()

    cases = _cases()

    # JIT warmup on the smallest case (compile time would otherwise be
    # billed to the first row)
    t0 = time.perf_counter()
    min_st_cut_exact(cases[0][1], cases[0][2], cases[0][3], backend="numba")
    print(f"numba warmup (includes JIT): {time.perf_counter() - t0:.2f}s\n")

    header = f"{'case':<26} {'nodes':>6} {'edges':>7} {'py':>9} {'numba':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, g, s, t in cases:
        sol_py = min_st_cut_exact(g, s, t, backend="py")
        sol_nb = min_st_cut_exact(g, s, t, backend="numba")
        if (sol_py.weight_perturbed, sol_py.side) != (sol_nb.weight_perturbed, sol_nb.side):
            raise SystemExit(f"backend mismatch on {name!r}")
        t_py = _time(lambda: min_st_cut_exact(g, s, t, backend="py"), args.repeats)
        t_nb = _time(lambda: min_st_cut_exact(g, s, t, backend="numba"), args.repeats)
        print(
            f"{name:<26} {g.n:>6} {g.num_edges:>7} {t_py * 1e3:>7.1f}ms "
            f"{t_nb * 1e3:>7.1f}ms {t_py / t_nb:>7.1f}x"
        )
    print("\nbackends agree on all cases")
    print("(DPCUT_NO_NUMBA=1 forces the pure-Python path at dispatch time)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
