"""Benchmark the pure-Python kernels against the compiled twin.

Run:  python benchmarks/bench_engines.py

Workloads mirror real use: the n=4 census slice, cycle solves at
moderate cop counts, and the bidirected-clique cross-check instances.
"""
import time

from copwin.bits import subsets_upto
from copwin.digraph import Digraph, bidirect
from copwin.engine import available_backends
from copwin.lab import enumerate_digraphs

BUDGET = 50_000_000


def workload_census(backend):
    count = 0
    for i, d in enumerate(enumerate_digraphs(4)):
        if i % 8:  # a deterministic 1/8 slice keeps the pure run short
            continue
        succ, pred, n = d.succ_masks, d.pred_masks, d.n
        for k in range(5):
            moves = subsets_upto(n, k)
            for mono in (False, True):
                backend.solve_visible(succ, pred, n, moves, mono, False, BUDGET)
                backend.solve_invisible(succ, n, moves, True, mono, BUDGET)
                count += 2
    return count


def workload_cycles(backend):
    count = 0
    for n in range(5, 9):
        d = Digraph(n, [(i, (i + 1) % n) for i in range(n)])
        succ, pred = d.succ_masks, d.pred_masks
        for k in (1, 2, 3):
            moves = subsets_upto(n, k)
            backend.solve_visible(succ, pred, n, moves, False, False, BUDGET)
            backend.solve_visible(succ, pred, n, moves, True, False, BUDGET)
            backend.solve_invisible(succ, n, moves, True, False, BUDGET)
            count += 3
    return count


def workload_cliques(backend):
    count = 0
    for n in (4, 5, 6):
        d = bidirect(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
        succ, pred = d.succ_masks, d.pred_masks
        for k in range(n + 1):
            moves = subsets_upto(n, k)
            backend.solve_visible(succ, pred, n, moves, True, False, BUDGET)
            backend.solve_invisible(succ, n, moves, True, True, BUDGET)
            count += 2
    return count


WORKLOADS = [
    ("n=4 census slice", workload_census),
    ("directed cycles C5..C8", workload_cycles),
    ("bidirected cliques K4..K6", workload_cliques),
]


def main():
    backends = available_backends()
    print(f"backends available: {', '.join(sorted(backends))}")
    results = {}
    for wname, fn in WORKLOADS:
        row = {}
        for bname, backend in sorted(backends.items()):
            start = time.perf_counter()
            solves = fn(backend)
            row[bname] = (time.perf_counter() - start, solves)
        results[wname] = row

    print(f"\n{'workload':<28} {'solves':>7} " + " ".join(f"{b + ' (s)':>10}" for b in sorted(backends)))
    for wname, row in results.items():
        solves = next(iter(row.values()))[1]
        cells = " ".join(f"{row[b][0]:>10.3f}" for b in sorted(row))
        print(f"{wname:<28} {solves:>7} {cells}")
    if "c" in backends and "py" in backends:
        print("\nspeedup (py/c):")
        for wname, row in results.items():
            print(f"  {wname:<28} {row['py'][0] / row['c'][0]:6.1f}x")


if __name__ == "__main__":
    main()
