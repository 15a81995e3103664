"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on the same inputs under both backends; outputs are
compared before anything is timed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cayley_census import classify, kernels
from cayley_census.autiso import _Partition
from cayley_census.classify import resolve_group
from cayley_census.graphs import coset_graph


def _m11_graph():
    """The tetravalent coset graph on 7920 vertices from the main census case."""
    res = classify.run_case("M12:2/M11/S4", build_graphs=False)
    A = resolve_group("M12.2.deg24")
    return coset_graph(A, res.K, res.orbits[0].representative).graph


def _refine_inputs(g):
    colors = np.zeros(g.n, dtype=np.int64)
    colors[0] = 1        # individualize vertex 0
    return _Partition.from_colors(colors)


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    py = kernels.backend("python")
    try:
        cy = kernels.backend("compiled")
    except ImportError:
        raise SystemExit("compiled extension not built; run pip install -e . --no-build-isolation")

    g = _m11_graph()
    part = _refine_inputs(g)
    rng = np.random.default_rng(0)
    perms = np.stack([rng.permutation(200_000) for _ in range(3)]).astype(np.int64)

    def refine_full(mod):
        def run():
            p = part.copy()
            mod.refine(g.indptr, g.indices, p.lab, p.inv, p.cell, p.size, [0, 1])
            return p.lab
        return run

    cases = {
        "refine (7920 vertices)": refine_full,
        "orbit_labels (200000 points, 3 perms)": lambda mod: (lambda: mod.orbit_labels(perms)),
        "cycle_counts <= 8 (7920 vertices)": lambda mod: (lambda: mod.cycle_counts(g.indptr, g.indices, 8)),
        "girth (7920 vertices)": lambda mod: (lambda: mod.girth(g.indptr, g.indices)),
    }
    print(f"{'kernel':42s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, make in cases.items():
        tp, op = _time(make(py), args.repeat)
        tc, oc = _time(make(cy), args.repeat)
        if not np.array_equal(np.asarray(op), np.asarray(oc)):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:42s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
