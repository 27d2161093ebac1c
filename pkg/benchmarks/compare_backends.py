"""Compare the compiled search kernel against the pure-Python reference.

Runs the interior search on a ladder of catalog shells with both backends,
checks that leaf counts, interior lists, and visited-node counts agree
exactly, and reports wall time and throughput.

Usage: python benchmarks/compare_backends.py [shell ...]
"""

from __future__ import annotations

import sys
import time

from netfold.catalog import builtin
from netfold.mlst import enumerate_interiors
from netfold.shellgraph import build_shell_graph

DEFAULT_SHELLS = (
    "cube",
    "dodecahedron",
    "truncated_cube",
    "rhombicuboctahedron",
    "snub_cube",
    "truncated_cuboctahedron",
)


def run(name: str) -> None:
    graph = build_shell_graph(builtin(name))
    results = {}
    timings = {}
    for backend in ("python", "numba"):
        t0 = time.perf_counter()
        res = enumerate_interiors(graph, backend=backend)
        timings[backend] = time.perf_counter() - t0
        results[backend] = res
    py, nb = results["python"], results["numba"]
    assert py.leaf_count == nb.leaf_count
    assert py.interiors == nb.interiors
    assert py.nodes_visited == nb.nodes_visited, (py.nodes_visited, nb.nodes_visited)
    speedup = timings["python"] / timings["numba"] if timings["numba"] > 0 else float("inf")
    print(
        f"{name:24s} L={py.leaf_count:2d} interiors={py.interior_count:6d} "
        f"nodes={py.nodes_visited:10d}  python {timings['python']:8.3f}s  "
        f"numba {timings['numba']:8.3f}s  speedup {speedup:6.1f}x"
    )


def main(argv: list[str]) -> int:
    shells = argv or list(DEFAULT_SHELLS)
    print("interior search, identical results required from both backends")
    for name in shells:
        run(name)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
