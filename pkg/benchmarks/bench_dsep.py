"""Benchmark: compiled d-separation kernel vs the pure-Python fallback.

The kernel backs every d-separation query, so the acceptance battery calls it
millions of times. Run from the repo root:

    python3 benchmarks/bench_dsep.py

The script re-executes itself with CAUSEWAY_PURE_PYTHON=1 to time the
fallback in a clean interpreter, since the implementation is chosen at
import time.
"""
import itertools
import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))


def build_workload(n_dags=300, n_nodes=8, seed=12345):
    from causeway.graph import CausalDag, Variable

    rng = random.Random(seed)
    workload = []
    for _ in range(n_dags):
        names = [f"N{i}" for i in range(n_nodes)]
        order = list(names)
        rng.shuffle(order)
        edges = [
            (order[i], order[j])
            for i in range(n_nodes)
            for j in range(i + 1, n_nodes)
            if rng.random() < 0.35
        ]
        g = CausalDag([Variable(n, ("0", "1")) for n in names], edges)
        queries = []
        for x, y in itertools.combinations(names, 2):
            rest = [n for n in names if n not in (x, y)]
            for r in range(len(rest) + 1):
                queries.append((x, y, frozenset(rng.sample(rest, r))))
        workload.append((g, queries))
    return workload


def run_once():
    from causeway import _core
    from causeway.graph import SeparationQuery, d_separated

    workload = build_workload()
    total = sum(len(q) for _, q in workload)
    start = time.perf_counter()
    separated = 0
    for g, queries in workload:
        for x, y, z in queries:
            if d_separated(g, SeparationQuery(x, y, z)):
                separated += 1
    elapsed = time.perf_counter() - start
    rate = total / elapsed
    print(
        f"impl={_core.IMPL_NAME:8s}  queries={total}  separated={separated}  "
        f"time={elapsed:.2f}s  rate={rate:,.0f}/s"
    )
    return separated


def main():
    separated = run_once()
    if os.environ.get("CAUSEWAY_PURE_PYTHON") != "1":
        env = dict(os.environ, CAUSEWAY_PURE_PYTHON="1")
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__)], env=env,
            capture_output=True, text=True, check=True,
        )
        sys.stdout.write(proc.stdout)
        # both implementations must agree on every query
        fallback_sep = int(proc.stdout.split("separated=")[1].split()[0])
        assert fallback_sep == separated, "implementations disagree"
        print("agreement: identical verdicts on the full workload")


if __name__ == "__main__":
    main()
