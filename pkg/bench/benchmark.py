#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Runs each workload twice in subprocesses (so backend selection happens at
import time) and prints a small table.  Workloads: the hot kernels on a
fixed random batch, plus an end-to-end generate() at a small p.

Usage: python3 bench/benchmark.py [--p 7]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
from exmatch import kernels
from exmatch.graph import Graph

def rand_adj(rng, n, prob):
    adj = [0] * n
    for v in range(n):
        for u in range(v):
            if rng.random() < prob:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return tuple(adj)

p = int(sys.argv[1])
rng = random.Random(12345)
batch = [rand_adj(rng, rng.randint(6, 12), rng.uniform(0.3, 0.8)) for _ in range(300)]
out = {"backend": kernels.BACKEND}

t = time.perf_counter()
for _ in range(30):
    for adj in batch:
        kernels.count_matchings(adj, 0)
out["count_matchings"] = time.perf_counter() - t

t = time.perf_counter()
for _ in range(30):
    for adj in batch:
        kernels.one_extendable(adj, 0)
out["one_extendable"] = time.perf_counter() - t

t = time.perf_counter()
for _ in range(10):
    for adj in batch:
        kernels.canon_search(adj)
out["canon_search"] = time.perf_counter() - t

from exmatch.search import generate
t = time.perf_counter()
rec = generate(p, 1)
out["generate"] = time.perf_counter() - t
out["c_found"] = rec.c_found
print(json.dumps(out))
"""


def run(force_pure: bool, p: int) -> dict:
    env = dict(os.environ)
    if force_pure:
        env["EXMATCH_FORCE_PURE"] = "1"
    else:
        env.pop("EXMATCH_FORCE_PURE", None)
    res = subprocess.run([sys.executable, "-c", WORKER, str(p)],
                         capture_output=True, text=True, env=env, check=True)
    return json.loads(res.stdout)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=7,
                    help="matching count for the end-to-end generate() row")
    args = ap.parse_args()

    fast = run(False, args.p)
    pure = run(True, args.p)
    if fast["backend"] == "pure":
        print("warning: compiled extension unavailable; comparing pure vs pure",
              file=sys.stderr)
    assert fast["c_found"] == pure["c_found"], "backends disagree!"

    rows = ["count_matchings", "one_extendable", "canon_search", "generate"]
    w = max(len(r) for r in rows)
    print(f"{'workload':<{w}}  {fast['backend']:>10}  {'pure':>10}  speedup")
    for r in rows:
        ratio = pure[r] / fast[r] if fast[r] else float("inf")
        print(f"{r:<{w}}  {fast[r]:>9.3f}s  {pure[r]:>9.3f}s  {ratio:6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
