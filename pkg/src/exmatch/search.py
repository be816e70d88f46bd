"""Exhaustive, isomorph-free generation of elementary graphs with a fixed
perfect-matching count and excess above a threshold.

The search grows 1-extendable graphs from even cycles by ear
augmentations, accepting a child only when its canonical deletion undoes
the ear just added.  Each node keeps an incrementally maintained barrier
catalog and an upper bound on the excess reachable in its subtree; the
bound both prunes hopeless branches and caps how many more vertices may
ever be added.  Whenever a node reaches the target matching count, every
cover-set fill with sufficient excess is emitted (deduplicated by
canonical form).

Runs can be partitioned into independent, replayable jobs by fixing the
first few augmentation choices, and each job checkpoints its progress
over top-level branches.
"""

from __future__ import annotations

import hashlib
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional

from exmatch.barriers import (
    BarrierCatalog,
    CatalogOverflow,
    catalog_update,
    cycle_catalog,
    enumerate_fills,
    max_excess_over_E,
    max_fill_excess,
)
from exmatch import kernels
from exmatch.canonical import canonical_form, canonize, is_canonical_augmentation
from exmatch.ears import EarSpec, augment, is_almost_one_extendable
from exmatch.graph import Graph, excess, graph6_encode
from exmatch.matching import count_perfect_matchings, is_one_extendable

Sink = Callable[[Graph], None]


def size_bound(p: int, c: int) -> int:
    """Largest even vertex count an elementary graph with p perfect
    matchings and excess >= c can have."""
    if p < 2:
        raise ValueError("size bound requires p >= 2")
    rad = 16 * p - 8 * c - 23
    if rad < 0:
        raise ValueError(f"excess {c} is impossible for p={p} (negative radicand)")
    n = 3 + math.isqrt(rad)
    return n if n % 2 == 0 else n - 1


def prune_budget(c_best_here: int, phi: int, p: int, c_target: int, n: int) -> Optional[int]:
    """Largest useful vertex budget for the subtree, or None to prune.

    No extension can gain more than 2 excess per matching-count step, and
    every added vertex costs (n-2)/4: prune when even the optimistic
    total falls short of the target excess.
    """
    slack = c_best_here + 2 * (p - phi) - c_target
    if slack < 0:
        return None
    if phi == p:
        return n  # no further augmentation can keep the matching count
    cap = size_bound(p, c_target)
    if n <= 2:
        return cap
    budget = min(n + 4 * slack // (n - 2), cap)
    return budget - (budget & 1)


@dataclass(frozen=True)
class SearchNode:
    h: Graph
    phi: int
    catalog: BarrierCatalog
    budget: int
    depth: int
    almost: bool


@dataclass
class ExtremalRecord:
    p: int
    c_found: Optional[int]
    n_min: Optional[int]
    N_p: int
    graphs: list[str]  # canonical graph6, at excess == c_found, sorted

    @property
    def count(self) -> int:
        return len(self.graphs)


def _emit_fills(node: SearchNode, c: int, sink: Sink) -> None:
    seen = set()
    for filled in enumerate_fills(node.h, node.catalog, c):
        cf = canonical_form(filled)
        if cf not in seen:
            seen.add(cf)
            sink(cf)


def _children(node: SearchNode, p: int, c: int, prune: bool):
    """Accepted augmentations of a node, as (child SearchNode, EarSpec).

    Iteration order is deterministic: pair-orbit representatives in
    lexicographic order, then even ear orders ascending.
    """
    h = node.h
    lab = canonize(h)
    reps = kernels.pair_orbit_reps(h.n, lab.generators)
    for x, y in reps:
        # an even ear between x and y adds exactly phi(h - x - y) new
        # perfect matchings, whatever its order
        m_xy = kernels.count_matchings(h.adj, 1 << x | 1 << y, p + 1)
        phi = node.phi + m_xy
        if phi > p:
            continue
        if m_xy == 0:
            # every edge of the new ear would be free: the only elementary
            # outcome is a free chord on a 1-extendable parent
            if node.almost:
                continue
            orders = (0,) if not h.has_edge(x, y) else ()
        else:
            start = 2 if h.has_edge(x, y) else 0
            orders = range(start, node.budget - h.n + 1, 2)
        for r in orders:
            spec = EarSpec(x, y, r)
            child = augment(h, spec)
            if m_xy == 0:
                # free chord: the child's unique free edge is the chord we
                # just added, so canonical deletion must pick it back off
                # (rule 1) and the acceptance test is a tautology
                child_1ext = False
            else:
                if node.almost:
                    # the parent's free edges must have become extendable
                    child_1ext = kernels.one_extendable(child.adj)
                    if not child_1ext:
                        continue
                else:
                    child_1ext = True  # 1-extendable parent, extendable ear
                if not is_canonical_augmentation(h, spec, child, child_one_extendable=child_1ext):
                    continue
            try:
                catalog = catalog_update(node.catalog, h, spec, child)
            except CatalogOverflow as exc:
                print(f"warning: dropping branch at n={child.n}: {exc}", file=sys.stderr)
                continue
            if phi == p:
                yield SearchNode(child, phi, catalog, child.n, node.depth + 1, False), spec
                continue
            if prune:
                budget = prune_budget(max_fill_excess(child, catalog), phi, p, c, child.n)
                if budget is None:
                    continue
            else:
                budget = node.budget
            yield SearchNode(child, phi, catalog, budget, node.depth + 1, not child_1ext), spec


def search(node: SearchNode, p: int, c: int, sink: Sink, prune: bool = True) -> None:
    if node.phi == p:
        if not node.almost:
            _emit_fills(node, c, sink)
        return
    for child, _spec in _children(node, p, c, prune):
        search(child, p, c, sink, prune)


def _root(m: int, budget: int) -> SearchNode:
    return SearchNode(Graph.cycle(m), 2, cycle_catalog(m), budget, 0, False)


def generate(p: int, c: int, sink: Optional[Sink] = None, prune: bool = True) -> ExtremalRecord:
    """Run the search from every even-cycle root and aggregate results."""
    if p == 1:
        k2 = Graph.complete(2)
        if sink:
            sink(k2)
        return ExtremalRecord(1, 0, 2, 2, [graph6_encode(k2).decode()])
    cap = size_bound(p, c)
    emitted: dict[str, tuple[int, int]] = {}

    def collect(g: Graph) -> None:
        key = graph6_encode(g).decode()
        if key not in emitted:
            emitted[key] = (excess(g), g.n)
            if sink:
                sink(g)

    for m in range(4, cap + 1, 2):
        search(_root(m, cap), p, c, collect, prune)
    return _aggregate(p, cap, emitted)


def _aggregate(p: int, cap: int, emitted: dict[str, tuple[int, int]]) -> ExtremalRecord:
    if not emitted:
        return ExtremalRecord(p, None, None, cap, [])
    c_found = max(e for e, _n in emitted.values())
    winners = sorted(k for k, (e, _n) in emitted.items() if e == c_found)
    n_min = min(n for e, n in emitted.values() if e == c_found)
    return ExtremalRecord(p, c_found, n_min, cap, winners)


# ---------------------------------------------------------------------------
# job partitioning

@dataclass(frozen=True)
class JobDescriptor:
    """A replayable slice of the search forest: a root cycle size plus the
    first augmentation choices.  root None means the whole run."""

    root: Optional[int]
    prefix: tuple[tuple[int, int, int], ...]  # (u, v, order) per step
    depth: int

    def job_id(self) -> str:
        blob = json.dumps([self.root, [list(s) for s in self.prefix], self.depth])
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {"root": self.root, "prefix": [list(s) for s in self.prefix], "depth": self.depth}

    @classmethod
    def from_json(cls, d: dict) -> "JobDescriptor":
        return cls(d["root"], tuple(tuple(s) for s in d["prefix"]), d["depth"])


def split_jobs(p: int, c: int, depth: int) -> list[JobDescriptor]:
    if depth == 0 or p == 1:
        return [JobDescriptor(None, (), 0)]
    cap = size_bound(p, c)
    jobs: list[JobDescriptor] = []

    def walk(node: SearchNode, root: int, prefix: tuple) -> None:
        if node.phi == p or node.depth == depth:
            jobs.append(JobDescriptor(root, prefix, depth))
            return
        for child, spec in _children(node, p, c, prune=True):
            walk(child, root, prefix + ((spec.u, spec.v, spec.order),))

    for m in range(4, cap + 1, 2):
        walk(_root(m, cap), m, ())
    return jobs


class CheckpointError(RuntimeError):
    """Checkpoint file is corrupt or belongs to a different job."""


def _replay(jd: JobDescriptor, p: int, c: int) -> SearchNode:
    node = _root(jd.root, size_bound(p, c))
    for u, v, r in jd.prefix:
        spec = EarSpec(u, v, r)
        child = augment(node.h, spec)
        child_1ext = is_one_extendable(child)
        if not child_1ext and not is_almost_one_extendable(child):
            raise CheckpointError("job prefix does not replay to a valid node")
        phi = count_perfect_matchings(child, cap=p + 1)
        if phi > p:
            raise CheckpointError("job prefix overshoots the matching count")
        catalog = catalog_update(node.catalog, node.h, spec, child)
        if phi == p:
            budget = child.n
        else:
            budget = prune_budget(max_fill_excess(child, catalog), phi, p, c, child.n)
            if budget is None:
                raise CheckpointError("job prefix replays into a pruned branch")
        node = SearchNode(child, phi, catalog, budget, node.depth + 1, not child_1ext)
    return node


def _checkpoint_payload(jd: JobDescriptor, p: int, c: int, completed: int, emitted: list[str]) -> dict:
    body = {
        "version": 1,
        "job": jd.to_json(),
        "p": p,
        "c": c,
        "completed": completed,
        "emitted": emitted,
    }
    body["checksum"] = hashlib.sha256(
        json.dumps(body, sort_keys=True).encode()
    ).hexdigest()
    return body


def _load_checkpoint(path, jd: JobDescriptor, p: int, c: int) -> tuple[int, list[str]]:
    try:
        body = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}")
    claimed = body.pop("checksum", None)
    actual = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
    if claimed != actual:
        raise CheckpointError(f"checksum mismatch in {path}")
    if body.get("version") != 1:
        raise CheckpointError(f"unsupported checkpoint version in {path}")
    if body["job"] != jd.to_json() or body["p"] != p or body["c"] != c:
        raise CheckpointError(f"checkpoint {path} belongs to a different job")
    return body["completed"], body["emitted"]


def run_job(
    jd: JobDescriptor,
    p: int,
    c: int,
    checkpoint_dir=None,
    prune: bool = True,
) -> dict[str, tuple[int, int]]:
    """Execute one job; returns {canonical graph6: (excess, n)}.

    With a checkpoint directory, progress over the job's top-level
    branches is persisted and completed branches are skipped on re-run.
    """
    emitted: dict[str, tuple[int, int]] = {}

    def collect(g: Graph) -> None:
        key = graph6_encode(g).decode()
        if key not in emitted:
            emitted[key] = (excess(g), g.n)

    if jd.root is None:
        rec_cap = 2 if p == 1 else size_bound(p, c)
        if p == 1:
            collect(Graph.complete(2))
            return emitted
        for m in range(4, rec_cap + 1, 2):
            search(_root(m, rec_cap), p, c, collect, prune)
        return emitted

    node = _replay(jd, p, c)
    if node.phi == p:
        if not node.almost:
            _emit_fills(node, c, collect)
        return emitted

    ckpt_path = None
    done = 0
    if checkpoint_dir is not None:
        from pathlib import Path

        ckpt_path = Path(checkpoint_dir) / f"job-{jd.job_id()}.json"
        if ckpt_path.exists():
            done, old = _load_checkpoint(ckpt_path, jd, p, c)
            for key in old:
                emitted[key] = (excess_from_g6(key), len_from_g6(key))

    branches = list(_children(node, p, c, prune))
    for i, (child, _spec) in enumerate(branches):
        if i < done:
            continue
        search(child, p, c, collect, prune)
        if ckpt_path is not None:
            ckpt_path.write_text(
                json.dumps(_checkpoint_payload(jd, p, c, i + 1, sorted(emitted)))
            )
    return emitted


def excess_from_g6(key: str) -> int:
    from exmatch.graph import graph6_decode

    return excess(graph6_decode(key))


def len_from_g6(key: str) -> int:
    from exmatch.graph import graph6_decode

    return graph6_decode(key).n


def merge_job_results(p: int, c: int, parts) -> ExtremalRecord:
    cap = 2 if p == 1 else size_bound(p, c)
    merged: dict[str, tuple[int, int]] = {}
    for part in parts:
        merged.update(part)
    return _aggregate(p, cap, merged)


# ---------------------------------------------------------------------------
# results files

def write_results(path, record: ExtremalRecord, c_threshold: int, job_id: str = "all") -> None:
    header = {
        "p": record.p,
        "c_threshold": c_threshold,
        "c_found": record.c_found,
        "n_p": record.n_min,
        "N_p": record.N_p,
        "job_id": job_id,
        "counts": {"graphs": record.count},
    }
    with open(path, "w") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for g6 in record.graphs:
            fh.write(g6 + "\n")


def read_results(path) -> tuple[dict, list[str]]:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"empty results file {path}")
    return json.loads(lines[0]), lines[1:]
