"""Ears: maximal paths whose internal vertices have degree two.

The endpoints of an ear are branch vertices (degree at least three); a
single edge between branch vertices is a *trivial* ear of order zero,
and the *order* of an ear counts its internal vertices.  A graph that is
itself a cycle counts as one big ear.  Every edge belongs to exactly one
ear, so the ears partition the edge set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from exmatch import kernels
from exmatch.graph import Graph, GraphError, iter_bits
from exmatch.matching import edge_profile, is_elementary, is_one_extendable


@dataclass(frozen=True)
class EarSpec:
    """An augmentation request: attach an ear of the given order between
    two existing vertices."""

    u: int
    v: int
    order: int


class Ear(NamedTuple):
    u: int
    v: int
    internals: tuple[int, ...] = ()  # in path order, u-side first
    is_cycle: bool = False

    @property
    def order(self) -> int:
        return len(self.internals)

    def vertices(self) -> tuple[int, ...]:
        if self.is_cycle:
            return self.internals
        return (self.u, *self.internals, self.v)

    def edges(self) -> list[tuple[int, int]]:
        path = self.vertices()
        out = [tuple(sorted((path[i], path[i + 1]))) for i in range(len(path) - 1)]
        if self.is_cycle:
            out.append(tuple(sorted((path[-1], path[0]))))
        return out

    def internal_mask(self) -> int:
        mask = 0
        for w in self.internals:
            mask |= 1 << w
        return mask


def list_ears(g: Graph) -> tuple[Ear, ...]:
    return _ears_cached(g.n, g.adj)


@lru_cache(maxsize=1 << 15)
def _ears_cached(n: int, adj: tuple[int, ...]) -> tuple[Ear, ...]:
    walk = kernels.ear_walk(adj)
    if walk is None:
        raise GraphError("degree-2 graph with several components has no ear structure")
    return tuple(Ear(u, v, internals, cyc) for u, v, internals, cyc in walk)


def augment(g: Graph, spec: EarSpec) -> Graph:
    """Attach a new ear per the spec.  Internal vertices get the fresh
    labels n, n+1, ..., n+order-1 walking from u to v."""
    u, v, order = spec.u, spec.v, spec.order
    if u == v:
        raise GraphError("ear endpoints must differ")
    if order == 0:
        if g.has_edge(u, v):
            raise GraphError(f"edge ({u},{v}) already present")
        adj0 = list(g.adj)
        adj0[u] |= 1 << v
        adj0[v] |= 1 << u
        return Graph._make(g.n, tuple(adj0), g.e + 1)
    n = g.n
    path = [u] + list(range(n, n + order)) + [v]
    adj = list(g.adj) + [0] * order
    for i in range(len(path) - 1):
        a, b = path[i], path[i + 1]
        if adj[a] >> b & 1:
            raise GraphError("ear path reuses an existing edge")
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return Graph._make(n + order, tuple(adj), g.e + order + 1)


def delete_ear(g: Graph, ear: Ear) -> Graph:
    """Remove an ear (its edges and internal vertices), compacting labels."""
    if ear.is_cycle:
        return Graph(0, [])
    if ear.order == 0:
        adj = list(g.adj)
        adj[ear.u] &= ~(1 << ear.v)
        adj[ear.v] &= ~(1 << ear.u)
        return Graph(g.n, adj)
    return g.delete_vertices(ear.internal_mask())


def delete_two_ears(g: Graph, e1: Ear, e2: Ear) -> Graph:
    """Remove two vertex-disjoint ears with a single label compaction."""
    verts1, verts2 = set(e1.vertices()), set(e2.vertices())
    if verts1 & verts2:
        raise GraphError("ears are not vertex-disjoint")
    adj = list(g.adj)
    for ear in (e1, e2):
        if ear.order == 0:
            adj[ear.u] &= ~(1 << ear.v)
            adj[ear.v] &= ~(1 << ear.u)
    return Graph(g.n, adj).delete_vertices(e1.internal_mask() | e2.internal_mask())


def free_ear(g: Graph) -> Ear | None:
    """The single ear carrying every free edge, if there is one and its
    removal leaves a 1-extendable graph."""
    free = edge_profile(g).free
    if not free:
        return None
    for ear in list_ears(g):
        if ear.is_cycle:
            return None
        if free <= set(ear.edges()):
            if ear_deletion_one_extendable(g, ear):
                return ear
            return None
    return None


def ear_deletion_one_extendable(g: Graph, ear: Ear) -> bool:
    # in-place check that G minus this ear is 1-extendable, no compaction
    if ear.is_cycle:
        return False
    if ear.internals:
        return kernels.deletion_one_extendable(g.adj, ear.internal_mask())
    return kernels.deletion_one_extendable(g.adj, 0, ear.u, ear.v)


def two_ear_deletion_one_extendable(g: Graph, e1: Ear, e2: Ear) -> bool:
    adj = g.adj
    for ear in (e1, e2):
        if ear.order == 0:
            adj = list(adj)
            adj[ear.u] &= ~(1 << ear.v)
            adj[ear.v] &= ~(1 << ear.u)
    removed = e1.internal_mask() | e2.internal_mask()
    if g.n - removed.bit_count() < 2:
        return False
    return kernels.is_connected(adj, removed) and kernels.one_extendable(adj, removed)


def is_almost_one_extendable(g: Graph) -> bool:
    """Elementary, not 1-extendable, with all free edges on one removable ear."""
    if not is_elementary(g):
        return False
    if not edge_profile(g).free:
        return False
    return free_ear(g) is not None
