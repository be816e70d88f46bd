"""Perfect-matching counts and the extendable/free edge classification.

An edge is *extendable* when some perfect matching uses it, which is the
same as saying the graph minus its two endpoints still has a perfect
matching.  Edges in no perfect matching are *free*.  A graph is
*elementary* when its extendable edges form a connected spanning
subgraph, and *1-extendable* when it is connected and every edge is
extendable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from exmatch import kernels
from exmatch.graph import Graph, iter_bits


def count_perfect_matchings(g: Graph, cap: int = 0) -> int:
    """Number of perfect matchings; saturates at ``cap`` when cap > 0."""
    if g.n & 1:
        return 0
    return _count_cached(g.n, g.adj, cap)


@lru_cache(maxsize=1 << 18)
def _count_cached(n: int, adj: tuple[int, ...], cap: int) -> int:
    return kernels.count_matchings(adj, 0, cap)


def is_matchable(g: Graph, excluded: int = 0) -> bool:
    """Does G minus the vertices in ``excluded`` have a perfect matching?"""
    if (g.n - (excluded & ((1 << g.n) - 1)).bit_count()) & 1:
        return False
    return kernels.count_matchings(g.adj, excluded, 1) > 0


@dataclass(frozen=True)
class MatchingProfile:
    """Edge classification of a matchable graph."""

    matchable: bool
    extendable: frozenset[tuple[int, int]]
    free: frozenset[tuple[int, int]]


def edge_profile(g: Graph) -> MatchingProfile:
    return _profile_cached(g.n, g.adj)


@lru_cache(maxsize=1 << 16)
def _profile_cached(n: int, adj: tuple[int, ...]) -> MatchingProfile:
    if n & 1:
        return MatchingProfile(False, frozenset(), frozenset())
    matchable, rows = kernels.extendable_rows(adj)
    if not matchable:
        return MatchingProfile(False, frozenset(), frozenset())
    extendable = []
    free = []
    for v in range(n):
        ext_row = rows[v]
        for u in iter_bits(adj[v] & ((1 << v) - 1)):
            (extendable if ext_row >> u & 1 else free).append((u, v))
    return MatchingProfile(True, frozenset(extendable), frozenset(free))


def classify_edges(g: Graph) -> tuple[frozenset[tuple[int, int]], frozenset[tuple[int, int]]]:
    prof = edge_profile(g)
    return prof.extendable, prof.free


def is_one_extendable(g: Graph) -> bool:
    if g.n < 2 or g.n & 1 or g.e == 0 or not g.is_connected():
        return False
    return kernels.one_extendable(g.adj)


def deletion_is_one_extendable(g: Graph, removed: int) -> bool:
    """Is G minus the vertices in ``removed`` 1-extendable?  Avoids
    materialising the deleted subgraph."""
    return kernels.deletion_one_extendable(g.adj, removed)


def is_elementary(g: Graph) -> bool:
    """Extendable edges form a connected spanning subgraph."""
    if g.n < 2 or g.n & 1:
        return False
    prof = edge_profile(g)
    if not prof.matchable:
        return False
    adj = [0] * g.n
    for u, v in prof.extendable:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    if any(row == 0 for row in adj):
        return False
    return kernels.is_connected(adj)


def extendable_subgraph(g: Graph) -> Graph:
    prof = edge_profile(g)
    return Graph.from_edges(g.n, sorted(prof.extendable))


def free_edge_mask(g: Graph) -> int:
    """Union of the endpoints of all free edges, as a vertex mask."""
    mask = 0
    for u, v in edge_profile(g).free:
        mask |= 1 << u | 1 << v
    return mask


def clear_caches() -> None:
    _count_cached.cache_clear()
    _profile_cached.cache_clear()
