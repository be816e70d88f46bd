"""Brute-force ground truth for differential tests.

Everything here recomputes results straight from the definitions, with its
own traversal and matching-enumeration code.  None of the fast paths in
``kernels`` / ``matching`` / ``barriers`` are called, so a bug there cannot
silently cancel out in a comparison.  The one exception is graph-isomorphism
dedup for n >= 7, where the permutation scan becomes hopeless and we fall
back on ``canonical.canonical_form`` (which is itself differentially tested
against the permutation scan on small orders).

Performance is explicitly a non-goal.  Caps are enforced up front so a typo
in a test cannot wedge the suite.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator

from exmatch import canonical
from exmatch.graph import Graph, GraphError

MAX_ENUM_N = 10       # all_graphs / brute_extremal
MAX_SUBSET_N = 12     # brute_barriers / brute_matchings
MAX_CATALOG = 10_000  # brute_cover_sets
_PERM_KEY_N = 6       # exhaustive-permutation dedup up to here


def _perm_min_key(g: Graph) -> tuple:
    """Smallest upper-triangle bit tuple over all relabelings."""
    n = g.n
    best = None
    for perm in itertools.permutations(range(n)):
        bits = tuple(
            g.adj[perm[i]] >> perm[j] & 1
            for i in range(n) for j in range(i + 1, n)
        )
        if best is None or bits < best:
            best = bits
    return (n, best)


def _iso_key(g: Graph):
    if g.n <= _PERM_KEY_N:
        return _perm_min_key(g)
    return canonical.canonical_form(g).adj


def all_graphs(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of simple graphs on n vertices.

    Grown vertex by vertex: every class on k vertices is extended by a new
    vertex with every possible neighborhood, then deduplicated.  Wasteful but
    independent of the generation machinery under test.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise GraphError(f"all_graphs supports 1..{MAX_ENUM_N} vertices, got {n}")
    yield from _graph_layer(n)


@functools.lru_cache(maxsize=None)
def _graph_layer(k: int) -> tuple[Graph, ...]:
    if k == 1:
        return (Graph(1, (0,)),)
    seen = set()
    out = []
    for g in _graph_layer(k - 1):
        for nb in range(1 << (k - 1)):
            adj = [row | ((nb >> v & 1) << (k - 1)) for v, row in enumerate(g.adj)]
            adj.append(nb)
            h = Graph._make(k, tuple(adj), g.e + nb.bit_count())
            key = _iso_key(h)
            if key not in seen:
                seen.add(key)
                out.append(h)
    return tuple(out)


def brute_matchings(g: Graph) -> int:
    """Perfect matching count by plain backtracking (no memoization)."""
    if g.n > MAX_SUBSET_N:
        raise GraphError(f"brute_matchings capped at n <= {MAX_SUBSET_N}")
    if g.n % 2:
        return 0

    def rec(free: int) -> int:
        if not free:
            return 1
        u = (free & -free).bit_length() - 1
        total = 0
        cand = g.adj[u] & free
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            total += rec(free & ~(1 << u) & ~(1 << v))
        return total

    return rec((1 << g.n) - 1)


def _components(g: Graph, avoid: int) -> list[int]:
    """Connected-component masks of g minus the vertices in `avoid`."""
    todo = ((1 << g.n) - 1) & ~avoid
    out = []
    while todo:
        comp = todo & -todo
        while True:
            grow = comp
            for v in range(g.n):
                if comp >> v & 1:
                    grow |= g.adj[v] & ~avoid
            if grow == comp:
                break
            comp = grow
        out.append(comp)
        todo &= ~comp
    return out


def brute_barriers(g: Graph) -> list[int]:
    """All vertex subsets S with odd(G - S) = |S|, by full subset scan."""
    if g.n > MAX_SUBSET_N:
        raise GraphError(f"brute_barriers capped at n <= {MAX_SUBSET_N}")
    out = []
    for s in range(1 << g.n):
        odd = sum(1 for c in _components(g, s) if c.bit_count() % 2)
        if odd == s.bit_count():
            out.append(s)
    return out


def _brute_conflict(g: Graph, b1: int, b2: int) -> bool:
    if b1 & b2:
        return True
    if sum(1 for c in _components(g, b2) if c & b1) > 1:
        return True
    return sum(1 for c in _components(g, b1) if c & b2) > 1


def brute_cover_sets(g: Graph, masks: list[int] | None = None) -> list[frozenset[int]]:
    """All ways to partition V(G) into pairwise non-conflicting barriers.

    `masks` defaults to every non-empty barrier of g; passing an explicit
    catalog lets tests compare against the incremental machinery directly.
    """
    if masks is None:
        masks = [b for b in brute_barriers(g) if b]
    if len(masks) > MAX_CATALOG:
        raise GraphError(f"brute_cover_sets capped at {MAX_CATALOG} barriers")
    masks = [b for b in masks if b]
    full = (1 << g.n) - 1
    out: list[frozenset[int]] = []

    def rec(covered: int, chosen: list[int]) -> None:
        if covered == full:
            out.append(frozenset(chosen))
            return
        low = (~covered & full) & -(~covered & full)
        for b in masks:
            if not b & low or b & covered:
                continue
            if any(_brute_conflict(g, b, c) for c in chosen):
                continue
            chosen.append(b)
            rec(covered | b, chosen)
            chosen.pop()

    rec(0, [])
    return out


def _brute_elementary(g: Graph) -> bool:
    """Edges lying in some perfect matching form a connected spanning
    subgraph.  Found by enumerating every perfect matching outright."""
    if g.n % 2 or g.n == 0 or g.e == 0:
        return False
    allowed = [0] * g.n

    def rec(free: int, picked: list[tuple[int, int]]) -> None:
        if not free:
            for a, b in picked:
                allowed[a] |= 1 << b
                allowed[b] |= 1 << a
            return
        a = (free & -free).bit_length() - 1
        cand = g.adj[a] & free
        while cand:
            b = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            picked.append((a, b))
            rec(free & ~(1 << a) & ~(1 << b), picked)
            picked.pop()

    rec((1 << g.n) - 1, [])
    if any(row == 0 for row in allowed):
        return False
    todo = 1
    while True:
        grow = todo
        for v in range(g.n):
            if todo >> v & 1:
                grow |= allowed[v]
        if grow == todo:
            break
        todo = grow
    return todo == (1 << g.n) - 1


def brute_extremal(p: int, n_cap: int) -> tuple[int, list[Graph]]:
    """Max excess over all elementary graphs with exactly p perfect
    matchings on at most n_cap vertices, plus every witness attaining it."""
    if not 1 <= p:
        raise GraphError("p must be positive")
    if n_cap > MAX_ENUM_N:
        raise GraphError(f"brute_extremal capped at n <= {MAX_ENUM_N}")
    best = None
    witnesses: list[Graph] = []
    for n in range(2, n_cap + 1, 2):
        for g in all_graphs(n):
            if not _brute_elementary(g):
                continue
            if brute_matchings(g) != p:
                continue
            excess = g.e - n * n // 4
            if best is None or excess > best:
                best = excess
                witnesses = [g]
            elif excess == best:
                witnesses.append(g)
    if best is None:
        raise GraphError(f"no elementary graph with {p} matchings up to n = {n_cap}")
    return best, witnesses
