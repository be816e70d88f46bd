"""Barrier catalogs, conflicts, cover sets, and free-edge fills.

A *barrier* of a graph G is a vertex set S with odd(G-S) = |S|; the empty
set counts.  Two barriers conflict when they intersect or one spans
several components of the host minus the other.  A *cover set* is a
partition of the vertex set into pairwise non-conflicting barriers;
filling each part with clique edges yields an elementary supergraph with
the same number of perfect matchings, and maximal cover sets correspond
exactly to the edge-maximal such supergraphs.

Catalogs are maintained incrementally along ear augmentations: each child
barrier restricts to a parent barrier, so the parent catalog plus local
case analysis on the new ear regenerates the child catalog without a
subset scan.  The same update is applied through almost-1-extendable
intermediate graphs (the pseudo-barrier list).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from exmatch import _purecore, kernels
from exmatch.graph import Graph, GraphError, excess, iter_bits
from exmatch.ears import EarSpec

CATALOG_CAP = 1 << 20


class CatalogOverflow(RuntimeError):
    """Barrier catalog grew past the configured cap; abort this branch."""


def is_barrier(g: Graph, s: int) -> bool:
    return kernels.odd_component_count(g.adj, s) == s.bit_count()


@dataclass(frozen=True)
class BarrierCatalog:
    """All barriers of a host graph plus their pairwise conflicts.

    ``conflict[i]`` is a bitset over catalog indices.  The empty barrier
    is always stored (it seeds extensions onto new ears) and conflicts
    with nothing.
    """

    masks: tuple[int, ...]
    conflict: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.masks)

    def conflicts(self, i: int, j: int) -> bool:
        return bool(self.conflict[i] >> j & 1)

    def maximal_barriers(self) -> list[int]:
        out = []
        for i, b in enumerate(self.masks):
            if b and not any(b != o and b & o == b for o in self.masks):
                out.append(b)
        return out

    def dump(self) -> str:
        lines = [f"{b:x}" for b in self.masks]
        lines.append("--")
        lines.extend(f"{c:x}" for c in self.conflict)
        return "\n".join(lines)


def _conflicts_pairwise(g: Graph, masks: list[int]) -> tuple[int, ...]:
    """Conflict bitsets straight from the definition."""
    comps = [kernels.component_masks(g.adj, b) for b in masks]
    k = len(masks)
    conflict = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if _conflict_def(masks[i], masks[j], comps[i], comps[j]):
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
    return tuple(conflict)


def _conflict_def(b1, b2, comps1, comps2) -> bool:
    if b1 & b2:
        return True
    if sum(1 for c in comps2 if c & b1) > 1:
        return True
    return sum(1 for c in comps1 if c & b2) > 1


def barrier_catalog_bruteforce(g: Graph) -> BarrierCatalog:
    """Subset scan over all 2^n candidate sets; oracle path, n <= 16ish."""
    masks = [s for s in range(1 << g.n) if is_barrier(g, s)]
    return BarrierCatalog(tuple(masks), _conflicts_pairwise(g, masks))


def cycle_catalog(n: int) -> BarrierCatalog:
    """Catalog of the even cycle 0-1-...-(n-1)-0: the empty set plus
    every nonempty subset of either parity class."""
    if n < 4 or n & 1:
        raise GraphError("need an even cycle of length at least 4")
    g = Graph.cycle(n)
    sides = (sum(1 << v for v in range(0, n, 2)), sum(1 << v for v in range(1, n, 2)))
    masks = [0]
    for side in sides:
        sub = side
        while sub:
            masks.append(sub)
            sub = (sub - 1) & side
    masks.sort()
    return BarrierCatalog(tuple(masks), _conflicts_pairwise(g, masks))


def catalog_update(
    parent_catalog: BarrierCatalog, parent: Graph, spec: EarSpec, child: Graph
) -> BarrierCatalog:
    """Child catalog after attaching one ear, by case analysis on each
    parent barrier (see module docstring).  Conflicts combine inherited
    parent conflicts, intersection, and the four-point interleaving
    pattern along the new ear.
    """
    n, r, u, v = parent.n, spec.order, spec.u, spec.v
    if child.n != n + r:
        raise GraphError("child does not extend parent by the given ear")
    # ear positions: u at 0, internal vertex n+q-1 at q, v at r+1
    entries: list[tuple[int, int, int]] = []  # (mask, parent index, position mask)
    for i, b in enumerate(parent_catalog.masks):
        u_in = b >> u & 1
        v_in = b >> v & 1
        if u_in and v_in:
            # the detached ear path splits into segments; B ∪ S stays a
            # barrier exactly when |S| of the segments are odd
            base = 1 | 1 << (r + 1)
            for pmask in _detached_extensions(r):
                vmask = b
                for q in iter_bits(pmask):
                    vmask |= 1 << (n + q - 1)
                entries.append((vmask, i, base | pmask))
            continue
        if b == 0:
            entries.append((0, i, 0))
            for parity in (1, 0):
                positions = range(2 - parity, r + 1, 2)
                _extend_subsets(entries, 0, i, 0, positions, n)
            continue
        if not u_in and not v_in:
            comps = kernels.component_masks(parent.adj, b)
            cu = next(c for c in comps if c >> u & 1)
            if cu >> v & 1:
                entries.append((b, i, 0))
            # else: the ear joins two odd components; barrier dies
            continue
        # exactly one endpoint inside the barrier
        x_pos = 0 if u_in else r + 1
        base = 1 << x_pos
        entries.append((b, i, base))
        positions = range(2, r + 1, 2) if u_in else range(r - 1, 0, -2)
        _extend_subsets(entries, b, i, base, positions, n)
    if len(entries) > CATALOG_CAP:
        raise CatalogOverflow(f"{len(entries)} barriers exceed cap {CATALOG_CAP}")
    masks = tuple(e[0] for e in entries)
    parents = [e[1] for e in entries]
    positions = [e[2] for e in entries]
    try:
        conflict = kernels.conflict_matrix(masks, parents, positions, parent_catalog.conflict)
    except ValueError:
        # catalog too large for the compiled kernel
        conflict = _purecore.conflict_matrix(masks, parents, positions, parent_catalog.conflict)
    return BarrierCatalog(masks, conflict)


@lru_cache(maxsize=None)
def _detached_extensions(r: int) -> tuple[int, ...]:
    """Position masks S over 1..r such that cutting a path of r vertices
    at S leaves exactly |S| odd pieces (S = 0 is always valid)."""
    out = []
    for pick in range(1 << r):
        odd = size = 0
        run = 0
        for q in range(1, r + 1):
            if pick >> (q - 1) & 1:
                size += 1
                odd += run & 1
                run = 0
            else:
                run += 1
        odd += run & 1
        if odd == size:
            out.append(pick << 1)  # shift: position q lives at bit q
    return tuple(out)


def _extend_subsets(entries, base_mask, parent_idx, base_pos, positions, n):
    """All nonempty subsets of the given ear positions, appended to a barrier."""
    items = [(1 << (n + q - 1), 1 << q) for q in positions]
    total = 1 << len(items)
    for pick in range(1, total):
        vmask, pmask = base_mask, base_pos
        rest = pick
        while rest:
            bit = rest & -rest
            rest ^= bit
            vm, pm = items[bit.bit_length() - 1]
            vmask |= vm
            pmask |= pm
        entries.append((vmask, parent_idx, pmask))


def _interleaved(p1: int, p2: int) -> bool:
    """Do the two position sets alternate at least A-B-A-B along the ear?"""
    both = p1 | p2
    changes = -1
    last = 0
    while both:
        bit = both & -both
        both ^= bit
        cur = 1 if p1 & bit else 2
        if cur != last:
            changes += 1
            last = cur
    return changes >= 3


# ---------------------------------------------------------------------------
# cover sets and fills

def _inner_edges(g: Graph, mask: int) -> int:
    return sum((g.adj[w] & mask).bit_count() for w in iter_bits(mask)) // 2


def iter_cover_sets(g: Graph, catalog: BarrierCatalog, min_weight: int | None = None):
    """All cover sets, as tuples of catalog indices.

    ``min_weight`` prunes branches that cannot add at least that many
    free edges (weight of a part = fillable edge count inside it).
    """
    n = g.n
    masks = catalog.masks
    weight = [masks[i].bit_count() * (masks[i].bit_count() - 1) // 2 - _inner_edges(g, masks[i])
              for i in range(len(masks))]
    by_low: list[list[int]] = [[] for _ in range(n)]
    for i, b in enumerate(masks):
        if b:
            by_low[(b & -b).bit_length() - 1].append(i)
    full = (1 << n) - 1
    conflict = catalog.conflict

    def rec(covered: int, banned: int, chosen: tuple[int, ...], w: int):
        if covered == full:
            yield chosen
            return
        if min_weight is not None:
            m = n - covered.bit_count()
            if w + m * (m - 1) // 2 < min_weight:
                return
        v = ((~covered) & full & -((~covered) & full)).bit_length() - 1
        for i in by_low[v]:
            if masks[i] & covered or banned >> i & 1:
                continue
            yield from rec(covered | masks[i], banned | conflict[i], chosen + (i,), w + weight[i])

    yield from rec(0, 0, (), 0)


def enumerate_maximal_cover_sets(catalog: BarrierCatalog, g: Graph) -> list[list[int]]:
    """Cover sets maximal under the coarsening order, as lists of masks."""
    all_sets = [tuple(sorted(catalog.masks[i] for i in cs)) for cs in iter_cover_sets(g, catalog)]
    out = []
    for cs in all_sets:
        if not any(other != cs and _refines(cs, other) for other in all_sets):
            out.append(list(cs))
    return out


def _refines(fine, coarse) -> bool:
    return all(any(b & c == b for c in coarse) for b in fine)


def fill_cover_set(h: Graph, parts) -> Graph:
    """Add all missing clique edges inside each part of a cover set."""
    adj = list(h.adj)
    for mask in parts:
        for w in iter_bits(mask):
            adj[w] |= mask & ~(1 << w)
    return Graph(h.n, adj)


def max_excess_over_E(h: Graph, catalog: BarrierCatalog):
    """Maximum excess among edge-maximal elementary supergraphs of h,
    with the cover sets achieving it (as lists of masks).

    Bipartite hosts short-circuit: the two side-filling cover sets are the
    unique maximum fills, each adding C(n/2, 2) free edges.
    """
    base = excess(h)
    bip = h.bipartition()
    if bip is not None and h.e > 0:
        m = h.n // 2
        best = base + m * (m - 1) // 2
        covers = [
            [side] + [1 << w for w in iter_bits(((1 << h.n) - 1) & ~side)]
            for side in bip
        ]
        return best, covers
    weight_of = {}
    best_w = None
    best_sets: list[tuple[int, ...]] = []
    for cs in iter_cover_sets(h, catalog):
        w = 0
        for i in cs:
            if i not in weight_of:
                b = catalog.masks[i]
                k = b.bit_count()
                weight_of[i] = k * (k - 1) // 2 - _inner_edges(h, b)
            w += weight_of[i]
        if best_w is None or w > best_w:
            best_w, best_sets = w, [cs]
        elif w == best_w:
            best_sets.append(cs)
    if best_w is None:
        raise GraphError("no cover set exists; catalog is incomplete")
    return base + best_w, [[catalog.masks[i] for i in cs] for cs in best_sets]


def enumerate_fills(h: Graph, catalog: BarrierCatalog, min_excess: int):
    """Distinct filled supergraphs with excess at least min_excess.

    Only edge-maximal fills can achieve the maximum excess, so callers
    that later keep the best excess never see a fill and a proper
    superfill of it survive together.
    """
    need = min_excess - excess(h)
    seen = set()
    for cs in iter_cover_sets(h, catalog, min_weight=max(need, 0)):
        filled = fill_cover_set(h, [catalog.masks[i] for i in cs])
        if excess(filled) >= min_excess and filled not in seen:
            seen.add(filled)
            yield filled


def max_fill_excess(h: Graph, catalog: BarrierCatalog) -> int:
    """Maximum excess over the edge-maximal elementary supergraphs of h,
    without materialising the cover sets.  Branch and bound: the free
    edges still obtainable on m uncovered vertices are at most C(m, 2).
    """
    base = excess(h)
    bip = h.bipartition()
    if bip is not None and h.e > 0:
        m = h.n // 2
        return base + m * (m - 1) // 2
    try:
        best = kernels.max_fill_cover(h.adj, catalog.masks, catalog.conflict)
    except ValueError:
        # catalog too large for the compiled kernel
        best = _purecore.max_fill_cover(h.adj, catalog.masks, catalog.conflict)
    if best < 0:
        raise GraphError("no cover set exists; catalog is incomplete")
    return base + best
