"""Canonical labeling, automorphism groups, and canonical ear deletion.

The canonical form of a graph is the relabeling that minimises the
serialized upper-triangle adjacency bits (same bit order as graph6), found
by individualization--refinement backtracking.  The automorphism group is
computed exactly with a stabilizer chain, so vertex and pair orbits are
true orbits, not refinements of them.

Canonical deletion picks, for every non-cycle graph reached by the
generator, a single ear whose removal undoes the last augmentation step.
Reversing the choice rules gives McKay-style isomorph-free generation:
an augmented graph is accepted only when the ear it would canonically
delete matches the ear that was just attached, up to an automorphism.
"""

from __future__ import annotations

from functools import lru_cache

from exmatch import kernels
from exmatch.graph import Graph, GraphError
from exmatch.matching import is_one_extendable
from exmatch.ears import (
    Ear,
    delete_ear,
    ear_deletion_one_extendable,
    free_ear,
    is_almost_one_extendable,
    list_ears,
    two_ear_deletion_one_extendable,
)


# ---------------------------------------------------------------------------
# partition refinement

def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    Deterministic and relabeling-equivariant: cells split into groups
    ordered by neighbor count, and every new group is queued as a splitter.
    """
    alpha = [_mask(c) for c in cells]
    while alpha:
        w = alpha.pop()
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                for k in sorted(groups):
                    out.append(groups[k])
                    alpha.append(_mask(groups[k]))
        cells = out
    return cells


def _mask(cell: list[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _individualize(cells: list[list[int]], v: int) -> list[list[int]]:
    out = []
    for cell in cells:
        if v in cell and len(cell) > 1:
            out.append([v])
            out.append([u for u in cell if u != v])
        else:
            out.append(cell)
    return out


# ---------------------------------------------------------------------------
# automorphism group (stabilizer chain)

def _find_automorphism(adj, n, src_pref, dst_pref):
    """Any automorphism sending src_pref[i] -> dst_pref[i], or None."""
    p = _refine(adj, _prefix_cells(n, src_pref))
    q = _refine(adj, _prefix_cells(n, dst_pref))
    return _match(adj, n, p, q)


def _prefix_cells(n: int, prefix) -> list[list[int]]:
    rest = [v for v in range(n) if v not in prefix]
    cells = [[v] for v in prefix]
    if rest:
        cells.append(rest)
    return cells


def _match(adj, n, p, q):
    if [len(c) for c in p] != [len(c) for c in q]:
        return None
    idx = next((i for i, c in enumerate(p) if len(c) > 1), None)
    if idx is None:
        perm = [0] * n
        for cp, cq in zip(p, q):
            perm[cp[0]] = cq[0]
        for v in range(n):
            img = 0
            for u in range(n):
                if adj[v] >> u & 1:
                    img |= 1 << perm[u]
            if img != adj[perm[v]]:
                return None
        return tuple(perm)
    x = p[idx][0]
    p2 = _refine(adj, _individualize(p, x))
    for y in q[idx]:
        res = _match(adj, n, p2, _refine(adj, _individualize(q, y)))
        if res is not None:
            return res
    return None


def _stabilizer_chain(adj: tuple[int, ...], n: int):
    """Generators and exact order of the automorphism group."""
    gens: list[tuple[int, ...]] = []
    order = 1
    for b in range(n):
        prefix = list(range(b))
        cells = _refine(adj, _prefix_cells(n, prefix))
        cell_b = next(c for c in cells if b in c)
        stage_gens = [g for g in gens if all(g[i] == i for i in prefix)]
        orbit = _closure({b}, stage_gens)
        for t in cell_b:
            if t <= b or t in orbit:
                continue
            pi = _find_automorphism(adj, n, prefix + [b], prefix + [t])
            if pi is not None:
                gens.append(pi)
                stage_gens.append(pi)
                orbit = _closure(orbit, stage_gens)
        order *= len(orbit)
    return gens, order


def _closure(seed: set[int], gens) -> set[int]:
    orbit = set(seed)
    frontier = list(seed)
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = g[v]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


# ---------------------------------------------------------------------------
# canonical form

class CanonicalLabeling:
    """Canonical relabeling of a graph together with its automorphism
    group (every tying leaf of the relabeling search is one
    automorphism, so the group comes out of the same search).  Orbit
    structures are derived lazily."""

    __slots__ = ("perm", "generators", "_source", "_graph", "_n", "_vorb", "_porb")

    def __init__(self, source: Graph, perm: tuple[int, ...], auts, n: int):
        self.perm = perm        # original label -> canonical label
        self.generators = auts  # the full group, identity included
        self._source = source
        self._graph = None
        self._n = n
        self._vorb = None
        self._porb = None

    @property
    def graph(self) -> Graph:
        """The canonical representative (relabeled on first use)."""
        if self._graph is None:
            self._graph = self._source.relabel(self.perm) if self._n else Graph(0, [])
        return self._graph

    @property
    def group_order(self) -> int:
        return len(self.generators)

    @property
    def vertex_orbit(self) -> tuple[int, ...]:
        if self._vorb is None:
            self._vorb = _vertex_orbits(self._n, self.generators)
        return self._vorb

    @property
    def pair_orbit(self) -> dict:
        if self._porb is None:
            self._porb = _pair_orbits(self._n, self.generators)
        return self._porb

    def pair_rep(self, u: int, v: int) -> tuple[int, int]:
        return self.pair_orbit[(u, v) if u < v else (v, u)]

    def same_pair_orbit(self, a: int, b: int, x: int, y: int) -> bool:
        p = (a, b) if a < b else (b, a)
        q = (x, y) if x < y else (y, x)
        if p == q:
            return True
        if self._porb is not None:
            return self._porb[p] == self._porb[q]
        seen = {p}
        frontier = [p]
        while frontier:
            u, v = frontier.pop()
            for g in self.generators:
                w = (g[u], g[v]) if g[u] < g[v] else (g[v], g[u])
                if w == q:
                    return True
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return False


def canonize(g: Graph) -> CanonicalLabeling:
    return _canonize_cached(g.n, g.adj)


@lru_cache(maxsize=1 << 16)
def _canonize_cached(n: int, adj: tuple[int, ...]) -> CanonicalLabeling:
    perm, auts = kernels.canon_search(adj)
    source = Graph._make(n, adj, sum(r.bit_count() for r in adj) // 2)
    return CanonicalLabeling(source, perm, auts, n)


def _vertex_orbits(n: int, gens) -> tuple[int, ...]:
    rep = list(range(n))

    def find(v):
        while rep[v] != v:
            rep[v] = rep[rep[v]]
            v = rep[v]
        return v

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                rep[max(a, b)] = min(a, b)
    return tuple(find(v) for v in range(n))


def _pair_orbits(n: int, gens) -> dict:
    pairs = [(u, v) for v in range(n) for u in range(v)]
    rep = {p: p for p in pairs}

    def find(p):
        while rep[p] != p:
            rep[p] = rep[rep[p]]
            p = rep[p]
        return p

    for g in gens:
        for u, v in pairs:
            img = (g[u], g[v]) if g[u] < g[v] else (g[v], g[u])
            a, b = find((u, v)), find(img)
            if a != b:
                rep[max(a, b)] = min(a, b)
    return {p: find(p) for p in pairs}


def canonical_form(g: Graph) -> Graph:
    return canonize(g).graph


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# canonical ear deletion

def ear_label(lab: CanonicalLabeling, ear: Ear) -> tuple[int, int, int]:
    """Ear sort key: order first, then the canonical labels of the endpoints."""
    a, b = lab.perm[ear.u], lab.perm[ear.v]
    return (ear.order, min(a, b), max(a, b))


RULE_FREE_EAR = 1
RULE_ONE_EXTENDABLE = 2
RULE_TWO_STEP = 3


def canonical_deletion(g: Graph, reject_order: int | None = None,
                       one_extendable_hint: bool = False):
    """The unique ear this graph deletes during reverse generation.

    Rule 1 applies when the graph has free edges: delete the one ear
    carrying them.  Otherwise the graph is 1-extendable.  Rule 2 deletes
    the label-minimal even-order ear whose removal stays 1-extendable;
    failing that, rule 3 deletes the label-minimal even-order ear whose
    removal is almost 1-extendable and can itself lose a disjoint
    even-order ear to reach a 1-extendable graph.
    """
    if not one_extendable_hint:
        fe = free_ear(g)
        if fe is not None:
            if reject_order is not None and fe.order != reject_order:
                return None
            return fe, RULE_FREE_EAR
    if reject_order is not None:
        # targeted mode: the caller only needs the deletion if it has
        # this exact order, so a single valid witness at any other order
        # sinks the whole query; the kernel runs the scan in one pass
        try:
            cands = kernels.rule2_scan(g.adj, reject_order)
        except ValueError:
            raise GraphError("a bare cycle has no deletable ear") from None
        if cands is None:
            return None
        if cands:
            lab = canonize(g)
            valid = [Ear(u, v, internals) for u, v, internals in cands]
            return min(valid, key=lambda e: ear_label(lab, e)), RULE_ONE_EXTENDABLE
        return _two_step_deletion(g, reject_order)
    ears = list_ears(g)
    if len(ears) == 1 and ears[0].is_cycle:
        raise GraphError("a bare cycle has no deletable ear")
    even = sorted((e for e in ears if e.order % 2 == 0), key=lambda e: e.order)
    # gamma compares order first, so work through one order block at a
    # time and only canonize when a block contains a deletion
    for block in _order_blocks(even):
        valid = [e for e in block if ear_deletion_one_extendable(g, e)]
        if valid:
            lab = canonize(g)
            return min(valid, key=lambda e: ear_label(lab, e)), RULE_ONE_EXTENDABLE
    for block in _order_blocks(even):
        valid = [e for e in block if _two_step_valid(g, e, even)]
        if valid:
            lab = canonize(g)
            return min(valid, key=lambda e: ear_label(lab, e)), RULE_TWO_STEP
    raise GraphError("no canonical deletion found; graph is not reachable by ear growth")


def _two_step_deletion(g: Graph, reject_order: int):
    even = sorted((e for e in list_ears(g) if e.order % 2 == 0), key=lambda e: e.order)
    for block in _order_blocks(even):
        if block[0].order != reject_order:
            if any(_two_step_valid(g, e, even) for e in block):
                return None
            continue
        valid = [e for e in block if _two_step_valid(g, e, even)]
        if valid:
            lab = canonize(g)
            return min(valid, key=lambda e: ear_label(lab, e)), RULE_TWO_STEP
    raise GraphError("no canonical deletion found; graph is not reachable by ear growth")


def _two_step_valid(g: Graph, ear: Ear, even: list[Ear]) -> bool:
    rest = delete_ear(g, ear)
    if not is_almost_one_extendable(rest):
        return False
    used = set(ear.vertices())
    for other in even:
        if other is ear or used & set(other.vertices()):
            continue
        if two_ear_deletion_one_extendable(g, ear, other):
            return True
    return False


def _order_blocks(even: list[Ear]):
    block: list[Ear] = []
    for ear in even:
        if block and ear.order != block[0].order:
            yield block
            block = []
        block.append(ear)
    if block:
        yield block


def is_canonical_augmentation(parent: Graph, spec, child: Graph,
                              child_one_extendable: bool = False) -> bool:
    """Accept the child produced by attaching the ear described by
    ``spec`` to ``parent``, iff canonical deletion would undo exactly
    that ear up to an automorphism of the child.  Callers who already
    know the child is 1-extendable can say so and skip the free-edge
    scan."""
    if child_one_extendable:
        cands = kernels.rule2_scan(child.adj, spec.order)
        if cands is None:
            return False
        if cands:
            want = (spec.u, spec.v) if spec.u < spec.v else (spec.v, spec.u)
            if all((u, v) == want for u, v, _ in cands):
                # the only minimal deletions are the ear we just attached
                return True
            lab = canonize(child)
            perm = lab.perm
            u, v, _ = min(cands, key=lambda t: _pair_key(perm, t[0], t[1]))
            return lab.same_pair_orbit(u, v, spec.u, spec.v)
        hit = _two_step_deletion(child, spec.order)
    else:
        hit = canonical_deletion(child, reject_order=spec.order)
    if hit is None:
        return False
    ear, _ = hit
    return canonize(child).same_pair_orbit(ear.u, ear.v, spec.u, spec.v)


def _pair_key(perm, u: int, v: int) -> tuple[int, int]:
    a, b = perm[u], perm[v]
    return (a, b) if a < b else (b, a)
