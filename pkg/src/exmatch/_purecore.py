"""Pure-Python kernels for the bitset graph primitives.

All functions take an adjacency table ``adj`` (a sequence of ints, one
neighbor bitmask per vertex) and operate on vertex bitmasks.  The compiled
backend in ``_fastcore`` exposes the same signatures.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "pure"


def count_matchings(adj: Sequence[int], excluded: int = 0, cap: int = 0) -> int:
    """Count perfect matchings of the subgraph induced on V minus ``excluded``.

    With ``cap > 0`` the count saturates at ``cap``: the return value is
    ``min(true count, cap)``.
    """
    n = len(adj)
    rem0 = ((1 << n) - 1) & ~excluded
    if rem0.bit_count() & 1:
        return 0
    memo: dict[int, int] = {}

    def rec(rem: int) -> int:
        if rem == 0:
            return 1
        cached = memo.get(rem)
        if cached is not None:
            return cached
        vbit = rem & -rem
        v = vbit.bit_length() - 1
        total = 0
        nb = adj[v] & rem
        while nb:
            ubit = nb & -nb
            nb ^= ubit
            total += rec(rem & ~vbit & ~ubit)
            if cap and total >= cap:
                total = cap
                break
        memo[rem] = total
        return total

    return rec(rem0)


def component_masks(adj: Sequence[int], removed: int = 0) -> list[int]:
    """Connected components of the subgraph on V minus ``removed``.

    Returned as bitmasks, ordered by lowest contained vertex.
    """
    n = len(adj)
    rem = ((1 << n) - 1) & ~removed
    comps = []
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                nxt |= adj[bit.bit_length() - 1] & rem
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rem &= ~comp
    return comps


def odd_component_count(adj: Sequence[int], removed: int = 0) -> int:
    """Number of odd-order components of the subgraph on V minus ``removed``."""
    return sum(1 for c in component_masks(adj, removed) if c.bit_count() & 1)


def is_connected(adj: Sequence[int], removed: int = 0) -> bool:
    """True iff the subgraph on V minus ``removed`` has at most one component."""
    return len(component_masks(adj, removed)) <= 1


def canon_search(adj: Sequence[int]):
    """Canonical relabeling search with automorphism harvesting.

    Returns ``(perm, auts)``: ``perm`` maps original labels to canonical
    ones and minimises the upper-triangle adjacency bits (graph6 column
    order); ``auts`` is the full automorphism group as permutation
    tuples (every tying leaf of the search is one automorphism).

    Candidates are compared column by column -- column j holds vertex
    j's adjacency bits toward positions 0..j-1, earliest position most
    significant -- which matches comparing the whole serialized number.
    """
    n = len(adj)
    if n == 0:
        return (), ((),)

    best_cols: list[int] = []
    best_pos: list[int] = []
    ties: list[list[int]] = []

    def column(pos: list[int], j: int) -> int:
        col = adj[pos[j]]
        val = 0
        for i in range(j):
            val = val << 1 | (col >> pos[i] & 1)
        return val

    def rec(cells: list[list[int]], cand: list[int]) -> None:
        k = 0
        while k < len(cells) and len(cells[k]) == 1:
            k += 1
        pos = [c[0] for c in cells[:k]]
        del cand[k:]
        for j in range(len(cand), k):
            cand.append(column(pos, j))
        if best_cols:
            for j in range(k):
                if cand[j] != best_cols[j]:
                    if cand[j] > best_cols[j]:
                        return
                    break
        if k == len(cells):
            if not best_cols or cand < best_cols:
                best_cols[:] = cand
                best_pos[:] = pos
                ties[:] = [list(pos)]
            elif cand == best_cols:
                ties.append(list(pos))
            return
        for v in cells[k]:
            rec(_refine_cells(adj, _split_cell(cells, k, v)), list(cand))

    rec(_refine_cells(adj, [list(range(n))]), [])

    perm = [0] * n
    for i, v in enumerate(best_pos):
        perm[v] = i
    auts = []
    for pos in ties:
        g = [0] * n
        for i in range(n):
            g[best_pos[i]] = pos[i]
        auts.append(tuple(g))
    return tuple(perm), tuple(auts)


def _split_cell(cells: list[list[int]], k: int, v: int) -> list[list[int]]:
    out = [list(c) for c in cells]
    out[k] = [v]
    out.insert(k + 1, [u for u in cells[k] if u != v])
    return out


def _refine_cells(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbour count toward each
    splitter mask, groups ordered by count ascending."""

    def mask(cell):
        m = 0
        for v in cell:
            m |= 1 << v
        return m

    alpha = [mask(c) for c in cells]
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
                for key in sorted(groups):
                    out.append(groups[key])
                    alpha.append(mask(groups[key]))
        cells = out
    return cells


def _matchable_memo(adj: Sequence[int], rem: int, memo: dict) -> bool:
    """Shared-memo test for a perfect matching on the vertex set ``rem``."""
    if rem == 0:
        return True
    cached = memo.get(rem)
    if cached is not None:
        return cached
    vbit = rem & -rem
    nb = adj[vbit.bit_length() - 1] & rem
    ok = False
    while nb:
        ubit = nb & -nb
        nb ^= ubit
        if _matchable_memo(adj, rem & ~vbit & ~ubit, memo):
            ok = True
            break
    memo[rem] = ok
    return ok


def extendable_rows(adj: Sequence[int], removed: int = 0):
    """Classify edges by whether some perfect matching uses them.

    Returns ``(matchable, rows)`` for the subgraph on V minus
    ``removed``: ``rows[v]`` holds the neighbours u of v such that edge
    uv lies in at least one perfect matching.  One matching memo is
    shared across all the edge tests.
    """
    n = len(adj)
    rem0 = ((1 << n) - 1) & ~removed
    memo: dict = {}
    if rem0.bit_count() & 1 or not _matchable_memo(adj, rem0, memo):
        return False, [0] * n
    rows = [0] * n
    for v in range(n):
        if not rem0 >> v & 1:
            continue
        nb = adj[v] & rem0 & ((1 << v) - 1)
        while nb:
            ubit = nb & -nb
            nb ^= ubit
            if _matchable_memo(adj, rem0 & ~(1 << v) & ~ubit, memo):
                u = ubit.bit_length() - 1
                rows[v] |= ubit
                rows[u] |= 1 << v
    return True, rows


def one_extendable(adj: Sequence[int], removed: int = 0) -> bool:
    """True iff the subgraph on V minus ``removed`` is nonempty, has a
    perfect matching, and every one of its edges is in some perfect
    matching.  (Connectivity is the caller's concern.)"""
    n = len(adj)
    rem0 = ((1 << n) - 1) & ~removed
    if rem0 == 0 or rem0.bit_count() & 1:
        return False
    memo: dict = {}
    if not _matchable_memo(adj, rem0, memo):
        return False
    saw_edge = False
    for v in range(n):
        if not rem0 >> v & 1:
            continue
        nb = adj[v] & rem0 & ((1 << v) - 1)
        while nb:
            ubit = nb & -nb
            nb ^= ubit
            saw_edge = True
            if not _matchable_memo(adj, rem0 & ~(1 << v) & ~ubit, memo):
                return False
    return saw_edge


def ear_walk(adj: Sequence[int]):
    """Decompose edges into ears: maximal paths with degree-2 interiors.

    Returns a list of ``(u, v, internals, is_cycle)`` tuples with
    ``u <= v`` and internals in path order starting from u.  A 2-regular
    connected graph is the single ear ``(0, 0, cycle order, True)``;
    ``None`` is returned when the graph is 2-regular but disconnected.
    """
    n = len(adj)
    if n == 0:
        return []
    deg = [adj[v].bit_count() for v in range(n)]
    branch = [v for v in range(n) if deg[v] != 2]
    if not branch:
        path = [0]
        prev = -1
        while True:
            nb = adj[path[-1]]
            if prev >= 0:
                nb &= ~(1 << prev)
            nxt = (nb & -nb).bit_length() - 1
            if nxt == 0:
                break
            prev = path[-1]
            path.append(nxt)
        if len(path) != n:
            return None
        return [(0, 0, tuple(path), True)]
    ears = []
    seen = set()
    for u in branch:
        nb = adj[u]
        while nb:
            wbit = nb & -nb
            nb ^= wbit
            w = wbit.bit_length() - 1
            internals = []
            prev, cur = u, w
            while deg[cur] == 2:
                internals.append(cur)
                step = adj[cur] & ~(1 << prev)
                prev, cur = cur, (step & -step).bit_length() - 1
            v = cur
            imask = 0
            for x in internals:
                imask |= 1 << x
            key = (min(u, v), max(u, v), imask)
            if key in seen:
                continue
            seen.add(key)
            if u <= v:
                ears.append((u, v, tuple(internals), False))
            else:
                ears.append((v, u, tuple(reversed(internals)), False))
    return ears


def deletion_one_extendable(adj: Sequence[int], removed: int = 0,
                            du: int = -1, dv: int = -1) -> bool:
    """Is the subgraph on V minus ``removed``, optionally minus the edge
    (du, dv), connected and 1-extendable?"""
    if du >= 0:
        adj = list(adj)
        adj[du] &= ~(1 << dv)
        adj[dv] &= ~(1 << du)
    n = len(adj)
    if n - (removed & ((1 << n) - 1)).bit_count() < 2:
        return False
    return is_connected(adj, removed) and one_extendable(adj, removed)


def rule2_scan(adj: Sequence[int], reject_order: int):
    """Scan even-order ears ascending for deletions leaving a
    1-extendable graph.  Returns None when a valid deletion exists at an
    order other than ``reject_order``; otherwise the tuple of valid
    (u, v, internals) ears of that order (empty when none exists at any
    order)."""
    walk = ear_walk(adj)
    if walk is None or (len(walk) == 1 and walk[0][3]):
        raise ValueError("graph has no branch vertices to anchor a deletion")
    evens = sorted((w for w in walk if not len(w[2]) & 1), key=lambda w: len(w[2]))
    out = []
    for u, v, internals, _cyc in evens:
        order = len(internals)
        if out and order != reject_order:
            break
        if order:
            imask = 0
            for w in internals:
                imask |= 1 << w
            ok = deletion_one_extendable(adj, imask)
        else:
            ok = deletion_one_extendable(adj, 0, u, v)
        if ok:
            if order != reject_order:
                return None
            out.append((u, v, internals))
    return tuple(out)


def max_fill_cover(adj: Sequence[int], masks: Sequence[int], conflicts: Sequence[int]) -> int:
    """Maximum total fill weight over conflict-free exact covers of the
    vertex set by catalog parts; -1 when no cover exists.  The weight of
    a part is the number of absent edges inside it."""
    n = len(adj)
    weight = []
    for b in masks:
        pc = b.bit_count()
        inner = 0
        rest = b
        while rest:
            wbit = rest & -rest
            rest ^= wbit
            inner += (adj[wbit.bit_length() - 1] & b).bit_count()
        weight.append(pc * (pc - 1) // 2 - inner // 2)
    by_low: list[list[int]] = [[] for _ in range(n)]
    for i, b in enumerate(masks):
        if b:
            by_low[(b & -b).bit_length() - 1].append(i)
    full = (1 << n) - 1
    best = -1

    def rec(covered: int, banned: int, w: int) -> None:
        nonlocal best
        if covered == full:
            if w > best:
                best = w
            return
        m = n - covered.bit_count()
        if w + m * (m - 1) // 2 <= best:
            return
        un = ~covered & full
        for i in by_low[(un & -un).bit_length() - 1]:
            if masks[i] & covered or banned >> i & 1:
                continue
            rec(covered | masks[i], banned | conflicts[i], w + weight[i])

    rec(0, 0, 0)
    return best


def _interleaved(p1: int, p2: int) -> bool:
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


def conflict_matrix(masks: Sequence[int], parents: Sequence[int],
                    pos: Sequence[int], parent_conf: Sequence[int]) -> tuple:
    """Pairwise conflict rows for catalog entries: two entries conflict
    when their vertex masks intersect, their parents conflicted, or
    their ear position sets interleave A-B-A-B."""
    k = len(masks)
    conflict = [0] * k
    for i in range(k):
        mi, qi = masks[i], pos[i]
        pci = parent_conf[parents[i]]
        for j in range(i + 1, k):
            if mi & masks[j] or pci >> parents[j] & 1 or (
                    qi and pos[j] and _interleaved(qi, pos[j])):
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
    return tuple(conflict)


def pair_orbit_reps(n: int, gens: Sequence[Sequence[int]]) -> tuple:
    """Sorted representatives of the orbits of unordered vertex pairs
    under the given automorphisms (union-find over all pairs)."""
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
    return tuple(sorted({find(p) for p in pairs}))


def _attach(adj: Sequence[int], u: int, v: int, r: int) -> list:
    child = list(adj) + [0] * r
    if r == 0:
        child[u] |= 1 << v
        child[v] |= 1 << u
        return child
    n = len(adj)
    prev = u
    for j in range(n, n + r):
        child[prev] |= 1 << j
        child[j] |= 1 << prev
        prev = j
    child[prev] |= 1 << v
    child[v] |= 1 << prev
    return child


def _pair_orbit_hit(auts, start: tuple, want: tuple) -> bool:
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for g in auts:
            img = (g[x], g[y]) if g[x] < g[y] else (g[y], g[x])
            if img == want:
                return True
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return False


def accept_orders(adj: Sequence[int], u: int, v: int, start: int, stop: int):
    """Batch canonical-deletion acceptance for ears joining u and v.

    Tries every even order in [start, stop]; for each, builds the child
    (internal vertices n..n+order-1 walking from u to v) and checks
    whether canonical deletion would undo exactly that ear.  Returns
    ``(accepted, undecided)``: accepted orders pass outright, undecided
    ones had no rule-2 deletion and need the caller's slower fallback.
    Rejected orders appear in neither.  Only sound when every rule-2
    deletion leaves a 1-extendable graph, i.e. the attached ear has a
    matching through its endpoints."""
    n = len(adj)
    want = (u, v) if u < v else (v, u)
    accepted = []
    undecided = []
    for r in range(start, stop + 1, 2):
        if n + r > 32:
            break
        child = _attach(adj, u, v, r)
        cands = rule2_scan(child, r)
        if cands is None:
            continue
        if not cands:
            undecided.append(r)
            continue
        if all((a, b) == want for a, b, _ in cands):
            accepted.append(r)
            continue
        perm, auts = canon_search(child)
        best = min(cands, key=lambda t: ((perm[t[0]], perm[t[1]])
                                         if perm[t[0]] < perm[t[1]]
                                         else (perm[t[1]], perm[t[0]])))
        pair = (best[0], best[1])
        if pair == want or _pair_orbit_hit(auts, pair, want):
            accepted.append(r)
    return tuple(accepted), tuple(undecided)
