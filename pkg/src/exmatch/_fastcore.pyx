# cython: boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels; same contract as exmatch._purecore."""

from cython.operator cimport dereference as deref
from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.string cimport memcpy, memset
from libcpp.unordered_map cimport unordered_map

ctypedef unsigned int u32
ctypedef unsigned long long u64
ctypedef long long i64

BACKEND = "fast"


cdef inline int _bit_length(u32 x):
    cdef int r = 0
    while x:
        x >>= 1
        r += 1
    return r


cdef inline int _popcount(u32 x):
    cdef int r = 0
    while x:
        x &= x - 1
        r += 1
    return r


cdef i64 _count(u32* adj, u32 rem, i64 cap, unordered_map[u32, i64]& memo):
    cdef u32 vbit, ubit, nb
    cdef int v
    cdef i64 total
    if rem == 0:
        return 1
    cdef unordered_map[u32, i64].iterator it = memo.find(rem)
    if it != memo.end():
        return deref(it).second
    vbit = rem & (0 - rem)
    v = _bit_length(vbit) - 1
    total = 0
    nb = adj[v] & rem
    while nb:
        ubit = nb & (0 - nb)
        nb ^= ubit
        total += _count(adj, rem & ~vbit & ~ubit, cap, memo)
        if cap and total >= cap:
            total = cap
            break
    memo[rem] = total
    return total


def count_matchings(adj, excluded=0, cap=0):
    cdef int n = len(adj)
    cdef u32 c_adj[32]
    cdef int i
    for i in range(n):
        c_adj[i] = adj[i]
    cdef u32 rem0 = <u32>(((1 << n) - 1) & ~excluded)
    if _popcount(rem0) & 1:
        return 0
    cdef unordered_map[u32, i64] memo
    return _count(c_adj, rem0, cap, memo)


def component_masks(adj, removed=0):
    cdef int n = len(adj)
    cdef u32 c_adj[32]
    cdef int i
    for i in range(n):
        c_adj[i] = adj[i]
    cdef u32 rem = <u32>(((1 << n) - 1) & ~removed)
    cdef u32 comp, frontier, nxt, bit
    comps = []
    while rem:
        comp = rem & (0 - rem)
        frontier = comp
        while frontier:
            nxt = 0
            while frontier:
                bit = frontier & (0 - frontier)
                frontier ^= bit
                nxt |= c_adj[_bit_length(bit) - 1] & rem
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rem &= ~comp
    return comps


def odd_component_count(adj, removed=0):
    cdef int total = 0
    for c in component_masks(adj, removed):
        if _popcount(<u32>c) & 1:
            total += 1
    return total


def is_connected(adj, removed=0):
    return len(component_masks(adj, removed)) <= 1


# ---------------------------------------------------------------------------
# canonical relabeling search (see _purecore.canon_search for the contract)

cdef struct CanonState:
    int n
    int have_best
    u32 best_cols[32]
    int best_pos[32]


cdef int _refine(u32* adj, int n, int* vert, int* cstart, int ncells):
    """Equitable refinement in place; returns the new cell count.

    Cells are vert[cstart[c]:cstart[c+1]]; splits order groups by
    neighbour count ascending (stable), matching the pure backend.
    """
    cdef u32 alpha[256]
    cdef int na = 0
    cdef int newvert[32]
    cdef int newstart[33]
    cdef int bucket[33]
    cdef int key[32]
    cdef int c, i, s, e, size, nnew, vpos, v, k, prev, distinct
    cdef u32 w, m
    for c in range(ncells):
        m = 0
        for i in range(cstart[c], cstart[c + 1]):
            m |= <u32>1 << vert[i]
        alpha[na] = m
        na += 1
    while na:
        na -= 1
        w = alpha[na]
        nnew = 0
        vpos = 0
        newstart[0] = 0
        for c in range(ncells):
            s = cstart[c]
            e = cstart[c + 1]
            size = e - s
            if size == 1:
                newvert[vpos] = vert[s]
                vpos += 1
                nnew += 1
                newstart[nnew] = vpos
                continue
            distinct = 0
            prev = -1
            for i in range(s, e):
                key[i - s] = _popcount(adj[vert[i]] & w)
            for k in range(33):
                bucket[k] = 0
            for i in range(size):
                bucket[key[i]] += 1
            for k in range(33):
                if bucket[k]:
                    distinct += 1
            if distinct == 1:
                for i in range(s, e):
                    newvert[vpos] = vert[i]
                    vpos += 1
                nnew += 1
                newstart[nnew] = vpos
                continue
            for k in range(33):
                if not bucket[k]:
                    continue
                m = 0
                for i in range(s, e):
                    if key[i - s] == k:
                        newvert[vpos] = vert[i]
                        m |= <u32>1 << vert[i]
                        vpos += 1
                nnew += 1
                newstart[nnew] = vpos
                if na < 256:
                    alpha[na] = m
                    na += 1
        ncells = nnew
        for i in range(vpos):
            vert[i] = newvert[i]
        for c in range(ncells + 1):
            cstart[c] = newstart[c]
    return ncells


cdef inline u32 _column(u32* adj, int* pos, int j):
    cdef u32 col = adj[pos[j]]
    cdef u32 val = 0
    cdef int i
    for i in range(j):
        val = (val << 1) | ((col >> pos[i]) & 1)
    return val


cdef void _canon_rec(u32* adj, CanonState* st, int* vert, int* cstart,
                     int ncells, u32* cand, int ncand, list ties):
    cdef int n = st.n
    cdef int k = 0
    cdef int j, c, i, v
    cdef int childvert[32]
    cdef int childstart[33]
    cdef u32 childcand[32]
    cdef int better
    while k < ncells and cstart[k + 1] - cstart[k] == 1:
        k += 1
    # positions 0..k-1 are the fixed prefix (cstart[j] == j there)
    for j in range(ncand, k):
        cand[j] = _column(adj, vert, j)
    if st.have_best:
        better = 0
        for j in range(k):
            if cand[j] != st.best_cols[j]:
                if cand[j] > st.best_cols[j]:
                    return
                better = 1
                break
    if k == ncells:
        if st.have_best and not better:
            ties.append([vert[i] for i in range(n)])
            return
        st.have_best = 1
        for j in range(n):
            st.best_cols[j] = cand[j]
            st.best_pos[j] = vert[j]
        del ties[:]
        ties.append([vert[i] for i in range(n)])
        return
    for c in range(cstart[k], cstart[k + 1]):
        v = vert[c]
        for i in range(cstart[k]):
            childvert[i] = vert[i]
        childvert[cstart[k]] = v
        j = cstart[k] + 1
        for i in range(cstart[k], cstart[ncells]):
            if vert[i] != v:
                childvert[j] = vert[i]
                j += 1
        for i in range(k + 1):
            childstart[i] = cstart[i]
        childstart[k + 1] = cstart[k] + 1
        for i in range(k + 1, ncells + 1):
            childstart[i + 1] = cstart[i]
        for j in range(k):
            childcand[j] = cand[j]
        _canon_rec(adj, st, childvert, childstart,
                   _refine(adj, n, childvert, childstart, ncells + 1),
                   childcand, k, ties)


def canon_search(adj):
    cdef int n = len(adj)
    if n == 0:
        return (), ((),)
    cdef u32 c_adj[32]
    cdef int vert[32]
    cdef int cstart[33]
    cdef u32 cand[32]
    cdef int i
    cdef CanonState st
    st.n = n
    st.have_best = 0
    for i in range(n):
        c_adj[i] = adj[i]
        vert[i] = i
    cstart[0] = 0
    cstart[1] = n
    cdef list ties = []
    _canon_rec(c_adj, &st, vert, cstart, _refine(c_adj, n, vert, cstart, 1),
               cand, 0, ties)
    perm = [0] * n
    for i in range(n):
        perm[st.best_pos[i]] = i
    auts = []
    for pos in ties:
        g = [0] * n
        for i in range(n):
            g[st.best_pos[i]] = pos[i]
        auts.append(tuple(g))
    return tuple(perm), tuple(auts)


# ---------------------------------------------------------------------------
# edge extendability (contracts in _purecore)

cdef int _matchable(u32* adj, u32 rem, unordered_map[u32, int]& memo):
    cdef u32 vbit, ubit, nb
    cdef int ok
    if rem == 0:
        return 1
    cdef unordered_map[u32, int].iterator it = memo.find(rem)
    if it != memo.end():
        return deref(it).second
    vbit = rem & (0 - rem)
    nb = adj[_bit_length(vbit) - 1] & rem
    ok = 0
    while nb:
        ubit = nb & (0 - nb)
        nb ^= ubit
        if _matchable(adj, rem & ~vbit & ~ubit, memo):
            ok = 1
            break
    memo[rem] = ok
    return ok


def extendable_rows(adj, removed=0):
    cdef int n = len(adj)
    cdef u32 c_adj[32]
    cdef u32 rows[32]
    cdef int v, u
    cdef u32 rem0, nb, ubit
    for v in range(n):
        c_adj[v] = adj[v]
        rows[v] = 0
    rem0 = <u32>(((1 << n) - 1) & ~removed)
    cdef unordered_map[u32, int] memo
    if (_popcount(rem0) & 1) or not _matchable(c_adj, rem0, memo):
        return False, [0] * n
    for v in range(n):
        if not (rem0 >> v) & 1:
            continue
        nb = c_adj[v] & rem0 & ((<u32>1 << v) - 1)
        while nb:
            ubit = nb & (0 - nb)
            nb ^= ubit
            if _matchable(c_adj, rem0 & ~(<u32>1 << v) & ~ubit, memo):
                u = _bit_length(ubit) - 1
                rows[v] |= ubit
                rows[u] |= <u32>1 << v
    return True, [rows[v] for v in range(n)]


def one_extendable(adj, removed=0):
    cdef int n = len(adj)
    cdef u32 c_adj[32]
    cdef int v
    cdef u32 rem0, nb, ubit
    cdef int saw_edge = 0
    for v in range(n):
        c_adj[v] = adj[v]
    rem0 = <u32>(((1 << n) - 1) & ~removed)
    if rem0 == 0 or (_popcount(rem0) & 1):
        return False
    cdef unordered_map[u32, int] memo
    if not _matchable(c_adj, rem0, memo):
        return False
    for v in range(n):
        if not (rem0 >> v) & 1:
            continue
        nb = c_adj[v] & rem0 & ((<u32>1 << v) - 1)
        while nb:
            ubit = nb & (0 - nb)
            nb ^= ubit
            saw_edge = 1
            if not _matchable(c_adj, rem0 & ~(<u32>1 << v) & ~ubit, memo):
                return False
    return bool(saw_edge)


# ---------------------------------------------------------------------------
# ear decomposition (contract in _purecore.ear_walk)

def ear_walk(adj):
    cdef int n = len(adj)
    if n == 0:
        return []
    cdef u32 c_adj[32]
    cdef int deg[32]
    cdef int path[32]
    cdef int internals[32]
    cdef int v, u, w, prev, cur, nxt, plen, ilen, nbranch, a, b
    cdef u32 nb, wbit, step, imask
    nbranch = 0
    for v in range(n):
        c_adj[v] = adj[v]
        deg[v] = _popcount(c_adj[v])
        if deg[v] != 2:
            nbranch += 1
    if nbranch == 0:
        path[0] = 0
        plen = 1
        prev = -1
        while True:
            nb = c_adj[path[plen - 1]]
            if prev >= 0:
                nb &= ~(<u32>1 << prev)
            nxt = _bit_length(nb & (0 - nb)) - 1
            if nxt == 0:
                break
            prev = path[plen - 1]
            path[plen] = nxt
            plen += 1
        if plen != n:
            return None
        return [(0, 0, tuple([path[v] for v in range(plen)]), True)]
    ears = []
    seen = set()
    for u in range(n):
        if deg[u] == 2:
            continue
        nb = c_adj[u]
        while nb:
            wbit = nb & (0 - nb)
            nb ^= wbit
            w = _bit_length(wbit) - 1
            ilen = 0
            imask = 0
            prev = u
            cur = w
            while deg[cur] == 2:
                internals[ilen] = cur
                ilen += 1
                imask |= <u32>1 << cur
                step = c_adj[cur] & ~(<u32>1 << prev)
                prev = cur
                cur = _bit_length(step & (0 - step)) - 1
            v = cur
            a = u if u < v else v
            b = v if u < v else u
            key = (a, b, imask)
            if key in seen:
                continue
            seen.add(key)
            if u <= v:
                ears.append((u, v, tuple([internals[w] for w in range(ilen)]), False))
            else:
                ears.append((v, u, tuple([internals[w] for w in range(ilen - 1, -1, -1)]), False))
    return ears


def deletion_one_extendable(adj, removed=0, du=-1, dv=-1):
    cdef int n = len(adj)
    cdef u32 c_adj[32]
    cdef int v
    for v in range(n):
        c_adj[v] = adj[v]
    return bool(_del_one_ext(c_adj, n, removed, du, dv))


cdef bint _del_one_ext(u32 *src_adj, int n, u32 removed, int du, int dv) noexcept:
    cdef u32 c_adj[32]
    cdef int v
    cdef u32 rem0, nb, ubit, comp, frontier, nxt, bit
    for v in range(n):
        c_adj[v] = src_adj[v]
    if du >= 0:
        c_adj[du] &= ~(<u32>1 << dv)
        c_adj[dv] &= ~(<u32>1 << du)
    rem0 = <u32>((((<u32>1) << n) - 1) & ~removed) if n < 32 else <u32>(~removed)
    if _popcount(rem0) < 2 or (_popcount(rem0) & 1):
        return False
    # connectivity of the remaining vertex set
    comp = rem0 & (0 - rem0)
    frontier = comp
    while frontier:
        nxt = 0
        while frontier:
            bit = frontier & (0 - frontier)
            frontier ^= bit
            nxt |= c_adj[_bit_length(bit) - 1] & rem0
        nxt &= ~comp
        comp |= nxt
        frontier = nxt
    if comp != rem0:
        return False
    cdef unordered_map[u32, int] memo
    if not _matchable(c_adj, rem0, memo):
        return False
    cdef int saw_edge = 0
    for v in range(n):
        if not (rem0 >> v) & 1:
            continue
        nb = c_adj[v] & rem0 & ((<u32>1 << v) - 1)
        while nb:
            ubit = nb & (0 - nb)
            nb ^= ubit
            saw_edge = 1
            if not _matchable(c_adj, rem0 & ~(<u32>1 << v) & ~ubit, memo):
                return False
    return saw_edge != 0


def rule2_scan(adj, reject_order):
    """Contract in _purecore.rule2_scan."""
    cdef int n = len(adj)
    cdef u32 c_adj[32]
    cdef int deg[32]
    cdef int eu[64]
    cdef int ev[64]
    cdef u32 emask[64]
    cdef int eoff[64]
    cdef int elen[64]
    cdef int ivert[40]
    cdef int order_idx[64]
    cdef int nears = 0
    cdef int nint = 0
    cdef int v, u, w, prev, cur, ilen, nbranch, a, b, i, j, k, tmp, o
    cdef int rj = reject_order
    cdef u32 nb, wbit, step, imask
    cdef bint ok
    nbranch = 0
    for v in range(n):
        c_adj[v] = adj[v]
        deg[v] = _popcount(c_adj[v])
        if deg[v] != 2:
            nbranch += 1
    if nbranch == 0:
        raise ValueError("graph has no branch vertices to anchor a deletion")
    seen = set()
    for u in range(n):
        if deg[u] == 2:
            continue
        nb = c_adj[u]
        while nb:
            wbit = nb & (0 - nb)
            nb ^= wbit
            w = _bit_length(wbit) - 1
            ilen = 0
            imask = 0
            prev = u
            cur = w
            while deg[cur] == 2:
                ivert[nint + ilen] = cur
                ilen += 1
                imask |= <u32>1 << cur
                step = c_adj[cur] & ~(<u32>1 << prev)
                prev = cur
                cur = _bit_length(step & (0 - step)) - 1
            v = cur
            if ilen & 1:
                continue
            a = u if u < v else v
            b = v if u < v else u
            key = (a, b, imask)
            if key in seen:
                continue
            seen.add(key)
            eu[nears] = a
            ev[nears] = b
            if u > v:
                # store internals walking from the smaller endpoint
                for j in range(ilen // 2):
                    tmp = ivert[nint + j]
                    ivert[nint + j] = ivert[nint + ilen - 1 - j]
                    ivert[nint + ilen - 1 - j] = tmp
            emask[nears] = imask
            eoff[nears] = nint
            elen[nears] = ilen
            order_idx[nears] = nears
            nint += ilen
            nears += 1
    # stable insertion sort by ear order, preserving discovery order
    for i in range(1, nears):
        tmp = order_idx[i]
        j = i - 1
        while j >= 0 and elen[order_idx[j]] > elen[tmp]:
            order_idx[j + 1] = order_idx[j]
            j -= 1
        order_idx[j + 1] = tmp
    out = None
    for i in range(nears):
        k = order_idx[i]
        o = elen[k]
        if out is not None and o != rj:
            break
        if o:
            ok = _del_one_ext(c_adj, n, emask[k], -1, -1)
        else:
            ok = _del_one_ext(c_adj, n, 0, eu[k], ev[k])
        if ok:
            if o != rj:
                return None
            if out is None:
                out = []
            internals = tuple([ivert[eoff[k] + j] for j in range(o)])
            out.append((eu[k], ev[k], internals))
    if out is None:
        return ()
    return tuple(out)


# ---------------------------------------------------------------------------
# cover-set fill bound (contract in _purecore.max_fill_cover)

cdef struct MFC:
    int n
    int words
    u32 full
    u32 *masks
    int *weight
    u64 *crows
    int *by_start
    int *by_item
    u64 *banned_stack
    int best


cdef void _mfc_rec(MFC *s, u32 covered, int depth, int w) noexcept:
    if covered == s.full:
        if w > s.best:
            s.best = w
        return
    cdef int m = s.n - _popcount(covered)
    if w + m * (m - 1) // 2 <= s.best:
        return
    cdef u32 un = (~covered) & s.full
    cdef int v = _bit_length(un & (0 - un)) - 1
    cdef u64 *banned = s.banned_stack + depth * s.words
    cdef u64 *child = s.banned_stack + (depth + 1) * s.words
    cdef int idx, i, j
    for j in range(s.by_start[v], s.by_start[v + 1]):
        idx = s.by_item[j]
        if (s.masks[idx] & covered) or ((banned[idx >> 6] >> (idx & 63)) & 1):
            continue
        for i in range(s.words):
            child[i] = banned[i] | s.crows[idx * s.words + i]
        _mfc_rec(s, covered | s.masks[idx], depth + 1, w + s.weight[idx])


def max_fill_cover(adj, masks, conflicts):
    cdef int n = len(adj)
    cdef int k = len(masks)
    if k > 2048:
        raise ValueError("catalog too large for the compiled kernel")
    cdef u32 c_adj[32]
    cdef u32 c_masks[2048]
    cdef int weight[2048]
    cdef int count[33]
    cdef int by_start[34]
    cdef int by_item[2048]
    cdef int v, i, j, pc, inner, low
    cdef u32 b, rest, wbit
    for v in range(n):
        c_adj[v] = adj[v]
    for i in range(k):
        b = masks[i]
        c_masks[i] = b
        pc = _popcount(b)
        inner = 0
        rest = b
        while rest:
            wbit = rest & (0 - rest)
            rest ^= wbit
            inner += _popcount(c_adj[_bit_length(wbit) - 1] & b)
        weight[i] = pc * (pc - 1) // 2 - inner // 2
    for v in range(n + 1):
        count[v] = 0
    for i in range(k):
        if c_masks[i]:
            count[_bit_length(c_masks[i] & (0 - c_masks[i])) - 1] += 1
    by_start[0] = 0
    for v in range(n):
        by_start[v + 1] = by_start[v] + count[v]
        count[v] = by_start[v]
    for i in range(k):
        if c_masks[i]:
            low = _bit_length(c_masks[i] & (0 - c_masks[i])) - 1
            by_item[count[low]] = i
            count[low] += 1
    cdef int words = (k + 63) >> 6
    if words == 0:
        words = 1
    cdef int nbytes = words * 8
    cdef u64 *crows = <u64 *> PyMem_Malloc((k + n + 2) * words * sizeof(u64))
    if crows is NULL:
        raise MemoryError()
    cdef u64 *banned_stack = crows + k * words
    memset(banned_stack, 0, (n + 2) * words * sizeof(u64))
    cdef const unsigned char *pb
    cdef MFC s
    try:
        for i in range(k):
            data = conflicts[i].to_bytes(nbytes, "little")
            pb = data
            memcpy(crows + i * words, pb, nbytes)
        s.n = n
        s.words = words
        s.full = <u32>(((<u64>1) << n) - 1)
        s.masks = c_masks
        s.weight = weight
        s.crows = crows
        s.by_start = by_start
        s.by_item = by_item
        s.banned_stack = banned_stack
        s.best = -1
        _mfc_rec(&s, 0, 0, 0)
    finally:
        PyMem_Free(crows)
    return s.best


# ---------------------------------------------------------------------------
# catalog conflict rows (contract in _purecore.conflict_matrix)

cdef inline bint _interleaved(u32 p1, u32 p2) noexcept:
    cdef u32 both = p1 | p2
    cdef u32 bit
    cdef int changes = -1, last = 0, cur
    while both:
        bit = both & (0 - both)
        both ^= bit
        cur = 1 if (p1 & bit) else 2
        if cur != last:
            changes += 1
            last = cur
    return changes >= 3


def conflict_matrix(masks, parents, pos, parent_conf):
    cdef int k = len(masks)
    cdef int kp = len(parent_conf)
    if k > 4096:
        raise ValueError("catalog too large for the compiled kernel")
    cdef u32 *c_masks = <u32 *> PyMem_Malloc(k * (sizeof(u32) * 2 + sizeof(int)))
    if c_masks is NULL:
        raise MemoryError()
    cdef u32 *c_pos = c_masks + k
    cdef int *c_par = <int *> (c_pos + k)
    cdef int pcw = (kp + 63) >> 6
    if pcw == 0:
        pcw = 1
    cdef int words = (k + 63) >> 6
    if words == 0:
        words = 1
    cdef u64 *pcrows = <u64 *> PyMem_Malloc((kp * pcw + k * words) * sizeof(u64))
    if pcrows is NULL:
        PyMem_Free(c_masks)
        raise MemoryError()
    cdef u64 *orows = pcrows + kp * pcw
    cdef const unsigned char *pb
    cdef int i, j, pj
    cdef u32 mi, qi
    cdef u64 *pci
    try:
        memset(orows, 0, k * words * sizeof(u64))
        for i in range(kp):
            data = parent_conf[i].to_bytes(pcw * 8, "little")
            pb = data
            memcpy(pcrows + i * pcw, pb, pcw * 8)
        for i in range(k):
            c_masks[i] = masks[i]
            c_pos[i] = pos[i]
            c_par[i] = parents[i]
        for i in range(k):
            mi = c_masks[i]
            qi = c_pos[i]
            pci = pcrows + c_par[i] * pcw
            for j in range(i + 1, k):
                pj = c_par[j]
                if (mi & c_masks[j]) or ((pci[pj >> 6] >> (pj & 63)) & 1) or (
                        qi and c_pos[j] and _interleaved(qi, c_pos[j])):
                    orows[i * words + (j >> 6)] |= (<u64>1) << (j & 63)
                    orows[j * words + (i >> 6)] |= (<u64>1) << (i & 63)
        out = []
        nb = words * 8
        for i in range(k):
            row = (<unsigned char *>(orows + i * words))[:nb]
            out.append(int.from_bytes(row, "little"))
        return tuple(out)
    finally:
        PyMem_Free(pcrows)
        PyMem_Free(c_masks)


def pair_orbit_reps(n, gens):
    """Contract in _purecore.pair_orbit_reps."""
    cdef int c_n = n
    cdef int perm[32]
    cdef int rep[496]
    cdef int idx[32][32]
    cdef int u, v, t, a, b, np, i, iu, iv
    np = 0
    for u in range(c_n):
        for v in range(u + 1, c_n):
            idx[u][v] = np
            rep[np] = np
            np += 1
    for g in gens:
        for v in range(c_n):
            perm[v] = g[v]
        for v in range(c_n):
            for u in range(v):
                iu = perm[u]
                iv = perm[v]
                if iu > iv:
                    t = iu; iu = iv; iv = t
                a = idx[u][v]
                while rep[a] != a:
                    rep[a] = rep[rep[a]]
                    a = rep[a]
                b = idx[iu][iv]
                while rep[b] != b:
                    rep[b] = rep[rep[b]]
                    b = rep[b]
                if a != b:
                    if a < b:
                        rep[b] = a
                    else:
                        rep[a] = b
    out = []
    i = 0
    for u in range(c_n):
        for v in range(u + 1, c_n):
            a = i
            while rep[a] != a:
                a = rep[a]
            if a == i:
                out.append((u, v))
            i += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# batched ear acceptance (contract in _purecore.accept_orders)

cdef int _scan_candidates(u32* c_adj, int n, int rj, int* pu, int* pv):
    """Rule-2 scan keeping only candidate endpoint pairs of order rj.

    Returns the number of candidates, -1 when a valid deletion exists at
    another order, or -2 when the graph has no branch vertices."""
    cdef int deg[32]
    cdef int eu[64]
    cdef int ev[64]
    cdef u32 emask[64]
    cdef int elen[64]
    cdef int order_idx[64]
    cdef int nears = 0
    cdef int v, u, w, prev, cur, ilen, nbranch, a, b, i, j, k, tmp, o
    cdef u32 nb, wbit, step, imask
    cdef bint ok
    cdef int nout = 0
    nbranch = 0
    for v in range(n):
        deg[v] = _popcount(c_adj[v])
        if deg[v] != 2:
            nbranch += 1
    if nbranch == 0:
        return -2
    for u in range(n):
        if deg[u] == 2:
            continue
        nb = c_adj[u]
        while nb:
            wbit = nb & (0 - nb)
            nb ^= wbit
            w = _bit_length(wbit) - 1
            ilen = 0
            imask = 0
            prev = u
            cur = w
            while deg[cur] == 2:
                ilen += 1
                imask |= <u32>1 << cur
                step = c_adj[cur] & ~(<u32>1 << prev)
                prev = cur
                cur = _bit_length(step & (0 - step)) - 1
            v = cur
            if ilen & 1:
                continue
            a = u if u < v else v
            b = v if u < v else u
            tmp = 0
            for i in range(nears):
                if eu[i] == a and ev[i] == b and emask[i] == imask:
                    tmp = 1
                    break
            if tmp:
                continue
            eu[nears] = a
            ev[nears] = b
            emask[nears] = imask
            elen[nears] = ilen
            order_idx[nears] = nears
            nears += 1
    for i in range(1, nears):
        tmp = order_idx[i]
        j = i - 1
        while j >= 0 and elen[order_idx[j]] > elen[tmp]:
            order_idx[j + 1] = order_idx[j]
            j -= 1
        order_idx[j + 1] = tmp
    for i in range(nears):
        k = order_idx[i]
        o = elen[k]
        if nout and o != rj:
            break
        if o:
            ok = _del_one_ext(c_adj, n, emask[k], -1, -1)
        else:
            ok = _del_one_ext(c_adj, n, 0, eu[k], ev[k])
        if ok:
            if o != rj:
                return -1
            pu[nout] = eu[k]
            pv[nout] = ev[k]
            nout += 1
    return nout


cdef int _accept_child(u32* c_adj, int nc, int aa, int bb, int rj):
    """Decide acceptance of a child whose last-attached ear joins aa<bb
    with order rj: 1 accept, 0 undecided (no rule-2 deletion), -1 reject,
    -2 no branch vertices."""
    cdef int pu[64]
    cdef int pv[64]
    cdef int m = _scan_candidates(c_adj, nc, rj, pu, pv)
    if m <= 0:
        return m
    cdef int i, x, y, t
    cdef int allsame = 1
    for i in range(m):
        if pu[i] != aa or pv[i] != bb:
            allsame = 0
            break
    if allsame:
        return 1
    cdef int vert[32]
    cdef int cstart[33]
    cdef u32 cand[32]
    cdef CanonState st
    st.n = nc
    st.have_best = 0
    for i in range(nc):
        vert[i] = i
    cstart[0] = 0
    cstart[1] = nc
    cdef list ties = []
    _canon_rec(c_adj, &st, vert, cstart, _refine(c_adj, nc, vert, cstart, 1),
               cand, 0, ties)
    cdef int perm[32]
    for i in range(nc):
        perm[st.best_pos[i]] = i
    # candidate pair minimal under the canonical labelling
    cdef int bu = -1, bv = -1, ku = 0, kv = 0
    for i in range(m):
        x = perm[pu[i]]
        y = perm[pv[i]]
        if x > y:
            t = x; x = y; y = t
        if bu < 0 or x < ku or (x == ku and y < kv):
            ku = x
            kv = y
            bu = pu[i]
            bv = pv[i]
    if bu == aa and bv == bb:
        return 1
    # BFS over the unordered-pair orbit of (bu, bv), looking for (aa, bb)
    cdef int nt = len(ties)
    cdef int* gg = <int*> PyMem_Malloc(nt * nc * sizeof(int))
    if gg == NULL:
        raise MemoryError()
    cdef int q[496]
    cdef u64 vis[16]
    cdef int head = 0, tail = 0, code
    for i in range(16):
        vis[i] = 0
    for t in range(nt):
        pos = ties[t]
        for i in range(nc):
            gg[t * nc + st.best_pos[i]] = pos[i]
    code = (bu << 5) | bv
    vis[code >> 6] |= (<u64>1) << (code & 63)
    q[tail] = code
    tail += 1
    while head < tail:
        code = q[head]
        head += 1
        x = code >> 5
        y = code & 31
        for t in range(nt):
            i = gg[t * nc + x]
            bv = gg[t * nc + y]
            if i > bv:
                bu = bv; bv = i
            else:
                bu = i
            if bu == aa and bv == bb:
                PyMem_Free(gg)
                return 1
            code = (bu << 5) | bv
            if not (vis[code >> 6] >> (code & 63)) & 1:
                vis[code >> 6] |= (<u64>1) << (code & 63)
                q[tail] = code
                tail += 1
    PyMem_Free(gg)
    return -1


def accept_orders(adj, u, v, start, stop):
    """Contract in _purecore.accept_orders."""
    cdef int n = len(adj)
    cdef u32 base[32]
    cdef u32 c_adj[32]
    cdef int r, j, prev, res
    cdef int aa = u if u < v else v
    cdef int bb = v if u < v else u
    for j in range(n):
        base[j] = adj[j]
    accepted = []
    undecided = []
    r = start
    while r <= stop:
        if n + r > 32:
            break
        for j in range(n):
            c_adj[j] = base[j]
        if r == 0:
            c_adj[aa] |= <u32>1 << bb
            c_adj[bb] |= <u32>1 << aa
        else:
            prev = u
            for j in range(n, n + r):
                c_adj[prev] |= <u32>1 << j
                c_adj[j] = <u32>1 << prev
                prev = j
            c_adj[prev] |= <u32>1 << v
            c_adj[v] |= <u32>1 << prev
        res = _accept_child(c_adj, n + r, aa, bb, r)
        if res == -2:
            raise ValueError("graph has no branch vertices to anchor a deletion")
        if res > 0:
            accepted.append(r)
        elif res == 0:
            undecided.append(r)
        r += 2
    return tuple(accepted), tuple(undecided)
