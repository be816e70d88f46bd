"""Compact simple-graph type over at most 32 vertices, plus graph6 I/O.

Vertices are 0..n-1; adjacency is one neighbor bitmask per vertex.  Graphs
are immutable and hashable, so they can be copied freely between search
workers and used as cache keys.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from exmatch import kernels

MAX_VERTICES = 32


class GraphError(ValueError):
    """Contract violation on a graph operation."""


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class Graph:
    __slots__ = ("n", "adj", "e")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if len(adj) != n:
            raise GraphError("adjacency table length does not match n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"vertex {v} adjacent to out-of-range vertex")
            if row >> v & 1:
                raise GraphError(f"vertex {v} has a self-loop")
        for v in range(n):
            for u in range(v):
                if (adj[v] >> u & 1) != (adj[u] >> v & 1):
                    raise GraphError(f"adjacency not symmetric at ({u},{v})")
        self.n = n
        self.adj = tuple(adj)
        self.e = sum(row.bit_count() for row in adj) // 2

    @classmethod
    def _make(cls, n: int, adj: tuple[int, ...], e: int) -> "Graph":
        """Unvalidated constructor for internal producers whose output
        is well-formed by construction."""
        g = object.__new__(cls)
        g.n = n
        g.adj = adj
        g.e = e
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(u, v) for v in range(n) for u in range(v)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.n, self.adj)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e})"

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            row = self.adj[v] & ((1 << v) - 1)
            for u in iter_bits(row):
                yield (u, v)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph._make(self.n, tuple(adj), sum(r.bit_count() for r in adj) // 2)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """New graph with vertex v renamed to perm[v]."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in iter_bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph._make(self.n, tuple(adj), self.e)

    def delete_vertices(self, mask: int) -> "Graph":
        """Remove the vertices in ``mask``, compacting labels in order."""
        keep = [v for v in range(self.n) if not mask >> v & 1]
        pos = {v: i for i, v in enumerate(keep)}
        adj = [0] * len(keep)
        for v in keep:
            row = 0
            for u in iter_bits(self.adj[v] & ~mask):
                row |= 1 << pos[u]
            adj[pos[v]] = row
        return Graph._make(len(keep), tuple(adj), sum(r.bit_count() for r in adj) // 2)

    def is_connected(self) -> bool:
        return kernels.is_connected(self.adj)

    def bipartition(self) -> tuple[int, int] | None:
        """Two-coloring as a pair of side masks, or None if not bipartite."""
        color = [-1] * self.n
        sides = [0, 0]
        for start in range(self.n):
            if color[start] != -1:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                sides[color[v]] |= 1 << v
                for u in iter_bits(self.adj[v]):
                    if color[u] == -1:
                        color[u] = color[v] ^ 1
                        stack.append(u)
                    elif color[u] == color[v]:
                        return None
        return sides[0], sides[1]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        bit = mask & -mask
        mask ^= bit
        yield bit.bit_length() - 1


def excess(g: Graph) -> int:
    """Edge surplus over the quarter-square bound, e - n^2/4."""
    if g.n & 1:
        raise GraphError("excess is defined for even vertex counts only")
    return g.e - g.n * g.n // 4


def odd_components(g: Graph, removed: int) -> int:
    if removed & ~((1 << g.n) - 1):
        raise GraphError("removed set contains out-of-range vertices")
    return kernels.odd_component_count(g.adj, removed)


def is_two_connected(g: Graph) -> bool:
    if g.n < 3:
        raise GraphError("2-connectivity requires at least 3 vertices")
    if not kernels.is_connected(g.adj):
        return False
    return all(kernels.is_connected(g.adj, 1 << v) for v in range(g.n))


def graph6_encode(g: Graph) -> bytes:
    """Standard graph6 encoding (n <= 62 is enough for this package)."""
    out = [g.n + 63]
    bits = 0
    nbits = 0
    for v in range(1, g.n):
        for u in range(v):
            bits = bits << 1 | (g.adj[u] >> v & 1)
            nbits += 1
            if nbits == 6:
                out.append(bits + 63)
                bits = nbits = 0
    if nbits:
        out.append((bits << (6 - nbits)) + 63)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.rstrip(b"\n")
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    if data[0] == ord(">"):
        header = b">>graph6<<"
        if not data.startswith(header):
            raise Graph6Error("bad graph6 header", 0)
        data = data[len(header):]
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    if data[0] == 126:  # '~': multi-byte n, beyond this package's 32-vertex cap
        raise Graph6Error("graph too large (n > 62 encoding)", 0)
    n = data[0] - 63
    if not 0 <= n <= 62:
        raise Graph6Error(f"invalid size byte {data[0]}", 0)
    if n > MAX_VERTICES:
        raise Graph6Error(f"n={n} exceeds the {MAX_VERTICES}-vertex cap", 0)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 != need:
        raise Graph6Error(f"expected {need} data bytes, got {len(data) - 1}", 1)
    adj = [0] * n
    idx = 0
    for v in range(1, n):
        for u in range(v):
            byte = data[1 + idx // 6]
            if not 63 <= byte <= 126:
                raise Graph6Error(f"invalid data byte {byte}", 1 + idx // 6)
            if byte - 63 >> (5 - idx % 6) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            idx += 1
    # trailing padding bits must be zero
    if idx % 6:
        last = data[-1] - 63
        if last & ((1 << (6 - idx % 6)) - 1):
            raise Graph6Error("nonzero padding bits", len(data) - 1)
    return Graph(n, adj)
