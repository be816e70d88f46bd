"""Spires: layered joins of elementary chambers.

A spire stacks elementary graphs G_1, ..., G_k: every vertex of a chosen
barrier X_i of G_i is joined to every vertex of every later chamber.
Stacking multiplies perfect matching counts, and the excess of the stack
is at most the sum of the chamber excesses (with equality exactly when
every non-final chamber has a barrier covering half its vertices).  The
extremal graphs for a composite matching target therefore factor through
the extremal elementary graphs of its divisors, and this module turns a
table of those elementary records into the full structural description.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

from exmatch.barriers import is_barrier
from exmatch.graph import Graph, excess, graph6_decode, graph6_encode, iter_bits
from exmatch.matching import count_perfect_matchings, is_elementary


class SpireError(ValueError):
    pass


# ---------------------------------------------------------------------------
# barriers of a chamber

def all_barriers(g: Graph) -> list[int]:
    """Every barrier of g, as vertex masks (subset scan, small n only)."""
    return [s for s in range(1 << g.n) if is_barrier(g, s)]


def max_barriers(g: Graph) -> list[int]:
    bs = all_barriers(g)
    top = max(s.bit_count() for s in bs)
    return [s for s in bs if s.bit_count() == top]


def least_max_barrier(g: Graph) -> int:
    """The lexicographically least maximum-size barrier (by sorted vertex
    tuple); callers pass canonically labeled graphs so the choice is an
    isomorphism invariant."""
    return min(max_barriers(g), key=lambda s: tuple(iter_bits(s)))


# ---------------------------------------------------------------------------
# chambers and assembled spires

@dataclass(frozen=True)
class Chamber:
    g: Graph
    phi: int
    max_barrier: int  # vertex mask of the designated barrier

    @property
    def barrier_size(self) -> int:
        return self.max_barrier.bit_count()

    @property
    def rel_barrier(self) -> Fraction:
        return Fraction(self.barrier_size, self.g.n)

    @classmethod
    def from_graph(cls, g: Graph) -> "Chamber":
        if not is_elementary(g):
            raise SpireError("chambers must be elementary graphs")
        return cls(g, count_perfect_matchings(g), least_max_barrier(g))

    def describe(self) -> dict:
        return {
            "graph6": graph6_encode(self.g).decode(),
            "n": self.g.n,
            "phi": self.phi,
            "excess": excess(self.g),
            "barrier": list(iter_bits(self.max_barrier)),
            "rel_barrier": [self.rel_barrier.numerator, self.rel_barrier.denominator],
        }


def k2_chamber() -> Chamber:
    """The unique chamber with one perfect matching (half-sized barrier)."""
    return Chamber(Graph.complete(2), 1, 1)


def build_spire(chambers: list[Chamber]) -> Graph:
    """Disjoint union of the chamber graphs plus all join edges from each
    chamber's barrier to every vertex of every later chamber."""
    total = sum(ch.g.n for ch in chambers)
    adj = [0] * total
    offset = 0
    starts = []
    for ch in chambers:
        starts.append(offset)
        for v in range(ch.g.n):
            adj[offset + v] = ch.g.adj[v] << offset
        offset += ch.g.n
    for i, ch in enumerate(chambers):
        later = 0
        for j in range(i + 1, len(chambers)):
            span = (1 << chambers[j].g.n) - 1
            later |= span << starts[j]
        if not later:
            continue
        for x in iter_bits(ch.max_barrier):
            adj[starts[i] + x] |= later
            for w in iter_bits(later):
                adj[w] |= 1 << (starts[i] + x)
    return Graph(total, adj)


@dataclass(frozen=True)
class SpireSpec:
    chambers: tuple[Chamber, ...]
    total_n: int
    total_phi: int
    excess: int

    @classmethod
    def assemble(cls, chambers) -> "SpireSpec":
        chambers = tuple(chambers)
        if not chambers:
            raise SpireError("a spire needs at least one chamber")
        for ch in chambers:
            if not is_barrier(ch.g, ch.max_barrier):
                raise SpireError("designated set is not a barrier of its chamber")
        rels = [ch.rel_barrier for ch in chambers]
        if any(rels[i] < rels[i + 1] for i in range(len(rels) - 1)):
            raise SpireError("relative barrier sizes must be non-increasing")
        g = build_spire(list(chambers))
        phi = math.prod(ch.phi for ch in chambers)
        return cls(chambers, g.n, phi, excess(g))

    def describe(self) -> dict:
        return {
            "n": self.total_n,
            "phi": self.total_phi,
            "excess": self.excess,
            "chambers": [ch.describe() for ch in self.chambers],
        }


# ---------------------------------------------------------------------------
# factorizations and the conjectured excess ceiling

@lru_cache(maxsize=None)
def factorizations(p: int) -> tuple[tuple[int, ...], ...]:
    """All unordered multisets of integers >= 2 with product p (as
    non-decreasing tuples), plus the trivial (p,) itself; (1,) for p=1."""
    if p < 1:
        raise SpireError("matching target must be positive")
    if p == 1:
        return ((1,),)
    out: list[tuple[int, ...]] = []

    def rec(rest: int, lo: int, acc: tuple[int, ...]) -> None:
        out.append(acc + (rest,))
        f = lo
        while f * f <= rest:
            if rest % f == 0:
                rec(rest // f, f, acc + (f,))
            f += 1

    rec(p, 2, ())
    return tuple(sorted(out, key=lambda t: (len(t), t)))


def conjectured_upper_bound(p: int) -> int:
    """Ceiling t^2 - t + k - 1 from the double-factorial bracketing
    k(2t-1)!! <= p < (k+1)(2t-1)!! with 1 <= k <= 2t.  Advisory only."""
    if p < 1:
        raise SpireError("matching target must be positive")
    t, df = 1, 1  # df = (2t-1)!!
    while True:
        k = p // df
        if 1 <= k <= 2 * t and p < (k + 1) * df:
            return t * t - t + k - 1
        t += 1
        df *= 2 * t - 1


# ---------------------------------------------------------------------------
# the full characterization

def _divisors(p: int) -> list[int]:
    return [q for q in range(2, p + 1) if p % q == 0]


def _chamber_pool(q: int, elementary_db) -> list[Chamber]:
    if q == 1:
        return [k2_chamber()]
    rec = elementary_db[q]
    pool = []
    for key in rec.graphs:
        g = graph6_decode(key)
        if excess(g) == rec.c_found:
            pool.append(Chamber.from_graph(g))
    return pool


def characterize_extremal(p: int, elementary_db) -> tuple[int, int, dict]:
    """Maximize spire excess over factorizations of p, chamber choices,
    and admissible orderings.  Returns (c_p, n_p, report); the report is
    a JSON-ready description of every extremal assembly.

    ``elementary_db`` maps q -> ExtremalRecord for every divisor q >= 2
    of p (matching-count-1 chambers are supplied internally as K_2).
    """
    needed = _divisors(p)
    missing = [q for q in needed if q not in elementary_db]
    if missing:
        raise SpireError(f"missing extremal elementary data for divisors {missing}")
    pools = {q: _chamber_pool(q, elementary_db) for q in needed}
    pools[1] = [k2_chamber()]

    best: list[SpireSpec] = []
    c_p = None
    additive = {}
    achieved = {}
    for facs in factorizations(p):
        additive[facs] = sum(
            0 if q == 1 else elementary_db[q].c_found for q in facs)
        counts: dict[int, int] = {}
        for q in facs:
            counts[q] = counts.get(q, 0) + 1
        choices = [list(combinations_with_replacement(pools[q], m))
                   for q, m in counts.items()]

        def walk(idx: int, picked: list[Chamber]) -> None:
            nonlocal c_p
            if idx == len(choices):
                for order in set(permutations(picked)):
                    rels = [ch.rel_barrier for ch in order]
                    if any(rels[i] < rels[i + 1] for i in range(len(rels) - 1)):
                        continue
                    spec = SpireSpec.assemble(order)
                    prev = achieved.get(facs)
                    if prev is None or spec.excess > prev:
                        achieved[facs] = spec.excess
                    if c_p is None or spec.excess > c_p:
                        c_p = spec.excess
                        best.clear()
                    if spec.excess == c_p:
                        best.append(spec)
                return
            for group in choices[idx]:
                walk(idx + 1, picked + list(group))

        walk(0, [])

    assert c_p is not None
    n_p = min(s.total_n for s in best)
    seen: set[tuple] = set()
    winners = []
    for s in sorted(best, key=lambda s: (s.total_n, len(s.chambers))):
        key = tuple(graph6_encode(ch.g).decode() for ch in s.chambers)
        if key in seen:
            continue
        seen.add(key)
        winners.append(s)
    mid, top_only = set(), set()
    for s in winners:
        for i, ch in enumerate(s.chambers):
            key = graph6_encode(ch.g).decode()
            if ch.rel_barrier == Fraction(1, 2):
                mid.add(key)
            else:
                top_only.add(key)
    gaps = [list(f) for f in factorizations(p)
            if additive[f] >= c_p and achieved.get(f, -1) < c_p]
    report = {
        "p": p,
        "c_p": c_p,
        "n_p": n_p,
        "conjectured_upper_bound": conjectured_upper_bound(p),
        "assemblies": [s.describe() for s in winners],
        "mid_spire_chambers": sorted(mid),
        "top_only_chambers": sorted(top_only - mid),
        "best_additive_bound": max(additive.values()),
        "factorizations_without_extremal_assembly": gaps,
        "larger_family": {
            "rule": "insert K_2 chambers anywhere the ordering allows",
            "n_step": 2,
        },
    }
    return c_p, n_p, report
