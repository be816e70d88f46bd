import random

import pytest
from hypothesis import given, settings, strategies as st

from exmatch import matching, oracle
from exmatch.graph import Graph

from conftest import random_graph
from test_graph import graphs


# frozen counts: double factorials for K_2m, known small cases
@pytest.mark.parametrize("g,want", [
    (Graph.complete(2), 1),
    (Graph.complete(4), 3),
    (Graph.complete(6), 15),
    (Graph.complete(8), 105),
    (Graph.cycle(6), 2),
    (Graph.cycle(8), 2),
    (Graph.complete_bipartite(3, 3), 6),
    (Graph.complete_bipartite(4, 4), 24),
    (Graph(3, (0, 0, 0)), 0),  # odd order
    (Graph(2, (0, 0)), 0),     # no edge
])
def test_count_known(g, want):
    assert matching.count_perfect_matchings(g) == want


def test_count_cap():
    # cap=p+1 is how the search asks "are there more than p?"
    assert matching.count_perfect_matchings(Graph.complete(8), cap=5) == 5


@settings(max_examples=200)
@given(graphs(max_n=9))
def test_count_matches_backtracking_oracle(g):
    assert matching.count_perfect_matchings(g) == oracle.brute_matchings(g)


def test_classify_edges():
    # K4 minus an edge: the chord between the two degree-3 vertices is free
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    ext, free = matching.classify_edges(g)
    assert free == frozenset({(0, 2)})
    assert len(ext) == 4


def test_one_extendable():
    assert matching.is_one_extendable(Graph.cycle(6))
    assert matching.is_one_extendable(Graph.complete(4))
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert not matching.is_one_extendable(g)  # free chord
    assert matching.is_elementary(g)          # ...but still elementary
    # two disjoint K2s: disconnected
    assert not matching.is_elementary(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_elementary_matches_oracle_small():
    rng = random.Random(7)
    for _ in range(300):
        g = random_graph(rng, rng.choice([2, 4, 6]), rng.uniform(0.2, 0.9))
        assert matching.is_elementary(g) == oracle._brute_elementary(g)


def test_free_edge_mask():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    mask = matching.free_edge_mask(g)
    assert mask == (1 << 0 | 1 << 2)


def test_deletion_one_extendable():
    g = Graph.complete(4)
    removed = 1 << 0 | 1 << 1
    # K4 minus two adjacent vertices leaves a single edge: still 1-extendable
    assert matching.deletion_is_one_extendable(g, removed)
    c6 = Graph.cycle(6)
    assert not matching.deletion_is_one_extendable(c6, 1 << 0 | 1 << 1)
