import random

import pytest

from exmatch import canonical
from exmatch.ears import (
    Ear,
    EarSpec,
    augment,
    delete_ear,
    free_ear,
    is_almost_one_extendable,
    list_ears,
)
from exmatch.graph import Graph, GraphError
from exmatch.matching import count_perfect_matchings, is_one_extendable

from conftest import random_graph


def test_cycle_is_one_ear():
    ears = list_ears(Graph.cycle(6))
    assert len(ears) == 1 and ears[0].is_cycle
    assert ears[0].order == 6


def test_k4_ears_all_trivial():
    ears = list_ears(Graph.complete(4))
    assert len(ears) == 6
    assert all(e.order == 0 for e in ears)


def test_theta_graph_ears():
    # C6 plus the 0-3 chord: three ears of orders 2, 2, 0
    g = Graph.cycle(6).add_edges([(0, 3)])
    orders = sorted(e.order for e in list_ears(g))
    assert orders == [0, 2, 2]


def test_ears_partition_edges():
    rng = random.Random(1)
    checked = 0
    while checked < 200:
        g = random_graph(rng, rng.randint(4, 10), rng.uniform(0.3, 0.8))
        if any(g.degree(v) < 2 for v in range(g.n)):
            continue  # ear structure is only defined without degree-1 vertices
        try:
            ears = list_ears(g)
        except GraphError:
            continue
        checked += 1
        seen = [e2 for ear in ears for e2 in ear.edges()]
        assert sorted(seen) == sorted(g.edges())


def test_augment_even_ear_adds_matchings():
    """Phi(child) = Phi(parent) + Phi(parent - u - v), for any even ear
    order — the count does not depend on the ear length."""
    rng = random.Random(2)
    hosts = [Graph.cycle(4), Graph.cycle(6), Graph.complete(4),
             Graph.complete_bipartite(3, 3)]
    for g in hosts:
        for _ in range(20):
            u, v = rng.sample(range(g.n), 2)
            order = rng.choice([0, 2, 4])
            if order == 0 and g.has_edge(u, v):
                continue
            child = augment(g, EarSpec(u, v, order))
            removed = 1 << u | 1 << v
            reduced = g.delete_vertices(removed)
            want = count_perfect_matchings(g) + count_perfect_matchings(reduced)
            assert count_perfect_matchings(child) == want


def test_augment_then_delete_is_identity_up_to_iso():
    rng = random.Random(3)
    for g in [Graph.cycle(4), Graph.complete(4), Graph.cycle(6)]:
        for _ in range(30):
            u, v = rng.sample(range(g.n), 2)
            order = rng.choice([2, 4])
            child = augment(g, EarSpec(u, v, order))
            # find the ear we just attached among the child's ears
            added = next(
                e for e in list_ears(child)
                if e.order == order and e.internal_mask() >> g.n
            )
            assert canonical.are_isomorphic(delete_ear(child, added), g)


def test_augment_rejects_existing_edge():
    with pytest.raises(GraphError):
        augment(Graph.complete(4), EarSpec(0, 1, 0))


def test_free_ear():
    # a chord between vertices at even cycle distance is free (the rest
    # of the cycle cannot be matched around it); at odd distance it is
    # extendable and the graph stays 1-extendable
    g = Graph.cycle(6).add_edges([(0, 2)])
    fe = free_ear(g)
    assert fe is not None and fe.order == 0 and {fe.u, fe.v} == {0, 2}
    assert free_ear(Graph.cycle(6)) is None         # nothing free
    assert free_ear(Graph.cycle(6).add_edges([(0, 3)])) is None


def test_almost_one_extendable():
    g = Graph.cycle(6).add_edges([(0, 2)])
    assert is_almost_one_extendable(g)
    assert not is_one_extendable(g)
    assert not is_almost_one_extendable(Graph.cycle(6))   # fully 1-extendable
    assert is_one_extendable(Graph.cycle(6).add_edges([(0, 3)]))
