import pytest
from hypothesis import given, strategies as st

from exmatch.graph import (
    Graph,
    Graph6Error,
    GraphError,
    graph6_decode,
    graph6_encode,
    iter_bits,
)


def graphs(max_n=10):
    """Hypothesis strategy: a simple graph as (n, upper-triangle bits)."""

    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_n))
        adj = [0] * n
        for v in range(n):
            for u in range(v):
                if draw(st.booleans()):
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        return Graph(n, adj)

    return build()


def test_basic_counts():
    g = Graph.cycle(6)
    assert g.n == 6 and g.e == 6
    assert all(g.degree(v) == 2 for v in range(6))
    k4 = Graph.complete(4)
    assert k4.e == 6
    assert Graph.complete_bipartite(2, 3).e == 6


def test_validation():
    with pytest.raises(GraphError):
        Graph(2, (1, 0))  # asymmetric
    with pytest.raises(GraphError):
        Graph(1, (1,))  # self-loop
    with pytest.raises(GraphError):
        Graph(2, (4, 0))  # out of range
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])


def test_known_graph6_strings():
    # values cross-checked against the networkx codec
    assert graph6_encode(Graph.complete(4)) == b"C~"
    assert graph6_encode(Graph.cycle(6)) == b"EhEG"
    assert graph6_decode("C~") == Graph.complete(4)
    assert graph6_decode(b">>graph6<<C~") == Graph.complete(4)


def test_graph6_matches_networkx():
    networkx = pytest.importorskip("networkx")
    for g in [Graph.cycle(5), Graph.complete(6), Graph.complete_bipartite(3, 3)]:
        nxg = networkx.from_graph6_bytes(graph6_encode(g))
        assert sorted(nxg.nodes) == list(range(g.n))
        assert {tuple(sorted(e)) for e in nxg.edges} == set(g.edges())


def test_graph6_errors():
    with pytest.raises(Graph6Error):
        graph6_decode("")
    with pytest.raises(Graph6Error):
        graph6_decode("C~~~~")  # trailing junk
    with pytest.raises(Graph6Error):
        graph6_decode(chr(30))  # size byte below printable range
    err = None
    try:
        graph6_decode("C" + chr(20))
    except Graph6Error as exc:
        err = exc
    assert err is not None and err.offset == 1


@given(graphs())
def test_graph6_round_trip(g):
    assert graph6_decode(graph6_encode(g)) == g


@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_relabel_preserves_structure(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert h.e == g.e
    for u, v in g.edges():
        assert h.has_edge(perm[u], perm[v])


def test_delete_vertices():
    g = Graph.cycle(6).delete_vertices(0b000011)
    assert g.n == 4 and g.e == 3  # path on the remaining four


def test_bipartition():
    side = Graph.complete_bipartite(3, 3).bipartition()
    assert side is not None and {s.bit_count() for s in side} == {3}
    assert Graph.cycle(5).bipartition() is None


def test_iter_bits():
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert list(iter_bits(0)) == []
