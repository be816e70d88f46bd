import pytest

from exmatch import oracle
from exmatch.graph import Graph, GraphError


def test_all_graphs_counts():
    # classical counts of graphs up to isomorphism
    for n, want in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)]:
        assert sum(1 for _ in oracle.all_graphs(n)) == want


def test_all_graphs_refuses_large():
    with pytest.raises(GraphError):
        list(oracle.all_graphs(11))
    with pytest.raises(GraphError):
        list(oracle.all_graphs(0))


def test_all_graphs_no_duplicates():
    # pairwise non-isomorphic on n=5: check with the package canonizer,
    # which is itself validated against the permutation scan elsewhere
    from exmatch.canonical import canonical_form

    forms = [canonical_form(g) for g in oracle.all_graphs(5)]
    assert len(set(forms)) == len(forms)


def test_brute_matchings():
    assert oracle.brute_matchings(Graph.cycle(6)) == 2
    assert oracle.brute_matchings(Graph.complete(6)) == 15
    assert oracle.brute_matchings(Graph(5, (0,) * 5)) == 0
    with pytest.raises(GraphError):
        oracle.brute_matchings(Graph(14, (0,) * 14))


def test_brute_barriers_k4():
    bars = oracle.brute_barriers(Graph.complete(4))
    assert len(bars) == 5  # empty set plus four singletons
    assert 0 in bars and all(1 << v in bars for v in range(4))


def test_brute_extremal_known():
    c, ws = oracle.brute_extremal(2, 6)
    assert c == 1 and len(ws) == 1      # K4 minus an edge
    c, ws = oracle.brute_extremal(3, 6)
    assert c == 2 and len(ws) == 1      # K4
    with pytest.raises(GraphError):
        oracle.brute_extremal(2, 12)    # beyond the enumeration cap


def test_caps_are_refused():
    with pytest.raises(GraphError):
        oracle.brute_barriers(Graph(13, (0,) * 13))
    with pytest.raises(GraphError):
        oracle.brute_cover_sets(Graph.cycle(4), list(range(20001)))
