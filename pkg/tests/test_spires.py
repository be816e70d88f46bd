import json
from fractions import Fraction

import pytest

from exmatch import search, spires
from exmatch.graph import Graph, graph6_decode
from exmatch.matching import count_perfect_matchings


def test_factorizations():
    assert spires.factorizations(1) == ((1,),)
    assert spires.factorizations(6) == ((6,), (2, 3))
    assert spires.factorizations(12) == ((12,), (2, 6), (3, 4), (2, 2, 3))
    for facs in spires.factorizations(24):
        assert list(facs) == sorted(facs)
        prod = 1
        for q in facs:
            prod *= q
        assert prod == 24


def test_conjectured_upper_bound():
    # staircase over double-factorial blocks; agrees with c_p for p <= 10
    assert [spires.conjectured_upper_bound(p) for p in range(1, 11)] == [
        0, 1, 2, 2, 2, 3, 3, 3, 4, 4]
    assert spires.conjectured_upper_bound(15) == 6


def test_chamber_from_graph():
    ch = spires.Chamber.from_graph(Graph.complete(4))
    assert ch.phi == 3
    assert ch.barrier_size == 1  # K4's maximal barriers are singletons
    assert ch.rel_barrier == Fraction(1, 4)
    with pytest.raises(spires.SpireError):
        spires.Chamber.from_graph(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_k2_chamber():
    ch = spires.k2_chamber()
    assert ch.phi == 1 and ch.rel_barrier == Fraction(1, 2)


def test_build_spire_multiplies_matchings():
    k2 = spires.k2_chamber()
    k4e = spires.Chamber.from_graph(
        Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]))
    for chambers in [(k2, k2), (k4e, k2), (k4e, k4e)]:
        spec = spires.SpireSpec.assemble(chambers)
        want = 1
        for ch in chambers:
            want *= ch.phi
        g = spires.build_spire(chambers)
        assert count_perfect_matchings(g) == want == spec.total_phi


def test_two_k2_spire():
    # join of two K2 chambers along one endpoint each: 4 vertices,
    # 4 edges, one perfect matching, excess 0 = c_1 + c_1
    spec = spires.SpireSpec.assemble((spires.k2_chamber(), spires.k2_chamber()))
    assert (spec.total_n, spec.total_phi, spec.excess) == (4, 1, 0)
    assert spires.build_spire(spec.chambers).e == 4


def test_assemble_rejects_bad_order():
    k2 = spires.k2_chamber()           # relative barrier 1/2
    k4 = spires.Chamber.from_graph(Graph.complete(4))  # relative barrier 1/4
    spires.SpireSpec.assemble((k2, k4))  # non-increasing: fine
    with pytest.raises(spires.SpireError):
        spires.SpireSpec.assemble((k4, k2))


def test_excess_additive_iff_half_barriers():
    # non-final chambers at relative barrier 1/2 give equality with the
    # additive bound; a 1/4 chamber in the middle loses excess
    k4e = spires.Chamber.from_graph(
        Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]))
    k4 = spires.Chamber.from_graph(Graph.complete(4))
    good = spires.SpireSpec.assemble((k4e, k4))
    assert good.excess == 1 + 2  # c_2 + c_3
    bad = spires.SpireSpec.assemble((k4, k4))
    assert bad.excess < 2 + 2


def test_characterize_extremal_small():
    db = {q: search.generate(q, 1) for q in (2, 3, 4, 6)}
    c6, n6, report = spires.characterize_extremal(6, db)
    assert (c6, n6) == (3, 6)
    assert report["p"] == 6
    json.dumps(report)  # JSON-ready
    c4, n4, _ = spires.characterize_extremal(4, db)
    assert (c4, n4) == (2, 6)
    c1, n1, _ = spires.characterize_extremal(1, {})
    assert (c1, n1) == (0, 2)


def test_characterize_requires_divisors():
    with pytest.raises(spires.SpireError) as exc:
        spires.characterize_extremal(6, {})
    assert "divisors" in str(exc.value)


def test_report_witnesses_decode():
    db = {q: search.generate(q, 1) for q in (2, 4)}
    _, _, report = spires.characterize_extremal(4, db)
    for asm in report["assemblies"]:
        for ch in asm["chambers"]:
            g = graph6_decode(ch["graph6"])
            assert count_perfect_matchings(g) == ch["phi"]
