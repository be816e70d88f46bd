import json

import pytest

from exmatch import search
from exmatch.graph import Graph, GraphError, graph6_decode


# Table 3 rows (p, N_p, c_p): the bound must reproduce N_p given c_p
TABLE3 = [
    (5, 8, 2), (6, 10, 3), (7, 10, 3), (8, 12, 3), (9, 12, 4), (10, 12, 4),
    (11, 14, 3), (12, 14, 5), (13, 14, 3), (14, 16, 4), (15, 16, 6),
    (16, 16, 4), (17, 16, 4), (18, 18, 5), (19, 18, 4), (20, 18, 5),
    (21, 18, 5), (22, 20, 5), (23, 20, 5), (24, 20, 6), (25, 20, 5),
    (26, 20, 5), (27, 22, 6),
]


@pytest.mark.parametrize("p,np_,c", TABLE3)
def test_size_bound_table(p, np_, c):
    assert search.size_bound(p, c) == np_


def test_size_bound_rejects_impossible():
    with pytest.raises(ValueError):
        search.size_bound(2, 50)  # radicand goes negative
    with pytest.raises(ValueError):
        search.size_bound(1, 1)  # p=1 is handled before the bound applies


def test_generate_tiny():
    rec = search.generate(1, 1)
    assert (rec.c_found, rec.n_min, rec.graphs) == (0, 2, ["A_"])
    rec = search.generate(2, 1)
    assert (rec.c_found, rec.n_min, rec.graphs) == (1, 4, ["C^"])
    rec = search.generate(3, 1)
    assert (rec.c_found, rec.n_min, rec.graphs) == (2, 4, ["C~"])  # K4


def test_generate_emits_elementary_with_right_count():
    from exmatch.matching import count_perfect_matchings, is_elementary

    seen = []
    search.generate(5, 1, sink=seen.append)
    assert seen, "no graphs emitted"
    for g in seen:
        assert is_elementary(g)
        assert count_perfect_matchings(g) == 5


def test_generate_threshold_filters():
    # raising the threshold can only shrink the emitted set, never change
    # the extremal answer
    lo = search.generate(6, 1)
    hi = search.generate(6, lo.c_found)
    assert hi.c_found == lo.c_found
    assert hi.graphs == lo.graphs


def test_split_jobs_partition():
    jobs = search.split_jobs(6, 1, depth=2)
    assert len(jobs) > 1
    ids = [jd.job_id() for jd in jobs]
    assert len(set(ids)) == len(ids)
    # round-trip through JSON
    for jd in jobs:
        assert search.JobDescriptor.from_json(jd.to_json()) == jd


def test_split_jobs_merge_equals_single(tmp_path):
    p, c = 6, 1
    single = search.generate(p, c)
    parts = [search.run_job(jd, p, c) for jd in search.split_jobs(p, c, depth=2)]
    merged = search.merge_job_results(p, c, parts)
    assert merged == single


def test_checkpoint_resume(tmp_path):
    p, c = 6, 1
    jobs = search.split_jobs(p, c, depth=1)
    jd = max(jobs, key=lambda j: j.root or 0)
    full = search.run_job(jd, p, c)
    # run once to create the checkpoint, then again: the second run must
    # skip completed branches and still return the same emissions
    first = search.run_job(jd, p, c, checkpoint_dir=tmp_path)
    again = search.run_job(jd, p, c, checkpoint_dir=tmp_path)
    assert first == full and again == full


def test_checkpoint_rejects_foreign_file(tmp_path):
    p, c = 6, 1
    jobs = search.split_jobs(p, c, depth=1)
    jd = jobs[0]
    search.run_job(jd, p, c, checkpoint_dir=tmp_path)
    path = next(tmp_path.glob("job-*.json"))
    body = json.loads(path.read_text())
    body["completed"] = 999  # tamper without fixing the checksum
    path.write_text(json.dumps(body))
    with pytest.raises(search.CheckpointError):
        search.run_job(jd, p, c, checkpoint_dir=tmp_path)


def test_results_file_round_trip(tmp_path):
    rec = search.generate(4, 1)
    out = tmp_path / "p4.txt"
    search.write_results(out, rec, 1)
    header, lines = search.read_results(out)
    assert header["p"] == 4 and header["c_found"] == rec.c_found
    assert lines == rec.graphs
    for g6 in lines:
        graph6_decode(g6)  # parses


def test_prune_budget_soundness():
    # target already met and phi == p: subtree may continue at its size
    assert search.prune_budget(3, 5, 5, 3, 6) == 6
    # phi == p but excess unreachable: prune
    assert search.prune_budget(0, 5, 5, 3, 6) is None
    # matchings still to gain buy at most 2 excess each
    assert search.prune_budget(0, 3, 5, 5, 6) is None
    assert search.prune_budget(0, 3, 5, 4, 6) is not None
