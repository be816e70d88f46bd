"""Command-line front end.

Subcommands: generate, table, inspect, verify, spires.  Everything a run
produces is plain text (graph6 lines, CSV, JSON) so results diff cleanly
across machines; a manifest JSON records how each result file was made.

Exit codes: 0 ok, 2 usage / refused input, 3 verification failure,
4 interrupted (progress saved to checkpoints when a directory was given).
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from exmatch import __version__, barriers, matching, oracle, spires
from exmatch import search as searchmod
from exmatch.graph import Graph, Graph6Error, GraphError, graph6_decode, graph6_encode, iter_bits

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_INTERRUPTED = 4

CHECKPOINT_ENV = "EXMATCH_CHECKPOINT_DIR"


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


class RunManifest:
    """Append-only record of one invocation; serialized next to results."""

    def __init__(self, command: str, parameters: dict):
        self.data = {
            "command": command,
            "parameters": parameters,
            "version": __version__,
            "started": _now(),
            "finished": None,
            "result_files": [],
            "jobs": {},
        }

    def add_file(self, path: str) -> None:
        self.data["result_files"].append(str(path))

    def job_done(self, job_id: str) -> None:
        self.data["jobs"][job_id] = "done"

    def write(self, path: str) -> None:
        self.data["finished"] = _now()
        with open(path, "w") as fh:
            json.dump(self.data, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _auto_excess(p: int, cache: dict[int, int]) -> int:
    """Lower bound for c_p from divisor runs: the best additive spire
    bound over proper factorizations.  Never below 1 (the search treats
    the threshold as a floor, and excess-0 families are infinite)."""
    if p in cache:
        return max(cache[p], 1)
    best = 0
    for facs in spires.factorizations(p):
        if facs == (p,):
            continue
        best = max(best, sum(_c_p(q, cache) for q in facs))
    return max(best, 1)


def _c_p(q: int, cache: dict[int, int]) -> int:
    if q == 1:
        return 0
    if q not in cache:
        rec = searchmod.generate(q, _auto_excess(q, cache))
        if rec.c_found is None:
            raise GraphError(f"no elementary graph with {q} matchings found")
        cache[q] = rec.c_found
    return cache[q]


def _run_generate(p: int, c: int, jobs: int, split_depth: int,
                  checkpoint_dir, manifest: RunManifest):
    if jobs <= 1 and split_depth == 0 and checkpoint_dir is None:
        return searchmod.generate(p, c)
    depth = split_depth if split_depth else (2 if jobs > 1 else 1)
    descriptors = searchmod.split_jobs(p, c, depth)

    def one(jd):
        part = searchmod.run_job(jd, p, c, checkpoint_dir=checkpoint_dir)
        manifest.job_done(jd.job_id())
        return part

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(one, descriptors))
    else:
        parts = [one(jd) for jd in descriptors]
    return searchmod.merge_job_results(p, c, parts)


def cmd_generate(args) -> int:
    if args.min_excess == "auto":
        c = _auto_excess(args.p, {})
    else:
        c = int(args.min_excess)
        if c < 1:
            print("error: --min-excess must be >= 1 (or 'auto')", file=sys.stderr)
            return EXIT_USAGE
    try:
        if args.p > 1:
            searchmod.size_bound(args.p, c)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    checkpoint_dir = args.checkpoint_dir or os.environ.get(CHECKPOINT_ENV)
    if checkpoint_dir:
        os.makedirs(checkpoint_dir, exist_ok=True)
    manifest = RunManifest("generate", {
        "p": args.p, "min_excess": c, "jobs": args.jobs,
        "split_depth": args.split_depth, "checkpoint_dir": checkpoint_dir,
    })
    try:
        record = _run_generate(args.p, c, args.jobs, args.split_depth,
                               checkpoint_dir, manifest)
    except KeyboardInterrupt:
        print("interrupted" + (", checkpoints kept" if checkpoint_dir else ""),
              file=sys.stderr)
        return EXIT_INTERRUPTED

    if args.out:
        searchmod.write_results(args.out, record, c)
        manifest.add_file(args.out)
        manifest.write(args.out + ".manifest.json")
    print(f"p={record.p} c_found={record.c_found} n_p={record.n_min} "
          f"N_p={record.N_p} graphs={record.count}")
    if not args.out:
        for g6 in record.graphs:
            print(g6)
    return EXIT_OK


def cmd_table(args) -> int:
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out)
    writer.writerow(["p", "c_p", "n_p", "N_p", "count"])
    cache: dict[int, int] = {}
    try:
        for p in range(1, args.max_p + 1):
            rec = searchmod.generate(p, _auto_excess(p, cache))
            if rec.c_found is None:
                raise GraphError(f"empty result at p={p}")
            cache[p] = rec.c_found
            writer.writerow([p, rec.c_found, rec.n_min, rec.N_p, rec.count])
            if args.out:
                out.flush()
    finally:
        if args.out:
            out.close()
    if args.out:
        manifest = RunManifest("table", {"max_p": args.max_p})
        manifest.add_file(args.out)
        manifest.write(args.out + ".manifest.json")
    return EXIT_OK


def _fmt_set(mask: int) -> str:
    return "{" + ",".join(str(v) for v in iter_bits(mask)) + "}"


def cmd_inspect(args) -> int:
    try:
        g = graph6_decode(args.graph)
    except (Graph6Error, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    phi = matching.count_perfect_matchings(g)
    print(f"graph6    {graph6_encode(g).decode()}")
    print(f"n, e      {g.n}, {g.e}")
    print(f"phi       {phi}")
    print(f"excess    {g.e - g.n * g.n // 4}")
    ext, free = matching.classify_edges(g)
    print(f"edges     {len(ext)} extendable, {len(free)} free")
    if free:
        print(f"free      {sorted(free)}")
    print(f"elementary      {matching.is_elementary(g)}")
    print(f"1-extendable    {matching.is_one_extendable(g)}")
    if g.n > 12:
        print("barriers  skipped (n > 12)")
        return EXIT_OK
    cat = barriers.barrier_catalog_bruteforce(g)
    print(f"barriers  {len(cat)}")
    print(f"maximal   {[_fmt_set(b) for b in cat.maximal_barriers()]}")
    if phi and matching.is_one_extendable(g):
        best, covers = barriers.max_excess_over_E(g, cat)
        print(f"max fill excess  {best} ({len(covers)} cover sets)")
        for cs in covers:
            print(f"  fill    {[_fmt_set(b) for b in cs]}")
    return EXIT_OK


def cmd_verify(args) -> int:
    n_cap = min(args.max_n, oracle.MAX_ENUM_N)
    failures = 0
    for p in range(1, args.max_p + 1):
        rec = searchmod.generate(p, 1)
        brute_c, witnesses = oracle.brute_extremal(p, n_cap)
        from exmatch.canonical import canonical_form
        brute_keys = sorted(
            graph6_encode(canonical_form(w)).decode() for w in witnesses)
        ok = rec.c_found == brute_c and rec.graphs == brute_keys
        print(f"p={p}: generate c={rec.c_found} ({rec.count} graphs) "
              f"oracle c={brute_c} ({len(witnesses)} graphs) "
              f"{'ok' if ok else 'MISMATCH'}")
        if not ok:
            failures += 1
    if failures:
        print(f"{failures} mismatches", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_spires(args) -> int:
    cache: dict[int, int] = {}
    db = {}
    for q in sorted(spires._divisors(args.p)):
        db[q] = searchmod.generate(q, _auto_excess(q, cache))
        cache[q] = db[q].c_found
    c_p, n_p, report = spires.characterize_extremal(args.p, db)
    blob = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(blob)
        manifest = RunManifest("spires", {"p": args.p})
        manifest.add_file(args.out)
        manifest.write(args.out + ".manifest.json")
        print(f"p={args.p} c_p={c_p} n_p={n_p} -> {args.out}")
    else:
        sys.stdout.write(blob)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exmatch")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="enumerate extremal graphs for one p")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--min-excess", default="auto",
                   help="excess threshold, or 'auto' to bootstrap from divisors")
    g.add_argument("--out", help="results file (graph6 lines after a JSON header)")
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("--split-depth", type=int, default=0)
    g.add_argument("--checkpoint-dir",
                   help=f"resume-able job checkpoints (or ${CHECKPOINT_ENV})")
    g.set_defaults(func=cmd_generate)

    t = sub.add_parser("table", help="CSV of p, c_p, n_p, N_p, count")
    t.add_argument("--max-p", type=int, required=True)
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    i = sub.add_parser("inspect", help="matching/barrier report for one graph")
    i.add_argument("--graph", required=True, help="graph6 string")
    i.set_defaults(func=cmd_inspect)

    v = sub.add_parser("verify", help="differential test against the brute-force oracle")
    v.add_argument("--max-p", type=int, default=8)
    v.add_argument("--max-n", type=int, default=10)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spires", help="layered-chamber structure report for one p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_spires)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "p", 1) < 1 or getattr(args, "max_p", 1) < 1:
        print("error: p must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
