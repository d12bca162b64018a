"""Command line entry point: ``vsdo <command> ...``.

Vertex arguments and TSV streams are 1-indexed like DIMACS files.  Reports
are single JSON objects on stdout.  Exit codes: 0 ok, 1 verification
failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import _jit
from .baseline import exact_ssrp
from .dimacs import DimacsError, read_dimacs, write_dimacs
from .generators import KINDS, generate
from .graphcore import INF
from .oracle import build, depth_profile, route
from .pathfault import SZ_PROVIDERS
from .serialize import FormatError, deserialize, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(d):
    return "INF" if d == INF or d == math.inf else str(int(d))


def oracle_summary(o):
    upd = sum(node.pf.dp.tab.size for node in o.nodes.values() if not node.leaf)
    profile = depth_profile(o)
    return {
        "nodes": len(o.nodes),
        "depth": o.depth,
        "leaves": sum(node.leaf for node in o.nodes.values()),
        "upd_entries": upd,
        "f2_edges": sum(node.f2_edges for node in o.nodes.values()),
        "per_depth": [
            {"depth": d, "nodes": c, "vertices": v, "edges": e} for d, (c, v, e) in profile.items()
        ],
    }


def compare_all(o, exact, eps):
    """Check every (x, t) pair; returns (violations, max ratio, first violations)."""
    n, s = o.n, o.source
    bad = 0
    worst = 1.0
    sample = []
    for x in range(n):
        if x == s:
            continue
        for t in range(n):
            got = route(o, x, t)[0]
            want = int(exact[x, t])
            if want == INF:
                ok = got == INF
            else:
                ok = want <= got <= (1 + eps) * want
                if ok and want > 0:
                    worst = max(worst, got / want)
            if not ok:
                bad += 1
                if len(sample) < 10:
                    sample.append({"x": x + 1, "t": t + 1, "got": _fmt(got), "exact": _fmt(want)})
    return bad, worst, sample


def _time_queries(o, pairs):
    lat = np.empty(len(pairs))
    for k, (x, t) in enumerate(pairs):
        t0 = time.perf_counter()
        route(o, x, t)
        lat[k] = time.perf_counter() - t0
    if not len(pairs):
        return None, None
    return float(np.percentile(lat, 50) * 1e6), float(np.percentile(lat, 99) * 1e6)


def _random_pairs(n, s, count, seed):
    rng = np.random.default_rng(seed)
    if n < 2:
        return []
    xs = rng.integers(0, n - 1, count)
    xs = xs + (xs >= s)
    return list(zip(xs.tolist(), rng.integers(0, n, count).tolist()))


def _load_graph(path):
    try:
        g, _, _ = read_dimacs(path)
    except (OSError, DimacsError) as exc:
        raise UsageError(f"cannot read graph {path}: {exc}") from exc
    return g


def _load_oracle(path):
    try:
        with open(path, "rb") as fh:
            return deserialize(fh.read())
    except (OSError, FormatError) as exc:
        raise UsageError(f"cannot read oracle {path}: {exc}") from exc


def _vertex(arg, n, what):
    if not 1 <= arg <= n:
        raise UsageError(f"{what} {arg} out of range 1..{n}")
    return arg - 1


def _build_timed(g, s, eps, provider):
    try:
        t0 = time.perf_counter()
        o = build(g, s, eps, provider)
        return o, time.perf_counter() - t0
    except (ValueError, IndexError, OverflowError) as exc:
        raise UsageError(str(exc)) from exc


def _report(g, s, eps, provider, build_s, blob, o, **extra):
    out = {
        "n": g.n,
        "m": g.m,
        "W": g.max_weight,
        "source": s + 1,
        "eps": eps,
        "eps1": o.config.eps1,
        "eps2": o.config.eps2,
        "sz_provider": provider,
        "jit": _jit.ENABLED,
        "build_s": round(build_s, 6),
        "oracle_bytes": len(blob),
    }
    out.update(oracle_summary(o))
    out.update(extra)
    return out


def cmd_gen(args):
    g = generate(args.type, args.n, args.m, args.maxw, args.seed)
    note = f"vsdo gen --type {args.type} --n {args.n} --m {args.m} --maxw {args.maxw} --seed {args.seed}"
    with open(args.output, "w") as fh:
        write_dimacs(g, fh, comment=note)
    print(json.dumps({"n": g.n, "m": g.m, "W": g.max_weight, "output": args.output}))
    return EXIT_OK


def cmd_build(args):
    g = _load_graph(args.graph)
    s = _vertex(args.source, g.n, "source")
    o, secs = _build_timed(g, s, args.eps, args.sz_provider)
    blob = serialize(o)
    with open(args.output, "wb") as fh:
        fh.write(blob)
    print(json.dumps(_report(g, s, args.eps, args.sz_provider, secs, blob, o)))
    return EXIT_OK


def _answer(o, x, t):
    if x == o.source:
        raise UsageError("the source cannot fail")
    return _fmt(route(o, x, t)[0])


def cmd_query(args):
    o = _load_oracle(args.oracle)
    x = _vertex(args.x, o.n, "fault")
    t = _vertex(args.t, o.n, "target")
    print(_answer(o, x, t))
    return EXIT_OK


def cmd_batch(args):
    o = _load_oracle(args.oracle)
    fh = sys.stdin if args.queries == "-" else open(args.queries)
    out = []
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) != 2:
                raise UsageError(f"query line {lineno}: expected 'x<TAB>t'")
            try:
                xa, ta = int(parts[0]), int(parts[1])
            except ValueError:
                raise UsageError(f"query line {lineno}: non-integer vertex") from None
            x = _vertex(xa, o.n, "fault")
            t = _vertex(ta, o.n, "target")
            out.append(f"{xa}\t{ta}\t{_answer(o, x, t)}")
    if out:
        sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_verify(args):
    g = _load_graph(args.graph)
    if g.n > args.max_n:
        raise UsageError(f"n = {g.n} exceeds --max-n {args.max_n}; brute force would be too slow")
    s = _vertex(args.source, g.n, "source")
    o, secs = _build_timed(g, s, args.eps, args.sz_provider)
    blob = serialize(o)
    t0 = time.perf_counter()
    exact = exact_ssrp(g, s)
    base_s = time.perf_counter() - t0
    bad, worst, sample = compare_all(o, exact, args.eps)
    rep = _report(
        g, s, args.eps, args.sz_provider, secs, blob, o,
        baseline_s=round(base_s, 6),
        pairs=(g.n - 1) * g.n,
        max_ratio=worst,
        violations=bad,
        violation_sample=sample,
    )
    print(json.dumps(rep))
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_stats(args):
    with open(args.oracle, "rb") as fh:
        blob = fh.read()
    try:
        o = deserialize(blob)
    except FormatError as exc:
        raise UsageError(f"cannot read oracle {args.oracle}: {exc}") from exc
    out = {
        "n": o.n,
        "m": o.m,
        "W": o.max_weight,
        "source": o.source + 1,
        "eps": o.config.eps,
        "eps1": o.config.eps1,
        "eps2": o.config.eps2,
        "sz_provider": o.config.sz_provider,
        "oracle_bytes": len(blob),
    }
    out.update(oracle_summary(o))
    print(json.dumps(out))
    return EXIT_OK


def cmd_bench(args):
    g = _load_graph(args.graph)
    s = _vertex(args.source, g.n, "source")
    o, secs = _build_timed(g, s, args.eps, args.sz_provider)
    blob = serialize(o)
    pairs = _random_pairs(g.n, s, args.queries, args.seed)
    p50, p99 = _time_queries(o, pairs)
    rep = _report(
        g, s, args.eps, args.sz_provider, secs, blob, o,
        queries=len(pairs),
        query_p50_us=p50,
        query_p99_us=p99,
    )
    print(json.dumps(rep))
    return EXIT_OK


def make_parser():
    ap = argparse.ArgumentParser(prog="vsdo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded random graph in DIMACS format")
    p.add_argument("--type", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--maxw", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    def oracle_opts(p):
        p.add_argument("-g", "--graph", required=True)
        p.add_argument("-s", "--source", type=int, required=True)
        p.add_argument("--eps", type=float, required=True)
        p.add_argument("--sz-provider", choices=SZ_PROVIDERS, default="exact")

    p = sub.add_parser("build", help="build an oracle and write it to a VSDO1 file")
    oracle_opts(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer one query")
    p.add_argument("-o", "--oracle", required=True)
    p.add_argument("-x", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("batch", help="answer 'x<TAB>t' lines")
    p.add_argument("-o", "--oracle", required=True)
    p.add_argument("-q", "--queries", required=True, help="query file, or - for stdin")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("verify", help="compare every query with brute force")
    oracle_opts(p)
    p.add_argument("--max-n", type=int, default=300)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="describe a VSDO1 file")
    p.add_argument("-o", "--oracle", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="time construction and random queries")
    oracle_opts(p)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vsdo {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
