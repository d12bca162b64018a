"""Time each hot kernel compiled and as plain Python, plus a whole build in both modes.

    python3 benchmarks/bench_kernels.py [--n 2000] [--repeat 3]

Prints one JSON object.  The whole-build comparison runs the fallback in a
child process with VSDO_NO_JIT=1, since the switch is read at import time.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from vsdo import _jit, kernels
from vsdo.generators import generate
from vsdo.graphcore import build_spt, centroid_bipartition


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(n):
    g = generate("path-shortcut", n, n + n // 10, 10, 1)
    tree = build_spt(g, 0)
    sp = centroid_bipartition(tree)
    ip, heads, wts = g.csr()
    p = sp.p
    p2 = 1 << max(0, (p - 1).bit_length())
    top = p2.bit_length() - 1
    interior = np.ones(g.n, dtype=bool)
    child_ptr, children = tree.children_csr()
    ev, er, el, _ = kernels.progressive_level(ip, heads, wts, sp.pos, sp.root_path, tree.dist, p, p2, top, 1e-3)
    on = sp.pos[ev] >= 0
    order = np.argsort(er[on], kind="stable")
    jump = (er[on][order], sp.pos[ev[on]][order], el[on][order], tree.dist[sp.root_path], p, p2, top)

    def pair(fn):
        return fn, fn.py_func

    def fresh(fn):
        return lambda *a: fn(np.full(p, kernels.INF), *a)

    return {
        "sssp": (*pair(kernels.sssp), (ip, heads, wts, 0, -1)),
        "restricted_sssp": (*pair(kernels.restricted_sssp), (ip, heads, wts, 0, interior)),
        "euler_tour": (*pair(kernels.euler_tour), (child_ptr, children, 0)),
        "progressive_level": (
            *pair(kernels.progressive_level),
            (ip, heads, wts, sp.pos, sp.root_path, tree.dist, p, p2, top, 1e-3),
        ),
        "suffix_jump_level": (
            fresh(kernels.suffix_jump_level),
            fresh(kernels.suffix_jump_level.py_func),
            jump,
        ),
    }, p


BUILD = """
import sys, time
from vsdo import build, _jit
from vsdo.generators import generate
g = generate("grid", {n}, seed=7)
build(g, 0, 0.25)
t0 = time.perf_counter()
build(g, 0, 0.25)
print(_jit.ENABLED, time.perf_counter() - t0)
"""


def whole_build(n, no_jit):
    env = dict(os.environ)
    env.pop("VSDO_NO_JIT", None)
    if no_jit:
        env["VSDO_NO_JIT"] = "1"
    out = subprocess.run([sys.executable, "-c", BUILD.format(n=n)], env=env, capture_output=True, text=True, check=True)
    enabled, secs = out.stdout.split()
    return enabled == "True", float(secs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--build-n", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _jit.ENABLED:
        sys.exit("compiled kernels are switched off; unset VSDO_NO_JIT")

    cases, p = kernel_cases(args.n)
    rows = {}
    for name, (fast_fn, slow_fn, a) in cases.items():
        fast_fn(*a)  # compile outside the timed region
        fast = best_of(lambda: fast_fn(*a), args.repeat)
        slow = best_of(lambda: slow_fn(*a), args.repeat)
        rows[name] = {"jit_s": fast, "python_s": slow, "speedup": slow / fast}

    _, jit_s = whole_build(args.build_n, False)
    _, py_s = whole_build(args.build_n, True)
    print(json.dumps({
        "n": args.n,
        "root_path": p,
        "kernels": rows,
        "build": {"n": args.build_n, "jit_s": jit_s, "python_s": py_s, "speedup": py_s / jit_s},
    }, indent=2))


if __name__ == "__main__":
    main()
