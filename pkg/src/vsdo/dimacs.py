"""DIMACS shortest-path (.gr) reading and writing.

Files are 1-indexed; graphs in memory are 0-indexed.
"""
import numpy as np

from .graphcore import Digraph


class DimacsError(ValueError):
    pass


def parse_dimacs(stream):
    """Parse a ``p sp n m`` file; returns ``(graph, declared_n, declared_m)``.

    Self-loops count toward the declared ``m`` but are dropped from the graph.
    """
    if isinstance(stream, str):
        stream = stream.splitlines()
    n = m = None
    src, dst, w = [], [], []
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "sp":
                raise DimacsError(f"line {lineno}: expected 'p sp <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer size") from None
            if n < 0 or m < 0:
                raise DimacsError(f"line {lineno}: negative size")
        elif tag == "a":
            if n is None:
                raise DimacsError(f"line {lineno}: arc before problem line")
            if len(parts) != 4:
                raise DimacsError(f"line {lineno}: expected 'a <u> <v> <w>'")
            try:
                u, v, wt = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer field") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: vertex out of range 1..{n}")
            if wt < 1:
                raise DimacsError(f"line {lineno}: weight must be >= 1")
            src.append(u - 1)
            dst.append(v - 1)
            w.append(wt)
        else:
            raise DimacsError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise DimacsError("missing problem line")
    if len(src) != m:
        raise DimacsError(f"declared {m} arcs, found {len(src)}")
    return Digraph(n, src, dst, w, min_weight=1), n, m


def write_dimacs(g, fh, comment=None):
    if comment:
        for line in comment.splitlines():
            fh.write(f"c {line}\n")
    fh.write(f"p sp {g.n} {g.m}\n")
    rows = np.column_stack([g.src + 1, g.dst + 1, g.w])
    for u, v, w in rows.tolist():
        fh.write(f"a {u} {v} {w}\n")


def read_dimacs(path):
    with open(path) as fh:
        return parse_dimacs(fh)
