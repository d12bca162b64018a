"""Seeded instance families.

All draws come from ``numpy.random.default_rng(seed)`` (PCG64), so an
instance is fully determined by ``(kind, n, m, maxw, seed)``.
"""
import math

import numpy as np

from .graphcore import Digraph

KINDS = ("gnp", "layered", "path-shortcut", "grid")


def gnp(n, m, maxw, seed):
    """``m`` uniform random arcs; sparse draws leave parts unreachable."""
    rng = np.random.default_rng(seed)
    if n < 2:
        return Digraph(n)
    src = rng.integers(0, n, m)
    dst = (src + rng.integers(1, n, m)) % n
    return Digraph(n, src, dst, rng.integers(1, maxw + 1, m), min_weight=1)


def layered(n, m, maxw, seed):
    """Layers of about sqrt(n) vertices; most arcs go one layer down, a few go back up."""
    rng = np.random.default_rng(seed)
    if n < 2:
        return Digraph(n)
    width = max(1, math.isqrt(n))
    layer = np.arange(n) // width
    last = int(layer[-1])
    first = np.flatnonzero(layer == min(1, last))
    first = first[first != 0]
    src = [np.zeros(first.size, dtype=np.int64)]
    dst = [first]
    k = max(0, m - dst[0].size)
    u = rng.integers(0, n, k)
    down = rng.random(k) < 0.85
    target_layer = np.where(down, np.minimum(layer[u] + 1, last), rng.integers(0, last + 1, k))
    lo = target_layer * width
    hi = np.minimum(lo + width, n)
    v = lo + (rng.random(k) * (hi - lo)).astype(np.int64)
    src.append(u)
    dst.append(v)
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    return Digraph(n, src, dst, rng.integers(1, maxw + 1, src.size), min_weight=1)


def path_shortcut(n, m, maxw, seed):
    """A cheap backbone path 0 -> 1 -> ... -> n-1 plus costlier chords.

    The backbone keeps shortest-path trees deep, so root paths are long and
    the departing/jumping machinery is exercised.
    """
    rng = np.random.default_rng(seed)
    if n < 2:
        return Digraph(n)
    back_w = rng.integers(1, max(2, maxw // 4 + 1), n - 1)
    k = max(0, m - (n - 1))
    u = rng.integers(0, n, k)
    span = rng.integers(-n // 3, n // 3 + 1, k)
    v = np.clip(u + span, 0, n - 1)
    w = rng.integers(1, maxw + 1, k) + np.abs(span) * rng.integers(1, 3, k)
    src = np.concatenate([np.arange(n - 1), u])
    dst = np.concatenate([np.arange(1, n), v])
    return Digraph(n, src, dst, np.concatenate([back_w, w]), min_weight=1)


def grid(n, m, maxw, seed):
    """Bidirected near-square grid on ``n`` cells (``m`` is ignored)."""
    rng = np.random.default_rng(seed)
    cols = max(1, math.isqrt(n))
    ids = np.arange(n)
    right = ids[(ids % cols != cols - 1) & (ids + 1 < n)]
    down = ids[ids + cols < n]
    src = np.concatenate([right, right + 1, down, down + cols])
    dst = np.concatenate([right + 1, right, down + cols, down])
    return Digraph(n, src, dst, rng.integers(1, maxw + 1, src.size), min_weight=1)


def generate(kind, n, m=None, maxw=10, seed=0):
    if m is None:
        m = 4 * n
    try:
        fn = {"gnp": gnp, "layered": layered, "path-shortcut": path_shortcut, "grid": grid}[kind]
    except KeyError:
        raise ValueError(f"unknown graph type {kind!r}; choose from {KINDS}") from None
    return fn(int(n), int(m), int(maxw), int(seed))
