"""Approximate distances when the failed vertex lies on the root path.

A path-faulty query combines two estimates:

* the departing estimate ``dp_query``: the best path that leaves the root
  path before the fault and never returns to it after the fault;
* the jumping estimate ``dhat[f] + dist_T(z, t)``: a replacement path to the
  centroid followed by the tree path below it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graphcore import dijkstra
from .kernels import INF
from .progdijk import UpdTable, r_lookup

SZ_PROVIDERS = ("exact", "fast")


@dataclass(eq=False)
class DPOracle:
    tab: UpdTable
    pos: np.ndarray
    root_path: np.ndarray

    @property
    def p(self):
        return int(self.root_path.size)


@dataclass(eq=False)
class SZTable:
    dhat: np.ndarray  # indexed by position on the root path; dhat[0] unused
    provider: str = "exact"


@dataclass(eq=False)
class PFOracle:
    dp: DPOracle
    sz: SZTable
    dist_s: np.ndarray
    dist_sz: int


def dp_query(o, v_f, t):
    """Departing-path estimate for fault ``v_f`` (on the root path) and target ``t``.

    Returns an int64 value, ``INF`` when no departing path survives.
    """
    f = int(o.pos[v_f])
    if f < 0:
        raise ValueError(f"vertex {v_f} is not on the root path")
    if f == 0:
        raise ValueError("the source cannot fail")
    if t == o.root_path[0]:
        return 0
    if t == v_f:
        return INF
    tab = o.tab
    best = INF
    for i in range(tab.levels):
        j = f // (tab.p2 >> i)
        val = r_lookup(tab, i, j - 1, t)
        if val < best:
            best = val
    return best


def _exact_sz(g, split):
    out = np.full(split.p, INF, dtype=np.int64)
    z = split.z
    for f in range(1, split.p):
        dist, _ = dijkstra(g, split.root_path[0], split.root_path[f])
        out[f] = dist[z]
    return out


def _fast_sz(dp, dist_s):
    """dhat[f] = min over path positions c > f of dp_query(v_f, v_c) + dist_T(v_c, z)."""
    tab = dp.tab
    p = dp.p
    out = np.full(p, INF, dtype=np.int64)
    dist_pos = dist_s[dp.root_path]
    on_path = dp.pos >= 0
    for i in range(tab.levels):
        sl = tab.level_slice(i)
        owner = np.repeat(np.arange(tab.n), np.diff(tab.ptr[i]))
        keep = on_path[owner]
        rounds = tab.rounds[sl][keep]
        order = np.argsort(rounds, kind="stable")
        kernels.suffix_jump_level(
            out,
            rounds[order],
            dp.pos[owner[keep]][order],
            tab.lengths[sl][keep][order],
            dist_pos,
            p,
            tab.p2,
            i,
        )
    out[0] = INF
    return out


def build_sz_table(g, split, eps1, provider="exact", dp=None, dist_s=None):
    """Replacement distance from the source to the centroid for every path fault.

    ``exact`` runs one Dijkstra per fault.  ``fast`` derives the values from
    an already built DP-oracle: a path to ``z`` avoiding ``v_f`` first touches
    the path after ``v_f`` at some ``v_c`` through a departing path, then follows
    the path to ``z``; a min segment tree sweeps all ``v_c`` per level.  Both
    stay within ``[dist, (1 + eps1) * dist]``.
    """
    if provider == "exact":
        return SZTable(_exact_sz(g, split), "exact")
    if provider == "fast":
        if dp is None or dist_s is None:
            raise ValueError("fast provider needs the DP-oracle and tree distances")
        return SZTable(_fast_sz(dp, dist_s), "fast")
    raise ValueError(f"unknown sz provider {provider!r}; choose from {SZ_PROVIDERS}")


def pf_query(o, v_f, t):
    f = int(o.dp.pos[v_f])
    if f <= 0:
        raise ValueError(f"fault {v_f} must be a non-source root-path vertex")
    if o.dist_s[t] == INF:
        return INF
    best = dp_query(o.dp, v_f, t)
    jump = o.sz.dhat[f]
    if jump != INF:
        jump = jump + int(o.dist_s[t]) - o.dist_sz
        if jump < best:
            best = jump
    return best
