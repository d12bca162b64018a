"""VSDO1 binary format.  Layout is documented in docs/FORMAT.md."""
from __future__ import annotations

import struct

import numpy as np

from .graphcore import CentroidSplit, Digraph, SPTree
from .oracle import VSDO, BuildConfig, OracleNode
from .pathfault import DPOracle, PFOracle, SZTable
from .progdijk import UpdTable

MAGIC = b"VSDO1"
VERSION = 1
_PROVIDERS = ("exact", "fast")

_HEADER = struct.Struct("<5sHQQQQdddBQ")
_NODE = struct.Struct("<QBIIQQ")
_LEAF = struct.Struct("<I")
_INNER = struct.Struct("<IIIIQ")


class FormatError(ValueError):
    """Raised for streams that are not valid VSDO1 oracles."""


def _arr(a, dtype):
    return np.ascontiguousarray(a, dtype=np.dtype(dtype).newbyteorder("<")).tobytes()


def serialize(o):
    cfg = o.config
    out = [
        _HEADER.pack(
            MAGIC,
            VERSION,
            o.n,
            o.m,
            o.max_weight,
            o.source,
            cfg.eps,
            cfg.eps1,
            cfg.eps2,
            _PROVIDERS.index(cfg.sz_provider),
            len(o.nodes),
        )
    ]
    for nid in sorted(o.nodes):
        node = o.nodes[nid]
        k = node.size
        spt = node.spt
        out.append(_NODE.pack(nid, 0 if node.leaf else 1, k, node.source, node.m, node.f2_edges))
        out += [_arr(node.vertices, "i4"), _arr(spt.parent, "i4"), _arr(spt.dist, "i8")]
        out += [_arr(spt.tin, "i4"), _arr(spt.tout, "i4")]
        if node.leaf:
            g = node.graph
            out.append(_LEAF.pack(g.m))
            out += [_arr(g.src, "i4"), _arr(g.dst, "i4"), _arr(g.w, "i8")]
            continue
        split = node.split
        tab = node.pf.dp.tab
        out.append(_INNER.pack(split.z, split.p, tab.p2, tab.levels, tab.size))
        side = split.in_t1.astype(np.uint8) | (split.in_t2.astype(np.uint8) << 1)
        out += [_arr(split.root_path, "i4"), _arr(side, "u1")]
        out += [_arr(tab.ptr, "u4"), _arr(tab.rounds, "i4"), _arr(tab.lengths, "i8")]
        out += [_arr(tab.branches, "i4"), _arr(node.pf.sz.dhat, "i8")]
    return b"".join(out)


class _Reader:
    def __init__(self, data):
        self.buf = memoryview(data)
        self.at = 0

    def take(self, nbytes):
        end = self.at + nbytes
        if end > len(self.buf):
            raise FormatError("truncated stream")
        chunk = self.buf[self.at:end]
        self.at = end
        return chunk

    def unpack(self, st):
        return st.unpack(self.take(st.size))

    def array(self, dtype, count):
        dt = np.dtype(dtype).newbyteorder("<")
        raw = np.frombuffer(self.take(dt.itemsize * count), dtype=dt)
        return raw.astype(np.dtype(dtype).newbyteorder("="))


def deserialize(data):
    r = _Reader(data)
    if len(data) < len(MAGIC) or bytes(data[: len(MAGIC)]) != MAGIC:
        raise FormatError("bad magic; not a VSDO1 stream")
    magic, version, n, m, w, source, eps, eps1, eps2, prov, count = r.unpack(_HEADER)
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    if prov >= len(_PROVIDERS):
        raise FormatError(f"unknown provider code {prov}")
    cfg = BuildConfig(eps, eps1, eps2, sz_provider=_PROVIDERS[prov])
    o = VSDO(cfg, {}, n, m, w, source)
    for _ in range(count):
        nid, kind, k, ls, node_m, f2 = r.unpack(_NODE)
        vertices = r.array("i4", k).astype(np.int64)
        parent = r.array("i4", k).astype(np.int64)
        dist = r.array("i8", k)
        tin = r.array("i4", k).astype(np.int64)
        tout = r.array("i4", k).astype(np.int64)
        spt = SPTree(ls, parent, dist, tin, tout)
        node = OracleNode(nid, vertices, ls, spt, m=node_m, f2_edges=f2)
        if kind == 0:
            (e,) = r.unpack(_LEAF)
            src = r.array("i4", e)
            dst = r.array("i4", e)
            wt = r.array("i8", e)
            node.graph = Digraph(k, src, dst, wt)
        elif kind == 1:
            z, p, p2, levels, size = r.unpack(_INNER)
            root_path = r.array("i4", p).astype(np.int64)
            side = r.array("u1", k)
            ptr = r.array("u4", levels * (k + 1)).astype(np.int64).reshape(levels, k + 1)
            tab = UpdTable(
                p=p,
                p2=p2,
                eps2=eps2,
                ptr=ptr,
                rounds=r.array("i4", size).astype(np.int64),
                lengths=r.array("i8", size),
                branches=r.array("i4", size).astype(np.int64),
            )
            dhat = r.array("i8", p)
            pos = np.full(k, -1, dtype=np.int64)
            pos[root_path] = np.arange(p)
            split = CentroidSplit(z, (side & 1).astype(bool), (side & 2).astype(bool), root_path, pos)
            node.split = split
            dp = DPOracle(tab, pos, root_path)
            node.pf = PFOracle(dp, SZTable(dhat, cfg.sz_provider), dist, int(dist[z]))
        else:
            raise FormatError(f"unknown node kind {kind}")
        o.nodes[nid] = node
    if r.at != len(r.buf):
        raise FormatError("trailing bytes after last node")
    if 1 not in o.nodes:
        raise FormatError("missing root node")
    return o


def save(o, path):
    with open(path, "wb") as fh:
        fh.write(serialize(o))


def load(path):
    with open(path, "rb") as fh:
        return deserialize(fh.read())
