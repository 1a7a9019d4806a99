"""Batch evaluation kernel for the census.

The reference engine in patchwork.py builds rich objects and asserts every
topological invariant; this module compiles the same computation down to
flat integer arrays and a numba kernel able to classify hundreds of
thousands of sign classes per second per core.

A scheme is returned as its canonical tree code: the balanced-parenthesis
bitstring (1 = open, 0 = close) of the region tree rooted at the root
region, children ordered descending by (bit length, value).  Codes are
compared and counted as plain integers; the python layer decodes each
distinct code once and cross-checks it against the reference engine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from .patchwork import Surface, build_surface
from .signs import anchor_positions, free_positions
from .triangulation import Triangulation

TABLE_SLOTS = 4096  # per-chunk open-addressing table, power of two
TABLE_CAP = 1024  # distinct schemes one chunk may produce
LOOP_CAP = 32


@dataclass
class CompiledSurface:
    degree: int
    n_free: int
    anchor_mask: np.uint64
    free_pos: np.ndarray  # int64[n_free], lex positions of free bits
    pos_base: np.ndarray  # int64[n_pos]
    pos_off: np.ndarray  # uint8[n_pos]
    pos_top: np.ndarray  # int32[n_pos] cover vertex ids
    pos_bot: np.ndarray
    edge_pa: np.ndarray  # int32[n_edges]
    edge_pb: np.ndarray
    edge_va: np.ndarray
    edge_vb: np.ndarray
    edge_glued: np.ndarray  # uint8
    edge_t1: np.ndarray
    edge_t2: np.ndarray
    n_vert: int
    n_cover: int
    n_tris: int
    tri_e: np.ndarray  # int32[n_tris, 3]
    vert_pos: np.ndarray  # int32[n_vert]


_COMPILED_CACHE: dict[tuple, CompiledSurface] = {}


def compile_surface(t: Triangulation) -> CompiledSurface:
    key = (t.degree, t.triangles)
    hit = _COMPILED_CACHE.get(key)
    if hit is not None:
        return hit
    surf: Surface = build_surface(t)
    d = t.degree
    n_pos = len(surf.positions)
    n_edges = len(surf.edges)

    pos_top = np.arange(n_pos, dtype=np.int32)
    pos_bot = np.empty(n_pos, dtype=np.int32)
    for i, (x, y) in enumerate(surf.positions):
        if abs(x) + abs(y) == d:
            pos_bot[i] = surf.pos_index[(-x, -y)]
        else:
            pos_bot[i] = n_pos + i

    edge_pa = np.empty(n_edges, dtype=np.int32)
    edge_pb = np.empty(n_edges, dtype=np.int32)
    edge_va = np.empty(n_edges, dtype=np.int32)
    edge_vb = np.empty(n_edges, dtype=np.int32)
    edge_glued = np.empty(n_edges, dtype=np.uint8)
    edge_t1 = np.empty(n_edges, dtype=np.int32)
    edge_t2 = np.empty(n_edges, dtype=np.int32)
    for i, e in enumerate(surf.edges):
        edge_pa[i] = e.pa
        edge_pb[i] = e.pb
        edge_va[i] = e.va
        edge_vb[i] = e.vb
        edge_glued[i] = 1 if e.glued else 0
        edge_t1[i] = min(e.tris)
        edge_t2[i] = max(e.tris)

    comp = CompiledSurface(
        degree=d,
        n_free=len(free_positions(d)),
        anchor_mask=np.uint64(sum(1 << p for p in anchor_positions(d))),
        free_pos=np.array(free_positions(d), dtype=np.int64),
        pos_base=np.array(surf.sign_base, dtype=np.int64),
        pos_off=np.array(surf.sign_off, dtype=np.uint8),
        pos_top=pos_top,
        pos_bot=pos_bot,
        edge_pa=edge_pa,
        edge_pb=edge_pb,
        edge_va=edge_va,
        edge_vb=edge_vb,
        edge_glued=edge_glued,
        edge_t1=edge_t1,
        edge_t2=edge_t2,
        n_vert=len(surf.vertices),
        n_cover=2 * n_pos,
        n_tris=len(surf.triangles),
        tri_e=np.array(surf.tri_edges, dtype=np.int32),
        vert_pos=np.array(surf.vertex_pos, dtype=np.int32),
    )
    if len(_COMPILED_CACHE) > 64:
        _COMPILED_CACHE.clear()
    _COMPILED_CACHE[key] = comp
    return comp


@njit(cache=True, inline="always")
def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


@njit(cache=True)
def _mask_from_index(k, anchor_mask, free_pos):
    mask = anchor_mask
    m = free_pos.shape[0]
    kk = np.uint64(k)
    for t in range(m):
        if (kk >> np.uint64(t)) & np.uint64(1):
            mask |= np.uint64(1) << np.uint64(free_pos[m - 1 - t])
    return mask


@njit(cache=True)
def _eval_mask(
    mask,
    degree,
    pos_base,
    pos_off,
    pos_top,
    pos_bot,
    edge_pa,
    edge_pb,
    edge_va,
    edge_vb,
    edge_glued,
    edge_t1,
    edge_t2,
    n_vert,
    n_cover,
    tri_e,
    vert_pos,
    posbit,
    ufv,
    ufc,
    tri_cnt,
    tri_b0,
    tri_b1,
    edge_seen,
    reg_of_root,
    reg_vertex,
    oval_a,
    oval_b,
    node_parent,
    node_order,
    code_buf,
    len_buf,
    child_code,
    child_len,
):
    """Classify one sign mask; returns (scheme_code, loops) or (0, -1) when a
    structural invariant fails (which indicates a bug or bad input)."""
    n_pos = pos_base.shape[0]
    n_edges = edge_pa.shape[0]
    n_tris = tri_e.shape[0]

    for i in range(n_pos):
        posbit[i] = np.uint8((mask >> np.uint64(pos_base[i])) & np.uint64(1)) ^ pos_off[i]

    for v in range(n_vert):
        ufv[v] = v
    for c in range(n_cover):
        ufc[c] = c
    for t in range(n_tris):
        tri_cnt[t] = 0

    for e in range(n_edges):
        ba = posbit[edge_pa[e]]
        bb = posbit[edge_pb[e]]
        if ba == bb:
            ra = _find(ufv, edge_va[e])
            rb = _find(ufv, edge_vb[e])
            if ra != rb:
                ufv[rb] = ra
            ca = _find(ufc, pos_top[edge_pa[e]])
            cb = _find(ufc, pos_top[edge_pb[e]])
            if ca != cb:
                ufc[cb] = ca
            ca = _find(ufc, pos_bot[edge_pa[e]])
            cb = _find(ufc, pos_bot[edge_pb[e]])
            if ca != cb:
                ufc[cb] = ca
            edge_seen[e] = 1  # monochrome edges need no traversal
        else:
            edge_seen[e] = 0
            c = tri_cnt[edge_t1[e]]
            if c == 0:
                tri_b0[edge_t1[e]] = e
            else:
                tri_b1[edge_t1[e]] = e
            tri_cnt[edge_t1[e]] = c + 1
            c = tri_cnt[edge_t2[e]]
            if c == 0:
                tri_b0[edge_t2[e]] = e
            else:
                tri_b1[edge_t2[e]] = e
            tri_cnt[edge_t2[e]] = c + 1

    for t in range(n_tris):
        if tri_cnt[t] != 0 and tri_cnt[t] != 2:
            return np.uint64(0), -1

    # regions: compact ids
    n_reg = 0
    for v in range(n_vert):
        reg_of_root[v] = -1
    for v in range(n_vert):
        r = _find(ufv, v)
        if reg_of_root[r] < 0:
            reg_of_root[r] = n_reg
            reg_vertex[n_reg] = v
            n_reg += 1

    # loops
    n_loops = 0
    n_ovals = 0
    pseudo_region = -1
    for e0 in range(n_edges):
        if edge_seen[e0]:
            continue
        crossings = 0
        tid = edge_t1[e0]
        eid = e0
        while True:
            edge_seen[eid] = 1
            crossings += edge_glued[eid]
            nxt = tri_b0[tid] if tri_b1[tid] == eid else tri_b1[tid]
            tid = edge_t2[nxt] if edge_t1[nxt] == tid else edge_t1[nxt]
            eid = nxt
            if eid == e0 and tid == edge_t1[e0]:
                break
        ra = reg_of_root[_find(ufv, edge_va[e0])]
        rb = reg_of_root[_find(ufv, edge_vb[e0])]
        if ra == rb:
            if (crossings & 1) == 0 or pseudo_region >= 0:
                return np.uint64(0), -1
            pseudo_region = ra
        else:
            if (crossings & 1) == 1 or n_ovals >= oval_a.shape[0]:
                return np.uint64(0), -1
            oval_a[n_ovals] = ra
            oval_b[n_ovals] = rb
            n_ovals += 1
        n_loops += 1

    if n_reg != n_ovals + 1:
        return np.uint64(0), -1

    # root region
    if degree & 1:
        if pseudo_region < 0:
            return np.uint64(0), -1
        root = pseudo_region
    else:
        root = -1
        for r in range(n_reg):
            p = vert_pos[reg_vertex[r]]
            if _find(ufc, pos_top[p]) == _find(ufc, pos_bot[p]):
                if root >= 0:
                    return np.uint64(0), -1
                root = r
        if root < 0:
            return np.uint64(0), -1

    # orient the oval tree away from the root (BFS)
    for r in range(n_reg):
        node_parent[r] = -2
    node_parent[root] = -1
    node_order[0] = root
    head, tail = 0, 1
    while head < tail:
        r = node_order[head]
        head += 1
        for i in range(n_ovals):
            if oval_a[i] == r and node_parent[oval_b[i]] == -2:
                node_parent[oval_b[i]] = r
                node_order[tail] = oval_b[i]
                tail += 1
            elif oval_b[i] == r and node_parent[oval_a[i]] == -2:
                node_parent[oval_a[i]] = r
                node_order[tail] = oval_a[i]
                tail += 1
    if tail != n_reg:
        return np.uint64(0), -1

    # canonical balanced-parenthesis code, children sorted descending
    for r in range(n_reg):
        code_buf[r] = np.uint64(0)
        len_buf[r] = 0
    for oi in range(n_reg - 1, -1, -1):
        node = node_order[oi]
        n_ch = 0
        for r in range(n_reg):
            if node_parent[r] == node:
                child_code[n_ch] = code_buf[r]
                child_len[n_ch] = len_buf[r]
                n_ch += 1
        # insertion sort descending by (len, code)
        for a in range(1, n_ch):
            cc = child_code[a]
            cl = child_len[a]
            b = a - 1
            while b >= 0 and (
                child_len[b] < cl or (child_len[b] == cl and child_code[b] < cc)
            ):
                child_code[b + 1] = child_code[b]
                child_len[b + 1] = child_len[b]
                b -= 1
            child_code[b + 1] = cc
            child_len[b + 1] = cl
        acc = np.uint64(1)
        total = 1
        for a in range(n_ch):
            acc = (acc << np.uint64(child_len[a])) | child_code[a]
            total += child_len[a]
        acc = acc << np.uint64(1)
        total += 1
        code_buf[node] = acc
        len_buf[node] = total

    return code_buf[root], n_loops


@njit(cache=True, parallel=True)
def _census_kernel(
    indices,
    degree,
    anchor_mask,
    free_pos,
    pos_base,
    pos_off,
    pos_top,
    pos_bot,
    edge_pa,
    edge_pb,
    edge_va,
    edge_vb,
    edge_glued,
    edge_t1,
    edge_t2,
    n_vert,
    n_cover,
    tri_e,
    vert_pos,
    chunk_size,
    out_keys,
    out_counts,
    out_reps,
    out_loops,
    out_n,
    out_hist,
    out_err,
):
    """Evaluate canonical class indices chunkwise; per-chunk histograms are
    merged deterministically by the caller."""
    n = indices.shape[0]
    n_chunks = out_n.shape[0]
    n_pos = pos_base.shape[0]
    n_tris = tri_e.shape[0]
    n_edges = edge_pa.shape[0]
    for c in prange(n_chunks):
        lo = c * chunk_size
        hi = min(lo + chunk_size, n)
        posbit = np.empty(n_pos, dtype=np.uint8)
        ufv = np.empty(n_vert, dtype=np.int32)
        ufc = np.empty(n_cover, dtype=np.int32)
        tri_cnt = np.empty(n_tris, dtype=np.uint8)
        tri_b0 = np.empty(n_tris, dtype=np.int32)
        tri_b1 = np.empty(n_tris, dtype=np.int32)
        edge_seen = np.empty(n_edges, dtype=np.uint8)
        reg_of_root = np.empty(n_vert, dtype=np.int32)
        reg_vertex = np.empty(n_vert, dtype=np.int32)
        oval_a = np.empty(64, dtype=np.int32)
        oval_b = np.empty(64, dtype=np.int32)
        node_parent = np.empty(66, dtype=np.int32)
        node_order = np.empty(66, dtype=np.int32)
        code_buf = np.empty(66, dtype=np.uint64)
        len_buf = np.empty(66, dtype=np.int32)
        child_code = np.empty(66, dtype=np.uint64)
        child_len = np.empty(66, dtype=np.int32)

        slots = np.full(TABLE_SLOTS, -1, dtype=np.int32)
        keys = np.empty(TABLE_CAP, dtype=np.uint64)
        counts = np.zeros(TABLE_CAP, dtype=np.int64)
        reps = np.empty(TABLE_CAP, dtype=np.int64)
        rloops = np.empty(TABLE_CAP, dtype=np.int32)
        nkeys = 0

        for ii in range(lo, hi):
            k = indices[ii]
            mask = _mask_from_index(k, anchor_mask, free_pos)
            code, loops = _eval_mask(
                mask, degree,
                pos_base, pos_off, pos_top, pos_bot,
                edge_pa, edge_pb, edge_va, edge_vb, edge_glued, edge_t1, edge_t2,
                n_vert, n_cover, tri_e, vert_pos,
                posbit, ufv, ufc, tri_cnt, tri_b0, tri_b1, edge_seen,
                reg_of_root, reg_vertex, oval_a, oval_b,
                node_parent, node_order, code_buf, len_buf, child_code, child_len,
            )
            if loops < 0:
                out_err[c] = k + 1
                break
            if loops < LOOP_CAP:
                out_hist[c, loops] += 1
            slot = np.int64(code * np.uint64(0x9E3779B97F4A7C15)) % TABLE_SLOTS
            if slot < 0:
                slot += TABLE_SLOTS
            while True:
                s = slots[slot]
                if s < 0:
                    if nkeys >= TABLE_CAP:
                        out_err[c] = -1
                        break
                    slots[slot] = nkeys
                    keys[nkeys] = code
                    counts[nkeys] = 1
                    reps[nkeys] = k
                    rloops[nkeys] = loops
                    nkeys += 1
                    break
                if keys[s] == code:
                    counts[s] += 1
                    break
                slot = (slot + 1) % TABLE_SLOTS
            if out_err[c] != 0:
                break

        out_n[c] = nkeys
        for s in range(nkeys):
            out_keys[c, s] = keys[s]
            out_counts[c, s] = counts[s]
            out_reps[c, s] = reps[s]
            out_loops[c, s] = rloops[s]


def run_census(comp: CompiledSurface, indices: np.ndarray, chunk_size: int = 1 << 16):
    """Evaluate the given canonical class indices.

    Returns (keys -> (count, representative index, loops), loop histogram).
    """
    n = len(indices)
    n_chunks = max(1, (n + chunk_size - 1) // chunk_size)
    out_keys = np.zeros((n_chunks, TABLE_CAP), dtype=np.uint64)
    out_counts = np.zeros((n_chunks, TABLE_CAP), dtype=np.int64)
    out_reps = np.zeros((n_chunks, TABLE_CAP), dtype=np.int64)
    out_loops = np.zeros((n_chunks, TABLE_CAP), dtype=np.int32)
    out_n = np.zeros(n_chunks, dtype=np.int32)
    out_hist = np.zeros((n_chunks, LOOP_CAP), dtype=np.int64)
    out_err = np.zeros(n_chunks, dtype=np.int64)

    _census_kernel(
        indices,
        comp.degree,
        comp.anchor_mask,
        comp.free_pos,
        comp.pos_base,
        comp.pos_off,
        comp.pos_top,
        comp.pos_bot,
        comp.edge_pa,
        comp.edge_pb,
        comp.edge_va,
        comp.edge_vb,
        comp.edge_glued,
        comp.edge_t1,
        comp.edge_t2,
        comp.n_vert,
        comp.n_cover,
        comp.tri_e,
        comp.vert_pos,
        chunk_size,
        out_keys,
        out_counts,
        out_reps,
        out_loops,
        out_n,
        out_hist,
        out_err,
    )
    bad = np.nonzero(out_err)[0]
    if len(bad):
        raise RuntimeError(
            f"kernel invariant failure in chunk {bad[0]} (marker {out_err[bad[0]]})"
        )

    merged: dict[int, list] = {}
    for c in range(n_chunks):
        for s in range(out_n[c]):
            key = int(out_keys[c, s])
            ent = merged.get(key)
            if ent is None:
                merged[key] = [int(out_counts[c, s]), int(out_reps[c, s]), int(out_loops[c, s])]
            else:
                ent[0] += int(out_counts[c, s])
    hist = out_hist.sum(axis=0)
    return merged, hist


def eval_indices(comp: CompiledSurface, indices: np.ndarray):
    """Scheme code and loop count for every index, in order."""
    out_code = np.zeros(len(indices), dtype=np.uint64)
    out_loops = np.zeros(len(indices), dtype=np.int32)
    _eval_indices_kernel(
        indices,
        comp.degree,
        comp.anchor_mask,
        comp.free_pos,
        comp.pos_base,
        comp.pos_off,
        comp.pos_top,
        comp.pos_bot,
        comp.edge_pa,
        comp.edge_pb,
        comp.edge_va,
        comp.edge_vb,
        comp.edge_glued,
        comp.edge_t1,
        comp.edge_t2,
        comp.n_vert,
        comp.n_cover,
        comp.tri_e,
        comp.vert_pos,
        out_code,
        out_loops,
    )
    if (out_loops < 0).any():
        raise RuntimeError("kernel invariant failure")
    return out_code, out_loops


@njit(cache=True, parallel=True)
def _eval_indices_kernel(
    indices,
    degree,
    anchor_mask,
    free_pos,
    pos_base,
    pos_off,
    pos_top,
    pos_bot,
    edge_pa,
    edge_pb,
    edge_va,
    edge_vb,
    edge_glued,
    edge_t1,
    edge_t2,
    n_vert,
    n_cover,
    tri_e,
    vert_pos,
    out_code,
    out_loops,
):
    n = indices.shape[0]
    n_pos = pos_base.shape[0]
    n_tris = tri_e.shape[0]
    n_edges = edge_pa.shape[0]
    chunk = 4096
    n_chunks = (n + chunk - 1) // chunk
    for c in prange(n_chunks):
        lo = c * chunk
        hi = min(lo + chunk, n)
        posbit = np.empty(n_pos, dtype=np.uint8)
        ufv = np.empty(n_vert, dtype=np.int32)
        ufc = np.empty(n_cover, dtype=np.int32)
        tri_cnt = np.empty(n_tris, dtype=np.uint8)
        tri_b0 = np.empty(n_tris, dtype=np.int32)
        tri_b1 = np.empty(n_tris, dtype=np.int32)
        edge_seen = np.empty(n_edges, dtype=np.uint8)
        reg_of_root = np.empty(n_vert, dtype=np.int32)
        reg_vertex = np.empty(n_vert, dtype=np.int32)
        oval_a = np.empty(64, dtype=np.int32)
        oval_b = np.empty(64, dtype=np.int32)
        node_parent = np.empty(66, dtype=np.int32)
        node_order = np.empty(66, dtype=np.int32)
        code_buf = np.empty(66, dtype=np.uint64)
        len_buf = np.empty(66, dtype=np.int32)
        child_code = np.empty(66, dtype=np.uint64)
        child_len = np.empty(66, dtype=np.int32)
        for ii in range(lo, hi):
            mask = _mask_from_index(indices[ii], anchor_mask, free_pos)
            code, loops = _eval_mask(
                mask, degree,
                pos_base, pos_off, pos_top, pos_bot,
                edge_pa, edge_pb, edge_va, edge_vb, edge_glued, edge_t1, edge_t2,
                n_vert, n_cover, tri_e, vert_pos,
                posbit, ufv, ufc, tri_cnt, tri_b0, tri_b1, edge_seen,
                reg_of_root, reg_vertex, oval_a, oval_b,
                node_parent, node_order, code_buf, len_buf, child_code, child_len,
            )
            out_code[ii] = code
            out_loops[ii] = loops


def decode_scheme_code(code: int, pseudo_line: bool):
    """Rebuild the RealScheme from a balanced-parenthesis code."""
    from .scheme import RealScheme

    bits = []
    c = code
    while c:
        bits.append(c & 1)
        c >>= 1
    bits.reverse()

    pos = 0

    def parse_node():
        nonlocal pos
        assert bits[pos] == 1
        pos += 1
        children = []
        while pos < len(bits) and bits[pos] == 1:
            children.append(parse_node())
        assert bits[pos] == 0
        pos += 1
        return tuple(children)

    tree = parse_node()
    assert pos == len(bits)
    return RealScheme.make(pseudo_line, list(tree))
