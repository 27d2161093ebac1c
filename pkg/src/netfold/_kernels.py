"""Accelerated interior-subtree search kernel.

The numba path and the recursive reference in `mlst` implement the same
search; `NETFOLD_BACKEND=python` (or a missing numba install) selects the
reference, `NETFOLD_BACKEND=numba` forces the kernel.  Both produce identical
cut lists and node counts.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency, but stay importable
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


# numba path packs vertex sets into a single signed 64-bit word
KERNEL_MAX_VERTICES = 62


def default_backend() -> str:
    env = os.environ.get("NETFOLD_BACKEND", "").strip().lower()
    if env in ("python", "numba"):
        return env
    return "numba" if HAS_NUMBA else "python"


def resolve_backend(requested: str | None, n_vertices: int) -> str:
    """Pick the backend actually used for a graph of the given size."""
    backend = requested or default_backend()
    if backend == "numba" and (not HAS_NUMBA or n_vertices > KERNEL_MAX_VERTICES):
        return "python"
    return backend


@njit(cache=True, nogil=True)
def grow_kernel(
    n_grow,
    full_cov,
    init_vt,
    init_cov,
    init_ea,
    edge_u,
    edge_v,
    cov_mask,
    inc_ptr,
    inc_ids,
    excl_mask,
    allowance,
    cover_step,
):
    """Iterative twin of the recursive interior growth.

    Depth-first over the frontier list with the within-level removal
    discipline: the edge at the cursor is consumed, and a child level's
    frontier is the remaining suffix plus the new vertex's outward edges.
    Domination is only tested at full interior size, but branches that can no
    longer reach it are cut early: a frontier vertex is covered before it
    joins, so each future interior vertex newly covers at most `cover_step`
    (max degree - 1) vertices.  Returns (flat interior buffer, interiors
    found, nodes visited, status) with status 0 = complete, 2 = node
    allowance exhausted.
    """
    E = edge_u.shape[0]
    nodes = np.int64(0)
    found = np.int64(0)
    status = np.int64(0)
    out = np.empty(1024 * n_grow, np.int32)

    seg = np.empty(n_grow * E, np.int32)
    seg_len = np.zeros(n_grow, np.int64)
    pos = np.zeros(n_grow, np.int64)
    vt = np.zeros(n_grow, np.int64)
    cov = np.zeros(n_grow, np.int64)
    chosen = np.zeros(n_grow + 1, np.int32)

    n0 = init_ea.shape[0]
    for q in range(n0):
        seg[q] = init_ea[q]
    seg_len[0] = n0
    vt[0] = init_vt
    cov[0] = init_cov

    d = 0
    while d >= 0:
        if pos[d] >= seg_len[d]:
            d -= 1
            continue
        e = seg[d * E + pos[d]]
        pos[d] += 1
        u = edge_u[e]
        v = edge_v[e]
        u_in = (vt[d] >> u) & 1
        v_in = (vt[d] >> v) & 1
        if u_in == 1 and v_in == 1:
            # both ends joined the tree after this edge entered the frontier
            continue
        i = v if u_in == 1 else u
        nodes += 1
        if nodes > allowance:
            status = 2
            break
        nvt = vt[d] | (np.int64(1) << i)
        ncov = cov[d] | cov_mask[i]
        if d + 1 == n_grow:
            if ncov == full_cov:
                if (found + 1) * n_grow > out.shape[0]:
                    bigger = np.empty(out.shape[0] * 2, np.int32)
                    bigger[: out.shape[0]] = out
                    out = bigger
                base_o = found * n_grow
                for t in range(1, n_grow):
                    out[base_o + t - 1] = chosen[t]
                out[base_o + n_grow - 1] = e
                found += 1
            continue
        x = full_cov & ~ncov
        x = x - ((x >> 1) & np.int64(0x5555555555555555))
        x = (x & np.int64(0x3333333333333333)) + ((x >> 2) & np.int64(0x3333333333333333))
        x = (x + (x >> 4)) & np.int64(0x0F0F0F0F0F0F0F0F)
        uncovered = (x * np.int64(0x0101010101010101)) >> 56
        if uncovered > (n_grow - d - 1) * cover_step:
            continue
        nd = d + 1
        vt[nd] = nvt
        cov[nd] = ncov
        chosen[nd] = e
        base = nd * E
        lc = 0
        for q in range(pos[d], seg_len[d]):
            seg[base + lc] = seg[d * E + q]
            lc += 1
        for t in range(inc_ptr[i], inc_ptr[i + 1]):
            e2 = inc_ids[t]
            l = edge_u[e2] + edge_v[e2] - i
            if ((nvt >> l) & 1) == 0 and ((excl_mask >> l) & 1) == 0:
                seg[base + lc] = e2
                lc += 1
        seg_len[nd] = lc
        pos[nd] = 0
        d = nd

    return out, found, nodes, status
