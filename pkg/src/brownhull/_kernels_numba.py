"""Numba-compiled kernel lane (default whenever numba imports).

Mirrors ``_kernels_numpy`` function by function; the two lanes must stay
numerically identical.  All jitted functions release the GIL so the Monte
Carlo harness can run them from a thread pool.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from . import rng

NAME = "numba"

_U64 = np.uint64
_GAMMA = _U64(rng.GOLDEN_GAMMA)
_MULT_1 = _U64(0xBF58476D1CE4E5B9)
_MULT_2 = _U64(0x94D049BB133111EB)

_JIT = {"cache": True, "nogil": True}

_FILTER_MIN = 33

_inv_norm = njit(**_JIT)(rng.inv_norm_cdf)


@njit(**_JIT)
def _mix(z):
    z = (z ^ (z >> _U64(30))) * _MULT_1
    z = (z ^ (z >> _U64(27))) * _MULT_2
    return z ^ (z >> _U64(31))


@njit(**_JIT)
def _stream_key(seed, index):
    return _mix(seed + _U64(index + 1) * _GAMMA)


@njit(**_JIT)
def _uniform_block(key, count):
    out = np.empty(count)
    for j in range(count):
        z = _mix(key + _U64(j + 1) * _GAMMA)
        out[j] = np.float64((z >> _U64(12)) | _U64(1)) * 2.0**-52
    return out


@njit(**_JIT)
def _gaussian_block(key, count):
    out = np.empty(count)
    for j in range(count):
        z = _mix(key + _U64(j + 1) * _GAMMA)
        u = np.float64((z >> _U64(12)) | _U64(1)) * 2.0**-52
        out[j] = _inv_norm(u)
    return out


@njit(**_JIT)
def _bm_path(key, steps):
    g = _gaussian_block(key, 2 * steps)
    scale = math.sqrt(1.0 / steps)
    pts = np.empty((steps + 1, 2))
    pts[0, 0] = 0.0
    pts[0, 1] = 0.0
    ax = 0.0
    ay = 0.0
    for k in range(steps):
        ax = ax + g[k] * scale
        ay = ay + g[steps + k] * scale
        pts[k + 1, 0] = ax
        pts[k + 1, 1] = ay
    return pts


@njit(**_JIT)
def _bb_path(key, steps):
    pts = _bm_path(key, steps)
    fx = pts[steps, 0]
    fy = pts[steps, 1]
    for k in range(steps + 1):
        t = k / steps
        pts[k, 0] = pts[k, 0] - t * fx
        pts[k, 1] = pts[k, 1] - t * fy
    pts[steps, 0] = 0.0
    pts[steps, 1] = 0.0
    return pts


@njit(**_JIT)
def _hull_indices(xs, ys):
    npts = xs.shape[0]
    if npts == 1:
        return np.zeros(1, dtype=np.int64)
    if npts >= _FILTER_MIN:
        iw = 0
        ie = 0
        is_ = 0
        in_ = 0
        for i in range(1, npts):
            if xs[i] < xs[iw]:
                iw = i
            if xs[i] > xs[ie]:
                ie = i
            if ys[i] < ys[is_]:
                is_ = i
            if ys[i] > ys[in_]:
                in_ = i
        keep = np.empty(npts, dtype=np.bool_)
        cnt = 0
        for i in range(npts):
            px = xs[i]
            py = ys[i]
            inside = (
                (xs[is_] - xs[iw]) * (py - ys[iw]) - (ys[is_] - ys[iw]) * (px - xs[iw]) > 0.0
                and (xs[ie] - xs[is_]) * (py - ys[is_]) - (ys[ie] - ys[is_]) * (px - xs[is_]) > 0.0
                and (xs[in_] - xs[ie]) * (py - ys[ie]) - (ys[in_] - ys[ie]) * (px - xs[ie]) > 0.0
                and (xs[iw] - xs[in_]) * (py - ys[in_]) - (ys[iw] - ys[in_]) * (px - xs[in_]) > 0.0
            )
            keep[i] = not inside
            if keep[i]:
                cnt += 1
        cand = np.empty(cnt, dtype=np.int64)
        k = 0
        for i in range(npts):
            if keep[i]:
                cand[k] = i
                k += 1
    else:
        cand = np.arange(npts)

    cx = xs[cand]
    cy = ys[cand]
    o1 = np.argsort(cy, kind="mergesort")
    o2 = np.argsort(cx[o1], kind="mergesort")
    order = cand[o1[o2]]
    m = order.shape[0]
    if m == 1:
        return order[:1].copy()

    lower = np.empty(m + 1, dtype=np.int64)
    nl = 0
    for ii in range(m):
        i = order[ii]
        while nl >= 2:
            a = lower[nl - 2]
            b = lower[nl - 1]
            if (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]) <= 0.0:
                nl -= 1
            else:
                break
        lower[nl] = i
        nl += 1
    upper = np.empty(m + 1, dtype=np.int64)
    nu = 0
    for ii in range(m - 1, -1, -1):
        i = order[ii]
        while nu >= 2:
            a = upper[nu - 2]
            b = upper[nu - 1]
            if (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]) <= 0.0:
                nu -= 1
            else:
                break
        upper[nu] = i
        nu += 1
    total = (nl - 1) + (nu - 1)
    hull = np.empty(total, dtype=np.int64)
    for i in range(nl - 1):
        hull[i] = lower[i]
    for i in range(nu - 1):
        hull[nl - 1 + i] = upper[i]
    if total == 2 and xs[hull[0]] == xs[hull[1]] and ys[hull[0]] == ys[hull[1]]:
        return hull[:1].copy()
    return hull


@njit(**_JIT)
def _poly_perimeter(xs, ys, idx):
    k = idx.shape[0]
    if k == 1:
        return 0.0
    if k == 2:
        dx = xs[idx[1]] - xs[idx[0]]
        dy = ys[idx[1]] - ys[idx[0]]
        return 2.0 * math.sqrt(dx * dx + dy * dy)
    s = 0.0
    for i in range(k):
        a = idx[i]
        b = idx[(i + 1) % k]
        dx = xs[b] - xs[a]
        dy = ys[b] - ys[a]
        s += math.sqrt(dx * dx + dy * dy)
    return s


@njit(**_JIT)
def _poly_area(xs, ys, idx):
    k = idx.shape[0]
    if k < 3:
        return 0.0
    s = 0.0
    for i in range(k):
        a = idx[i]
        b = idx[(i + 1) % k]
        s += xs[a] * ys[b] - xs[b] * ys[a]
    return 0.5 * s


@njit(**_JIT)
def _hull_metrics_batch(seed, rep_lo, rep_hi, m, n, steps):
    nrep = rep_hi - rep_lo
    npaths = m + n
    npts = steps + 1
    out = np.empty((nrep, 2))
    xs = np.empty(npaths * npts)
    ys = np.empty(npaths * npts)
    for r in range(nrep):
        rep = rep_lo + r
        for p in range(npaths):
            key = _stream_key(seed, rep * npaths + p)
            pts = _bm_path(key, steps) if p < m else _bb_path(key, steps)
            base = p * npts
            for k in range(npts):
                xs[base + k] = pts[k, 0]
                ys[base + k] = pts[k, 1]
        idx = _hull_indices(xs, ys)
        out[r, 0] = _poly_perimeter(xs, ys, idx)
        out[r, 1] = _poly_area(xs, ys, idx)
    return out


@njit(**_JIT)
def _argmax_batch(seed, rep_lo, rep_hi, m, n, steps):
    nrep = rep_hi - rep_lo
    npaths = m + n
    npts = steps + 1
    t_out = np.empty(nrep)
    bm_out = np.empty(nrep, dtype=np.uint8)
    idx_out = np.empty(nrep, dtype=np.int64)
    max_out = np.empty(nrep)
    sec_out = np.empty(nrep)
    X = np.empty((npaths, npts))
    Y = np.empty((npaths, npts))
    for r in range(nrep):
        rep = rep_lo + r
        for p in range(npaths):
            key = _stream_key(seed, rep * npaths + p)
            pts = _bm_path(key, steps) if p < m else _bb_path(key, steps)
            for k in range(npts):
                X[p, k] = pts[k, 0]
                Y[p, k] = pts[k, 1]
        best = -math.inf
        bk = 0
        bp = 0
        for k in range(npts):
            for p in range(npaths):
                v = X[p, k]
                if v > best:
                    best = v
                    bk = k
                    bp = p
        t_out[r] = bk / steps
        bm_out[r] = 1 if bp < m else 0
        idx_out[r] = bp if bp < m else bp - m
        max_out[r] = best
        sec_out[r] = Y[bp, bk]
    return t_out, bm_out, idx_out, max_out, sec_out


def _key64(key: int) -> np.uint64:
    return np.uint64(key & rng.MASK64)


def uniform_block(key: int, count: int) -> np.ndarray:
    """Draws 0..count-1 of the stream mapped into (0, 1)."""
    return _uniform_block(_key64(key), count)


def gaussian_block(key: int, count: int) -> np.ndarray:
    """``count`` standard normals of the stream, by inverse CDF."""
    return _gaussian_block(_key64(key), count)


def bm_path(key: int, steps: int) -> np.ndarray:
    """Planar Brownian path on the uniform grid of [0, 1], shape (steps+1, 2)."""
    return _bm_path(_key64(key), steps)


def bb_path(key: int, steps: int) -> np.ndarray:
    """Planar Brownian bridge path: bm_path minus t times its endpoint."""
    return _bb_path(_key64(key), steps)


def hull_indices(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Indices of the hull vertices, counterclockwise from the lexicographic minimum."""
    return _hull_indices(xs, ys)


def hull_metrics_batch(seed: int, rep_lo: int, rep_hi: int,
                       m: int, n: int, steps: int) -> np.ndarray:
    """Per replicate, (perimeter, area) of the pooled m BM + n BB hull."""
    return _hull_metrics_batch(_key64(seed), rep_lo, rep_hi, m, n, steps)


def argmax_batch(seed: int, rep_lo: int, rep_hi: int,
                 m: int, n: int, steps: int):
    """Per replicate, the combined running-max record of the x coordinates."""
    return _argmax_batch(_key64(seed), rep_lo, rep_hi, m, n, steps)
