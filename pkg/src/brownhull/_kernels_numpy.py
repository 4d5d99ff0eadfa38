"""Pure NumPy/Python kernel lane.

Fallback selected with ``BROWNHULL_BACKEND=numpy``, and the reference the
numba lane is checked against.  Numerical identity constraints: operation
order matches the numba lane everywhere, and the inverse-CDF tail branch
takes ``math.log`` elementwise because NumPy's vectorized log is not
bitwise equal to libm's.
"""

from __future__ import annotations

import math

import numpy as np

from . import rng

NAME = "numpy"

_U = np.uint64
_GAMMA = _U(rng.GOLDEN_GAMMA)
_MULT_1 = _U(0xBF58476D1CE4E5B9)
_MULT_2 = _U(0x94D049BB133111EB)

# Point counts below this skip the extreme-quadrilateral prefilter.
_FILTER_MIN = 33


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U(30))) * _MULT_1
    z = (z ^ (z >> _U(27))) * _MULT_2
    return z ^ (z >> _U(31))


def uniform_block(key: int, count: int) -> np.ndarray:
    """Draws 0..count-1 of the stream mapped into (0, 1)."""
    pos = np.arange(1, count + 1, dtype=np.uint64)
    z = _mix(_U(key) + pos * _GAMMA)
    return ((z >> _U(12)) | _U(1)).astype(np.float64) * 2.0**-52


def _inv_norm(p: np.ndarray) -> np.ndarray:
    # Vectorized AS241; must stay bitwise equal to rng.inv_norm_cdf.
    q = p - 0.5
    out = np.empty_like(p)
    central = np.abs(q) <= 0.425
    qc = q[central]
    r = 0.180625 - qc * qc
    num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
              + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
            + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
    den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
              + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
            + 4.2313330701600911252e1) * r + 1.0)
    out[central] = qc * num / den

    tail = np.nonzero(~central)[0]
    if tail.size:
        qt = q[tail]
        pt = p[tail]
        rt = np.where(qt < 0.0, pt, 1.0 - pt)
        rt = np.sqrt(np.array([-math.log(v) for v in rt]))
        vals = np.empty_like(rt)

        near = rt <= 5.0
        rn = rt[near] - 1.6
        num = (((((((7.74545014278341407640e-4 * rn + 2.27238449892691845833e-2) * rn
                    + 2.41780725177450611770e-1) * rn + 1.27045825245236838258e0) * rn
                  + 3.64784832476320460504e0) * rn + 5.76949722146069140550e0) * rn
                + 4.63033784615654529590e0) * rn + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * rn + 5.47593808499534494600e-4) * rn
                    + 1.51986665636164571966e-2) * rn + 1.48103976427480074590e-1) * rn
                  + 6.89767334985100004550e-1) * rn + 1.67638483018380384940e0) * rn
                + 2.05319162663775882187e0) * rn + 1.0)
        vals[near] = num / den

        far = ~near
        if far.any():
            rf = rt[far] - 5.0
            num = (((((((2.01033439929228813265e-7 * rf + 2.71155556874348757815e-5) * rf
                        + 1.24266094738807843860e-3) * rf + 2.65321895265761230930e-2) * rf
                      + 2.96560571828504891230e-1) * rf + 1.78482653991729133580e0) * rf
                    + 5.46378491116411436990e0) * rf + 6.65790464350110377720e0)
            den = (((((((2.04426310338993978564e-15 * rf + 1.42151175831644588870e-7) * rf
                        + 1.84631831751005468180e-5) * rf + 7.86869131145613259100e-4) * rf
                      + 1.48753612908506148525e-2) * rf + 1.36929880922735805310e-1) * rf
                    + 5.99832206555887937690e-1) * rf + 1.0)
            vals[far] = num / den

        out[tail] = np.where(qt < 0.0, -vals, vals)
    return out


def gaussian_block(key: int, count: int) -> np.ndarray:
    """``count`` standard normals of the stream, by inverse CDF."""
    return _inv_norm(uniform_block(key, count))


def bm_path(key: int, steps: int) -> np.ndarray:
    """Planar Brownian path on the uniform grid of [0, 1], shape (steps+1, 2).

    The stream's first ``steps`` Gaussians drive the x increments, the
    next ``steps`` the y increments, each scaled by sqrt(1/steps).
    """
    g = gaussian_block(key, 2 * steps)
    scale = math.sqrt(1.0 / steps)
    pts = np.empty((steps + 1, 2))
    pts[0, :] = 0.0
    np.cumsum(g[:steps] * scale, out=pts[1:, 0])
    np.cumsum(g[steps:] * scale, out=pts[1:, 1])
    return pts


def bb_path(key: int, steps: int) -> np.ndarray:
    """Planar Brownian bridge path: bm_path minus t times its endpoint."""
    pts = bm_path(key, steps)
    fx = pts[steps, 0]
    fy = pts[steps, 1]
    t = np.arange(steps + 1, dtype=np.float64) / steps
    pts[:, 0] -= t * fx
    pts[:, 1] -= t * fy
    pts[steps, :] = 0.0
    return pts


def _keep_mask(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    # Drop points strictly inside the quadrilateral of the four axis
    # extremes (kept points are a superset of the hull vertices).
    iw = int(np.argmin(xs))
    ie = int(np.argmax(xs))
    is_ = int(np.argmin(ys))
    in_ = int(np.argmax(ys))
    inside = np.ones(xs.shape[0], dtype=bool)
    for a, b in ((iw, is_), (is_, ie), (ie, in_), (in_, iw)):
        ax, ay, bx, by = xs[a], ys[a], xs[b], ys[b]
        inside &= (bx - ax) * (ys - ay) - (by - ay) * (xs - ax) > 0.0
    return ~inside


def _lex_order(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    o = np.argsort(ys, kind="mergesort")
    return o[np.argsort(xs[o], kind="mergesort")]


def hull_indices(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Indices of the hull vertices, counterclockwise from the lexicographic minimum.

    Collinear input collapses to the two extreme endpoints, coincident
    input to a single index; no returned triple is collinear.
    """
    npts = xs.shape[0]
    if npts == 1:
        return np.zeros(1, dtype=np.int64)
    if npts >= _FILTER_MIN:
        cand = np.nonzero(_keep_mask(xs, ys))[0].astype(np.int64)
    else:
        cand = np.arange(npts, dtype=np.int64)
    order = cand[_lex_order(xs[cand], ys[cand])]
    m = order.shape[0]
    if m == 1:
        return order.copy()

    lower: list[int] = []
    for ii in range(m):
        i = order[ii]
        while len(lower) >= 2:
            a = lower[-2]
            b = lower[-1]
            if (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]) <= 0.0:
                lower.pop()
            else:
                break
        lower.append(int(i))
    upper: list[int] = []
    for ii in range(m - 1, -1, -1):
        i = order[ii]
        while len(upper) >= 2:
            a = upper[-2]
            b = upper[-1]
            if (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]) <= 0.0:
                upper.pop()
            else:
                break
        upper.append(int(i))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and xs[hull[0]] == xs[hull[1]] and ys[hull[0]] == ys[hull[1]]:
        hull = hull[:1]
    return np.asarray(hull, dtype=np.int64)


def _poly_perimeter(xs: np.ndarray, ys: np.ndarray, idx: np.ndarray) -> float:
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


def _poly_area(xs: np.ndarray, ys: np.ndarray, idx: np.ndarray) -> float:
    k = idx.shape[0]
    if k < 3:
        return 0.0
    s = 0.0
    for i in range(k):
        a = idx[i]
        b = idx[(i + 1) % k]
        s += xs[a] * ys[b] - xs[b] * ys[a]
    return 0.5 * s


def hull_metrics_batch(seed: int, rep_lo: int, rep_hi: int,
                       m: int, n: int, steps: int) -> np.ndarray:
    """Per replicate, (perimeter, area) of the pooled m BM + n BB hull.

    Replicate ``r`` draws path ``p`` from substream ``r * (m + n) + p``,
    BM paths first.
    """
    nrep = rep_hi - rep_lo
    npaths = m + n
    npts = steps + 1
    out = np.empty((nrep, 2))
    xs = np.empty(npaths * npts)
    ys = np.empty(npaths * npts)
    for r in range(nrep):
        rep = rep_lo + r
        for p in range(npaths):
            key = rng.stream_key(seed, rep * npaths + p)
            pts = bm_path(key, steps) if p < m else bb_path(key, steps)
            xs[p * npts:(p + 1) * npts] = pts[:, 0]
            ys[p * npts:(p + 1) * npts] = pts[:, 1]
        idx = hull_indices(xs, ys)
        out[r, 0] = _poly_perimeter(xs, ys, idx)
        out[r, 1] = _poly_area(xs, ys, idx)
    return out


def argmax_batch(seed: int, rep_lo: int, rep_hi: int,
                 m: int, n: int, steps: int):
    """Per replicate, the combined running-max record of the x coordinates.

    Returns (time, winner_is_bm, winner_index, max_value, second_coord)
    arrays; ties resolve to the earliest grid index, BM before BB, lowest
    path index.  ``second_coord`` is the winning path's y value at the
    argmax time.
    """
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
            key = rng.stream_key(seed, rep * npaths + p)
            pts = bm_path(key, steps) if p < m else bb_path(key, steps)
            X[p, :] = pts[:, 0]
            Y[p, :] = pts[:, 1]
        # First max of the time-major scan gives the tie-break order.
        j = int(np.argmax(X.T.ravel()))
        k = j // npaths
        p = j % npaths
        t_out[r] = k / steps
        bm_out[r] = 1 if p < m else 0
        idx_out[r] = p if p < m else p - m
        max_out[r] = X[p, k]
        sec_out[r] = Y[p, k]
    return t_out, bm_out, idx_out, max_out, sec_out
