"""Exact planar geometry of convex hulls.

Hull construction (monotone chain over a lexicographic order), perimeter,
area and the support function of the resulting polygons.  Collinearity is
decided by the exact sign of the floating-point cross product, zero
counting as collinear; there is no epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon as counterclockwise vertices.

    Vertices are exactly the extreme points of the generating set: no
    duplicates, no three consecutive collinear vertices.  Hulls of fewer
    than three distinct points (a segment or a single point) carry
    ``degenerate=True``.
    """

    vertices: np.ndarray
    degenerate: bool = False

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 1:
            raise ValueError("vertices must have shape (k, 2) with k >= 1")
        if not np.isfinite(v).all():
            raise ValueError("vertices must be finite")
        if not self.degenerate and v.shape[0] < 3:
            raise ValueError("a polygon with fewer than 3 vertices must be degenerate")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return self.vertices.shape[0]


def convex_hull(points) -> ConvexPolygon:
    """Convex hull of a point set.

    Returns the extreme points in counterclockwise order starting from
    the lexicographically smallest vertex; collinear input yields a
    degenerate segment, a single (possibly repeated) point a degenerate
    one-vertex polygon.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
        raise ValueError("points must have shape (n, 2) with n >= 1")
    if not np.isfinite(pts).all():
        raise ValueError("points must be finite")
    xs = np.ascontiguousarray(pts[:, 0])
    ys = np.ascontiguousarray(pts[:, 1])
    idx = kernels.hull_indices(xs, ys)
    return ConvexPolygon(pts[idx], degenerate=idx.shape[0] < 3)


def perimeter(poly: ConvexPolygon) -> float:
    """Boundary length.

    A degenerate segment of length L returns 2 L (the boundary runs both
    ways); a single point returns 0.
    """
    v = poly.vertices
    k = v.shape[0]
    if k == 1:
        return 0.0
    edges = np.diff(np.vstack([v, v[:1]]), axis=0)
    total = float(np.hypot(edges[:, 0], edges[:, 1]).sum())
    # The closed loop of a 2-vertex polygon already traverses the segment
    # twice, which is exactly the degenerate convention.
    return total


def area(poly: ConvexPolygon) -> float:
    """Enclosed area by the shoelace formula; degenerate polygons have 0."""
    if poly.degenerate:
        return 0.0
    v = poly.vertices
    x = v[:, 0]
    y = v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def support_function(poly: ConvexPolygon, theta) -> float | np.ndarray:
    """Largest projection of the polygon onto direction (cos theta, sin theta).

    ``theta`` may be a scalar or an array of angles.
    """
    th = np.asarray(theta, dtype=np.float64)
    v = poly.vertices
    proj = np.outer(v[:, 0], np.cos(th)) + np.outer(v[:, 1], np.sin(th))
    out = proj.max(axis=0)
    return float(out[0]) if th.ndim == 0 else out.reshape(th.shape)


def support_derivative(poly: ConvexPolygon, theta) -> float | np.ndarray:
    """Angular derivative of the support function.

    Evaluated analytically from the active (projection-maximizing)
    vertex: -x sin(theta) + y cos(theta).  Exact away from the edge
    normal angles, where the active vertex switches.
    """
    th = np.asarray(theta, dtype=np.float64)
    v = poly.vertices
    c = np.cos(th)
    s = np.sin(th)
    proj = np.outer(v[:, 0], c) + np.outer(v[:, 1], s)
    active = proj.argmax(axis=0)
    out = -v[active, 0] * s + v[active, 1] * c
    return float(out[0]) if th.ndim == 0 else out.reshape(th.shape)


def edge_normal_angles(poly: ConvexPolygon) -> np.ndarray:
    """Outward edge-normal directions, sorted within [0, 2 pi).

    These are the angles where the support function's derivative has a
    kink; integrands built from it are smooth between consecutive ones.
    """
    v = poly.vertices
    k = v.shape[0]
    if k == 1:
        return np.empty(0)
    edges = np.diff(np.vstack([v, v[:1]]), axis=0)
    if k == 2:
        edges = edges[:1]
    ang = np.arctan2(-edges[:, 0], edges[:, 1])
    ang = np.mod(ang, 2.0 * np.pi)
    if k == 2:
        ang = np.concatenate([ang, np.mod(ang + np.pi, 2.0 * np.pi)])
    return np.unique(ang)
