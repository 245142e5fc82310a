"""Gauss quadrature helpers: segments, triangles, and star-shaped polygons.

Only the boundary-datum term of the discretization and the error reporting
use numerical quadrature; everything else in the solver is assembled from
closed-form edge integrals.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def segment_rule(a, b, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on the segment [a, b] in the plane.

    Returns points of shape (n, 2) and weights summing to the segment length.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x, w = _gauss_legendre(n)
    t = 0.5 * (x + 1.0)
    pts = a[None, :] + t[:, None] * (b - a)[None, :]
    length = float(np.hypot(*(b - a)))
    return pts, 0.5 * length * w


@lru_cache(maxsize=16)
def _duffy_rule(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tensor Gauss rule collapsed onto the reference triangle (0,0)-(1,0)-(0,1).

    n x n points; exact for bivariate polynomials of total degree <= 2n - 2
    (one Gauss order is spent on the linear collapse Jacobian).
    """
    x, w = _gauss_legendre(n)
    u = 0.5 * (x + 1.0)
    wu = 0.5 * w
    U, V = np.meshgrid(u, u, indexing="ij")
    WU, WV = np.meshgrid(wu, wu, indexing="ij")
    xi = U * (1.0 - V)
    eta = U * V
    wt = WU * WV * U  # Jacobian of (u,v) -> (xi,eta) is u
    return xi.ravel(), eta.ravel(), wt.ravel()


def triangle_rule(v0, v1, v2, order: int = 20) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature on the triangle (v0, v1, v2), exact to the given degree.

    Returns points (m, 2) and weights summing to the (signed-area magnitude)
    of the triangle.
    """
    n = max(2, order // 2 + 1)
    xi, eta, wt = _duffy_rule(n)
    v0 = np.asarray(v0, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    pts = v0[None, :] + np.outer(xi, v1 - v0) + np.outer(eta, v2 - v0)
    area2 = abs((v1[0] - v0[0]) * (v2[1] - v0[1]) - (v2[0] - v0[0]) * (v1[1] - v0[1]))
    return pts, wt * area2


def _split_triangle_at_line(tri: np.ndarray, y0: float = 0.0) -> list[np.ndarray]:
    """Split a triangle by the horizontal line y = y0 into sub-triangles.

    Returns triangles whose interiors lie entirely on one side of the line,
    so piecewise-smooth integrands stay smooth on each piece.
    """
    ys = tri[:, 1] - y0
    if np.all(ys >= -1e-14) or np.all(ys <= 1e-14):
        return [tri]
    below = [p for p, y in zip(tri, ys) if y < 0.0]
    above = [p for p, y in zip(tri, ys) if y >= 0.0]
    lone, pair = (below, above) if len(below) == 1 else (above, below)
    a = lone[0]
    cuts = []
    for b in pair:
        t = (y0 - a[1]) / (b[1] - a[1])
        cuts.append(a + t * (b - a))
    c0, c1 = cuts
    return [
        np.array([a, c0, c1]),
        np.array([pair[0], pair[1], c0]),
        np.array([pair[1], c1, c0]),
    ]


def polygon_rule(
    vertices: np.ndarray,
    center=None,
    order: int = 20,
    split_at_interface: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature over a polygon star-shaped w.r.t. ``center``.

    Fans the polygon into triangles from the center (barycenter by default).
    With ``split_at_interface`` the fan triangles are additionally split along
    y = 0, keeping integrands of interface problems piecewise smooth.
    """
    vertices = np.asarray(vertices, dtype=float)
    if center is None:
        center = polygon_centroid(vertices)
    center = np.asarray(center, dtype=float)
    pts_parts = []
    wts_parts = []
    m = len(vertices)
    for i in range(m):
        tri = np.array([center, vertices[i], vertices[(i + 1) % m]])
        if _signed_area(tri) <= 0.0:
            raise ValueError("polygon is not star-shaped w.r.t. the given center")
        pieces = _split_triangle_at_line(tri) if split_at_interface else [tri]
        for piece in pieces:
            if abs(_signed_area(piece)) < 1e-30:
                continue
            p, w = triangle_rule(piece[0], piece[1], piece[2], order=order)
            pts_parts.append(p)
            wts_parts.append(w)
    return np.concatenate(pts_parts), np.concatenate(wts_parts)


def _signed_area(loop: np.ndarray) -> float:
    x = loop[:, 0]
    y = loop[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_area(vertices: np.ndarray) -> float:
    """Signed area of a vertex loop (positive for counter-clockwise)."""
    return _signed_area(np.asarray(vertices, dtype=float))


def polygon_centroid(vertices: np.ndarray) -> np.ndarray:
    """Area centroid of a simple polygon."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * np.sum(cross)
    cx = np.sum((x + xn) * cross) / (6.0 * area)
    cy = np.sum((y + yn) * cross) / (6.0 * area)
    return np.array([cx, cy])
