"""Error reporting: projected-solution reconstruction and broken norms.

The discrete solution is only known through its edge moments; what can be
evaluated is its elementwise energy projection onto the wave basis.  Errors
against the exact field are integrated with polygon quadrature (fan
triangulation from the centroid, split along the interface on cut elements
so the integrands stay smooth per piece).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import ExactSolution
from .assembly import DiscreteSolution
from .mesh import ElementGeometry, Subdomain
from .quadrature import _gauss_legendre, polygon_rule

DEFAULT_QUAD_ORDER = 20


def polygon_quadrature(
    geometry: ElementGeometry,
    f,
    order: int = DEFAULT_QUAD_ORDER,
    split_at_interface: bool = False,
) -> complex:
    """Integrate ``f`` (vectorized over points (m, 2)) over one polygon."""
    pts, wts = polygon_rule(
        geometry.vertices,
        center=geometry.centroid,
        order=order,
        split_at_interface=split_at_interface,
    )
    return complex(wts @ np.asarray(f(pts), dtype=complex))


@dataclass(frozen=True)
class ErrorReport:
    """Relative weighted-H1 and L2 errors of a discrete solution."""

    err_h1_rel: float
    err_l2_rel: float
    n_dof: int
    dofs_raw: int
    mesh: str
    h: float
    residual: float


def exact_solution_norms(
    exact: ExactSolution, order_per_wavelength: float = 2.0
) -> tuple[float, float]:
    """Squared weighted-H1 and L2 norms of the exact field over the square.

    Integrated per subdomain with tensor Gauss rules using the physical
    wavenumbers, independent of any mesh.
    """
    p = exact.problem
    h1 = 0.0
    l2 = 0.0
    for (y0, y1), k in (((-1.0, 0.0), p.k1), ((0.0, 1.0), p.k2)):
        n = int(max(32, np.ceil(order_per_wavelength * k * 2.0) + 16))
        x, wx = _gauss_legendre(n)
        xs = x  # (-1, 1) is already the domain extent in x
        ys = 0.5 * (x + 1.0) * (y1 - y0) + y0
        wy = 0.5 * (y1 - y0) * wx
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        W = np.outer(wx, wy)
        pts = np.column_stack([X.ravel(), Y.ravel()])
        vals = exact(pts)
        grads = exact.grad(pts)
        l2_loc = float(W.ravel() @ np.abs(vals) ** 2)
        h1 += float(W.ravel() @ (np.abs(grads) ** 2).sum(axis=1)) + k**2 * l2_loc
        l2 += l2_loc
    return h1, l2


def compute_errors(
    solution: DiscreteSolution, order: int = DEFAULT_QUAD_ORDER
) -> ErrorReport:
    """Broken relative errors of the projected discrete solution.

    The weighted-H1 numerator uses each element's own wavenumber (the
    artificial one on cut elements); the denominator uses the physical field.
    """
    exact = ExactSolution(solution.problem)
    num_h1 = 0.0
    num_l2 = 0.0
    for el in solution.mesh.elements:
        loc = solution.locals[el.index]
        coeffs = solution.projected_coefficients(el)
        basis = solution.bases[el.index]
        pts, wts = polygon_rule(
            el.geometry.vertices,
            center=el.centroid,
            order=order,
            split_at_interface=el.subdomain is Subdomain.CUT,
        )
        e_val = exact(pts) - basis.eval_matrix(pts) @ coeffs
        e_grad = exact.grad(pts) - np.einsum(
            "mlc,l->mc", basis.grad_matrix(pts), coeffs
        )
        l2_loc = float(wts @ np.abs(e_val) ** 2)
        num_l2 += l2_loc
        num_h1 += float(wts @ (np.abs(e_grad) ** 2).sum(axis=1))
        num_h1 += loc.k_elem**2 * l2_loc
    den_h1, den_l2 = exact_solution_norms(exact)
    return ErrorReport(
        err_h1_rel=float(np.sqrt(num_h1 / den_h1)),
        err_l2_rel=float(np.sqrt(num_l2 / den_l2)),
        n_dof=solution.n_dof,
        dofs_raw=solution.dofs_raw,
        mesh=solution.mesh.name,
        h=solution.mesh.h,
        residual=solution.residual,
    )


def sample_on_raster(
    solution: DiscreteSolution, n: int = 101
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact and projected field values on an n x n grid of cell centers.

    Returns (points, exact values, projected values); used by the solution
    dump that feeds the contour figures.
    """
    exact = ExactSolution(solution.problem)
    ticks = np.linspace(-1.0, 1.0, n + 1)
    mids = 0.5 * (ticks[:-1] + ticks[1:])
    X, Y = np.meshgrid(mids, mids, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    proj = np.zeros(len(pts), dtype=complex)
    assigned = np.zeros(len(pts), dtype=bool)
    for el in solution.mesh.elements:
        g = el.geometry
        lo = g.vertices.min(axis=0)
        hi = g.vertices.max(axis=0)
        cand = np.where(
            ~assigned
            & (pts[:, 0] >= lo[0]) & (pts[:, 0] <= hi[0])
            & (pts[:, 1] >= lo[1]) & (pts[:, 1] <= hi[1])
        )[0]
        if len(cand) == 0:
            continue
        sub = pts[cand]
        inside = np.ones(len(sub), dtype=bool)
        for s in range(g.n_sides):
            da = g.side_a[s] - sub
            db = g.side_b[s] - sub
            cross = da[:, 0] * db[:, 1] - da[:, 1] * db[:, 0]
            inside &= cross >= -1e-12
        idx = cand[inside]
        if len(idx) == 0:
            continue
        coeffs = solution.projected_coefficients(el)
        proj[idx] = solution.bases[el.index].eval_matrix(pts[idx]) @ coeffs
        assigned[idx] = True
    for i in np.where(~assigned)[0]:  # non-convex stragglers
        el = solution.mesh.elements[solution.mesh.locate(pts[i])]
        coeffs = solution.projected_coefficients(el)
        proj[i] = solution.bases[el.index].eval_matrix(pts[i][None, :])[0] @ coeffs
    return pts, exact(pts), proj
