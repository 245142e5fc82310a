"""Local element matrices and the global nonconforming system.

All consistency matrices (G, D, B) come from closed-form edge integrals;
integration by parts turns the volume sesquilinear form into boundary
products because every bulk wave solves the element's Helmholtz equation.
Numerical quadrature enters only through the boundary-datum functional.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.sparse as sps
import scipy.sparse.linalg as spla

from .analytic import ExactSolution, InterfaceProblem
from .edgebasis import (
    DEFAULT_FILTER_REL,
    DEFAULT_FILTER_TOL,
    OrthogonalEdgeBasis,
    build_edge_bases,
)
from .mesh import Element, ElementGeometry, PolygonMesh, Subdomain
from .quadrature import segment_rule
from .waves import (
    ElementWaveBasis,
    _phi,
    edge_integral_matrix,
    make_element_basis,
)

G_CONDITION_LIMIT = 1e14

RESIDUAL_LIMIT = 1e-8


class AssemblyError(RuntimeError):
    """Raised when a local projector or the global solve breaks down."""


class CutPolicy(Enum):
    """Artificial wavenumber on elements cut by the interface."""

    AVERAGE = "average"
    MAX = "max"

    def wavenumber(self, k1: float, k2: float) -> float:
        if self is CutPolicy.AVERAGE:
            return 0.5 * (k1 + k2)
        return max(k1, k2)


def element_wavenumber(
    element: Element, problem: InterfaceProblem, policy: CutPolicy
) -> float:
    if element.subdomain is Subdomain.OMEGA1:
        return problem.k1
    if element.subdomain is Subdomain.OMEGA2:
        return problem.k2
    return policy.wavenumber(problem.k1, problem.k2)


@dataclass(frozen=True)
class DegreeMap:
    """Effective plane / evanescent wave degrees per element."""

    q: np.ndarray
    q_ev: np.ndarray

    @classmethod
    def per_subdomain(
        cls,
        mesh: PolygonMesh,
        q1: int,
        q2: int,
        q2_ev: int = 0,
        q_cut: int | None = None,
    ) -> "DegreeMap":
        if q_cut is None:
            q_cut = max(q1, q2)
        q = np.empty(mesh.n_elements, dtype=int)
        q_ev = np.zeros(mesh.n_elements, dtype=int)
        for el in mesh.elements:
            if el.subdomain is Subdomain.OMEGA1:
                q[el.index] = q1
            elif el.subdomain is Subdomain.OMEGA2:
                q[el.index] = q2
                q_ev[el.index] = q2_ev
            else:
                q[el.index] = q_cut
        return cls(q=q, q_ev=q_ev)

    @classmethod
    def from_layers(
        cls, mesh: PolygonMesh, layers: np.ndarray, degree_of_layer
    ) -> "DegreeMap":
        """Layer-driven degrees (hp studies); no evanescent enrichment."""
        q = np.array([degree_of_layer(int(l)) for l in layers], dtype=int)
        return cls(q=q, q_ev=np.zeros(mesh.n_elements, dtype=int))


def build_bases(
    mesh: PolygonMesh,
    degrees: DegreeMap,
    problem: InterfaceProblem,
    policy: CutPolicy = CutPolicy.AVERAGE,
    direction_offset: float = 0.0,
) -> list[ElementWaveBasis]:
    """Per-element wave bases; evanescent waves only on upper-side elements."""
    bases = []
    for el in mesh.elements:
        k_elem = element_wavenumber(el, problem, policy)
        q_ev = int(degrees.q_ev[el.index])
        if q_ev and el.subdomain is not Subdomain.OMEGA2:
            raise AssemblyError(
                f"element {el.index}: evanescent waves are only defined on "
                "elements above the interface"
            )
        bases.append(
            make_element_basis(
                element=el.index,
                center=el.centroid,
                k_elem=k_elem,
                q=int(degrees.q[el.index]),
                q_ev=q_ev,
                n1=problem.n1,
                n2=problem.n2,
                k_base=problem.k,
                offset=direction_offset,
            )
        )
    return bases


# ----------------------------------------------------------------------------
# local matrices
# ----------------------------------------------------------------------------


def local_G(geometry: ElementGeometry, basis: ElementWaveBasis) -> np.ndarray:
    """Stiffness-minus-mass form on the bulk waves, boundary-only.

    G[j, l] = a_E(w_l, w_j) = sum_sides conj(i kappa_j . n) * (w_l, w_j)_{0,e};
    valid because each w_j solves the element Helmholtz equation.
    """
    n_w = len(basis)
    centers = np.broadcast_to(basis.center, (n_w, 2))
    G = np.zeros((n_w, n_w), dtype=complex)
    for s in range(geometry.n_sides):
        I_s = edge_integral_matrix(
            basis.kappas, centers, basis.kappas, centers,
            geometry.side_a[s], geometry.side_b[s],
        )  # I_s[l, j] = (w_l, w_j)_{0,e}
        factor = np.conj(1j * (basis.kappas @ geometry.normals[s]))
        G += factor[:, None] * I_s.T
    return G


def local_D_B(
    geometry: ElementGeometry,
    basis: ElementWaveBasis,
    edge_bases: list[OrthogonalEdgeBasis],
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Degrees-of-freedom matrix D and the form matrix B of one element.

    D[(r,j), l]   = (1/h_r) (w_l, w_hat_j)_{0,e_r}
    B[j, (s,l)]   = conj(i kappa_j . n_s) * h_s * conj((w_j, w_hat_l)_{0,e_s})
    Returns (D, B, side_offsets) with side_offsets delimiting each side's
    block of local degrees of freedom.
    """
    n_w = len(basis)
    p_hats = [eb.p_hat for eb in edge_bases]
    offsets = np.concatenate([[0], np.cumsum(p_hats)])
    p_total = int(offsets[-1])
    D = np.zeros((p_total, n_w), dtype=complex)
    B = np.zeros((n_w, p_total), dtype=complex)
    for s, eb in enumerate(edge_bases):
        h = eb.edge.length
        C = eb.integrals_with(basis)  # C[j, l] = (w_l, w_hat_j)
        sl = slice(offsets[s], offsets[s + 1])
        D[sl, :] = C / h
        factor = np.conj(1j * (basis.kappas @ geometry.normals[s]))
        B[:, sl] = factor[:, None] * h * np.conj(C).T
    return D, B, offsets


def wave_mass_matrix(geometry: ElementGeometry, basis: ElementWaveBasis) -> np.ndarray:
    """Element mass matrix M[j, l] = integral_E w_l conj(w_j), boundary-only.

    Each product is const * exp(i mu . x) with mu = kappa_l - conj(kappa_j);
    writing the exponential as a divergence turns the area integral into
    closed-form edge integrals.  Pairs with mu = 0 integrate to the area.
    """
    kap = basis.kappas
    c = basis.center
    n = len(basis)
    mu = kap[None, :, :] - np.conj(kap)[:, None, :]  # [j, l, :]
    pref = np.exp(1j * (-(kap @ c)[None, :] + (np.conj(kap) @ c)[:, None]))
    mu2 = np.real((mu * np.conj(mu)).sum(axis=2))
    scale = max(1.0, float(np.max(np.abs(kap)) ** 2))
    degenerate = mu2 < 1e-20 * scale
    mu2_safe = np.where(degenerate, 1.0, mu2)
    avec = np.conj(mu) / (1j * mu2_safe[:, :, None])
    total = np.zeros((n, n), dtype=complex)
    for s in range(geometry.n_sides):
        a, b = geometry.side_a[s], geometry.side_b[s]
        h = float(geometry.lengths[s])
        z = 1j * (mu @ (b - a))
        an = avec @ geometry.normals[s]
        total += an * h * np.exp(1j * (mu @ a)) * _phi(z)
    return pref * np.where(degenerate, geometry.area, total)


def projector_matrices(
    G: np.ndarray,
    B: np.ndarray,
    D: np.ndarray,
    label: str = "element",
    condition_limit: float = G_CONDITION_LIMIT,
) -> tuple[np.ndarray, np.ndarray]:
    """Energy-projector matrices (PiStar, Pi) = (G^-1 B, D G^-1 B).

    Refuses to invert a numerically singular G: that happens when the element
    wavenumber squared sits close to a Neumann-Laplace eigenvalue of the
    element, which makes the projector ill-defined.  Within the limit, the
    inverse is applied through a truncated SVD: components of G below
    roundoff are discarded rather than amplified, which keeps the projection
    of redundant high-degree bases from acquiring huge null-space junk.
    """
    u, sv, vh = np.linalg.svd(G)
    if sv[0] == 0.0 or sv[-1] == 0.0 or sv[0] / sv[-1] > condition_limit:
        cond = math.inf if sv[-1] == 0.0 else sv[0] / sv[-1]
        raise AssemblyError(
            f"{label}: wave Gram form is numerically singular "
            f"(condition {cond:.2e} > {condition_limit:.0e}); the element "
            "wavenumber squared may be close to a Neumann-Laplace eigenvalue "
            "of the element"
        )
    cutoff = sv[0] * len(sv) * np.finfo(float).eps
    inv = np.where(sv > cutoff, 1.0 / np.maximum(sv, 1e-300), 0.0)
    pi_star = (vh.conj().T * inv[None, :]) @ (u.conj().T @ B)
    pi = D @ pi_star
    return pi_star, pi


def stabilization_diagonal(
    G: np.ndarray,
    pi_star: np.ndarray,
    mass: np.ndarray | None = None,
    k_elem: float = 0.0,
) -> np.ndarray:
    """Diagonal stabilisation weights from the projected canonical functions.

    Without a mass matrix this is the plain recipe a_E(Pi phi_i, Pi phi_i),
    which for the indefinite Helmholtz form can vanish or turn negative on
    kernel directions and then leaves the global system near singular.  With
    the mass matrix the weight is the weighted-norm energy
    |Pi phi_i|_1^2 + k^2 ||Pi phi_i||_0^2  (= c^H (G + 2 k^2 M) c),
    a nonnegative quantity of the same scale.  Both choices vanish exactly on
    fully filtered directions and never touch consistency: the stabilised
    term acts only on the projector kernel.
    """
    form = G if mass is None else G + 2.0 * k_elem**2 * mass
    s = np.real(np.einsum("ji,jl,li->i", np.conj(pi_star), form, pi_star))
    if mass is None:
        return s
    # When the wave Gram is poorly conditioned, projections of
    # near-invisible trace directions blow up; their energies are artifacts,
    # not physics.  Clamp at the largest single-wave energy of the element.
    s_ref = float(np.max(np.real(np.diag(form))))
    return np.clip(s, 0.0, s_ref)


@dataclass(frozen=True)
class LocalMatrices:
    """Everything the solver needs about one element."""

    element: int
    k_elem: float
    basis: ElementWaveBasis
    G: np.ndarray
    D: np.ndarray
    B: np.ndarray
    pi_star: np.ndarray
    pi: np.ndarray
    s_diag: np.ndarray
    A: np.ndarray
    side_offsets: np.ndarray


def assemble_local(
    geometry: ElementGeometry,
    basis: ElementWaveBasis,
    edge_bases: list[OrthogonalEdgeBasis],
    k_elem: float,
    element_id: int = -1,
    condition_limit: float = G_CONDITION_LIMIT,
    stabilization: str = "energy",
) -> LocalMatrices:
    G = local_G(geometry, basis)
    D, B, offsets = local_D_B(geometry, basis, edge_bases)
    pi_star, pi = projector_matrices(
        G, B, D, label=f"element {element_id}", condition_limit=condition_limit
    )
    if stabilization == "energy":
        mass = wave_mass_matrix(geometry, basis)
        s_diag = stabilization_diagonal(G, pi_star, mass=mass, k_elem=k_elem)
    elif stabilization == "signed":
        s_diag = stabilization_diagonal(G, pi_star)
    else:
        raise ValueError(f"unknown stabilization {stabilization!r}")
    eye = np.eye(pi.shape[0], dtype=complex)
    resid = eye - pi
    A = pi_star.conj().T @ G @ pi_star + resid.conj().T @ (s_diag[:, None] * resid)
    return LocalMatrices(
        element=element_id,
        k_elem=k_elem,
        basis=basis,
        G=G,
        D=D,
        B=B,
        pi_star=pi_star,
        pi=pi,
        s_diag=s_diag,
        A=A,
        side_offsets=offsets,
    )


# ----------------------------------------------------------------------------
# boundary terms
# ----------------------------------------------------------------------------


def boundary_quadrature_order(k_edge: float, h_edge: float) -> int:
    """Gauss point count for the boundary datum; even, so nodes dodge y = 0."""
    n = max(32, math.ceil(3.0 * k_edge * h_edge))
    return n + (n % 2)


def robin_matrix(edge_basis: OrthogonalEdgeBasis, k_edge: float) -> np.ndarray:
    """Impedance edge form in DOF coordinates: k_e h_e^2 I for orthonormal
    edge functions (the edge mass matrix is the identity)."""
    h = edge_basis.edge.length
    return k_edge * h * h * np.eye(edge_basis.p_hat)


def rhs_vector(edge_basis: OrthogonalEdgeBasis, g, k_edge: float) -> np.ndarray:
    """Boundary functional F[l] = h_e * integral_e g conj(w_hat_l) ds."""
    edge = edge_basis.edge
    n_q = boundary_quadrature_order(k_edge, edge.length)
    pts, wts = segment_rule(edge.a, edge.b, n_q)
    gv = np.asarray(g(pts), dtype=complex)
    W = edge_basis.eval_matrix(pts)
    return edge.length * ((wts * gv) @ np.conj(W))


# ----------------------------------------------------------------------------
# global system
# ----------------------------------------------------------------------------


@dataclass
class DiscreteSolution:
    """Solved global system plus the per-element data needed downstream."""

    mesh: PolygonMesh
    problem: InterfaceProblem
    policy: CutPolicy
    bases: list[ElementWaveBasis]
    edge_bases: list[OrthogonalEdgeBasis]
    locals: list[LocalMatrices]
    dof_offsets: np.ndarray
    dofs: np.ndarray
    residual: float

    @property
    def n_dof(self) -> int:
        return len(self.dofs)

    @property
    def dofs_raw(self) -> int:
        return sum(eb.candidates.rho for eb in self.edge_bases)

    def element_dof_indices(self, element: Element) -> np.ndarray:
        parts = [
            self.dof_offsets[e] + np.arange(self.edge_bases[e].p_hat)
            for e in element.edge_ids
        ]
        return np.concatenate(parts)

    def projected_coefficients(self, element: Element) -> np.ndarray:
        """Expansion of the projected solution in the element's wave basis."""
        loc = self.locals[element.index]
        return loc.pi_star @ self.dofs[self.element_dof_indices(element)]


def solve_interface_problem(
    mesh: PolygonMesh,
    problem: InterfaceProblem,
    degrees: DegreeMap,
    policy: CutPolicy = CutPolicy.AVERAGE,
    sigma_filter: float = DEFAULT_FILTER_TOL,
    sigma_rel: float = DEFAULT_FILTER_REL,
    direction_offset: float = 0.0,
    g=None,
    condition_limit: float = G_CONDITION_LIMIT,
    residual_limit: float = RESIDUAL_LIMIT,
    stabilization: str = "energy",
) -> DiscreteSolution:
    """Assemble and solve the discrete interface problem on a mesh.

    ``g`` defaults to the impedance datum of the exact solution, which makes
    the run a manufactured-solution experiment.
    """
    exact = ExactSolution(problem)
    bases = build_bases(mesh, degrees, problem, policy, direction_offset)
    edge_bases = build_edge_bases(mesh, bases, sigma_filter=sigma_filter, sigma_rel=sigma_rel)

    p_hats = np.array([eb.p_hat for eb in edge_bases], dtype=int)
    dof_offsets = np.concatenate([[0], np.cumsum(p_hats)])
    n_dof = int(dof_offsets[-1])

    locals_: list[LocalMatrices] = []
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    vals: list[np.ndarray] = []
    for el in mesh.elements:
        k_elem = element_wavenumber(el, problem, policy)
        ebs = [edge_bases[e] for e in el.edge_ids]
        loc = assemble_local(
            el.geometry,
            bases[el.index],
            ebs,
            k_elem,
            element_id=el.index,
            condition_limit=condition_limit,
            stabilization=stabilization,
        )
        locals_.append(loc)
        gidx = np.concatenate(
            [dof_offsets[e] + np.arange(edge_bases[e].p_hat) for e in el.edge_ids]
        )
        rr, cc = np.meshgrid(gidx, gidx, indexing="ij")
        rows.append(rr.ravel())
        cols.append(cc.ravel())
        vals.append(loc.A.ravel())

    rhs = np.zeros(n_dof, dtype=complex)
    if g is None:
        g = lambda pts: exact.impedance_datum(pts, _nearest_outward_normal(pts))
    for edge in mesh.boundary_edges():
        el_id = edge.elements[0]
        k_edge = locals_[el_id].k_elem
        eb = edge_bases[edge.index]
        gidx = dof_offsets[edge.index] + np.arange(eb.p_hat)
        robin = 1j * robin_matrix(eb, k_edge)
        rows.append(np.repeat(gidx, eb.p_hat))
        cols.append(np.tile(gidx, eb.p_hat))
        vals.append(robin.ravel())
        rhs[gidx] += rhs_vector(eb, g, k_edge)

    matrix = sps.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_dof, n_dof),
    ).tocsc()

    # Stabilisation weights span many orders of magnitude on coarse meshes;
    # symmetric diagonal equilibration keeps the factorisation healthy.
    diag = np.abs(matrix.diagonal())
    scale = 1.0 / np.sqrt(np.maximum(diag, 1e-30 * max(diag.max(), 1.0)))
    S = sps.diags(scale)
    scaled = (S @ matrix @ S).tocsc()
    rhs_scaled = scale * rhs
    try:
        lu = spla.splu(scaled)
        y = lu.solve(rhs_scaled)
    except RuntimeError as err:
        raise AssemblyError(f"sparse LU factorisation failed: {err}") from err
    rhs_norm = np.linalg.norm(rhs_scaled)
    for _ in range(5):
        # iterative refinement recovers small residuals on the strongly
        # ill-conditioned systems typical of wave bases
        r = rhs_scaled - scaled @ y
        if not rhs_norm or np.linalg.norm(r) / rhs_norm <= 1e-14:
            break
        y = y + lu.solve(r)
    x = scale * y
    rn = np.linalg.norm(rhs)
    residual = float(np.linalg.norm(matrix @ x - rhs) / rn) if rn else 0.0
    if rhs_norm and residual > residual_limit:
        raise AssemblyError(
            f"solver residual {residual:.2e} exceeds {residual_limit:g}; the "
            "global system is too ill-conditioned"
        )
    return DiscreteSolution(
        mesh=mesh,
        problem=problem,
        policy=policy,
        bases=bases,
        edge_bases=edge_bases,
        locals=locals_,
        dof_offsets=dof_offsets,
        dofs=x,
        residual=residual,
    )


def _nearest_outward_normal(pts: np.ndarray) -> np.ndarray:
    """Outward normal of the square (-1,1)^2 at boundary points."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    normals = np.zeros_like(pts)
    dists = np.stack(
        [
            np.abs(pts[:, 0] - (-1.0)),
            np.abs(pts[:, 0] - 1.0),
            np.abs(pts[:, 1] - (-1.0)),
            np.abs(pts[:, 1] - 1.0),
        ]
    )
    side = np.argmin(dists, axis=0)
    normals[side == 0] = [-1.0, 0.0]
    normals[side == 1] = [1.0, 0.0]
    normals[side == 2] = [0.0, -1.0]
    normals[side == 3] = [0.0, 1.0]
    return normals


def matrix_market_dump(matrix: sps.spmatrix, rhs: np.ndarray, stream) -> None:
    """Coordinate-format text dump (i, j, re, im) of the system for
    external inspection."""
    coo = matrix.tocoo()
    stream.write(f"# complex sparse matrix {coo.shape[0]} x {coo.shape[1]}, "
                 f"{coo.nnz} entries\n")
    for i, j, v in zip(coo.row, coo.col, coo.data):
        stream.write(f"{i} {j} {v.real!r} {v.imag!r}\n")
    stream.write(f"# rhs {len(rhs)}\n")
    for i, v in enumerate(rhs):
        stream.write(f"{i} {v.real!r} {v.imag!r}\n")


def dof_map_csv(mesh: PolygonMesh, edge_bases, dof_offsets, stream) -> None:
    """CSV dump of (edge id, local index, global index)."""
    stream.write("edge,local_index,global_index\n")
    for edge in mesh.edges:
        eb = edge_bases[edge.index]
        for l in range(eb.p_hat):
            stream.write(f"{edge.index},{l},{dof_offsets[edge.index] + l}\n")
