"""Per-edge trace bases: candidate collection, orthogonalization, filtering.

Every edge collects the traces of all wave functions of its adjacent
elements.  The edge Gram matrix of those traces is spectrally decomposed;
eigenvalues at or below the filtering tolerance are dropped and the
remaining eigenvectors are rescaled so the surviving combinations are
L2(e)-orthonormal.  These combinations carry the global degrees of freedom,
so redundancy across neighbouring wave sets is removed before it can poison
the conditioning of the linear system.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import Edge, PolygonMesh
from .quadrature import segment_rule
from .waves import ElementWaveBasis, edge_integral_matrix

DEFAULT_FILTER_TOL = 1e-13

# Relative guard on top of the absolute tolerance; see orthogonalize_filter.
DEFAULT_FILTER_REL = 0.0

HERMITICITY_RTOL = 1e-12


class EdgeBasisError(RuntimeError):
    """Raised when an edge trace basis cannot be built."""


@dataclass(frozen=True)
class EdgeCandidateSet:
    """All wave traces contributed to one edge by its adjacent elements."""

    edge: Edge
    sources: tuple[tuple[int, int], ...]  # (element id, wave index within element)
    kappas: np.ndarray  # (rho, 2) complex
    centers: np.ndarray  # (rho, 2)

    @property
    def rho(self) -> int:
        return len(self.sources)

    def eval_matrix(self, x: np.ndarray) -> np.ndarray:
        """Trace values at points (m, 2) -> (m, rho)."""
        x = np.asarray(x, dtype=float)
        phases = x[:, None, :] - self.centers[None, :, :]
        return np.exp(1j * (phases * self.kappas[None, :, :]).sum(axis=2))

    def gram(self) -> np.ndarray:
        """Edge Gram G0[j, l] = (nu_l, nu_j)_{0,e} = integral_e nu_l conj(nu_j) ds.

        With this index order, the squared norm of a combination
        sum_r c_r nu_r is  c^H G0 c,  so G0 is the matrix to eigendecompose.
        """
        m = edge_integral_matrix(
            self.kappas, self.centers, self.kappas, self.centers, self.edge.a, self.edge.b
        )  # m[r, s] = integral nu_r conj(nu_s)
        return m.T


def build_candidates(
    mesh: PolygonMesh, bases: list[ElementWaveBasis]
) -> list[EdgeCandidateSet]:
    """Candidate trace sets for every edge of the mesh.

    Interior edges receive both neighbours' bulk waves, boundary edges the
    single neighbour's; on interface and cut-adjacent edges the two sides
    contribute waves with their respective (physical or artificial)
    wavenumbers.
    """
    if len(bases) != mesh.n_elements:
        raise EdgeBasisError("one wave basis per element is required")
    out = []
    for edge in mesh.edges:
        sources = []
        kappas = []
        centers = []
        for el_id in edge.elements:
            basis = bases[el_id]
            for widx in range(len(basis)):
                sources.append((el_id, widx))
            kappas.append(basis.kappas)
            centers.append(np.broadcast_to(basis.center, (len(basis), 2)))
        out.append(
            EdgeCandidateSet(
                edge=edge,
                sources=tuple(sources),
                kappas=np.concatenate(kappas),
                centers=np.concatenate(centers),
            )
        )
    return out


@dataclass(frozen=True)
class OrthogonalEdgeBasis:
    """Filtered, L2(e)-orthonormal combinations of the candidate traces."""

    candidates: EdgeCandidateSet
    coeffs: np.ndarray  # (rho, p_hat); w_hat_l = sum_r coeffs[r, l] nu_r
    eigenvalues: np.ndarray  # retained eigenvalues, descending

    @property
    def edge(self) -> Edge:
        return self.candidates.edge

    @property
    def p_hat(self) -> int:
        return self.coeffs.shape[1]

    def eval_matrix(self, x: np.ndarray) -> np.ndarray:
        """Values of the orthonormal functions at points (m, 2) -> (m, p_hat)."""
        return self.candidates.eval_matrix(x) @ self.coeffs

    def integrals_with(self, basis: ElementWaveBasis) -> np.ndarray:
        """C[j, l] = integral_e w_l conj(w_hat_j) ds for all bulk waves w_l.

        These products are exact (closed form); they are the single building
        block of the D and B matrices.
        """
        cand = self.candidates
        t = edge_integral_matrix(
            basis.kappas,
            np.broadcast_to(basis.center, (len(basis), 2)),
            cand.kappas,
            cand.centers,
            cand.edge.a,
            cand.edge.b,
        )  # t[l, r] = integral w_l conj(nu_r)
        return (t @ np.conj(self.coeffs)).T

    def quadrature_gram(self) -> np.ndarray:
        """Gram (w_hat_l, w_hat_j) via pointwise evaluation and Gauss rules.

        Pointwise evaluation amplifies roundoff only linearly in the
        combination coefficients (the closed-form bilinear path amplifies
        quadratically), so this measures orthonormality to ~1e-11 even when
        the filtering retained eigenvalues near the tolerance.
        """
        edge = self.edge
        scale = max(float(np.max(np.abs(self.candidates.kappas.real))), 1.0)
        n_q = max(64, int(np.ceil(3.0 * scale * edge.length)))
        pts, wts = segment_rule(edge.a, edge.b, n_q)
        w = self.eval_matrix(pts)
        return (w * wts[:, None]).conj().T @ w

    def orthonormality_defect(self) -> float:
        """max |(w_hat_l, w_hat_j) - delta_lj|."""
        c = self.quadrature_gram()
        return float(np.max(np.abs(c - np.eye(self.p_hat))))


def orthogonalize_filter(
    candidates: EdgeCandidateSet,
    sigma_filter: float = DEFAULT_FILTER_TOL,
    sigma_rel: float = DEFAULT_FILTER_REL,
) -> OrthogonalEdgeBasis:
    """Run the spectral filtering on one edge.

    Assembles the Hermitian edge Gram of the candidate traces, drops the
    eigenpairs with eigenvalue at or below ``sigma_filter`` (absolute) or
    below ``sigma_rel`` times the largest eigenvalue, and rescales the
    remaining eigenvectors by 1/sqrt(lambda).

    The relative component guards global stability: a direction whose
    eigenvalue is tiny relative to the edge scale is nearly invisible to
    every adjacent wave space, so its degree of freedom would carry no
    information while pushing the global matrix towards singularity.
    """
    if sigma_filter <= 0:
        raise ValueError("sigma_filter must be positive")
    if sigma_rel < 0:
        raise ValueError("sigma_rel must be nonnegative")
    gram = candidates.gram()
    scale = max(np.max(np.abs(gram)), 1e-300)
    herm_defect = np.max(np.abs(gram - gram.conj().T))
    if herm_defect > HERMITICITY_RTOL * scale:
        raise EdgeBasisError(
            f"edge {candidates.edge.index}: Gram matrix is non-Hermitian beyond "
            f"tolerance ({herm_defect:.2e} vs scale {scale:.2e}); edge "
            "integration is inconsistent"
        )
    gram = 0.5 * (gram + gram.conj().T)
    lam, vec = np.linalg.eigh(gram)
    # Eigenvalues at the round-off level of the Gram itself are
    # indistinguishable from zero and must never be retained, whatever the
    # nominal tolerance: with strongly growing trace amplitudes (evanescent
    # waves on large elements) the Gram scale can push the noise floor above
    # an absolute tolerance.
    noise_floor = 2.0 * len(lam) * np.finfo(float).eps * max(float(lam[-1]), 0.0)
    threshold = max(sigma_filter, sigma_rel * float(lam[-1]), noise_floor)
    keep = lam > threshold
    if not np.any(keep):
        raise EdgeBasisError(
            f"edge {candidates.edge.index}: all {candidates.rho} eigenvalues are "
            f"<= {sigma_filter:g}; the filtering tolerance is too large for "
            "this edge"
        )
    lam = lam[keep][::-1]
    vec = vec[:, keep][:, ::-1]
    coeffs = vec / np.sqrt(lam)[None, :]
    # Eigenvalues barely above the tolerance leave the first-pass functions
    # orthonormal only to ~eps*|G0|/lambda_min.  Refine within the retained
    # span against the pointwise (quadrature) Gram, whose roundoff is only
    # linear in the combination coefficients.
    basis = OrthogonalEdgeBasis(candidates=candidates, coeffs=coeffs, eigenvalues=lam)
    eye = np.eye(coeffs.shape[1])
    for _ in range(3):
        c = basis.quadrature_gram()
        if np.max(np.abs(c - eye)) < 1e-12:
            break
        c = 0.5 * (c + c.conj().T)
        lam2, vec2 = np.linalg.eigh(c)
        if lam2[0] <= 0.0:
            raise EdgeBasisError(
                f"edge {candidates.edge.index}: retained trace combinations "
                "collapsed during re-orthonormalization; lower sigma_filter"
            )
        coeffs = coeffs @ (vec2 / np.sqrt(lam2)[None, :])
        basis = OrthogonalEdgeBasis(
            candidates=candidates, coeffs=coeffs, eigenvalues=lam
        )
    return basis


def build_edge_bases(
    mesh: PolygonMesh,
    bases: list[ElementWaveBasis],
    sigma_filter: float = DEFAULT_FILTER_TOL,
    sigma_rel: float = DEFAULT_FILTER_REL,
) -> list[OrthogonalEdgeBasis]:
    """Candidate collection plus filtering for every edge of the mesh."""
    return [
        orthogonalize_filter(c, sigma_filter=sigma_filter, sigma_rel=sigma_rel)
        for c in build_candidates(mesh, bases)
    ]


def filtering_report(edge_bases: list[OrthogonalEdgeBasis]) -> str:
    """CSV diagnostic: per edge, candidate count, kept count, spectrum range."""
    lines = ["edge,rho,p_hat,lambda_min,lambda_max"]
    for eb in edge_bases:
        lines.append(
            f"{eb.edge.index},{eb.candidates.rho},{eb.p_hat},"
            f"{eb.eigenvalues[-1]:.6e},{eb.eigenvalues[0]:.6e}"
        )
    return "\n".join(lines) + "\n"
