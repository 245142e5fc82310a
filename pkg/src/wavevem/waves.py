"""Plane and evanescent wave calculus.

A single exponential type ``exp(i kappa . (x - center))`` with a complex
wavevector covers both plane waves (real kappa) and evanescent waves
(complex kappa).  The Trefftz constraint kappa . kappa = k^2 (plain dot
product, no conjugation) is exactly the statement that the wave solves the
homogeneous Helmholtz equation for the element wavenumber k.

Edge integrals of wave pairs have a closed form; the solver never touches
2-D quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TREFFTZ_RTOL = 1e-12

# Crossover for the (e^z - 1)/z kernel: below this the direct formula loses
# digits to cancellation, so a short Taylor series is used instead.
_PHI_SERIES_RADIUS = 1e-3
_PHI_SERIES_TERMS = 12


class TrefftzError(ValueError):
    """Raised when a wavevector does not satisfy kappa . kappa = k^2."""


@dataclass(frozen=True)
class WaveFunction:
    """Exponential wave exp(i kappa . (x - center)) tied to a wavenumber k."""

    kappa: np.ndarray
    center: np.ndarray
    k: float

    def __post_init__(self):
        kappa = np.asarray(self.kappa, dtype=complex).reshape(2)
        center = np.asarray(self.center, dtype=float).reshape(2)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "center", center)
        residual = abs(kappa @ kappa - self.k**2)
        if residual > TREFFTZ_RTOL * self.k**2:
            raise TrefftzError(
                f"kappa.kappa = {kappa @ kappa:.6g} differs from k^2 = "
                f"{self.k**2:.6g} (relative residual {residual / self.k**2:.2e})"
            )

    def __call__(self, x) -> np.ndarray | complex:
        x = np.asarray(x, dtype=float)
        phase = (x - self.center) @ self.kappa
        return np.exp(1j * phase)

    def grad(self, x) -> np.ndarray:
        """Gradient i * kappa * w(x); shape (..., 2)."""
        val = self(x)
        return 1j * np.multiply.outer(val, self.kappa)


def plane_wave_directions(q: int, offset: float = 0.0) -> np.ndarray:
    """The 2q + 1 equidistributed unit directions, starting at ``offset``.

    Shape (2q+1, 2).  A nonzero offset rotates the whole fan; results of the
    method should be insensitive to it.
    """
    if q < 1:
        raise ValueError("effective plane-wave degree must be >= 1")
    p = 2 * q + 1
    angles = offset + 2.0 * np.pi * np.arange(p) / p
    return np.column_stack([np.cos(angles), np.sin(angles)])


def evanescent_directions(q_ev: int, n1: float, n2: float) -> np.ndarray:
    """Complex direction vectors of the 2 * q_ev evanescent waves.

    First component alternates -/+ n1*cos(theta_l); second component is
    i*sqrt(n1^2 cos^2(theta_l) - n2^2) with theta_l = l/(q_ev+1) * acos(n2/n1),
    so the waves oscillate along the interface and decay away from it.  Each
    direction satisfies d . d = n2^2, hence k*d is Trefftz for k2 = n2*k.
    """
    if not (n1 > n2 > 0):
        raise ValueError("evanescent directions require n1 > n2 > 0")
    if q_ev < 0:
        raise ValueError("q_ev must be >= 0")
    if q_ev == 0:
        return np.zeros((0, 2), dtype=complex)
    theta_crit = np.arccos(n2 / n1)
    ls = np.ceil(np.arange(1, 2 * q_ev + 1) / 2.0)
    thetas = ls / (q_ev + 1) * theta_crit
    cos = n1 * np.cos(thetas)
    sign = np.where(np.arange(1, 2 * q_ev + 1) % 2 == 1, -1.0, 1.0)
    dirs = np.zeros((2 * q_ev, 2), dtype=complex)
    dirs[:, 0] = sign * cos
    dirs[:, 1] = 1j * np.sqrt(cos**2 - n2**2)
    return dirs


@dataclass(frozen=True)
class ElementWaveBasis:
    """Ordered wave basis of one element: plane waves first, then evanescent."""

    element: int
    waves: tuple[WaveFunction, ...]
    q: int
    q_ev: int
    kappas: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "kappas", np.array([w.kappa for w in self.waves], dtype=complex)
        )

    def __len__(self) -> int:
        return len(self.waves)

    @property
    def center(self) -> np.ndarray:
        return self.waves[0].center

    @property
    def k(self) -> float:
        return self.waves[0].k

    def eval_matrix(self, x: np.ndarray) -> np.ndarray:
        """Values of all basis waves at points x (m, 2) -> (m, n_w)."""
        x = np.asarray(x, dtype=float)
        phases = (x - self.center) @ self.kappas.T
        return np.exp(1j * phases)

    def grad_matrix(self, x: np.ndarray) -> np.ndarray:
        """Gradients of all basis waves at points x -> (m, n_w, 2)."""
        vals = self.eval_matrix(x)
        return 1j * vals[:, :, None] * self.kappas[None, :, :]


def make_element_basis(
    element: int,
    center,
    k_elem: float,
    q: int,
    q_ev: int = 0,
    n1: float | None = None,
    n2: float | None = None,
    k_base: float | None = None,
    offset: float = 0.0,
) -> ElementWaveBasis:
    """Build the wave basis of one element.

    Plane waves use the element wavenumber ``k_elem``; evanescent waves use
    the base wavenumber ``k_base`` together with the refraction indices, and
    are only admissible when k_elem == n2 * k_base (they satisfy the same
    Helmholtz equation).  q == 0 means no plane waves.
    """
    center = np.asarray(center, dtype=float)
    waves: list[WaveFunction] = []
    if q >= 1:
        for d in plane_wave_directions(q, offset=offset):
            waves.append(WaveFunction(kappa=k_elem * d.astype(complex), center=center, k=k_elem))
    if q_ev > 0:
        if n1 is None or n2 is None or k_base is None:
            raise ValueError("evanescent waves need n1, n2 and the base wavenumber")
        for d in evanescent_directions(q_ev, n1, n2):
            waves.append(WaveFunction(kappa=k_base * d, center=center, k=k_elem))
    if not waves:
        raise ValueError(f"element {element}: empty wave basis (q = q_ev = 0)")
    return ElementWaveBasis(element=element, waves=tuple(waves), q=q, q_ev=q_ev)


def _phi(z: np.ndarray) -> np.ndarray:
    """(e^z - 1)/z extended by continuity; series near zero, vectorized."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < _PHI_SERIES_RADIUS
    zs = z[small]
    acc = np.zeros_like(zs)
    # Horner form of sum_{n=0}^{N} z^n / (n+1)!
    for n in range(_PHI_SERIES_TERMS, 0, -1):
        acc = (acc + 1.0 / math.factorial(n + 1)) * zs
    out[small] = acc + 1.0
    zl = z[~small]
    out[~small] = np.expm1(zl) / zl
    return out


def edge_integral_pair(w1: WaveFunction, w2: WaveFunction, a, b) -> complex:
    """Closed-form L2 edge product  integral_e w1 * conj(w2) ds.

    The edge is the straight segment from a to b.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    h = float(np.hypot(*(b - a)))
    dk = w1.kappa - np.conj(w2.kappa)
    z = 1j * (dk @ (b - a))
    pref = w1(a) * np.conj(w2(a))
    return complex(h * pref * _phi(np.array([z]))[0])


def edge_integral_matrix(
    kappas_row: np.ndarray,
    centers_row: np.ndarray,
    kappas_col: np.ndarray,
    centers_col: np.ndarray,
    a,
    b,
) -> np.ndarray:
    """Pairwise closed-form products  M[r, s] = integral_e w_r * conj(w_s) ds.

    Rows/cols are described by stacked wavevectors (n, 2) and centers (n, 2);
    vectorizes ``edge_integral_pair`` over all pairs on one edge.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    h = float(np.hypot(*(b - a)))
    va = np.exp(1j * ((a[None, :] - centers_row) * kappas_row).sum(axis=1))
    vb = np.exp(1j * ((a[None, :] - centers_col) * kappas_col).sum(axis=1))
    dk = kappas_row[:, None, :] - np.conj(kappas_col)[None, :, :]
    z = 1j * (dk @ (b - a))
    return h * va[:, None] * np.conj(vb)[None, :] * _phi(z)
