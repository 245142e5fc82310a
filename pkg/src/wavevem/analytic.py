"""Closed-form solutions of the fluid-fluid interface problem.

An incoming plane wave from the lower half of the square hits the interface
y = 0: above the critical angle it is partially reflected and a plane wave
is transmitted; below it, total internal reflection leaves only evanescent
modes in the upper half.  The resulting exact field supplies the impedance
boundary datum that drives the solver and the reference for error reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def critical_angle(n1: float, n2: float) -> float:
    """acos(n2/n1); incidence below it causes total internal reflection."""
    if not (n1 >= n2 > 0):
        raise ValueError("refraction indices must satisfy n1 >= n2 > 0")
    return float(np.arccos(n2 / n1))


@dataclass(frozen=True)
class InterfaceProblem:
    """Problem data: base wavenumber, refraction indices, incidence angle.

    The incidence angle is measured from the interface; the incoming wave
    travels along (cos(theta_inc), sin(theta_inc)) with wavenumber k1.
    """

    k: float
    n1: float
    n2: float
    theta_inc: float

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("base wavenumber must be positive")
        if not (self.n1 >= self.n2 > 0):
            raise ValueError("refraction indices must satisfy n1 >= n2 > 0")
        if not (0.0 < self.theta_inc <= np.pi / 2):
            raise ValueError("incidence angle must lie in (0, pi/2]")

    @property
    def k1(self) -> float:
        return self.n1 * self.k

    @property
    def k2(self) -> float:
        return self.n2 * self.k

    @property
    def theta_crit(self) -> float:
        return critical_angle(self.n1, self.n2)

    def wavenumber_at(self, y: float) -> float:
        """Physical wavenumber by subdomain; points on y = 0 count as upper."""
        return self.k1 if y < 0 else self.k2


def coefficients(problem: InterfaceProblem) -> tuple[float, complex, complex, complex]:
    """Snell coefficients (K1, K2, R, T) of the reflected/transmitted waves.

    K2 uses the principal complex square root, so below the critical angle it
    is purely imaginary with positive imaginary part and the transmitted wave
    decays away from the interface.
    """
    k1, k2 = problem.k1, problem.k2
    ct = np.cos(problem.theta_inc)
    st = np.sin(problem.theta_inc)
    K1 = k1 / k2 * ct
    K2 = np.sqrt(complex(1.0 - (k1 / k2) ** 2 * ct**2))
    R = (k1 * st - k2 * K2) / (k1 * st + k2 * K2)
    T = 1.0 + R
    return float(K1), complex(K2), complex(R), complex(T)


@dataclass(frozen=True)
class ExactSolution:
    """Incident + reflected field below the interface, transmitted above."""

    problem: InterfaceProblem
    K1: float = field(init=False)
    K2: complex = field(init=False)
    R: complex = field(init=False)
    T: complex = field(init=False)

    def __post_init__(self):
        K1, K2, R, T = coefficients(self.problem)
        object.__setattr__(self, "K1", K1)
        object.__setattr__(self, "K2", K2)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "T", T)

    @property
    def kappa_inc(self) -> np.ndarray:
        p = self.problem
        return p.k1 * np.array(
            [np.cos(p.theta_inc), np.sin(p.theta_inc)], dtype=complex
        )

    @property
    def kappa_refl(self) -> np.ndarray:
        p = self.problem
        return p.k1 * np.array(
            [np.cos(p.theta_inc), -np.sin(p.theta_inc)], dtype=complex
        )

    @property
    def kappa_trans(self) -> np.ndarray:
        return self.problem.k2 * np.array([self.K1, self.K2], dtype=complex)

    def __call__(self, x) -> np.ndarray | complex:
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 1
        pts = np.atleast_2d(x)
        lower = pts[:, 1] < 0.0
        out = np.empty(len(pts), dtype=complex)
        out[lower] = np.exp(1j * pts[lower] @ self.kappa_inc) + self.R * np.exp(
            1j * pts[lower] @ self.kappa_refl
        )
        out[~lower] = self.T * np.exp(1j * pts[~lower] @ self.kappa_trans)
        return out[0] if scalar else out

    def grad(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 1
        pts = np.atleast_2d(x)
        lower = pts[:, 1] < 0.0
        out = np.empty((len(pts), 2), dtype=complex)
        plo = pts[lower]
        out[lower] = 1j * (
            np.exp(1j * plo @ self.kappa_inc)[:, None] * self.kappa_inc[None, :]
            + self.R
            * np.exp(1j * plo @ self.kappa_refl)[:, None]
            * self.kappa_refl[None, :]
        )
        phi = pts[~lower]
        out[~lower] = (
            1j
            * self.T
            * np.exp(1j * phi @ self.kappa_trans)[:, None]
            * self.kappa_trans[None, :]
        )
        return out[0] if scalar else out

    def impedance_datum(self, x, normal) -> np.ndarray | complex:
        """Boundary datum g = grad(u).n + i*K*u with the physical wavenumber.

        Points exactly on the interface corners take the upper-side
        wavenumber (one-sided convention).
        """
        x = np.asarray(x, dtype=float)
        normal = np.asarray(normal, dtype=float)
        scalar = x.ndim == 1
        pts = np.atleast_2d(x)
        nrm = np.atleast_2d(normal)
        if nrm.shape[0] == 1 and pts.shape[0] > 1:
            nrm = np.broadcast_to(nrm, pts.shape)
        kk = np.where(pts[:, 1] < 0.0, self.problem.k1, self.problem.k2)
        vals = (self.grad(pts) * nrm).sum(axis=1) + 1j * kk * self(pts)
        return vals[0] if scalar else vals
