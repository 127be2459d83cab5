"""Gaussian states at the covariance level.

A state of n modes is a real symmetric 2n x 2n covariance matrix gamma
with gamma + i*sigma >= 0, plus a mean vector.  Vacuum is the identity
in these units; a thermal mode with occupation N has variance 2N + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL_PSD
from .symplectic import (
    Array,
    HermitianPair,
    psd_check,
    symplectic_form,
)


@dataclass
class GaussianState:
    """Covariance matrix and mean of an n-mode Gaussian state."""

    n: int
    gamma: Array
    mean: Array | None = None

    def __post_init__(self):
        self.gamma = np.asarray(self.gamma, dtype=float)
        if self.gamma.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"gamma must be {2 * self.n} x {2 * self.n}")
        if self.mean is None:
            self.mean = np.zeros(2 * self.n)
        else:
            self.mean = np.asarray(self.mean, dtype=float)
            if self.mean.shape != (2 * self.n,):
                raise ValueError("mean must have length 2n")


def validate_state(gamma: Array, tol: float = TOL_PSD) -> tuple[bool, float]:
    """Uncertainty check gamma + i*sigma >= 0.

    Returns (valid, min_eigenvalue) where the eigenvalue is the smallest
    of the Hermitian matrix gamma + i*sigma.
    """
    gamma = np.asarray(gamma, dtype=float)
    n = gamma.shape[0] // 2
    return psd_check(HermitianPair(gamma, symplectic_form(n)), tol)


def is_pure(gamma: Array, tol: float = 1e-8, sigma: Array | None = None) -> bool:
    """Purity via the inversion identity gamma = -sigma gamma^{-1} sigma,
    cross-checked against det(gamma) = 1.  ``sigma`` overrides the
    standard form when the modes carry a block-permuted one."""
    gamma = np.asarray(gamma, dtype=float)
    n = gamma.shape[0] // 2
    sigma = symplectic_form(n) if sigma is None else np.asarray(sigma, dtype=float)
    resid = gamma + sigma @ np.linalg.solve(gamma, sigma)
    scale = max(1.0, float(np.max(np.abs(gamma))))
    ident = float(np.max(np.abs(resid))) <= tol * scale
    det = abs(float(np.linalg.det(gamma)) - 1.0) <= tol * scale ** (2 * n)
    return ident and det


def thermal_state(occupations) -> GaussianState:
    """Product thermal state; ``occupations`` lists N_j >= 0 per mode."""
    occ = np.atleast_1d(np.asarray(occupations, dtype=float))
    if np.any(occ < 0):
        raise ValueError("occupations must be >= 0")
    v = 2.0 * occ + 1.0
    return GaussianState(n=len(occ), gamma=np.diag(np.concatenate([v, v])))


@dataclass
class TwoModeStandardForm:
    """Two-mode covariance in standard form.

    Q-sector block [[x, z_minus], [z_minus, y]] and P-sector block
    [[x, z_plus], [z_plus, y]]; the two modes keep equal Q and P
    variances x and y.
    """

    x: float
    y: float
    z_minus: float
    z_plus: float

    def validate(self, tol: float = TOL_PSD):
        x, y, zm, zp = self.x, self.y, self.z_minus, self.z_plus
        if x + y < -tol:
            raise ValueError(f"x + y = {x + y} must be >= 0")
        if x * y - zm * zm < 1.0 - tol:
            raise ValueError(f"x*y - z_minus^2 = {x * y - zm * zm} must be >= 1")
        quartic = (
            x * x * y * y
            - y * y
            - x * x
            + (zm * zp - 1.0) ** 2
            - x * y * (zm * zm + zp * zp)
        )
        scale = max(1.0, x * x * y * y)
        if quartic < -tol * scale:
            raise ValueError(f"standard-form quartic constraint violated ({quartic})")


def two_mode_standard(form: TwoModeStandardForm) -> GaussianState:
    """Assemble the 4 x 4 covariance of a standard-form two-mode state.

    Index map in the global (Q;P) ordering: rows (Q1, Q2, P1, P2); the
    Q-sector correlation is z_minus, the P-sector correlation z_plus.
    """
    form.validate()
    g1 = np.array([[form.x, form.z_minus], [form.z_minus, form.y]])
    g2 = np.array([[form.x, form.z_plus], [form.z_plus, form.y]])
    gamma = np.block([
        [g1, np.zeros((2, 2))],
        [np.zeros((2, 2)), g2],
    ])
    return GaussianState(n=2, gamma=gamma)


def two_mode_squeezer(r: float, phi: float = 0.0) -> Array:
    """Symplectic two-mode squeezer V = R^{-T} (+) R acting on (Q;P).

    R = [[c + h*s, -q*s], [-q*s, c - h*s]] with c = cosh(2r),
    s = sinh(2r), h = cos(2*phi), q = sin(2*phi); det R = 1 and R is
    symmetric, so R^{-T} is its adjugate transpose.
    """
    c = np.cosh(2.0 * r)
    s = np.sinh(2.0 * r)
    h = np.cos(2.0 * phi)
    q = np.sin(2.0 * phi)
    R = np.array([[c + h * s, -q * s], [-q * s, c - h * s]])
    Rinv = np.array([[c - h * s, q * s], [q * s, c + h * s]])  # adjugate, det = 1
    z = np.zeros((2, 2))
    return np.block([[Rinv.T, z], [z, R]])
