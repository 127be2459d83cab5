"""Seeded random generators for states, symplectics and channels."""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from .channel import GaussianChannel, conjugate
from .symplectic import Array, symplectic_form
from .twomode import TwoModeClass


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 0.4) -> Array:
    """exp(sigma A) with A symmetric is symplectic."""
    a = rng.standard_normal((2 * n, 2 * n)) * scale
    a = 0.5 * (a + a.T)
    return expm(symplectic_form(n) @ a)


def random_covariance(n: int, rng: np.random.Generator,
                      occ_scale: float = 1.0) -> Array:
    """Valid covariance with symplectic eigenvalues >= 1."""
    d = 1.0 + occ_scale * np.abs(rng.standard_normal(n))
    s = random_symplectic(n, rng)
    return s @ np.diag(np.concatenate([d, d])) @ s.T


def random_pure_covariance(n: int, rng: np.random.Generator) -> Array:
    s = random_symplectic(n, rng)
    return s @ s.T


def _per_mode_channel(etas, occupations) -> GaussianChannel:
    etas = np.asarray(etas, dtype=float)
    occ = np.asarray(occupations, dtype=float)
    x = np.diag(np.concatenate([np.sqrt(etas), np.sqrt(etas)]))
    y = np.abs(1.0 - etas) * (2.0 * occ + 1.0)
    return GaussianChannel(len(etas), len(etas), x, np.diag(np.concatenate([y, y])))


def random_channel(n: int, rng: np.random.Generator,
                   minimal: bool = False) -> GaussianChannel:
    """Random full-rank-noise channel: per-mode attenuations and
    amplifications dressed by symplectics on both sides.  With
    ``minimal`` the added noise is the least the transfer part allows.
    """
    etas = np.exp(rng.uniform(-1.2, 1.2, size=n))
    # keep away from the noiseless eta = 1 point
    etas = np.where(np.abs(etas - 1.0) < 0.05, etas + 0.1, etas)
    # non-minimal draws stay clearly off the minimal-noise boundary
    occ = np.zeros(n) if minimal else rng.uniform(0.05, 1.5, size=n)
    ch = _per_mode_channel(etas, occ)
    s1 = random_symplectic(n, rng)
    s2 = random_symplectic(n, rng)
    return conjugate(ch, s1, s2)


def random_two_mode_class(kind: str, rng: np.random.Generator) -> TwoModeClass:
    """Class draw with parameters kept off the singular boundaries
    (0 and 1 for eigenvalues, 1/2 for the rotation threshold)."""

    def eig():
        v = rng.uniform(-3.0, 3.0)
        for bad in (0.0, 0.5, 1.0):
            if abs(v - bad) < 0.05:
                v += 0.1
        return v

    if kind == "A1":
        a, b = eig(), eig()
        while abs(a - b) < 0.05:
            b = eig()
        return TwoModeClass("A1", a, b)
    if kind == "A2":
        a = eig()
        return TwoModeClass("A2", a, a)
    if kind == "B":
        a = eig()
        return TwoModeClass("B", a, a)
    if kind == "C":
        a = eig()
        b = rng.uniform(0.05, 2.0) * (1.0 if rng.uniform() < 0.5 else -1.0)
        return TwoModeClass("C", a, b)
    raise ValueError(f"unknown kind {kind!r}")
