"""Gaussian channels (X, Y, v) acting on covariance matrices.

The action is gamma -> X^T gamma X + Y on covariances and
m -> X^T m + v on means.  Complete positivity is the matrix condition
Y >= i*Sigma with Sigma = sigma_out - X^T sigma_in X.

Channels between spaces whose commutation matrix is not the standard
one (weak complements of structured dilations) carry their forms in
``sigma_in`` / ``sigma_out``; None means standard.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL_PSD, TOL_RANK
from .states import GaussianState
from .symplectic import (
    Array,
    HermitianPair,
    is_symplectic,
    psd_check,
    pseudo_inverse,
    skew_normal_form,
    symplectic_form,
    williamson,
)


@dataclass
class GaussianChannel:
    """Covariance-level channel from n_in to n_out modes."""

    n_in: int
    n_out: int
    X: Array
    Y: Array
    v: Array | None = None
    sigma_in: Array | None = None
    sigma_out: Array | None = None

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.Y = np.asarray(self.Y, dtype=float)
        di, do = 2 * self.n_in, 2 * self.n_out
        if self.X.shape != (di, do):
            raise ValueError(f"X must be {di} x {do}, got {self.X.shape}")
        if self.Y.shape != (do, do):
            raise ValueError(f"Y must be {do} x {do}")
        scale = max(1.0, float(np.max(np.abs(self.Y))))
        if np.max(np.abs(self.Y - self.Y.T)) > 1e-8 * scale:
            raise ValueError("Y must be symmetric")
        if self.v is None:
            self.v = np.zeros(do)
        else:
            self.v = np.asarray(self.v, dtype=float)
            if self.v.shape != (do,):
                raise ValueError("v must have length 2*n_out")
        for name, form, d in (("sigma_in", self.sigma_in, di), ("sigma_out", self.sigma_out, do)):
            if form is not None and np.asarray(form).shape != (d, d):
                raise ValueError(f"{name} has the wrong shape")

    def form_in(self) -> Array:
        return symplectic_form(self.n_in) if self.sigma_in is None else np.asarray(self.sigma_in)

    def form_out(self) -> Array:
        return symplectic_form(self.n_out) if self.sigma_out is None else np.asarray(self.sigma_out)

    def noise_form(self) -> Array:
        """Sigma = sigma_out - X^T sigma_in X (real antisymmetric)."""
        return self.form_out() - self.X.T @ self.form_in() @ self.X


def identity_channel(n: int) -> GaussianChannel:
    return GaussianChannel(n, n, np.eye(2 * n), np.zeros((2 * n, 2 * n)))


def attenuator(eta: float, occupation: float = 0.0) -> GaussianChannel:
    """Single-mode attenuator (eta < 1) or amplifier (eta > 1) with a
    thermal environment of the given occupation."""
    if eta <= 0 or abs(eta - 1.0) < 1e-12:
        raise ValueError("eta must be positive and different from 1")
    X = np.sqrt(eta) * np.eye(2)
    Y = abs(1.0 - eta) * (2.0 * occupation + 1.0) * np.eye(2)
    return GaussianChannel(1, 1, X, Y)


def additive_noise(Y: Array) -> GaussianChannel:
    """Classical noise channel X = identity, noise Y >= 0."""
    Y = np.asarray(Y, dtype=float)
    n = Y.shape[0] // 2
    return GaussianChannel(n, n, np.eye(2 * n), Y)


def validate_cp(ch: GaussianChannel, tol: float = TOL_PSD) -> tuple[bool, float]:
    """Complete positivity: Y - i*Sigma >= 0.  Returns (ok, min eig)."""
    return psd_check(HermitianPair(ch.Y, -ch.noise_form()), tol)


def apply(ch: GaussianChannel, st: GaussianState) -> GaussianState:
    """Push a state through the channel."""
    if st.n != ch.n_in:
        raise ValueError(f"state has {st.n} modes, channel expects {ch.n_in}")
    gamma = ch.X.T @ st.gamma @ ch.X + ch.Y
    mean = ch.X.T @ st.mean + ch.v
    return GaussianState(n=ch.n_out, gamma=gamma, mean=mean)


def compose(first: GaussianChannel, second: GaussianChannel) -> GaussianChannel:
    """Channel applying ``first`` then ``second``."""
    if first.n_out != second.n_in:
        raise ValueError("mode counts do not match for composition")
    X = first.X @ second.X
    Y = second.X.T @ first.Y @ second.X + second.Y
    v = second.X.T @ first.v + second.v
    return GaussianChannel(
        first.n_in, second.n_out, X, Y, v,
        sigma_in=first.sigma_in, sigma_out=second.sigma_out,
    )


def conjugate(ch: GaussianChannel, S1: Array, S2: Array) -> GaussianChannel:
    """Sandwich the channel between symplectic unitaries:
    X -> S1 X S2, Y -> S2^T Y S2, v -> S2^T v."""
    S1 = np.asarray(S1, dtype=float)
    S2 = np.asarray(S2, dtype=float)
    if not is_symplectic(S1, ch.form_in()):
        raise ValueError("S1 must be symplectic on the input space")
    if not is_symplectic(S2, ch.form_out()):
        raise ValueError("S2 must be symplectic on the output space")
    return GaussianChannel(
        ch.n_in, ch.n_out,
        S1 @ ch.X @ S2,
        S2.T @ ch.Y @ S2,
        S2.T @ ch.v,
        sigma_in=ch.sigma_in, sigma_out=ch.sigma_out,
    )


@dataclass
class RankInvariants:
    """Ranks controlling the dilation sizes: k = rank Y, r = rank Sigma,
    r_prime = k - rank(Y - Sigma Y^+ Sigma^T)."""

    k: int
    r: int
    r_prime: int


def rank_invariants(ch: GaussianChannel, tol_rank: float = TOL_RANK) -> RankInvariants:
    Sigma = ch.noise_form()
    k = pseudo_inverse(ch.Y, tol_rank)[2]
    r = skew_normal_form(Sigma, tol_rank).r
    ypinv, _, _ = pseudo_inverse(ch.Y, tol_rank)
    gap = ch.Y - Sigma @ ypinv @ Sigma.T
    # gap is symmetric PSD for a CP channel; its rank counts against
    # the scale of Y so a cancelled difference reads as zero
    w = np.linalg.eigvalsh((gap + gap.T) / 2.0)
    scale = float(np.max(np.abs(ch.Y))) if ch.Y.size else 0.0
    rank_gap = int(np.count_nonzero(w > tol_rank * scale)) if scale > 0 else 0
    return RankInvariants(k=k, r=r, r_prime=k - rank_gap)


def channel_class(ch: GaussianChannel, tol_rank: float = TOL_RANK) -> tuple[str, RankInvariants]:
    """Which of the three structural cases the channel falls in:
    'i' when k = r = 2n, 'ii' when k = 2n > r, 'iii' when k < 2n."""
    if ch.n_in != ch.n_out:
        raise ValueError("classification is defined for square channels")
    inv = rank_invariants(ch, tol_rank)
    full = 2 * ch.n_out
    if inv.k == full and inv.r == full:
        return "i", inv
    if inv.k == full:
        return "ii", inv
    return "iii", inv


def _case_i_k(ch: GaussianChannel) -> Array:
    """K with K Sigma K^T = sigma for a full-rank noise form."""
    Sigma = ch.noise_form()
    form = skew_normal_form(Sigma)
    if form.r != Sigma.shape[0]:
        raise ValueError("noise form is singular; not a full-quantum-limited case")
    m = np.concatenate([form.mu, form.mu])
    return np.diag(1.0 / np.sqrt(m)) @ form.O


def is_minimal_noise(ch: GaussianChannel, tol: float = 1e-8) -> bool:
    """Noise saturates the quantum limit: Y = Sigma Y^+ Sigma^T."""
    ypinv, _, _ = pseudo_inverse(ch.Y)
    Sigma = ch.noise_form()
    resid = ch.Y - Sigma @ ypinv @ Sigma.T
    return float(np.max(np.abs(resid))) <= tol * max(1.0, float(np.max(np.abs(ch.Y))))


def minimal_noise_split(ch: GaussianChannel) -> tuple[GaussianChannel, GaussianChannel]:
    """Split a full-rank channel into minimal part plus classical noise.

    Writes the environment gamma_E = K Y K^T as S S^T + Delta by normal
    modes and strips the excitations: returns (minimal, additive) with
    minimal = (X, Y_min) extremal and additive = (1, Y - Y_min), so that
    compose(minimal, additive) reproduces the channel.
    """
    kind, _ = channel_class(ch)
    if kind != "i":
        raise ValueError("splitting needs full-rank Y and Sigma")
    K = _case_i_k(ch)
    gamma_e = K @ ch.Y @ K.T
    S, _ = williamson(gamma_e)
    gamma_pure = S @ S.T
    Kinv = np.linalg.inv(K)
    y_min = Kinv @ gamma_pure @ Kinv.T
    y_add = ch.Y - y_min
    minimal = GaussianChannel(ch.n_in, ch.n_out, ch.X.copy(), y_min)
    extra = GaussianChannel(ch.n_out, ch.n_out, np.eye(2 * ch.n_out), y_add)
    return minimal, extra


def additive_noise_normal_form(ch: GaussianChannel, tol: float = 1e-8) -> tuple[Array, Array]:
    """Decouple an additive classical noise channel into independent
    per-mode noises.

    Requires X = identity and Y positive definite; returns (S2, lam)
    with S2 symplectic and S2^T Y S2 = diag(lam, lam).  Singular Y has
    no symplectic diagonalization of this kind; build the channel from
    the ideal-like dilation instead.
    """
    d = 2 * ch.n_out
    if ch.n_in != ch.n_out or np.max(np.abs(ch.X - np.eye(d))) > tol:
        raise ValueError("normal form applies to X = identity channels only")
    w = np.linalg.eigvalsh((ch.Y + ch.Y.T) / 2.0)
    if w[0] <= tol * max(1.0, w[-1]):
        raise ValueError(
            "Y must be positive definite; for singular additive noise use the "
            "ideal-like dilation route"
        )
    S, lam = williamson(ch.Y)
    S2 = np.linalg.inv(S).T
    return S2, lam
