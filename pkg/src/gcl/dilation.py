"""Unitary dilations of Gaussian channels.

A dilation realizes a channel as a symplectic S = [[s1, s2], [s3, s4]]
on system plus environment, with the environment prepared in gamma_E:

    X^T gamma X + Y = s1 gamma s1^T + s2 gamma_E s2^T

so s1 = X^T and s2 gamma_E s2^T = Y.  S is symplectic with respect to
sigma_2n (+) sigma_E where sigma_E is the environment form (a direct
sum of standard blocks).

Environment sizes: a pure environment exists with ell = 2n - r'/2
modes and a mixed one with ell = 2n - r/2, where r = rank Sigma and
r' counts the unit skew eigenvalues of the whitened noise form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import F_CLAMP, TOL_PSD, TOL_RANK, TOL_UNIT, XI
from .channel import GaussianChannel, validate_cp
from .states import is_pure
from .symplectic import (
    Array,
    HermitianPair,
    direct_sum,
    is_symplectic,
    psd_check,
    skew_normal_form,
    symplectic_complete,
    symplectic_form,
)


@dataclass
class UnitaryDilation:
    """Symplectic dilation of an n-mode channel over an ell-mode
    environment prepared in gamma_E."""

    n: int
    ell: int
    S: Array
    gamma_E: Array
    sigma_E: Array
    pure: bool

    def __post_init__(self):
        self.S = np.asarray(self.S, dtype=float)
        self.gamma_E = np.asarray(self.gamma_E, dtype=float)
        self.sigma_E = np.asarray(self.sigma_E, dtype=float)
        self.pure = bool(self.pure)
        d = 2 * (self.n + self.ell)
        if self.S.shape != (d, d):
            raise ValueError(f"S must be {d} x {d}")
        if self.gamma_E.shape != (2 * self.ell, 2 * self.ell):
            raise ValueError("gamma_E must be 2*ell x 2*ell")
        if self.sigma_E.shape != (2 * self.ell, 2 * self.ell):
            raise ValueError("sigma_E must be 2*ell x 2*ell")
        form = direct_sum(symplectic_form(self.n), self.sigma_E)
        if not is_symplectic(self.S, form):
            raise ValueError("S is not symplectic for the composite form")
        ok, lo = psd_check(HermitianPair(self.gamma_E, self.sigma_E))
        if not ok:
            raise ValueError(f"gamma_E violates the uncertainty bound (min eig {lo:.3e})")

    @property
    def s1(self) -> Array:
        return self.S[: 2 * self.n, : 2 * self.n]

    @property
    def s2(self) -> Array:
        return self.S[: 2 * self.n, 2 * self.n:]

    @property
    def s3(self) -> Array:
        return self.S[2 * self.n:, : 2 * self.n]

    @property
    def s4(self) -> Array:
        return self.S[2 * self.n:, 2 * self.n:]

    def channel(self) -> GaussianChannel:
        return GaussianChannel(
            self.n, self.n, self.s1.T, self.s2 @ self.gamma_E @ self.s2.T
        )


def dilation_residual(d: UnitaryDilation, ch: GaussianChannel, gammas) -> float:
    """Largest deviation of s1 gamma s1^T + s2 gamma_E s2^T from the
    channel action, relative to 1 + |gamma|."""
    worst = 0.0
    env = d.s2 @ d.gamma_E @ d.s2.T
    for gamma in gammas:
        gamma = np.asarray(gamma, dtype=float)
        lhs = d.s1 @ gamma @ d.s1.T + env
        rhs = ch.X.T @ gamma @ ch.X + ch.Y
        resid = float(np.max(np.abs(lhs - rhs))) / (1.0 + float(np.max(np.abs(gamma))))
        worst = max(worst, resid)
    return worst


def _square_channel(ch: GaussianChannel) -> int:
    if ch.n_in != ch.n_out:
        raise ValueError("dilations are built for square channels")
    if ch.sigma_in is not None or ch.sigma_out is not None:
        raise ValueError("dilations expect standard-form channels")
    ok, lo = validate_cp(ch)
    if not ok:
        raise ValueError(f"channel is not completely positive (min eig {lo:.3e})")
    return ch.n_in


def _f(theta: Array) -> Array:
    """-sqrt(theta^2 - 1), clamping arguments a hair below 1."""
    t = np.asarray(theta, dtype=float)
    if np.any(t < 1.0 - F_CLAMP):
        raise ValueError("f(theta) needs theta >= 1")
    return -np.sqrt(np.maximum(t * t - 1.0, 0.0))


def dilate_case_i(ch: GaussianChannel, tol_pure: float = 1e-8) -> UnitaryDilation:
    """Dilation over n environment modes for a full-rank noise form.

    With K Sigma K^T = sigma, the environment state is gamma_E =
    K Y K^T and s2 = K^{-1}.  The environment is pure exactly when
    det Y = det Sigma.
    """
    n = _square_channel(ch)
    sigma = symplectic_form(n)
    Sigma = ch.noise_form()
    form = skew_normal_form(Sigma)
    if form.r != 2 * n:
        raise ValueError("noise form is rank deficient; use a reduced dilation")
    m = np.concatenate([form.mu, form.mu])
    K = np.diag(1.0 / np.sqrt(m)) @ form.O
    gamma_e = K @ ch.Y @ K.T
    s1 = ch.X.T
    s2 = form.O.T @ np.diag(np.sqrt(m))
    S = symplectic_complete(s1, s2, sigma, sigma)
    sign_y, logdet_y = np.linalg.slogdet(ch.Y)
    logdet_sigma = 2.0 * float(np.sum(np.log(form.mu)))
    pure = sign_y > 0 and abs(np.exp(logdet_y - logdet_sigma) - 1.0) <= tol_pure
    return UnitaryDilation(n=n, ell=n, S=S, gamma_E=gamma_e, sigma_E=sigma, pure=pure)


@dataclass
class _NoiseFrame:
    """Shared scaffolding for the structured dilations: support lift of
    Y, whitened noise form and its skew reduction."""

    n: int
    r: int
    mu: Array
    O: Array
    k_inv: Array        # O^T M^{1/2}, inverse of the whitening K
    ybar_half: Array
    proj: Array         # support projector of Y
    sigma_prime: Array


def _noise_frame(ch: GaussianChannel, tol_rank: float = TOL_RANK) -> _NoiseFrame:
    n = _square_channel(ch)
    Sigma = ch.noise_form()
    w, q = np.linalg.eigh(ch.Y)
    scale = max(1.0, float(w[-1]) if w.size else 1.0)
    if w.size and w[0] < -TOL_PSD * scale:
        raise ValueError("Y must be positive semidefinite")
    mask = w > tol_rank * max(float(w[-1]), 0.0)
    # lift: replace the kernel of Y by the identity so the whitening is defined
    wbar = np.where(mask, np.maximum(w, 0.0), 1.0)
    ybar_half = (q * np.sqrt(wbar)) @ q.T
    ybar_inv_half = (q / np.sqrt(wbar)) @ q.T
    proj = (q * mask.astype(float)) @ q.T
    sigma_prime = ybar_inv_half @ Sigma @ ybar_inv_half
    form = skew_normal_form(sigma_prime, tol_rank)
    mu = form.mu
    if mu.size and float(mu[0]) > 1.0 + 1e-6:
        raise ValueError("whitened noise form exceeds 1; channel is not CP")
    mu = np.minimum(mu, 1.0)
    m = np.concatenate([mu, np.ones(n - form.r // 2)])
    m2 = np.concatenate([m, m])
    k_inv = form.O.T @ np.diag(np.sqrt(m2))
    return _NoiseFrame(
        n=n, r=form.r, mu=mu, O=form.O, k_inv=k_inv,
        ybar_half=ybar_half, proj=proj, sigma_prime=sigma_prime,
    )


def _assemble_env(alpha: Array, beta: Array, delta: Array) -> Array:
    da, db = alpha.shape[0], beta.shape[0]
    g = np.zeros((da + db, da + db))
    g[:da, :da] = alpha
    g[da:, da:] = beta
    g[:da, da:] = delta
    g[da:, :da] = delta.T
    return g


def _finish(ch: GaussianChannel, fr: _NoiseFrame, a: Array, gamma_e: Array,
            sigma_env2: Array, pure: bool) -> UnitaryDilation:
    """Common tail: s2 = P Ybar^{1/2} [K^{-1} | O^T A], completion."""
    n = fr.n
    sigma = symplectic_form(n)
    s2_prime = np.hstack([fr.k_inv, fr.O.T @ a]) if a.shape[1] else fr.k_inv
    s2 = fr.proj @ fr.ybar_half @ s2_prime
    sigma_e = direct_sum(sigma, sigma_env2)
    S = symplectic_complete(ch.X.T, s2, sigma, sigma_e)
    ell = n + sigma_env2.shape[0] // 2
    return UnitaryDilation(n=n, ell=ell, S=S, gamma_E=gamma_e, sigma_E=sigma_e, pure=pure)


def dilate_pure(ch: GaussianChannel) -> UnitaryDilation:
    """Dilation over 2n environment modes in a pure state.

    Works for every channel: the noise support is lifted, the whitened
    noise form is reduced to skew eigenvalues mu <= 1, and each thermal
    direction 1/mu is purified against a partner mode; directions the
    noise form misses are filled by entangled pairs at strength XI.
    """
    fr = _noise_frame(ch)
    n, r2 = fr.n, fr.r // 2
    pad = n - r2
    nu = np.concatenate([1.0 / fr.mu, XI * np.ones(pad)])
    alpha = np.diag(np.concatenate([nu, nu]))
    dblk = np.diag(_f(nu))
    delta = np.zeros((2 * n, 2 * n))
    delta[:n, n:] = dblk
    delta[n:, :n] = dblk
    gamma_e = _assemble_env(alpha, alpha, delta)

    a = np.zeros((2 * n, 2 * n))
    if pad:
        a[r2:n, n + r2: 2 * n] = np.eye(pad)
        a[n + r2: 2 * n, r2:n] = np.eye(pad)
    return _finish(ch, fr, a, gamma_e, symplectic_form(n), pure=True)


def dilate_reduced_pure(ch: GaussianChannel) -> UnitaryDilation:
    """Smallest pure-environment dilation: ell = 2n - r'/2 modes.

    Unit skew eigenvalues of the whitened noise form need no purifying
    partner, so only the strictly sub-unit ones and the missing
    directions pick up a second register.
    """
    fr = _noise_frame(ch)
    n, r2 = fr.n, fr.r // 2
    unit = fr.mu >= 1.0 - TOL_UNIT
    mu_o = fr.mu[~unit]
    u = int(np.count_nonzero(unit))      # r'/2
    sub = r2 - u                         # (r - r')/2
    pad = n - r2
    m2 = sub + pad                       # modes in the second register

    g = np.concatenate([np.ones(u), 1.0 / mu_o, XI * np.ones(pad)])
    h = np.concatenate([1.0 / mu_o, XI * np.ones(pad)])
    alpha = np.diag(np.concatenate([g, g]))
    beta = np.diag(np.concatenate([h, h]))

    dblk = np.zeros((n, m2))
    if sub:
        dblk[u: u + sub, :sub] = np.diag(_f(1.0 / mu_o))
    if pad:
        dblk[r2:n, sub:] = np.diag(_f(XI * np.ones(pad)))
    delta = np.zeros((2 * n, 2 * m2))
    delta[:n, m2:] = dblk
    delta[n:, :m2] = dblk
    gamma_e = _assemble_env(alpha, beta, delta)

    a = np.zeros((2 * n, 2 * m2))
    if pad:
        c = np.zeros((n, m2))
        c[r2:n, sub:] = np.eye(pad)
        a[:n, m2:] = c
        a[n:, :m2] = c
    return _finish(ch, fr, a, gamma_e, symplectic_form(m2), pure=True)


def dilate_reduced_mixed(ch: GaussianChannel) -> UnitaryDilation:
    """Smallest dilation overall: ell = 2n - r/2 modes, environment
    mixed whenever some skew eigenvalue is below 1.

    The r/2 directions seen by the noise form become plain thermal
    modes at 1/mu; the remaining n - r/2 are entangled pairs at XI.
    """
    fr = _noise_frame(ch)
    n, r2 = fr.n, fr.r // 2
    pad = n - r2

    nu = np.concatenate([1.0 / fr.mu, XI * np.ones(pad)])
    alpha = np.diag(np.concatenate([nu, nu]))
    beta = XI * np.eye(2 * pad)
    delta = np.zeros((2 * n, 2 * pad))
    if pad:
        fxi = np.diag(_f(XI * np.ones(pad)))
        delta[r2:n, pad:] = fxi
        delta[n + r2:, :pad] = fxi
    gamma_e = _assemble_env(alpha, beta, delta)

    a = np.zeros((2 * n, 2 * pad))
    if pad:
        c = np.zeros((n, pad))
        c[r2:n, :] = np.eye(pad)
        a[:n, pad:] = c
        a[n:, :pad] = c
    pure = bool(np.all(fr.mu >= 1.0 - TOL_UNIT))
    return _finish(ch, fr, a, gamma_e, symplectic_form(pad), pure=pure)


def canonical_dilation_S(J: Array, tol: float = 1e-9) -> Array:
    """Canonical symplectic dilation of the normal-form channel
    X = [[1, 0], [0, J^T]] over an equal-size environment::

        S = [[1, 0,     1 - J^{-T}, 0 ],
             [0, J,     0,          -J],
             [1, 0,     1,          0 ],
             [0, 1 - J, 0,          J ]]

    J must have no unit eigenvalue (the channel would not be of the
    full-rank class) and must be invertible.
    """
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    if J.shape != (n, n):
        raise ValueError("J must be square")
    eig = np.linalg.eigvals(J)
    if np.any(np.abs(eig) <= tol):
        raise ValueError("J must be invertible")
    if np.any(np.abs(eig - 1.0) <= tol):
        raise ValueError("J must not have a unit eigenvalue")
    eye = np.eye(n)
    z = np.zeros((n, n))
    jit = np.linalg.inv(J).T
    return np.block([
        [eye, z, eye - jit, z],
        [z, J, z, -J],
        [eye, z, eye, z],
        [z, eye - J, z, J],
    ])


def general_G_dilation_S(J: Array, G: Array, tol: float = 1e-9) -> Array:
    """One-parameter family of dilations of the normal-form channel;
    G = -J reproduces ``canonical_dilation_S``."""
    J = np.asarray(J, dtype=float)
    G = np.asarray(G, dtype=float)
    n = J.shape[0]
    if J.shape != (n, n) or G.shape != (n, n):
        raise ValueError("J and G must be square of equal size")
    for name, m in (("J", J), ("G", G)):
        if abs(np.linalg.det(m)) <= tol:
            raise ValueError(f"{name} must be invertible")
    eye = np.eye(n)
    z = np.zeros((n, n))
    jinv = np.linalg.inv(J)
    ginv = np.linalg.inv(G)
    return np.block([
        [eye, z, (eye - J.T) @ ginv.T, z],
        [z, J, z, G],
        [-G.T @ jinv.T, z, eye, z],
        [z, ginv @ J @ (J - eye), z, ginv @ J @ G],
    ])


def canonical_dilation(J: Array, gamma_E: Array) -> UnitaryDilation:
    """Wrap canonical_dilation_S with an environment state."""
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    return UnitaryDilation(
        n=n, ell=n, S=canonical_dilation_S(J),
        gamma_E=np.asarray(gamma_E, dtype=float),
        sigma_E=symplectic_form(n),
        pure=is_pure(np.asarray(gamma_E, dtype=float)),
    )


def transform_dilation(d: UnitaryDilation, V: Array, W: Array) -> UnitaryDilation:
    """Equivalent dilation of the same channel.

    V re-frames the environment input and W the environment output,
    both symplectic for sigma_E:

        s2 -> s2 V,  s3 -> W s3,  s4 -> W s4 V,
        gamma_E -> V^{-1} gamma_E V^{-T}

    The inverse on gamma_E keeps s2 gamma_E s2^T (hence the channel)
    unchanged; the weak complement is conjugated by W.
    """
    V = np.asarray(V, dtype=float)
    W = np.asarray(W, dtype=float)
    if not is_symplectic(V, d.sigma_E):
        raise ValueError("V must be symplectic on the environment")
    if not is_symplectic(W, d.sigma_E):
        raise ValueError("W must be symplectic on the environment output")
    vinv = np.linalg.inv(V)
    S = np.block([
        [d.s1, d.s2 @ V],
        [W @ d.s3, W @ d.s4 @ V],
    ])
    return UnitaryDilation(
        n=d.n, ell=d.ell, S=S,
        gamma_E=vinv @ d.gamma_E @ vinv.T,
        sigma_E=d.sigma_E, pure=d.pure,
    )


def dilate_ideal_like(n: int, F3: Array, gamma_E: Array | None = None) -> UnitaryDilation:
    """Dilation acting as the identity on the system (X = 1) while the
    environment still couples: s1 = s4 = 1, s3 = F3 (+) 0,
    s2 = 0 (+) (-F3^T).

    The equivalence move V = (-F3) (+) (-F3^{-T}), W = V^{-1} reduces
    the blocks to s2 = 0 (+) 1 and s3 = (-1) (+) 0, yielding additive
    noise supported on the P sector only (rank-deficient Y).
    ``gamma_E`` is the environment state of the reduced dilation;
    default vacuum.
    """
    F3 = np.asarray(F3, dtype=float)
    if F3.shape != (n, n):
        raise ValueError("F3 must be n x n")
    if abs(np.linalg.det(F3)) < 1e-12:
        raise ValueError("F3 must be invertible")
    if gamma_E is None:
        gamma_E = np.eye(2 * n)
    gamma_E = np.asarray(gamma_E, dtype=float)
    eye2 = np.eye(2 * n)
    z = np.zeros((n, n))
    s2 = direct_sum(z, -F3.T)
    s3 = direct_sum(F3, z)
    S_pre = np.block([[eye2, s2], [s3, eye2]])
    V = direct_sum(-F3, -np.linalg.inv(F3).T)
    pre = UnitaryDilation(
        n=n, ell=n, S=S_pre,
        gamma_E=V @ gamma_E @ V.T,
        sigma_E=symplectic_form(n),
        pure=is_pure(gamma_E),
    )
    return transform_dilation(pre, V, np.linalg.inv(V))
