"""Symplectic linear algebra over real covariance matrices.

Conventions
-----------
Canonical coordinates are ordered (Q1..Qn; P1..Pn), so the commutation
matrix of n modes is::

    sigma_2n = [[0,  I_n],
                [-I_n, 0]]

A matrix S is symplectic when S sigma S^T = sigma.  Composite phase
spaces carry direct sums of such blocks; helpers below accept either.

Complex Hermitian tests are run on the doubled real embedding
[[re, -im], [im, re]] so the core stays real.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import TOL_PSD, TOL_RANK, TOL_SYMPLECTIC

Array = np.ndarray


def symplectic_form(n: int) -> Array:
    """Commutation matrix of ``n`` modes in (Q;P) ordering."""
    if n < 0:
        raise ValueError("mode count must be >= 0")
    z = np.zeros((n, n))
    eye = np.eye(n)
    return np.block([[z, eye], [-eye, z]])


def direct_sum(*blocks: Array) -> Array:
    """Block-diagonal direct sum; empty blocks are dropped."""
    mats = [np.atleast_2d(b) for b in blocks if np.size(b)]
    if not mats:
        return np.zeros((0, 0))
    return scipy.linalg.block_diag(*mats)


def _even_square(m: Array, name: str) -> int:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] % 2:
        raise ValueError(f"{name} must have even dimension, got {m.shape[0]}")
    return m.shape[0]


def is_symplectic(S: Array, sigma: Array | None = None, tol: float = TOL_SYMPLECTIC) -> bool:
    """True when S sigma S^T = sigma within ``tol`` (relative)."""
    S = np.asarray(S, dtype=float)
    d = _even_square(S, "S")
    if sigma is None:
        sigma = symplectic_form(d // 2)
    resid = S @ sigma @ S.T - sigma
    return float(np.max(np.abs(resid))) <= tol * max(1.0, float(np.max(np.abs(S))) ** 2)


@dataclass
class HermitianPair:
    """Hermitian matrix re + i*im split into real symmetric and real
    antisymmetric parts."""

    re: Array
    im: Array

    def __post_init__(self):
        self.re = np.asarray(self.re, dtype=float)
        self.im = np.asarray(self.im, dtype=float)
        if self.re.shape != self.im.shape:
            raise ValueError("re and im must share a shape")
        d = self.re.shape[0]
        if self.re.shape != (d, d):
            raise ValueError("HermitianPair blocks must be square")
        scale = max(1.0, float(np.max(np.abs(self.re))), float(np.max(np.abs(self.im))))
        if np.max(np.abs(self.re - self.re.T)) > 1e-8 * scale:
            raise ValueError("re part must be symmetric")
        if np.max(np.abs(self.im + self.im.T)) > 1e-8 * scale:
            raise ValueError("im part must be antisymmetric")

    def embed(self) -> Array:
        """Doubled real symmetric embedding [[re, -im], [im, re]]."""
        return np.block([[self.re, -self.im], [self.im, self.re]])

    def eigenvalues(self) -> Array:
        """Real spectrum, ascending.  The doubled embedding repeats every
        eigenvalue twice; keep every second sorted value."""
        vals = np.linalg.eigvalsh(self.embed())
        return vals[::2]

    def matrix(self) -> Array:
        return self.re + 1j * self.im


def psd_check(h: HermitianPair | Array, tol: float = TOL_PSD) -> tuple[bool, float]:
    """(is_psd, min_eigenvalue) for a Hermitian pair or a real symmetric
    matrix.  The test margin is ``tol`` times max(1, |re|_max)."""
    if not isinstance(h, HermitianPair):
        h = HermitianPair(np.asarray(h, dtype=float), np.zeros_like(np.asarray(h, dtype=float)))
    vals = h.eigenvalues()
    lo = float(vals[0])
    scale = max(1.0, float(np.max(np.abs(h.re))), float(np.max(np.abs(h.im))))
    return lo >= -tol * scale, lo


@dataclass
class SkewNormalForm:
    """Orthogonal reduction of a real antisymmetric matrix.

    ``O Sigma O^T`` has the n x n block diag(mu_1..mu_{r/2}, 0, ..)
    in the upper-right corner and its negative transpose in the
    lower-left; mu is sorted descending and strictly positive.
    """

    O: Array
    mu: Array
    r: int


def skew_normal_form(Sigma: Array, tol_rank: float = TOL_RANK) -> SkewNormalForm:
    """Canonical form of a real antisymmetric matrix of even dimension.

    Uses the real Schur decomposition, which is block diagonal with
    2 x 2 rotation generators for normal input.  Pairs whose coupling
    falls below ``tol_rank`` times the largest singular value count as
    kernel directions.
    """
    Sigma = np.asarray(Sigma, dtype=float)
    d = _even_square(Sigma, "Sigma")
    scale = float(np.max(np.abs(Sigma))) if d else 0.0
    if d and np.max(np.abs(Sigma + Sigma.T)) > 1e-8 * max(1.0, scale):
        raise ValueError("input must be antisymmetric")
    n = d // 2
    if d == 0 or scale == 0.0:
        return SkewNormalForm(O=np.eye(d), mu=np.zeros(0), r=0)

    T, Z = scipy.linalg.schur(Sigma, output="real")
    thresh = tol_rank * scale
    pairs: list[tuple[float, Array, Array]] = []
    kernel: list[Array] = []
    i = 0
    while i < d:
        sub = abs(T[i + 1, i]) if i + 1 < d else 0.0
        if sub > thresh:
            e, f = Z[:, i], Z[:, i + 1]
            m = float(e @ Sigma @ f)
            if m < 0:
                e, f, m = f, e, -m
            pairs.append((m, e, f))
            i += 2
        else:
            kernel.append(Z[:, i])
            i += 1
    pairs.sort(key=lambda t: -t[0])

    rows = np.zeros((d, d))
    for j, (_, e, f) in enumerate(pairs):
        rows[j] = e
        rows[n + j] = f
    half = len(kernel) // 2
    for j, v in enumerate(kernel[:half]):
        rows[len(pairs) + j] = v
    for j, v in enumerate(kernel[half:]):
        rows[n + len(pairs) + j] = v
    mu = np.array([m for m, _, _ in pairs])
    return SkewNormalForm(O=rows, mu=mu, r=2 * len(pairs))


def _sym_sqrt(gamma: Array) -> tuple[Array, Array]:
    """(gamma^{1/2}, gamma^{-1/2}) of a symmetric positive definite matrix."""
    w, q = np.linalg.eigh(gamma)
    if w[0] <= 0:
        raise ValueError("matrix must be positive definite")
    rt = np.sqrt(w)
    return (q * rt) @ q.T, (q / rt) @ q.T


def williamson(gamma: Array, tol: float = TOL_PSD) -> tuple[Array, Array]:
    """Normal-mode decomposition gamma = S (D + D) S^T of a positive
    definite covariance matrix.

    Returns (S, d) with S symplectic and d the symplectic eigenvalues
    sorted descending; D + D means diag(d_1..d_n, d_1..d_n).

    The stable route: with W = gamma^{1/2} sigma gamma^{1/2} (real
    antisymmetric), reduce W by an orthogonal O and absorb the scales.
    """
    gamma = np.asarray(gamma, dtype=float)
    d2 = _even_square(gamma, "gamma")
    scale = max(1.0, float(np.max(np.abs(gamma))))
    if np.max(np.abs(gamma - gamma.T)) > 1e-8 * scale:
        raise ValueError("gamma must be symmetric")
    n = d2 // 2
    sigma = symplectic_form(n)
    g12, _ = _sym_sqrt(gamma)  # raises if not positive definite
    form = skew_normal_form(g12 @ sigma @ g12)
    if form.r != d2:
        raise ValueError("gamma is singular with respect to the symplectic form")
    d = form.mu
    d2vec = np.concatenate([d, d])
    S = g12 @ form.O.T @ np.diag(1.0 / np.sqrt(d2vec))
    return S, d


def symplectic_eigenvalues(gamma: Array) -> Array:
    """Symplectic spectrum of a positive definite matrix, descending."""
    _, d = williamson(gamma)
    return d


def pseudo_inverse(Y: Array, tol_rank: float = TOL_RANK) -> tuple[Array, Array, int]:
    """Moore-Penrose inverse of a symmetric positive semidefinite matrix.

    Returns (Y_pinv, P, k): the pseudo-inverse, the orthogonal projector
    onto the support, and the detected rank.  Eigenvalues below
    ``tol_rank`` times the largest count as zero; genuinely negative
    eigenvalues raise.
    """
    Y = np.asarray(Y, dtype=float)
    d = Y.shape[0]
    if Y.shape != (d, d):
        raise ValueError("Y must be square")
    scale = max(1.0, float(np.max(np.abs(Y))))
    if np.max(np.abs(Y - Y.T)) > 1e-8 * scale:
        raise ValueError("Y must be symmetric")
    w, q = np.linalg.eigh(Y)
    if w[0] < -TOL_PSD * scale:
        raise ValueError(f"Y must be positive semidefinite (min eigenvalue {w[0]:.3e})")
    top = float(w[-1]) if d else 0.0
    if top <= 0:
        return np.zeros((d, d)), np.zeros((d, d)), 0
    mask = w > tol_rank * top
    qk = q[:, mask]
    pinv = (qk / w[mask]) @ qk.T
    proj = qk @ qk.T
    return pinv, proj, int(np.count_nonzero(mask))


def _form_pairs(sigma: Array) -> list[tuple[int, int]]:
    """(q, p) index pairs of a direct sum of standard blocks.

    Every row must hold exactly one +1 and the matching row its -1;
    anything else is rejected.
    """
    sigma = np.asarray(sigma)
    d = sigma.shape[0]
    if not np.all(np.isin(np.round(sigma, 12), (-1.0, 0.0, 1.0))):
        raise ValueError("form must be a direct sum of standard blocks")
    if np.max(np.abs(sigma @ sigma + np.eye(d))) > 1e-10:
        raise ValueError("form must square to -identity")
    pairs = []
    seen = set()
    for i in range(d):
        if i in seen:
            continue
        js = np.flatnonzero(np.round(sigma[i], 12) == 1.0)
        if len(js) != 1:
            raise ValueError("form must be a direct sum of standard blocks")
        j = int(js[0])
        pairs.append((i, j))
        seen.update((i, j))
    return pairs


def symplectic_complete(
    s1: Array,
    s2: Array,
    sigma_sys: Array,
    sigma_env: Array,
    tol: float = TOL_SYMPLECTIC,
) -> Array:
    """Extend the top block row [s1 | s2] to a full symplectic matrix.

    The inputs must satisfy s1 sigma_sys s1^T + s2 sigma_env s2^T =
    sigma_sys; the remaining rows are built by symplectic Gram-Schmidt:
    repeatedly project candidate vectors onto the symplectic complement
    of the span so far, pick a partner with unit pairing, and slot the
    new pair into the environment positions dictated by ``sigma_env``.
    """
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    dn = s1.shape[0]
    dl = s2.shape[1]
    if s1.shape != (dn, dn) or s2.shape[0] != dn:
        raise ValueError("block shapes are inconsistent")
    if sigma_env.shape != (dl, dl):
        raise ValueError("sigma_env does not match s2")
    top = np.hstack([s1, s2])
    sigma = direct_sum(sigma_sys, sigma_env)
    resid = top @ sigma @ top.T - sigma_sys
    if np.max(np.abs(resid)) > tol * max(1.0, float(np.max(np.abs(top))) ** 2):
        raise ValueError(
            f"[s1 | s2] does not preserve the system form (residual {np.max(np.abs(resid)):.3e})"
        )

    d = dn + dl
    sys_pairs = _form_pairs(sigma_sys)
    env_pairs = _form_pairs(sigma_env)
    es = [top[q] for q, _ in sys_pairs]
    fs = [top[p] for _, p in sys_pairs]

    def project(v: Array) -> Array:
        # symplectic projection onto the complement of span(es, fs)
        for e, f in zip(es, fs):
            v = v + (v @ sigma @ e) * f - (v @ sigma @ f) * e
        return v

    basis = np.eye(d)
    for _ in env_pairs:
        cands = np.array([project(basis[k]) for k in range(d)])
        norms = np.linalg.norm(cands, axis=1)
        e = cands[int(np.argmax(norms))]
        e = project(e / np.linalg.norm(e))  # second pass for orthogonality
        e = e / np.linalg.norm(e)
        pairings = np.abs(cands @ sigma @ e)
        w = cands[int(np.argmax(pairings))]
        f = project(w)
        c = float(e @ sigma @ f)
        if abs(c) < 1e-12:
            raise RuntimeError("degenerate pairing during symplectic completion")
        f = f / c
        es.append(e)
        fs.append(f)

    S = np.zeros((d, d))
    S[:dn] = top
    new_e = es[len(sys_pairs):]
    new_f = fs[len(sys_pairs):]
    for t, (q, p) in enumerate(env_pairs):
        S[dn + q] = new_e[t]
        S[dn + p] = new_f[t]
    resid = np.max(np.abs(S @ sigma @ S.T - sigma))
    if resid > tol * max(1.0, float(np.max(np.abs(S))) ** 2):
        raise RuntimeError(f"symplectic completion failed (residual {resid:.3e})")
    return S
