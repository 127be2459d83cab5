"""Complete classification of two-mode Gaussian channels.

A two-mode channel in normal form is fixed by a real 2x2 block J
through X = [[1, 0], [0, J^T]].  Up to similarity J falls in one of
four kinds:

    A1  diag(a, b), a != b      two distinct real eigenvalues
    A2  a * identity            scalar
    B   [[a, 1], [0, a]]        defective (one eigenvalue, one vector)
    C   [[a, b], [-b, a]]       complex pair a +/- i b, b != 0

For a thermal environment gamma_E = (2N+1) 1 the weak-degradability
verdict has closed form: class A is decided by a, b alone for every N,
while classes B and C switch at occupation thresholds N1(a) and
N2(a, b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TOL_BOUNDARY
from .degradability import DegradabilityVerdict, classify, weak_complement
from .dilation import canonical_dilation
from .states import TwoModeStandardForm, two_mode_squeezer, two_mode_standard
from .symplectic import Array

KINDS = ("A1", "A2", "B", "C")


@dataclass
class TwoModeClass:
    """One cell of the two-mode classification; (a, b) are the normal
    form parameters (for A2 and B the single eigenvalue is a and b is
    normalized to a)."""

    kind: str
    a: float
    b: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        self.a = float(self.a)
        self.b = float(self.b)
        if self.kind == "A1" and self.a == self.b:
            raise ValueError("A1 needs two distinct eigenvalues")
        if self.kind in ("A2", "B"):
            self.b = self.a
        if self.kind == "C" and self.b == 0.0:
            raise ValueError("C needs a nonzero imaginary part")

    @property
    def family(self) -> str:
        return "A" if self.kind in ("A1", "A2") else self.kind


def jordan_block(cls: TwoModeClass) -> Array:
    """Normal-form J for a class; rejects singular blocks."""
    a, b = cls.a, cls.b
    if cls.kind in ("A1", "A2"):
        if a == 0.0 or b == 0.0:
            raise ValueError("class A needs nonzero eigenvalues")
        return np.diag([a, b])
    if cls.kind == "B":
        if a == 0.0:
            raise ValueError("class B needs a nonzero eigenvalue")
        return np.array([[a, 1.0], [0.0, a]])
    return np.array([[a, b], [-b, a]])


def classify_block(J: Array, tol: float = TOL_BOUNDARY) -> TwoModeClass:
    """Classify a real 2x2 block by its eigenvalue structure."""
    J = np.asarray(J, dtype=float)
    if J.shape != (2, 2):
        raise ValueError("J must be 2 x 2")
    tr = float(J[0, 0] + J[1, 1])
    det = float(J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0])
    disc = tr * tr - 4.0 * det
    scale = max(1.0, tr * tr, abs(4.0 * det))
    half = 0.5 * tr
    if disc < -tol * scale:
        return TwoModeClass("C", half, 0.5 * math.sqrt(-disc))
    if disc <= tol * scale:
        off = float(np.max(np.abs(J - half * np.eye(2))))
        if off <= tol * max(1.0, float(np.max(np.abs(J)))):
            return TwoModeClass("A2", half, half)
        return TwoModeClass("B", half, half)
    root = math.sqrt(disc)
    return TwoModeClass("A1", half + 0.5 * root, half - 0.5 * root)


def n1_threshold(a: float) -> float:
    """Occupation threshold for the defective class:
    N1 = (|2a-1| / (2 sqrt(a(a-1))) - 1) / 2, defined for a(a-1) > 0."""
    a = float(a)
    d = a * (a - 1.0)
    if d <= 0.0:
        raise ValueError("N1 needs a < 0 or a > 1")
    return 0.5 * (0.5 * abs(2.0 * a - 1.0) / math.sqrt(d) - 1.0)


def n2_threshold(a: float, b: float) -> float:
    """Occupation threshold for the rotation class:
    N2 = (sqrt(1 + 4 b^2 / (1-2a)^2) - 1) / 2; diverges at a = 1/2."""
    a = float(a)
    b = float(b)
    den = (1.0 - 2.0 * a) ** 2
    if den <= 1e-24:
        raise ValueError("N2 diverges at a = 1/2")
    return 0.5 * (math.sqrt(1.0 + 4.0 * b * b / den) - 1.0)


def thermal_classify(cls: TwoModeClass, N: float,
                     tol: float = TOL_BOUNDARY) -> DegradabilityVerdict:
    """Closed-form verdict for a thermal environment (2N+1) 1.

    Class A: weakly degradable when a, b >= 1/2 and antidegradable
    when a, b <= 1/2, for every N.  Class B: the verdict appears only
    above N1(a), on the degradable side for a > 1 and the
    antidegradable side for a < 0; a in (0, 1) is never either.
    Class C: same pattern around a = 1/2 with threshold N2(a, b).

    The witness spectrum edges come from the assembled canonical
    channel, so J must be invertible with no unit eigenvalue.
    """
    N = float(N)
    if N < 0.0:
        raise ValueError("occupation N must be nonnegative")
    J = jordan_block(cls)
    d = canonical_dilation(J, (2.0 * N + 1.0) * np.eye(4))
    spectral = classify(d.channel(), weak_complement(d))

    a, b = cls.a, cls.b
    if cls.family == "A":
        wd = a >= 0.5 - tol and b >= 0.5 - tol
        ad = a <= 0.5 + tol and b <= 0.5 + tol
    elif cls.kind == "B":
        if a > 1.0:
            wd = N >= n1_threshold(a) - tol
            ad = False
        elif a < 0.0:
            wd = False
            ad = N >= n1_threshold(a) - tol
        else:
            wd = ad = False
    else:
        if a > 0.5 + tol:
            wd = N >= n2_threshold(a, b) - tol
            ad = False
        elif a < 0.5 - tol:
            wd = False
            ad = N >= n2_threshold(a, b) - tol
        else:
            wd = ad = False
    if wd and ad:
        kind = "Both"
    elif wd:
        kind = "WD"
    elif ad:
        kind = "AD"
    else:
        kind = "Neither"
    return DegradabilityVerdict(kind=kind, w_min_eig=spectral.w_min_eig,
                                w_max_eig=spectral.w_max_eig)


_COMPOSE_TABLE = {
    ("A", "A"): frozenset({"A1", "A2"}),
    ("A", "B"): frozenset({"A1", "B"}),
    ("B", "A"): frozenset({"A1", "B"}),
    ("A", "C"): frozenset({"A1", "B", "C"}),
    ("C", "A"): frozenset({"A1", "B", "C"}),
    ("B", "C"): frozenset({"A1", "B", "C"}),
    ("C", "B"): frozenset({"A1", "B", "C"}),
    ("B", "B"): frozenset({"A2", "B"}),
    ("C", "C"): frozenset({"A1", "A2", "C"}),
}


def compose_class(first: TwoModeClass, second: TwoModeClass):
    """Outcome set for composing two classified channels, plus the
    concrete classification of J_second J_first.

    The set covers every channel pair in the two classes; the normal
    form product realizes one member of it.
    """
    allowed = _COMPOSE_TABLE[(first.family, second.family)]
    concrete = classify_block(jordan_block(second) @ jordan_block(first))
    return allowed, concrete


def zero_capacity_bound(a: float, b: float, variant: str = "first") -> float:
    """Occupation above which the rotation-class channel with a < 1/2
    is certified to have zero quantum capacity.

    The first variant composes the channel with an antidegradable
    attenuator; the second tightens it and is never larger on the
    shared domain.
    """
    a = float(a)
    b = float(b)
    den = b * b + (a - 1.0) ** 2
    if den <= 1e-24:
        raise ValueError("bound undefined at a = 1, b = 0")
    core = 1.0 - 4.0 * a + 8.0 * a * a + 8.0 * b * b
    if variant == "first":
        return 0.25 * (math.sqrt(5.0 * core / den) - 2.0)
    if variant == "second":
        den2 = a * a + b * b
        if den2 <= 1e-24:
            raise ValueError("second bound undefined at a = b = 0")
        val = (1.0 + 4.0 * a * a + 4.0 * b * b) * core / (4.0 * den * den2)
        return 0.25 * (math.sqrt(val) - 2.0)
    raise ValueError("variant must be 'first' or 'second'")


N_GRID = np.linspace(0.0, 2.0, 21)


def _defective_matches_scalar(x: float, z_plus: float, a: float, r: float,
                              ref_kinds) -> bool:
    V = two_mode_squeezer(r, 0.0)
    J1 = jordan_block(TwoModeClass("B", a, a))
    for N, ref in zip(N_GRID, ref_kinds):
        c = x * (2.0 * N + 1.0)
        st = two_mode_standard(TwoModeStandardForm(c, c, 0.0, z_plus))
        gamma = V @ st.gamma @ V.T
        d = canonical_dilation(J1, gamma)
        if classify(d.channel(), weak_complement(d)).kind != ref:
            return False
    return True


def decoupling_search(x: float, z_plus: float, a: float,
                      r_max: float = 3.0, coarse: float = 0.05,
                      resolution: float = 1e-3) -> float:
    """Minimal squeezing r at which the defective-class channel over
    the squeezed symmetric environment classifies like the scalar
    channel with the same a.

    The environment at occupation N is the symmetric two-mode standard
    form (x(2N+1), x(2N+1), 0, z_plus) squeezed by V(r); the reference
    is the thermal scalar-class verdict, which does not depend on N.
    Verdicts are compared over N in {0, 0.1, ..., 2}; the first
    matching r is bracketed by a coarse scan and bisected to the given
    resolution.  Returns inf when no r <= r_max matches.
    """
    scalar = TwoModeClass("A2", a, a)
    ref_kinds = [thermal_classify(scalar, N).kind for N in N_GRID]
    if _defective_matches_scalar(x, z_plus, a, 0.0, ref_kinds):
        return 0.0
    lo = 0.0
    hi = None
    steps = int(math.ceil(r_max / coarse))
    for i in range(1, steps + 1):
        r = min(i * coarse, r_max)
        if _defective_matches_scalar(x, z_plus, a, r, ref_kinds):
            hi = r
            break
        lo = r
    if hi is None:
        return math.inf
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if _defective_matches_scalar(x, z_plus, a, mid, ref_kinds):
            hi = mid
        else:
            lo = mid
    return hi
