"""Numerical tolerances and run configuration.

All tolerances are relative: they multiply a scale derived from the input
(largest eigenvalue, largest entry, ...) before comparison.  Library
functions take explicit ``tol`` arguments defaulting to the constants
below, so there is no mutable global state.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

# Hermitian positive-semidefiniteness margin.
TOL_PSD = 1e-9

# Singular values / eigenvalues below TOL_RANK * largest count as zero.
TOL_RANK = 1e-10

# Residual allowed when checking symplecticity and completing dilations.
TOL_SYMPLECTIC = 1e-8

# Skew eigenvalues within this distance of 1 count as exactly 1 when
# splitting the quiet (vacuum-like) environment directions from the rest.
TOL_UNIT = 1e-9

# f(theta) = -sqrt(theta^2 - 1) clamps arguments this far below 1 to 1.
F_CLAMP = 1e-12

# Class-boundary detection for two-mode parameters (a = 0, 1/2, 1).
TOL_BOUNDARY = 1e-9

# Entanglement strength of the auxiliary purifying pairs.  Any xi >= 1
# with 2*xi - 2*sqrt(xi^2 - 1) = 1 keeps the dilation identities exact;
# that equation pins xi = 5/4.
XI = 1.25

ENV_CONFIG = "GCL_CONFIG"


@dataclass
class RunConfig:
    """Settings shared by the command line tools."""

    tol_psd: float = TOL_PSD
    tol_rank: float = TOL_RANK
    seed: int = 0
    output_path: str | None = None

    @classmethod
    def from_env(cls) -> "RunConfig":
        """Load defaults from the JSON file named by $GCL_CONFIG, if set."""
        path = os.environ.get(ENV_CONFIG)
        if not path:
            return cls()
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        known = {"tol_psd", "tol_rank", "seed", "output_path"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
        return cls(**data)
