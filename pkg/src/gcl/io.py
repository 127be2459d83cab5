"""Canonical JSON and CSV serialization.

All matrices are row-major nested lists and every document carries a
mandatory "ordering": "qp" field declaring the (Q1..Qn; P1..Pn)
coordinate convention.  Serialization is deterministic: serialize,
parse, serialize again is byte-identical.
"""

from __future__ import annotations

import json

import numpy as np

from .channel import GaussianChannel
from .dilation import UnitaryDilation
from .states import GaussianState
from .symplectic import Array

ORDERING = "qp"


def _matrix(values, rows: int, cols: int, field: str) -> Array:
    try:
        m = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field {field!r} is not a numeric matrix: {exc}") from None
    if m.shape != (rows, cols):
        raise ValueError(f"field {field!r} must be {rows} x {cols}, got {m.shape}")
    return m


def _vector(values, size: int, field: str) -> Array:
    try:
        v = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field {field!r} is not a numeric vector: {exc}") from None
    if v.shape != (size,):
        raise ValueError(f"field {field!r} must have length {size}")
    return v


def _load(text: str, fields) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON at line {exc.lineno} column {exc.colno}: "
                         f"{exc.msg}") from None
    if not isinstance(doc, dict):
        raise ValueError("document must be a JSON object")
    for f in fields:
        if f not in doc:
            raise ValueError(f"missing field {f!r}")
    if doc["ordering"] != ORDERING:
        raise ValueError(f'field "ordering" must be {ORDERING!r}')
    return doc


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def channel_to_json(ch: GaussianChannel) -> str:
    if ch.sigma_in is not None or ch.sigma_out is not None:
        raise ValueError("only standard-form channels serialize")
    return _dump({
        "ordering": ORDERING,
        "n_in": ch.n_in,
        "n_out": ch.n_out,
        "X": ch.X.tolist(),
        "Y": ch.Y.tolist(),
        "v": ch.v.tolist(),
    })


def channel_from_json(text: str) -> GaussianChannel:
    doc = _load(text, ("ordering", "n_in", "n_out", "X", "Y", "v"))
    n_in = int(doc["n_in"])
    n_out = int(doc["n_out"])
    if n_in < 1 or n_out < 1:
        raise ValueError("mode counts must be positive")
    return GaussianChannel(
        n_in=n_in, n_out=n_out,
        X=_matrix(doc["X"], 2 * n_in, 2 * n_out, "X"),
        Y=_matrix(doc["Y"], 2 * n_out, 2 * n_out, "Y"),
        v=_vector(doc["v"], 2 * n_out, "v"),
    )


def state_to_json(st: GaussianState) -> str:
    return _dump({
        "ordering": ORDERING,
        "n": st.n,
        "gamma": st.gamma.tolist(),
        "mean": st.mean.tolist(),
    })


def state_from_json(text: str) -> GaussianState:
    doc = _load(text, ("ordering", "n", "gamma", "mean"))
    n = int(doc["n"])
    if n < 1:
        raise ValueError("mode count must be positive")
    return GaussianState(
        n=n,
        gamma=_matrix(doc["gamma"], 2 * n, 2 * n, "gamma"),
        mean=_vector(doc["mean"], 2 * n, "mean"),
    )


def dilation_to_json(d: UnitaryDilation) -> str:
    return _dump({
        "ordering": ORDERING,
        "n": d.n,
        "ell": d.ell,
        "S": d.S.tolist(),
        "gamma_E": d.gamma_E.tolist(),
        "sigma_E": d.sigma_E.tolist(),
        "pure": d.pure,
    })


def dilation_from_json(text: str) -> UnitaryDilation:
    doc = _load(text, ("ordering", "n", "ell", "S", "gamma_E", "sigma_E", "pure"))
    n = int(doc["n"])
    ell = int(doc["ell"])
    if n < 1 or ell < 0:
        raise ValueError("mode counts must be positive")
    d = 2 * (n + ell)
    return UnitaryDilation(
        n=n, ell=ell,
        S=_matrix(doc["S"], d, d, "S"),
        gamma_E=_matrix(doc["gamma_E"], 2 * ell, 2 * ell, "gamma_E"),
        sigma_E=_matrix(doc["sigma_E"], 2 * ell, 2 * ell, "sigma_E"),
        pure=bool(doc["pure"]),
    )


def format_value(x) -> str:
    """CSV cell: floats at 17 significant digits, everything else str."""
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, (np.floating,)):
        return format(float(x), ".17g")
    return str(x)


def write_csv(handle, header, rows) -> int:
    """Write delimited rows; returns the number of data rows."""
    handle.write(",".join(header) + "\n")
    count = 0
    for row in rows:
        handle.write(",".join(format_value(x) for x in row) + "\n")
        count += 1
    return count
