"""Dense complex-matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The helpers here
add shape checking, tolerance-aware predicates and a small JSON interchange
format used for custom states, gates and Kraus operators.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9
IDENTITY_TOL = 1e-12
MAX_DIM = 81


class ShapeError(ValueError):
    """Raised when matrix dimensions are incompatible."""


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def tensor(*mats) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor outermost."""
    out = np.ones((1, 1), dtype=np.complex128)
    for m in mats:
        out = np.kron(out, as_matrix(m))
    return out


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(_square(a)))


def frob_dist(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    m = _square(a)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def is_unitary(a, tol: float = DEFAULT_TOL) -> bool:
    m = _square(a)
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])), initial=0.0) <= tol)


def is_psd(a, tol: float = DEFAULT_TOL) -> bool:
    m = _square(a)
    if not is_hermitian(m, tol):
        return False
    h = 0.5 * (m + m.conj().T)
    return bool(np.linalg.eigvalsh(h).min() >= -tol)


def is_density_matrix(a, tol: float = DEFAULT_TOL) -> bool:
    m = _square(a)
    return abs(np.trace(m) - 1) <= tol and is_psd(m, tol)


def ket(*amplitudes) -> np.ndarray:
    v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1, 1)
    return v / np.linalg.norm(v)


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128).reshape(-1, 1)
    return v @ v.conj().T


# JSON interchange: {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major.

def matrix_to_json(a) -> dict:
    m = as_matrix(a)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in m.real.ravel()],
        "im": [float(x) for x in m.imag.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError("matrix object must be a JSON object")
    for key in ("rows", "cols", "re"):
        if key not in obj:
            raise ValueError(f"matrix object missing field '{key}'")
    rows, cols = obj["rows"], obj["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ValueError("fields 'rows' and 'cols' must be positive integers")
    re = obj["re"]
    im = obj.get("im", [0.0] * len(re))
    for name, vals in (("re", re), ("im", im)):
        if not isinstance(vals, list) or len(vals) != rows * cols:
            raise ValueError(f"field '{name}' must be a list of {rows * cols} numbers")
    if rows > MAX_DIM or cols > MAX_DIM:
        raise ValueError(f"dimensions above {MAX_DIM} are not supported")
    m = np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
    return as_matrix(m.reshape(rows, cols))
