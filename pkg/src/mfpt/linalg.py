"""Dense linear-algebra kernel shared by all procedures.

Every routine here is precision generic: it works entirely in the dtype
of its inputs (binary32 or binary64) and never widens intermediates, so
single-precision runs exercise genuine single-precision arithmetic.
Solves are backed by LAPACK (gesv / trtrs), which preserves float32.
"""

import numpy as np
from scipy.linalg import solve_triangular

from .exceptions import SingularMatrixError

WORKING_DTYPES = (np.dtype(np.float32), np.dtype(np.float64))

_DTYPE_ALIASES = {
    None: np.dtype(np.float64),
    "single": np.dtype(np.float32),
    "double": np.dtype(np.float64),
    "binary32": np.dtype(np.float32),
    "binary64": np.dtype(np.float64),
    "float32": np.dtype(np.float32),
    "float64": np.dtype(np.float64),
}


def resolve_dtype(spec):
    """Map a precision name or dtype-like to one of the working dtypes.

    Parameters
    ----------
    spec : None, str or dtype-like
        ``None`` means binary64. Accepted names: ``single``/``double``,
        ``binary32``/``binary64``, ``float32``/``float64``, or anything
        numpy resolves to float32/float64.

    Returns
    -------
    numpy.dtype
    """
    if isinstance(spec, str):
        key = spec.lower()
        if key in _DTYPE_ALIASES:
            return _DTYPE_ALIASES[key]
        raise ValueError(f"unknown precision {spec!r}; use 'single' or 'double'")
    if spec is None:
        return _DTYPE_ALIASES[None]
    dt = np.dtype(spec)
    if dt not in WORKING_DTYPES:
        raise ValueError(f"unsupported dtype {dt}; use float32 or float64")
    return dt


def as_square_matrix(a, dtype=None):
    """Return ``a`` as a square 2-d array in a working dtype.

    The cast to the target dtype happens exactly once, so a binary32
    pipeline rounds its input a single time and stays in binary32.
    ``dtype=None`` keeps a float32 input in float32 and maps everything
    else to float64.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if dtype is None:
        dt = a.dtype if a.dtype in WORKING_DTYPES else np.dtype(np.float64)
    else:
        dt = resolve_dtype(dtype)
    return np.ascontiguousarray(a, dtype=dt)


def matmul(a, b):
    """Matrix product with an explicit conformability check."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"non-conformable shapes {a.shape} and {b.shape}")
    return a @ b


def solve_general(a, b, return_residual=False):
    """Solve ``a @ x = b`` by partially pivoted LU factorization.

    Used wherever a matrix inverse appears in a procedure: inverses are
    never formed explicitly, the corresponding system is solved instead.

    Parameters
    ----------
    a : (m, m) ndarray
    b : (m,) or (m, k) ndarray
    return_residual : bool
        When true, also return ``max|a @ x - b|``.

    Raises
    ------
    SingularMatrixError
        If the factorization detects singularity to working precision.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"non-conformable shapes {a.shape} and {b.shape}")
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(
            f"matrix is singular to working precision ({exc})"
        ) from exc
    if return_residual:
        residual = float(np.max(np.abs(a @ x - b)))
        return x, residual
    return x


def _check_triangular_diagonal(t, name):
    diag = np.diagonal(t)
    zero = np.flatnonzero(diag == 0)
    if zero.size:
        raise SingularMatrixError(
            f"{name} triangular matrix has zero diagonal entry at index {zero[0]}"
        )


def solve_upper(u, b):
    """Solve ``u @ x = b`` with ``u`` upper triangular (back substitution).

    Entries of ``u`` below the diagonal are ignored. A zero diagonal
    entry raises :class:`SingularMatrixError` (exact test; the factors
    produced in this package have diagonals -1 and -s(n) < 0).
    """
    u = np.asarray(u)
    _check_triangular_diagonal(u, "upper")
    return solve_triangular(u, np.asarray(b), lower=False, check_finite=False)


def solve_lower(l, b):
    """Solve ``l @ x = b`` with ``l`` lower triangular (forward substitution).

    Entries of ``l`` above the diagonal are ignored; zero diagonal
    entries raise :class:`SingularMatrixError`.
    """
    l = np.asarray(l)
    _check_triangular_diagonal(l, "lower")
    return solve_triangular(l, np.asarray(b), lower=True, check_finite=False)
