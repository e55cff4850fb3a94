"""Input validation helpers for chain data.

These are sklearn-style checkers: they return the validated (and
possibly dtype-cast) array, or raise on the first violation found.
"""

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import connected_components

from .exceptions import InvalidTransitionMatrixError
from .linalg import as_square_matrix

#: Row sums may deviate from 1 by at most this many ulp per state.
ROW_SUM_ULP_FACTOR = 16


def row_sum_tolerance(m, dtype):
    """Permitted deviation of a row sum from 1: 16 * m * ulp(1)."""
    return ROW_SUM_ULP_FACTOR * m * np.finfo(dtype).eps


def check_transition_matrix(p, dtype=None):
    """Validate a row-stochastic matrix and return it in a working dtype.

    Checks squareness, finiteness, entry bounds 0 <= p_ij <= 1 and row
    sums within :func:`row_sum_tolerance` of 1, reporting the first
    violated entry or row. The dtype cast happens before the checks, so
    a binary32 pipeline validates exactly what it will compute with.

    Parameters
    ----------
    p : array-like of shape (m, m)
    dtype : None, str or dtype-like
        Target precision, as accepted by :func:`mfpt.linalg.resolve_dtype`.

    Returns
    -------
    (m, m) ndarray

    Raises
    ------
    InvalidTransitionMatrixError
        Carrying the 0-based ``row`` (and ``col`` for entry violations)
        of the first problem.
    """
    p = as_square_matrix(p, dtype=dtype)
    m = p.shape[0]
    if m == 0:
        raise InvalidTransitionMatrixError("transition matrix is empty")
    bad = ~((p >= 0) & (p <= 1))  # also catches NaN
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise InvalidTransitionMatrixError(
            f"entry ({i}, {j}) = {p[i, j]!r} outside [0, 1]",
            row=int(i), col=int(j),
        )
    sums = p.sum(axis=1)
    off = np.abs(sums - 1)
    tol = row_sum_tolerance(m, p.dtype)
    if (off > tol).any():
        i = int(np.argmax(off > tol))
        raise InvalidTransitionMatrixError(
            f"row {i} sums to {sums[i]!r}, off by {off[i]:.3e} "
            f"(tolerance {tol:.3e})",
            row=i,
        )
    return p


def check_stationary_distribution(pi, m=None, dtype=None):
    """Validate a stationary probability vector.

    Entries must be strictly positive and sum to 1 within the row-sum
    tolerance. Returns the vector as an ndarray.
    """
    pi = np.asarray(pi, dtype=None if dtype is None else np.dtype(dtype))
    if pi.ndim != 1:
        raise ValueError(f"expected a vector, got shape {pi.shape}")
    if m is not None and pi.shape[0] != m:
        raise ValueError(f"expected length {m}, got {pi.shape[0]}")
    if not (pi > 0).all():
        i = int(np.argmin(pi > 0))
        raise ValueError(f"stationary entry {i} = {pi[i]!r} is not positive")
    off = abs(float(pi.sum()) - 1.0)
    tol = row_sum_tolerance(pi.shape[0], pi.dtype)
    if off > tol:
        raise ValueError(f"stationary vector sums off 1 by {off:.3e} (tolerance {tol:.3e})")
    return pi


def is_irreducible(p):
    """Whether the chain visits every state from every state.

    Runs the positivity shortcut first: if every entry of P @ P is
    positive the chain is irreducible (and aperiodic). Otherwise decides
    by strong connectivity of the boolean transition pattern, which is
    exact: no tolerance is applied beyond "entry > 0".
    """
    p = as_square_matrix(p)
    if p.shape[0] == 1:
        return True
    pattern = (p > 0).astype(np.float64)
    if (pattern @ pattern).min() > 0:
        return True
    n, _ = connected_components(csr_array(pattern), directed=True, connection="strong")
    return n == 1
