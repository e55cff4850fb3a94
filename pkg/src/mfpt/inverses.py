"""MFPT matrices by direct matrix inversion (procedures 1 and 2).

Both build one nonsingular modification of I - P and solve against the
identity. The fundamental-matrix route also needs the stationary vector
up front; the anchored route reads it off the solved inverse for free.
"""

import numpy as np

from .chain import mfpt_from_ge
from .gth import gth_stationary
from .linalg import as_square_matrix, solve_general
from .validation import check_transition_matrix


def fundamental_matrix(p, pi):
    """Fundamental matrix Z = [I - P + e pi^T]^{-1}.

    Solved, not inverted; Z has unit row sums and Z - e pi^T is the
    group inverse of I - P.
    """
    p = as_square_matrix(p)
    m = p.shape[0]
    pi = np.asarray(pi, dtype=p.dtype)
    a = np.eye(m, dtype=p.dtype) - p + pi[None, :]
    return solve_general(a, np.eye(m, dtype=p.dtype))


def fundamental_inverse_mfpt(p, dtype=None):
    """Procedure 1: stationary vector by state reduction, then Z.

    Returns
    -------
    pi : (m,) ndarray
    mfpt : (m, m) ndarray
        Assembled as [I - Z + E Z_d] D, valid because Z e = e.
    """
    p = check_transition_matrix(p, dtype=dtype)
    pi = gth_stationary(p)
    z = fundamental_matrix(p, pi)
    return pi, mfpt_from_ge(z, pi, check=False)


def anchored_inverse_mfpt(p, anchor=0, dtype=None):
    """Procedure 2: one inverse anchored at a chosen row.

    Solves G = [I - P + e u^T]^{-1} with u the unit vector of the anchor
    state. Row ``anchor`` of G is the stationary vector, and M follows
    elementwise: m_ij = (g_jj - g_ij) / g_bj off the diagonal and
    m_ii = 1 / g_bi, where b is the anchor row. The result does not
    depend on the anchor (up to roundoff).

    Parameters
    ----------
    p : array-like of shape (m, m)
    anchor : int
        0-based anchor state b, ``0 <= anchor < m``.
    """
    p = check_transition_matrix(p, dtype=dtype)
    m = p.shape[0]
    if not 0 <= anchor < m:
        raise ValueError(f"anchor state {anchor} out of range for {m} states")
    a = np.eye(m, dtype=p.dtype) - p
    a[:, anchor] += 1
    g = solve_general(a, np.eye(m, dtype=p.dtype))
    pi = g[anchor].copy()
    with np.errstate(divide="ignore"):
        mfpt = (np.diagonal(g)[None, :] - g) / pi[None, :]
        np.fill_diagonal(mfpt, 1.0 / pi)
    return pi, mfpt
