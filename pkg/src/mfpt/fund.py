"""MFPT matrices from a UL factorization of I - P (procedures 10-12).

The reduction array of one GTH sweep factors I - P = U L without any
further arithmetic on the reduced entries:

* U has -1 on the diagonal and the above-diagonal reduction entries
  divided columnwise by the left row masses s;
* L has the below-diagonal reduction entries, diagonal (0, -s[1], ...,
  -s[m-1]), and therefore an exactly zero first row.

With X solving (I - P) X = I - e pi^T and a zero first row, X is a
one-condition g-inverse of I - P with zero row sums; the three
procedures assemble M from the fundamental matrix Z = Pi + (I - Pi) X,
from the group inverse A# = (I - Pi) X, or from X directly. All share
one factorization and one pair of triangular solves.
"""

from dataclasses import dataclass

import numpy as np

from .chain import mfpt_from_ge, mfpt_from_h
from .gth import gth_reduce
from .linalg import solve_lower, solve_upper
from .validation import check_transition_matrix


@dataclass(frozen=True)
class UlFactors:
    """Upper and lower factors with U @ L = I - P.

    ``u`` has every diagonal entry exactly -1; ``l`` has an exactly zero
    first row and diagonal -s[k] for k >= 1.
    """

    u: np.ndarray
    l: np.ndarray


@dataclass(frozen=True)
class XSolution:
    """Solution of (I - P) X = I - Pi through the UL factors.

    ``y`` solves U Y = I - Pi by back substitution; ``x`` solves
    L X = Y in the trailing (m-1)-block by forward substitution, with
    an exactly zero first row (row 0 of L is zero, so X's first row is
    a free choice and zero is the conventional one). X has zero row
    sums up to rounding.
    """

    x: np.ndarray
    y: np.ndarray


def ul_factorize(record):
    """Assemble the UL factors from a completed reduction record.

    The inverse of the mass scaling is applied as a columnwise division
    of the above-diagonal block by s; no subtraction occurs anywhere,
    the -1 diagonal and the zero first row are written, not computed.
    """
    pbar, s = record.pbar, record.s
    m = pbar.shape[0]
    u = np.triu(pbar, 1) / s[None, :]
    np.fill_diagonal(u, -1.0)
    l = np.tril(pbar, -1)
    diag = -s
    diag = diag.copy()
    diag[0] = 0
    l[np.diag_indices(m)] = diag
    return UlFactors(u=u, l=l)


def solve_x(factors, pi):
    """Solve (I - P) X = I - e pi^T given the UL factors.

    Back substitution with U is always possible (diagonal -1); the
    forward solve drops the zero first row and column of L and uses the
    trailing block, whose diagonal -s[k] is nonzero exactly when the
    chain is irreducible.
    """
    u, l = factors.u, factors.l
    m = u.shape[0]
    pi = np.asarray(pi, dtype=u.dtype)
    target = np.eye(m, dtype=u.dtype) - pi[None, :]
    y = solve_upper(u, target)
    x = np.zeros((m, m), dtype=u.dtype)
    if m > 1:
        x[1:] = solve_lower(l[1:, 1:], y[1:])
    return XSolution(x=x, y=y)


def _pipeline(p, dtype):
    p = check_transition_matrix(p, dtype=dtype)
    record = gth_reduce(p, dtype=p.dtype)
    pi = record.r / record.r.sum()
    solution = solve_x(ul_factorize(record), pi)
    return pi, solution


def factored_fundamental_mfpt(p, dtype=None):
    """Procedure 10: Z = Pi + (I - Pi) X, then M = [I - Z + E Z_d] D."""
    pi, solution = _pipeline(p, dtype)
    x = solution.x
    z = (x - (pi @ x)[None, :]) + pi[None, :]
    return mfpt_from_ge(z, pi, check=False)


def factored_group_mfpt(p, dtype=None):
    """Procedure 11: A# = (I - Pi) X, then M = [I - A# + E A#_d] D."""
    pi, solution = _pipeline(p, dtype)
    x = solution.x
    a = x - (pi @ x)[None, :]
    return mfpt_from_h(a, pi, check=False)


def factored_direct_mfpt(p, dtype=None):
    """Procedure 12: M = [I - X + E X_d] D straight from X."""
    pi, solution = _pipeline(p, dtype)
    return mfpt_from_h(solution.x, pi, check=False)
