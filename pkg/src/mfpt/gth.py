"""Subtraction-free state reduction (GTH) for stationary distributions.

The reduction censors the chain one state at a time, from the last state
down to the second. Level n rewrites the leading (n-1) x (n-1) block as

    p_ij <- p_ij + p_in * p_nj / s_n,      s_n = sum_{j<n} p_nj,

using only additions, multiplications and divisions of non-negative
quantities, which is what gives the method its entrywise relative
accuracy. The discarded rows and columns are kept in place, so after the
full sweep the array stores every level's edge entries: column n above
the diagonal and row n below it still hold the level-n values.

The same sweep structure extends to expected holding times, which grow
monotonically as states are removed and end at the mean recurrence time
of state 0.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ReducibleChainError
from .linalg import as_square_matrix


@dataclass(frozen=True)
class ReductionRecord:
    """State of a completed reduction sweep.

    Attributes
    ----------
    pbar : (m, m) ndarray
        The overwritten reduction array described in the module
        docstring. All entries are >= 0; no subtraction ever touches it.
    s : (m,) ndarray
        Left row masses, ``s[0] = 1`` by convention and
        ``s[n] = sum(pbar[n, :n])`` for n >= 1; all > 0 for an
        irreducible chain, and ``s[n]`` agrees with ``1 - pbar[n, n]``
        to rounding.
    r : (m,) ndarray
        Unnormalized stationary weights, ``r[0] = 1``.
    """

    pbar: np.ndarray
    s: np.ndarray
    r: np.ndarray

    @property
    def dtype(self):
        return self.pbar.dtype


def _nonnegative(name, a):
    if not (a >= 0).all():
        raise AssertionError(f"subtraction-free invariant violated: {name} has negative entries")


def gth_reduce(p, dtype=None):
    """Run the reduction sweep and the stationary weight recursion.

    Parameters
    ----------
    p : array-like of shape (m, m)
        Transition matrix of an irreducible chain (validated by the
        caller); cast to ``dtype`` once before any arithmetic.

    Returns
    -------
    ReductionRecord

    Raises
    ------
    ReducibleChainError
        If some left row mass ``s[n]`` is not positive, which means the
        chain (or the censored chain at that level) cannot reach the
        states below n.
    """
    pbar = as_square_matrix(p, dtype=dtype).copy()
    m = pbar.shape[0]
    s = np.ones(m, dtype=pbar.dtype)
    for n in range(m - 1, 0, -1):
        sn = pbar[n, :n].sum()
        if not sn > 0:
            raise ReducibleChainError(
                f"left row mass vanished at reduction level {n}; chain is not irreducible",
                state=n,
            )
        s[n] = sn
        pbar[:n, :n] += np.outer(pbar[:n, n], pbar[n, :n]) / sn
    r = np.zeros(m, dtype=pbar.dtype)
    r[0] = 1
    for n in range(1, m):
        r[n] = (r[:n] @ pbar[:n, n]) / s[n]
    _nonnegative("pbar", pbar)
    _nonnegative("r", r)
    return ReductionRecord(pbar=pbar, s=s, r=r)


def gth_stationary(p, dtype=None):
    """Stationary distribution by subtraction-free state reduction.

    Returns ``r / sum(r)`` from :func:`gth_reduce`. Entrywise accurate
    even for nearly uncoupled chains, which is why every procedure that
    needs pi as an input obtains it here.
    """
    record = gth_reduce(p, dtype=dtype)
    return record.r / record.r.sum()


def reduce_holding_times(p, dtype=None):
    """Reduction sweep plus per-level expected holding time snapshots.

    Holding times start at 1 on the full chain and accumulate during
    censoring: removing state n adds ``mu_n * p_in / s_n`` to every
    remaining ``mu_i``. The value each state holds at its own removal
    level is what the first-passage recursion consumes.

    Returns
    -------
    record : ReductionRecord
    mu : (m,) ndarray
        ``mu[n]`` is the holding time of state n at level n: the value
        just before state n is removed (``mu[m-1] = 1`` always), and for
        ``n = 0`` the fully reduced value, which equals the mean
        recurrence time of state 0 to rounding.
    """
    record = gth_reduce(p, dtype=dtype)
    pbar, s = record.pbar, record.s
    m = pbar.shape[0]
    current = np.ones(m, dtype=pbar.dtype)
    mu = np.ones(m, dtype=pbar.dtype)
    for n in range(m - 1, 0, -1):
        mu[n] = current[n]
        current[:n] += (current[n] * pbar[:n, n]) / s[n]
    mu[0] = current[0]
    if not (mu >= 1).all():
        raise AssertionError("holding times must never drop below 1")
    return record, mu
