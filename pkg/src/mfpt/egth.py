"""Subtraction-free MFPT matrix by repeated state reduction (procedure 9).

One reduction sweep with holding times yields the passage times into a
single target: the first column of M for the chain as labelled. Relabel
the states cyclically so that each state takes its turn as state 0, run
the sweep once per rotation, and scatter each computed column back to
its home positions. Everything inherits the reduction's subtraction
freedom, so all intermediates stay non-negative in every precision; the
price is m sweeps, O(m^4) overall.

Mean recurrence times come out on the diagonal, so this procedure needs
no separate stationary computation: pi_j = 1 / m_jj.
"""

import numpy as np

from .gth import reduce_holding_times
from .linalg import as_square_matrix
from .validation import check_transition_matrix


def rotate_states(p, k):
    """Relabel states cyclically so original state k becomes state 0.

    Returns a fresh array with ``new[i, j] = p[(i + k) % m, (j + k) % m]``;
    ``k = 0`` returns an identical copy. Composing rotations adds their
    offsets modulo m.
    """
    p = as_square_matrix(p)
    m = p.shape[0]
    if not 0 <= k < m:
        raise ValueError(f"rotation index {k} out of range for {m} states")
    return np.roll(p, (-k, -k), axis=(0, 1))


def first_passage_column(p, dtype=None):
    """Mean first passage times from every state into state 0.

    Runs the holding-time reduction sweep and unwinds it:

        col[0] = mu[0]
        col[i] = (mu[i] + sum_{0<k<i} pbar[i, k] * col[k]) / s[i]

    using only non-negative quantities. ``col[0]`` is the mean
    recurrence time of state 0; every other entry is >= 1.
    """
    record, mu = reduce_holding_times(p, dtype=dtype)
    pbar, s = record.pbar, record.s
    m = pbar.shape[0]
    col = np.empty(m, dtype=pbar.dtype)
    col[0] = mu[0]
    for i in range(1, m):
        col[i] = (mu[i] + pbar[i, 1:i] @ col[1:i]) / s[i]
    if not (col >= 0).all():
        raise AssertionError("subtraction-free invariant violated: negative passage time")
    return col


def state_reduction_mfpt(p, dtype=None):
    """Procedure 9: the full MFPT matrix, one reduction per target state.

    Column j of the result is exactly
    ``first_passage_column(rotate_states(p, j))`` scattered by
    ``M[(i + j) % m, j] = col[i]``, bit for bit. Rotations are
    independent of each other and run serially here.

    Returns
    -------
    (m, m) ndarray
        MFPT matrix with mean recurrence times on the diagonal.
    """
    p = check_transition_matrix(p, dtype=dtype)
    m = p.shape[0]
    mfpt = np.empty((m, m), dtype=p.dtype)
    rows = np.arange(m)
    for j in range(m):
        col = first_passage_column(rotate_states(p, j), dtype=p.dtype)
        mfpt[(rows + j) % m, j] = col
    return mfpt
