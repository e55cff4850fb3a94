"""Scikit-learn style estimator facade over the procedures."""

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import ReducibleChainError
from .registry import get_procedure, run_procedure
from .validation import check_transition_matrix, is_irreducible


class MeanFirstPassageTime(BaseEstimator):
    """Mean first passage times of a finite irreducible Markov chain.

    Fitting computes, for every ordered state pair (i, j), the expected
    number of steps a chain started in i needs to first reach j, with
    mean recurrence times on the diagonal.

    Parameters
    ----------
    method : int or str, default="factored-direct"
        Which of the twelve procedures to run; a number 1-12 or a key
        from :data:`mfpt.registry.PROCEDURES`. The default pairs the
        accuracy of the reduction-based family with O(m^3) cost;
        ``"state-reduction"`` is the most accurate and the slowest.
    dtype : str or dtype-like, default="double"
        Working precision, ``"single"`` (binary32) or ``"double"``
        (binary64). The input is rounded to this precision once and all
        arithmetic stays in it.
    anchor_state : int, default=0
        Anchor row for ``method="anchored-inverse"``; ignored by every
        other method.

    Attributes
    ----------
    mfpt_ : ndarray of shape (n_states, n_states)
        Mean first passage time matrix.
    stationary_ : ndarray of shape (n_states,)
        Stationary distribution.
    recurrence_times_ : ndarray of shape (n_states,)
        Mean recurrence times, the diagonal of ``mfpt_``.
    transition_matrix_ : ndarray of shape (n_states, n_states)
        The validated input in working precision.
    n_states_ : int

    Examples
    --------
    >>> import numpy as np
    >>> from mfpt import MeanFirstPassageTime
    >>> p = np.array([[0.5, 0.5], [0.25, 0.75]])
    >>> est = MeanFirstPassageTime().fit(p)
    >>> est.mfpt_
    array([[3. , 2. ],
           [4. , 1.5]])
    >>> est.stationary_
    array([0.33333333, 0.66666667])
    """

    def __init__(self, method="factored-direct", dtype="double", anchor_state=0):
        self.method = method
        self.dtype = dtype
        self.anchor_state = anchor_state

    def fit(self, X, y=None):
        """Compute passage times for the transition matrix ``X``.

        Parameters
        ----------
        X : array-like of shape (n_states, n_states)
            Row-stochastic transition matrix of an irreducible chain.
        y : Ignored
            Present for scikit-learn API compatibility.

        Returns
        -------
        self
        """
        get_procedure(self.method)  # fail fast on bad parameters
        p = check_transition_matrix(X, dtype=self.dtype)
        if not is_irreducible(p):
            raise ReducibleChainError(
                "transition matrix is reducible; passage times are not all finite"
            )
        result = run_procedure(self.method, p, dtype=p.dtype, anchor=self.anchor_state)
        self.transition_matrix_ = p
        self.n_states_ = p.shape[0]
        self.mfpt_ = result.mfpt
        self.stationary_ = result.stationary
        self.recurrence_times_ = np.diagonal(result.mfpt).copy()
        return self


def mean_first_passage_times(p, method="factored-direct", dtype="double", anchor_state=0):
    """Functional one-shot: the MFPT matrix of ``p``.

    Equivalent to ``MeanFirstPassageTime(...).fit(p).mfpt_``.
    """
    return MeanFirstPassageTime(
        method=method, dtype=dtype, anchor_state=anchor_state
    ).fit(p).mfpt_
