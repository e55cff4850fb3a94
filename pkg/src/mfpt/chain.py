"""Mean first passage times from one-condition generalized inverses.

For an irreducible chain with transition matrix P, stationary row vector
pi and D = diag(1/pi), the MFPT matrix satisfies (I - P)M = E - P M_d
with M_d the diagonal of M. Any matrix G with (I - P)G(I - P) = I - P
yields M through one of three assembly forms, implemented below:

* the general form, valid for every such G;
* the form for H with H e = 0 (e.g. the group inverse, which has both
  zero row sums and pi^T H = 0);
* the form for G whose row sums are all equal (e.g. the fundamental
  matrix Z = [I - P + e pi^T]^{-1}, whose row sums are 1).

All three produce identical M up to roundoff; M is invariant under
G -> G + e f^T for any f.
"""

import numpy as np

from .linalg import as_square_matrix

#: Contract checks scale with 1e5 * m * eps * max(1, |G|_inf). Rounding
#: degradation in a legitimately computed g-inverse grows with the
#: chain's conditioning (observed up to ~2e5 * eps * norm on the
#: near-uncoupled built-in problems at binary64), while a wrong-kind
#: matrix violates the contract at order 1 relative to its norm, i.e.
#: ~1/eps in these units; the factor sits between the two regimes.
CONTRACT_ULP_FACTOR = 1e5


def _prepare(g, pi):
    g = as_square_matrix(g)
    pi = np.asarray(pi, dtype=g.dtype)
    if pi.shape != (g.shape[0],):
        raise ValueError(f"stationary vector shape {pi.shape} does not match {g.shape}")
    return g, pi


def _contract_tolerance(g):
    m = g.shape[0]
    eps = np.finfo(g.dtype).eps
    norm = float(np.abs(g).sum(axis=1).max()) if m else 0.0
    return CONTRACT_ULP_FACTOR * m * eps * max(1.0, norm)


def recurrence_times(pi):
    """Mean recurrence times 1/pi_j, computed entrywise in pi's dtype.

    Zeros map to inf rather than raising, so degraded upstream results
    propagate as non-finite values instead of aborting a sweep.
    """
    pi = np.asarray(pi)
    with np.errstate(divide="ignore"):
        return 1.0 / pi


def mfpt_from_general_ginverse(g, pi):
    """Assemble M from any one-condition g-inverse of I - P.

    Computes [G Pi - E (G Pi)_d + I - G + E G_d] D, where Pi = e pi^T,
    X_d is the diagonal part of X, E is all ones and D = diag(1/pi).
    No structural condition on G is required.
    """
    g, pi = _prepare(g, pi)
    m = g.shape[0]
    gpi = np.outer(g @ np.ones(m, dtype=g.dtype), pi)
    core = gpi - np.diagonal(gpi)[None, :] + np.eye(m, dtype=g.dtype) - g + np.diagonal(g)[None, :]
    return core * recurrence_times(pi)[None, :]


def mfpt_from_h(h, pi, *, check=True):
    """Assemble M from a g-inverse multiple H with zero row sums.

    Computes [I - H + E H_d] D. With ``check=True`` (the default),
    requires max|H e| within a scale-aware tolerance; the tolerance
    tracks the rounding floor of computing H itself, so legitimately
    degraded low-precision inputs pass while structurally wrong ones
    (row sums of order 1 relative to scale) are rejected. Callers that
    hold H with zero row sums by construction pass ``check=False``:
    at extreme ill-conditioning in low precision the computed row sums
    can degrade to the same order as a contract violation, and the
    point of running such cells is to measure that degradation, not to
    abort on it.
    """
    h, pi = _prepare(h, pi)
    m = h.shape[0]
    if check:
        rows = h @ np.ones(m, dtype=h.dtype)
        worst = float(np.abs(rows).max()) if m else 0.0
        tol = _contract_tolerance(h)
        if worst > tol:
            raise ValueError(
                f"max|H e| = {worst:.3e} exceeds {tol:.3e}; H must have zero row sums"
            )
    core = np.eye(m, dtype=h.dtype) - h + np.diagonal(h)[None, :]
    return core * recurrence_times(pi)[None, :]


def mfpt_from_ge(g, pi, *, check=True):
    """Assemble M from a g-inverse with constant row sums G e = g e.

    Computes [I - G + E G_d] D. With ``check=True`` (the default),
    requires the row sums to agree within the same scale-aware
    tolerance as :func:`mfpt_from_h`, and ``check=False`` has the same
    role there as it does there.
    """
    g, pi = _prepare(g, pi)
    m = g.shape[0]
    if check:
        rows = g @ np.ones(m, dtype=g.dtype)
        spread = float(rows.max() - rows.min()) if m else 0.0
        tol = _contract_tolerance(g)
        if spread > tol:
            raise ValueError(
                f"row sums of G spread over {spread:.3e} (tolerance {tol:.3e}); "
                "G must have constant row sums"
            )
    core = np.eye(m, dtype=g.dtype) - g + np.diagonal(g)[None, :]
    return core * recurrence_times(pi)[None, :]
