"""MFPT matrices by rank-one update sweeps (procedures 3 through 8).

All six procedures start from the maximally mixing chain P_0 = e e^T / m,
whose relevant inverses are known in closed form, and walk to the target
chain one row at a time: step i replaces row i of the current chain with
row i of P, a rank-one change e_i b_i^T with b_i^T = p_i^T - e^T / m.
Each step updates the tracked inverse by the Sherman-Morrison identity,
so a full sweep costs O(m^2) per step with the updates evaluated as
outer-product additions.

The variants differ in which inverse they track:

* a one-condition g-inverse [I - P_i + t_i u_i^T]^{-1} with a moving
  perturbation pair (procedure 3);
* the zero-row-sum representative R_i of the group inverse family
  (procedure 4);
* the group inverse A_i# jointly with the stationary vector
  (procedure 5);
* a fixed-anchor inverse K_i = [I - P_i + e beta^T]^{-1} for
  beta = e/m, e_0, or e (procedures 6, 7, 8).

Every step divides by a scalar that is nonzero in exact arithmetic for
irreducible input; the guard threshold below aborts a sweep whose
denominator has collapsed to roundoff level instead of silently
producing garbage.
"""

import numpy as np

from .chain import mfpt_from_ge, mfpt_from_h
from .exceptions import UpdateBreakdownError
from .validation import check_transition_matrix

#: A step denominator smaller than 1e3 * ulp * max(1, |row|_inf) aborts.
BREAKDOWN_ULP_FACTOR = 1e3

_K_STARTS = ("uniform", "unit", "ones")


def _guard(den, row, step):
    tol = BREAKDOWN_ULP_FACTOR * np.finfo(row.dtype).eps * max(1.0, float(np.abs(row).max()))
    if not np.isfinite(den) or abs(den) < tol:
        raise UpdateBreakdownError(
            f"update denominator {float(den):.6e} below breakdown threshold {tol:.3e} at step {step}",
            step=step,
            value=float(den),
        )


def ginverse_update(p, dtype=None):
    """Rank-one g-inverse sweep (procedure 3 core).

    Tracks G_i = [I - P_i + t_i u_i^T]^{-1} where u_i accumulates the
    row changes (u_0 = e/m, u_i = u_{i-1} + b_i) and the column t_i is
    e for the first step and e_i afterwards. The step change is
    (e_i - t_{i-1}) u_{i-1}^T; Sherman-Morrison gives

        G_i = G_{i-1} + G_{i-1}(t_{i-1} - e_i) w^T / w_i,
        w^T = u_{i-1}^T G_{i-1},

    where the denominator reduces to w_i = w^T e_i because
    u_{i-1}^T G_{i-1} t_{i-1} = 1 for every i (the row u^T G is the
    stationary vector of P_{i-1} scaled to make that product 1).

    Returns
    -------
    g : (m, m) ndarray
        Final inverse G_m.
    u : (m,) ndarray
        Final perturbation row u_m.
    """
    p = check_transition_matrix(p, dtype=dtype)
    m = p.shape[0]
    dt = p.dtype
    inv_m = dt.type(1.0) / dt.type(m)
    g = np.eye(m, dtype=dt)
    u = np.full(m, inv_m, dtype=dt)
    ones = np.ones(m, dtype=dt)
    for i in range(m):
        w = u @ g
        den = w[i]
        _guard(den, w, i)
        col = (g @ ones if i == 0 else g[:, i - 1]) - g[:, i]
        g = g + np.outer(col, w) / den
        u = u + (p[i] - inv_m)
    return g, u


def ginverse_update_mfpt(p, dtype=None):
    """Procedure 3: g-inverse sweep, stationary row from u^T G.

    pi^T is u_m^T G_m normalized by its sum; M is assembled from
    H = G_m (I - e pi^T), which has zero row sums.
    """
    p = check_transition_matrix(p, dtype=dtype)
    g, u = ginverse_update(p, dtype=p.dtype)
    w = u @ g
    pi = w / w.sum()
    m = p.shape[0]
    h = g - np.outer(g @ np.ones(m, dtype=p.dtype), pi)
    return pi, mfpt_from_h(h, pi, check=False)


def centered_update(p, dtype=None):
    """Zero-row-sum g-inverse sweep (procedure 4 core).

    Tracks R_i with R_0 = I - e e^T / m and

        R_i = R_{i-1} + R_{i-1} e_i (b_i^T R_{i-1}) / k_i,
        k_i = 1 - b_i^T R_{i-1} e_i.

    R_i keeps zero row sums throughout; the group inverse of I - P_i
    equals R_i + e y_i^T for some row y_i that is never needed.
    """
    p = check_transition_matrix(p, dtype=dtype)
    m = p.shape[0]
    dt = p.dtype
    r = np.eye(m, dtype=dt) - dt.type(1.0) / dt.type(m)
    inv_m = dt.type(1.0) / dt.type(m)
    for i in range(m):
        w = (p[i] - inv_m) @ r
        den = 1.0 - w[i]
        _guard(den, w, i)
        r = r + np.outer(r[:, i], w) / den
    return r


def centered_update_mfpt(p, dtype=None):
    """Procedure 4: zero-row-sum sweep, stationary row by one product.

    pi^T = e_0^T - e_0^T (I - P) R_m, then M = [I - R_m + E (R_m)_d] D.
    """
    p = check_transition_matrix(p, dtype=dtype)
    r = centered_update(p, dtype=p.dtype)
    m = p.shape[0]
    first = np.zeros(m, dtype=p.dtype)
    first[0] = 1
    pi = first - (first - p[0]) @ r
    return pi, mfpt_from_ge(r, pi, check=False)


def group_inverse_update(p, dtype=None):
    """Joint group-inverse / stationary sweep (procedure 5 core).

    Tracks the pair (pi_i, A_i#) through

        f_i   = 1 - b_i^T A_{i-1}# e_i,
        S_i   = I + e_i (b_i^T A_{i-1}#) / f_i,
        pi_i  = pi_{i-1}^T S_i,
        A_i#  = (I - e pi_i^T) A_{i-1}# S_i,

    starting from pi_0 = e/m and A_0# = I - e e^T / m. The projector
    multiplication is evaluated as B - e (pi_i^T B), and A# S as a
    rank-one addition, keeping each step O(m^2).

    Returns
    -------
    pi : (m,) ndarray
    a_group : (m, m) ndarray
        Group inverse of I - P: zero row sums and pi^T A# = 0.
    """
    p = check_transition_matrix(p, dtype=dtype)
    m = p.shape[0]
    dt = p.dtype
    inv_m = dt.type(1.0) / dt.type(m)
    a = np.eye(m, dtype=dt) - inv_m
    pi = np.full(m, inv_m, dtype=dt)
    for i in range(m):
        w = (p[i] - inv_m) @ a
        den = 1.0 - w[i]
        _guard(den, w, i)
        pi = pi + (pi[i] / den) * w
        b = a + np.outer(a[:, i], w) / den
        a = b - (pi @ b)[None, :]
    return pi, a


def group_inverse_update_mfpt(p, dtype=None):
    """Procedure 5: group-inverse sweep, M from [I - A# + E A#_d] D."""
    pi, a = group_inverse_update(p, dtype=dtype)
    return pi, mfpt_from_h(a, pi, check=False)


def anchored_update(p, start, dtype=None):
    """Fixed-anchor inverse sweep (procedures 6-8 core).

    Tracks K_i = [I - P_i + e beta^T]^{-1} under the row replacements,
    with the anchor beta fixed by ``start``:

    * ``"uniform"``: beta = e/m, so K_0 = I;
    * ``"unit"``: beta = e_0, so K_0 = I + e (e^T/m - e_0^T);
    * ``"ones"``: beta = e, so K_0 = I - ((m-1)/m^2) e e^T.

    Every step is K_i = K_{i-1} + K_{i-1} e_i (b_i^T K_{i-1}) / k_i
    with k_i = 1 - b_i^T K_{i-1} e_i.
    """
    if start not in _K_STARTS:
        raise ValueError(f"start must be one of {_K_STARTS}, got {start!r}")
    p = check_transition_matrix(p, dtype=dtype)
    m = p.shape[0]
    dt = p.dtype
    inv_m = dt.type(1.0) / dt.type(m)
    k = np.eye(m, dtype=dt)
    if start == "unit":
        row = np.full(m, inv_m, dtype=dt)
        row[0] -= 1
        k = k + row[None, :]
    elif start == "ones":
        k = k - (dt.type(m - 1) * inv_m * inv_m)
    for i in range(m):
        w = (p[i] - inv_m) @ k
        den = 1.0 - w[i]
        _guard(den, w, i)
        k = k + np.outer(k[:, i], w) / den
    return k


def uniform_anchor_mfpt(p, dtype=None):
    """Procedure 6: anchor e/m; pi^T = e^T K_m / m."""
    p = check_transition_matrix(p, dtype=dtype)
    k = anchored_update(p, "uniform", dtype=p.dtype)
    pi = k.sum(axis=0) / p.shape[0]
    return pi, mfpt_from_ge(k, pi, check=False)


def unit_anchor_mfpt(p, dtype=None):
    """Procedure 7: anchor e_0; pi^T is row 0 of K_m."""
    p = check_transition_matrix(p, dtype=dtype)
    k = anchored_update(p, "unit", dtype=p.dtype)
    pi = k[0].copy()
    return pi, mfpt_from_ge(k, pi, check=False)


def ones_anchor_mfpt(p, dtype=None):
    """Procedure 8: anchor e; pi^T = e^T K_m (K_m has row sums 1/m)."""
    p = check_transition_matrix(p, dtype=dtype)
    k = anchored_update(p, "ones", dtype=p.dtype)
    pi = k.sum(axis=0)
    return pi, mfpt_from_ge(k, pi, check=False)
