"""Independent reference results for validating the procedures.

The linear-system oracle derives each column of M straight from the
first-step decomposition: zeroing column j of P makes state j absorbing
for the purpose of passage counting, and (I - P_0j) m = e has the j-th
MFPT column as its unique solution (its j-th entry is the mean
recurrence time). This shares nothing with the twelve procedures beyond
the dense solver, so agreement is meaningful evidence.

The Monte Carlo oracle estimates a single passage time by simulating
trajectories; it is the court of last resort and also validates the
linear one on small chains.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import as_square_matrix, solve_general
from .validation import check_transition_matrix

#: Simulations abort after this many total steps.
MC_STEP_CAP = 1_000_000_000


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo passage time estimate with a 95% normal CI.

    ``half_width`` is 1.96 * sd / sqrt(samples); it is zero for a
    deterministic passage (zero sample variance).
    """

    mean: float
    half_width: float
    samples: int
    seed: int

    @property
    def low(self):
        return self.mean - self.half_width

    @property
    def high(self):
        return self.mean + self.half_width


def mfpt_column_solve(p, target, dtype=None):
    """Mean first passage times into ``target`` by one linear solve.

    Solves (I - P_0) m = e where P_0 is P with column ``target``
    zeroed. Entry ``target`` of the result is the mean recurrence time
    of the target state.
    """
    p = as_square_matrix(p, dtype=dtype)
    m = p.shape[0]
    if not 0 <= target < m:
        raise ValueError(f"target state {target} out of range for {m} states")
    a = np.eye(m, dtype=p.dtype) - p
    a[:, target] = 0
    a[target, target] = 1
    return solve_general(a, np.ones(m, dtype=p.dtype))


def mfpt_oracle(p, dtype=None):
    """Full MFPT matrix, one taboo-column solve per target state."""
    p = check_transition_matrix(p, dtype=dtype)
    m = p.shape[0]
    out = np.empty((m, m), dtype=p.dtype)
    for j in range(m):
        out[:, j] = mfpt_column_solve(p, j, dtype=p.dtype)
    return out


def monte_carlo_mfpt(p, source, target, samples=10_000, seed=0):
    """Simulate passage times from ``source`` to ``target``.

    Runs ``samples`` independent trajectories with numpy's seeded PCG64
    generator, stepping all unfinished walkers together. A trajectory
    ending exactly at the first step contributes 1, matching
    m_ij >= 1; ``source == target`` estimates the recurrence time.

    Raises
    ------
    RuntimeError
        If the total simulated steps exceed the safety cap (stiff
        chains have passage times far beyond what simulation can
        reach; use the linear oracle there).
    """
    p = check_transition_matrix(p, dtype=np.float64)
    m = p.shape[0]
    if not (0 <= source < m and 0 <= target < m):
        raise ValueError(f"states ({source}, {target}) out of range for {m} states")
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    cumulative = np.cumsum(p, axis=1)
    cumulative[:, -1] = 1.0  # guard against rounding shortfall in the last bin
    state = np.full(samples, source, dtype=np.intp)
    steps = np.zeros(samples, dtype=np.float64)
    active = np.arange(samples)
    total = 0
    while active.size:
        total += active.size
        if total > MC_STEP_CAP:
            raise RuntimeError(
                f"simulation exceeded {MC_STEP_CAP} total steps with "
                f"{active.size} of {samples} walkers unfinished"
            )
        u = rng.random(active.size)
        rows = cumulative[state[active]]
        state[active] = (u[:, None] >= rows).sum(axis=1)
        steps[active] += 1
        active = active[state[active] != target]
    mean = float(steps.mean())
    if samples > 1:
        half = 1.96 * float(steps.std(ddof=1)) / samples**0.5
    else:
        half = 0.0
    return McEstimate(mean=mean, half_width=half, samples=samples, seed=seed)
