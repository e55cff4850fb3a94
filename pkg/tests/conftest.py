"""Shared fixtures: small chains with hand-solved MFPT matrices.

The two-state chains below are solvable by hand from the defining
equations m_ij = p_ij + sum_{k != j} p_ik (m_kj + 1) and m_jj = 1/pi_j,
and every quantity involved is a dyadic rational, so binary64 (and
binary32) arithmetic represents them exactly. They anchor the frozen
expected values used across the unit tests.

For P = [[0.5, 0.5], [0.25, 0.75]]:  pi = (1/3, 2/3),
    m_00 = 3,  m_01 = 2,  m_10 = 4,  m_11 = 1.5.
For the 2-cycle P = [[0, 1], [1, 0]]: pi = (1/2, 1/2),
    M = [[2, 1], [1, 2]].
"""

import numpy as np
import pytest

import mfpt

BUILTIN_SMALL = ("tp1", "tp2", "tp3", "tp41", "tp42", "tp43", "tp44")


@pytest.fixture
def asym2():
    return np.array([[0.5, 0.5], [0.25, 0.75]])


@pytest.fixture
def asym2_pi():
    return np.array([1.0 / 3.0, 2.0 / 3.0])


@pytest.fixture
def asym2_mfpt():
    return np.array([[3.0, 2.0], [4.0, 1.5]])


@pytest.fixture
def cycle2():
    return np.array([[0.0, 1.0], [1.0, 0.0]])


@pytest.fixture
def cycle2_mfpt():
    return np.array([[2.0, 1.0], [1.0, 2.0]])


@pytest.fixture(params=BUILTIN_SMALL)
def small_problem(request):
    return request.param, mfpt.builtin_problem(request.param)


def random_chain(m, rng, zero_proportion=0.0):
    """A random irreducible row-stochastic matrix for property tests."""
    while True:
        a = rng.random((m, m))
        if zero_proportion:
            a *= rng.random((m, m)) >= zero_proportion
            a[np.arange(m), np.arange(m)] = 0.0
        rows = a.sum(axis=1)
        if (rows > 0).all():
            p = a / rows[:, None]
            if mfpt.is_irreducible(p):
                return p
