"""Pure state-reduction MFPT computation (procedure 9)."""

import numpy as np
import pytest

import mfpt
from mfpt.egth import first_passage_column, rotate_states, state_reduction_mfpt


class TestRotateStates:
    def test_zero_is_identity(self, asym2):
        assert np.array_equal(rotate_states(asym2, 0), asym2)

    def test_rotation_relabels_states(self):
        p = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
        q = rotate_states(p, 1)
        # State k of q is state k+1 of p (indices mod m).
        m = 3
        for i in range(m):
            for j in range(m):
                assert q[i, j] == p[(i + 1) % m, (j + 1) % m]

    def test_composition(self, small_problem):
        _, p = small_problem
        assert np.array_equal(rotate_states(rotate_states(p, 1), 1), rotate_states(p, 2))

    def test_full_cycle_is_identity(self, small_problem):
        _, p = small_problem
        m = p.shape[0]
        out = p
        for _ in range(m):
            out = rotate_states(out, 1)
        assert np.array_equal(out, p)

    def test_preserves_stochasticity(self, small_problem):
        _, p = small_problem
        q = rotate_states(p, 2 % p.shape[0])
        assert np.allclose(q.sum(axis=1), 1.0, atol=1e-14)

    def test_out_of_range_rejected(self, asym2):
        with pytest.raises(ValueError):
            rotate_states(asym2, 2)
        with pytest.raises(ValueError):
            rotate_states(asym2, -1)


class TestFirstPassageColumn:
    def test_two_state_exact(self, asym2):
        # Column 0 of M: (m_00, m_10) = (3, 4), all dyadic.
        assert np.array_equal(first_passage_column(asym2), [3.0, 4.0])

    def test_matches_oracle_column(self, small_problem):
        _, p = small_problem
        col = first_passage_column(p)
        ref = mfpt.mfpt_column_solve(p, 0)
        assert np.allclose(col, ref, rtol=1e-8)

    def test_nonnegative_throughout(self, small_problem):
        _, p = small_problem
        assert (first_passage_column(p) >= 1.0).all()

    def test_single_precision(self, asym2):
        col = first_passage_column(asym2, dtype="single")
        assert col.dtype == np.float32
        assert np.array_equal(col, np.array([3.0, 4.0], dtype=np.float32))


class TestStateReductionMfpt:
    def test_two_state_exact(self, asym2, asym2_mfpt):
        assert np.array_equal(state_reduction_mfpt(asym2), asym2_mfpt)

    def test_cycle(self, cycle2, cycle2_mfpt):
        assert np.array_equal(state_reduction_mfpt(cycle2), cycle2_mfpt)

    def test_against_oracle(self, small_problem):
        name, p = small_problem
        m = state_reduction_mfpt(p)
        ref = mfpt.mfpt_oracle(p)
        assert np.allclose(m, ref, rtol=1e-6), name

    def test_columns_bitwise_consistent(self, small_problem):
        # Column j is produced by one rotated first-column run; the
        # scatter must place it without any arithmetic on the values.
        _, p = small_problem
        m = state_reduction_mfpt(p)
        n = p.shape[0]
        for j in (0, 1, n - 1):
            col = first_passage_column(rotate_states(p, j))
            scattered = m[(np.arange(n) + j) % n, j]
            assert np.array_equal(scattered, col)

    def test_deterministic_bitwise(self, small_problem):
        _, p = small_problem
        a = state_reduction_mfpt(p)
        b = state_reduction_mfpt(p)
        assert a.tobytes() == b.tobytes()

    def test_all_positive_even_in_single(self):
        # Subtraction-freedom keeps every output positive even on the
        # most ill-conditioned built-in problem at binary32.
        for name in ("tp3", "tp44"):
            m = state_reduction_mfpt(mfpt.builtin_problem(name), dtype="single")
            assert (m > 0).all(), name

    def test_registry_stationary_from_diagonal(self, asym2, asym2_pi):
        res = mfpt.run_procedure(9, asym2)
        assert np.allclose(res.stationary, asym2_pi)
        assert np.array_equal(res.stationary, 1.0 / np.diagonal(res.mfpt))
