"""Independent MFPT references: taboo-column solves and simulation."""

import numpy as np
import pytest

import mfpt
from mfpt import oracle
from mfpt.oracle import McEstimate, mfpt_column_solve, mfpt_oracle, monte_carlo_mfpt


class TestColumnSolve:
    def test_two_state_columns(self, asym2):
        assert np.allclose(mfpt_column_solve(asym2, 0), [3.0, 4.0])
        assert np.allclose(mfpt_column_solve(asym2, 1), [2.0, 1.5])

    def test_column_satisfies_equations(self, small_problem):
        # (I - P with column j removed) m = e, checked directly.
        _, p = small_problem
        m = p.shape[0]
        for j in (0, m - 1):
            col = mfpt_column_solve(p, j)
            lhs = col.copy()
            for i in range(m):
                lhs[i] -= sum(p[i, k] * col[k] for k in range(m) if k != j)
            assert np.allclose(lhs, 1.0, rtol=1e-8)

    def test_target_out_of_range(self, asym2):
        with pytest.raises((IndexError, ValueError)):
            mfpt_column_solve(asym2, 3)


class TestOracle:
    def test_two_state(self, asym2, asym2_mfpt):
        assert np.allclose(mfpt_oracle(asym2), asym2_mfpt)

    def test_cycle(self, cycle2, cycle2_mfpt):
        assert np.allclose(mfpt_oracle(cycle2), cycle2_mfpt)

    def test_diagonal_is_recurrence(self, small_problem):
        _, p = small_problem
        m = mfpt_oracle(p)
        pi = mfpt.gth_stationary(p)
        assert np.allclose(np.diagonal(m), 1.0 / pi, rtol=1e-8)

    def test_residual_identity(self, small_problem):
        _, p = small_problem
        m = mfpt_oracle(p)
        assert np.abs(mfpt.residual(p, m)).max() <= 1e-7

    def test_agrees_with_procedures(self, asym2):
        ref = mfpt_oracle(asym2)
        for number in (1, 9, 12):
            res = mfpt.run_procedure(number, asym2)
            assert np.allclose(res.mfpt, ref)


class TestMonteCarlo:
    def test_deterministic_transition(self, cycle2):
        est = monte_carlo_mfpt(cycle2, 0, 1, samples=500, seed=1)
        assert est.mean == 1.0
        assert est.half_width == 0.0

    def test_reproducible(self, asym2):
        a = monte_carlo_mfpt(asym2, 1, 0, samples=2000, seed=42)
        b = monte_carlo_mfpt(asym2, 1, 0, samples=2000, seed=42)
        assert a == b

    def test_seed_matters(self, asym2):
        a = monte_carlo_mfpt(asym2, 1, 0, samples=2000, seed=1)
        b = monte_carlo_mfpt(asym2, 1, 0, samples=2000, seed=2)
        assert a.mean != b.mean

    def test_interval_contains_truth(self, asym2):
        # m_10 = 4; the 95% interval from 20k paths comfortably covers it
        # for this frozen seed.
        est = monte_carlo_mfpt(asym2, 1, 0, samples=20_000, seed=7)
        assert est.low <= 4.0 <= est.high
        assert est.half_width < 0.1

    def test_recurrence_time(self, asym2):
        est = monte_carlo_mfpt(asym2, 0, 0, samples=20_000, seed=3)
        assert est.low <= 3.0 <= est.high

    def test_fields(self, asym2):
        est = monte_carlo_mfpt(asym2, 0, 1, samples=100, seed=9)
        assert isinstance(est, McEstimate)
        assert est.samples == 100 and est.seed == 9
        assert est.low == est.mean - est.half_width
        assert est.high == est.mean + est.half_width

    def test_step_cap(self, asym2, monkeypatch):
        monkeypatch.setattr(oracle, "MC_STEP_CAP", 10)
        with pytest.raises(RuntimeError, match="exceeded"):
            monte_carlo_mfpt(asym2, 1, 0, samples=5000, seed=0)

    def test_bad_states_rejected(self, asym2):
        with pytest.raises((IndexError, ValueError)):
            monte_carlo_mfpt(asym2, 5, 0)
        with pytest.raises((IndexError, ValueError)):
            monte_carlo_mfpt(asym2, 0, -3)

    def test_matches_exact_solution(self):
        # Cross-validation of simulation against the linear solve on a
        # problem where simulation is cheap.
        p = mfpt.builtin_problem("tp1")
        exact = mfpt_oracle(p)
        est = monte_carlo_mfpt(p, 3, 2, samples=20_000, seed=11)
        # m_43 = 160.5 has a heavy-tailed distribution; allow 3 sigma.
        assert abs(est.mean - exact[3, 2]) <= 3 * est.half_width
