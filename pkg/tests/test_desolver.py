import math

import numpy as np
import pytest

from hopforce.desolver import (ROWS_DEG1, ROWS_DEG2, SingularMixture, beta_tau,
                               drift, drift_rows, hop_probability, mixture_rhs,
                               solve)


def test_row_counts_and_per_row_conservation():
    assert ROWS_DEG1.shape == (5, 8)
    assert ROWS_DEG2.shape == (12, 8)
    # every case moves vertices between degree classes, total count fixed
    for rows in (ROWS_DEG1, ROWS_DEG2):
        assert np.all(rows[:, 3:7].sum(axis=1) == 0)


def test_drift_rows_accessor():
    assert drift_rows(1) is ROWS_DEG1
    assert drift_rows(2) is ROWS_DEG2
    with pytest.raises(ValueError):
        drift_rows(3)


@pytest.mark.parametrize("r", [1, 2])
def test_case_probabilities_sum_to_one_on_simplex(r):
    # with no degree-1 mass the case split is complete: probabilities sum to 1
    rng = np.random.default_rng(3)
    for _ in range(300):
        y2 = rng.uniform(0.01, 0.99)
        y3 = 1 - y2
        y = (0.0, 0.0, y2, y3)
        rows = drift_rows(r)
        s = y[1] + 2 * y2 + 3 * y3
        a, b = 3 * y3 / s, 2 * y2 / s
        total = sum(c * a ** pa * b ** pb for c, pa, pb, *_ in rows)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_drift_pure_full_state():
    y = (0.0, 0.0, 0.0, 1.0)
    assert drift(0, 1, y) == pytest.approx(1.0)
    assert drift(1, 1, y) == pytest.approx(0.0)
    assert drift(2, 1, y) == pytest.approx(1.0)
    assert drift(3, 1, y) == pytest.approx(-2.0)


def test_drift_no_full_vertices():
    # only the all-degree-2 case survives when y3 = 0
    y = (0.0, 0.0, 0.5, 0.0)
    assert drift(0, 1, y) == pytest.approx(2.0)
    assert drift(2, 1, y) == pytest.approx(-2.0)
    assert drift(1, 1, y) == pytest.approx(0.0)
    assert drift(3, 1, y) == pytest.approx(0.0)


def test_drift_input_validation():
    with pytest.raises(ValueError):
        drift(4, 1, (0, 0, 0, 1))
    with pytest.raises(ValueError):
        drift(0, 1, (1.0, 0.0, 0.0, 0.0))   # s = 0


def test_beta_tau_definitions():
    rng = np.random.default_rng(11)
    for _ in range(100):
        y2, y3 = rng.uniform(0.05, 0.45, size=2)
        y = (1 - y2 - y3, 0.0, y2, y3)
        beta, tau = beta_tau(y)
        assert tau == pytest.approx(-drift(1, 1, y), abs=1e-14)
        assert beta == pytest.approx(drift(1, 2, y), abs=1e-14)
        assert beta > 0.0
        # tau = a^2 b in closed form
        s = 2 * y2 + 3 * y3
        a, b = 3 * y3 / s, 2 * y2 / s
        assert tau == pytest.approx(a * a * b, abs=1e-12)


def test_mixture_keeps_degree1_mass_flat():
    # the deprioritized mixture is built so the degree-1 count stays put
    rng = np.random.default_rng(13)
    for _ in range(50):
        y2, y3 = rng.uniform(0.05, 0.45, size=2)
        y = (1 - y2 - y3, 0.0, y2, y3)
        rhs = mixture_rhs(0.0, y)
        assert rhs[1] == pytest.approx(0.0, abs=1e-14)


def test_mixture_early_regime():
    x0 = 1e-4
    y = (x0, 0.0, x0, 1 - 2 * x0)
    dy0, dy1, dy2, dy3, dhop = mixture_rhs(x0, y)
    assert dy0 == pytest.approx(1.0, abs=0.01)
    assert dy2 == pytest.approx(1.0, abs=0.01)
    assert dy3 == pytest.approx(-2.0, abs=0.01)
    assert dhop == pytest.approx(1.0, abs=0.01)


def test_mixture_tau_to_zero_limit():
    # as y2 -> 0 the degree-2 weight vanishes: rhs -> pure degree-1 drift
    y = (0.1, 0.0, 1e-9, 0.9)
    rhs = mixture_rhs(0.0, y)
    for i in range(4):
        assert rhs[i] == pytest.approx(drift(i, 1, y), abs=1e-6)


def test_mixture_singular():
    with pytest.raises(SingularMixture):
        mixture_rhs(0.0, (0.5, 0.5, 0.0, 0.0))


def test_hop_probability_bounds():
    rng = np.random.default_rng(17)
    for _ in range(100):
        y2, y3 = rng.uniform(0.01, 0.49, size=2)
        y = (1 - y2 - y3, 0.0, y2, y3)
        for r in (1, 2):
            assert 0.0 <= hop_probability(r, y) <= 1.0 + 1e-12


def test_python_rhs_matches_kernel():
    from hopforce.desolver import _rhs_nb

    rng = np.random.default_rng(19)
    for _ in range(200):
        y2, y3 = rng.uniform(0.02, 0.45, size=2)
        y = np.array([1 - y2 - y3, 0.0, y2, y3, 0.3])
        out = np.empty(5)
        tau, beta, ok = _rhs_nb(y, ROWS_DEG1, ROWS_DEG2, out)
        assert ok
        ref = mixture_rhs(0.0, y[:4])
        assert np.allclose(out, ref, atol=1e-13)
        b2, t2 = beta_tau(y[:4])
        assert (beta, tau) == pytest.approx((b2, t2), abs=1e-13)


def test_solve_coarse_step_hits_targets():
    sol = solve(step=1e-5, richardson=False)
    assert 0.6594 <= sol.x_hat <= 0.6634
    assert 0.5139 <= sol.hop_fraction <= 0.5179
    assert 0.4821 <= sol.implied_bound <= 0.4861
    assert sol.implied_bound == pytest.approx(1 - sol.hop_fraction, abs=1e-12)


def test_solve_trajectory_invariants():
    sol = solve(step=1e-5, richardson=False, record_every=100)
    mass = sol.ys.sum(axis=1)
    assert np.max(np.abs(mass - 1.0)) <= 1e-6
    assert np.max(np.abs(sol.ys[:, 1])) <= 1e-3       # degree-1 mass stays flat
    assert np.all(np.diff(sol.ys[:, 3]) < 0)          # full vertices only vanish
    assert np.all(np.diff(sol.ys[:, 0]) > 0)          # finished vertices only grow
    assert np.all(np.diff(sol.hopped) >= 0)
    assert np.all(sol.ys >= -1e-9)


def test_solve_seed_insensitivity():
    a = solve(step=1e-5, x0=1e-4, richardson=False).x_hat
    b = solve(step=1e-5, x0=1e-2, richardson=False).x_hat
    assert abs(a - b) < 1e-3


def test_solve_richardson_gap():
    sol = solve(step=2e-5, richardson=True)
    assert sol.halfstep_gap is not None
    assert sol.halfstep_gap < 1e-4


def test_solve_interpolate():
    sol = solve(step=1e-5, richardson=False)
    grid = np.linspace(sol.x0, sol.x_hat, 50)
    vals = sol.interpolate(grid)
    assert vals.shape == (50, 5)
    assert vals[0, 0] == pytest.approx(sol.x0, abs=1e-6)
    assert vals[-1, 4] == pytest.approx(sol.hop_fraction, abs=1e-6)


def test_solve_argument_validation():
    with pytest.raises(ValueError):
        solve(step=-1.0)
    with pytest.raises(ValueError):
        solve(x0=0.7)
