"""Data-generating processes and their moment functions."""

import numpy as np
import pytest

from scrambledmm.models import (
    ARMA11,
    Dataset,
    HetIncome,
    MeanVariance,
    ModelError,
    Probit,
    SimulationError,
    SingularDesignError,
    get_model,
)
from scrambledmm.estimators.inference import variance_hac
from scrambledmm.models.income import ESTIMATED

# -- mean-variance ---------------------------------------------------------------------


def test_mean_variance_zero_shocks():
    m = MeanVariance()
    assert m.moments(m.simulate([0.0, 1.0], np.zeros(4))).tolist() == [0.0, 0.0]


def test_mean_variance_two_point_example():
    m = MeanVariance()
    data = m.simulate([2.0, 4.0], [1.0, -1.0])
    assert data.y.tolist() == [4.0, 0.0]
    assert m.moments(data).tolist() == [2.0, 4.0]


def test_mean_variance_shift_scale_identity():
    m = MeanVariance()
    e = np.array([0.5, -1.25, 2.0, 0.75])  # dyadic, so every step is exact
    mu, sigma2 = 1.5, 4.0
    got = m.moments(m.simulate([mu, sigma2], e))
    assert got[0] == mu + 2.0 * e.mean()
    assert got[1] == sigma2 * np.mean((e - e.mean()) ** 2)


def test_mean_variance_rejects_nonpositive_variance():
    with pytest.raises(ModelError):
        MeanVariance().simulate([0.0, 0.0], [1.0])


def test_mean_variance_contributions_average_to_moments():
    m = MeanVariance()
    data = m.generate([0.3, 2.0], 200, seed=1)
    np.testing.assert_allclose(m.contributions(data).mean(axis=0), m.moments(data), rtol=1e-12)


# -- probit ---------------------------------------------------------------------------------


def test_probit_saturates():
    m = Probit()
    x = np.array([-1.0, 0.0, 1.0, 2.0])
    e = np.array([0.3, -0.2, 0.1, -0.4])
    assert m.simulate([10.0, 0.0], e, x=x).y.tolist() == [1.0] * 4
    assert m.simulate([-10.0, 0.0], e, x=x).y.tolist() == [0.0] * 4


def test_probit_ols_example():
    m = Probit()
    data = Dataset(np.array([0.0, 1.0, 1.0, 1.0]), np.array([-1.0, -1.0, 1.0, 1.0]))
    np.testing.assert_allclose(m.moments(data), [0.75, 0.25], rtol=0, atol=1e-15)


def test_probit_constant_covariate_is_singular():
    data = Dataset(np.array([0.0, 1.0, 1.0]), np.ones(3))
    with pytest.raises(SingularDesignError):
        Probit().moments(data)


def test_probit_monotone_in_intercept():
    m = Probit()
    rng = np.random.default_rng(4)
    x, e = rng.standard_normal(500), rng.standard_normal(500)
    prev = m.simulate([-2.0, 0.7], e, x=x).y
    for t1 in np.linspace(-1.9, 2.0, 40):
        cur = m.simulate([t1, 0.7], e, x=x).y
        assert np.all(cur >= prev)
        prev = cur


def test_probit_needs_covariates():
    with pytest.raises(ModelError):
        Probit().simulate([0.0, 0.0], [0.1])


def test_probit_contributions_average_to_moments():
    m = Probit()
    data = m.generate([1.0, 1.0], 300, seed=2)
    np.testing.assert_allclose(m.contributions(data).mean(axis=0), m.moments(data), atol=1e-12)


# -- ARMA(1,1) ------------------------------------------------------------------------------


def test_arma_white_noise_stationary_cov():
    # y_t = e_t, so the pair is perfectly correlated rather than independent
    np.testing.assert_array_equal(ARMA11().stationary_cov([0.0, 0.0, 1.0]), np.ones((2, 2)))
    y, e = ARMA11().stationary_init([0.0, 0.0, 1.0], np.random.default_rng(0).standard_normal((8, 2)))
    np.testing.assert_array_equal(y, e)


def test_arma_gamma0():
    assert ARMA11().gamma0([0.5, 0.5, 1.0]) == pytest.approx(7 / 3, rel=1e-14)


def test_arma_pass_through():
    e = np.random.default_rng(0).standard_normal(50)
    y, _ = ARMA11().simulate_path([0.0, 0.0, 1.0], e)
    np.testing.assert_array_equal(y, e)


def test_arma_hand_recursion():
    e = np.zeros(6)
    e[0] = 1.0
    y, _ = ARMA11().simulate_path([0.5, 0.5, 1.0], e)
    np.testing.assert_allclose(y[:3], [1.0, 1.0, 0.5], rtol=0, atol=1e-15)


def test_arma_rejects_unit_root():
    for rho in (1.0, -1.0, 1.5):
        with pytest.raises(ModelError, match="rho"):
            ARMA11().simulate_path([rho, 0.0, 1.0], np.zeros(5))


def test_stationary_initializer_matches_population_covariance():
    m, theta = ARMA11(), [0.5, 0.5, 1.0]
    N = 10**6
    z = np.random.default_rng(10).standard_normal((N, 2))
    y, e = m.stationary_init(theta, z)
    cov = m.stationary_cov(theta)
    for a, b, target in [(y, y, cov[0, 0]), (y, e, cov[0, 1]), (e, e, cov[1, 1])]:
        prod = a * b
        assert abs(prod.mean() - target) < 4 * prod.std() / np.sqrt(N)


def test_stationary_initializer_against_long_path():
    # oracle: (y_t, e_t) pairs sampled from one long recursion after burn-in
    m, theta = ARMA11(), [0.5, 0.5, 1.0]
    e = np.random.default_rng(11).standard_normal(400_000)
    y, e_kept = m.simulate_path(theta, e, burn_in=1000)
    emp = np.cov(np.vstack([y, e_kept]), bias=True)
    np.testing.assert_allclose(emp, m.stationary_cov(theta), atol=0.05)


def test_block_lag_one_autocovariance():
    m, theta = ARMA11(), [0.5, 0.5, 1.0]
    N = 400_000
    rng = np.random.default_rng(12)
    y1, e1 = m.stationary_init(theta, rng.standard_normal((N, 2)))
    blocks = m.simulate_blocks(theta, y1, e1, rng.standard_normal((N, 4)))
    gamma1 = 0.5 * m.gamma0(theta) + 0.5
    prod = blocks[:, 3] * blocks[:, 4]
    assert abs(prod.mean() - gamma1) < 4 * prod.std() / np.sqrt(N)


def test_white_noise_moments():
    m = ARMA11()
    e = np.random.default_rng(13).standard_normal(10**5)
    mom = m.moments(m.simulate([0.0, 0.0, 1.0], e))
    assert np.all(np.abs(mom[1:5]) < 0.02)
    assert abs(mom[5] - 1.0) < 0.02


def test_constant_blocks_are_singular():
    m = ARMA11()
    blocks = np.tile([0.1, 0.2, 0.3, 0.4, 0.5], (20, 1))
    with pytest.raises(SingularDesignError):
        m.moments(m.blocks_dataset(blocks))


def test_path_and_blocks_agree():
    m, theta = ARMA11(), [0.5, 0.5, 1.0]
    rng = np.random.default_rng(14)
    path = m.generate(theta, 200_000, seed=3)
    N = 200_000
    y1, e1 = m.stationary_init(theta, rng.standard_normal((N, 2)))
    blocks = m.blocks_dataset(m.simulate_blocks(theta, y1, e1, rng.standard_normal((N, 4))))
    a, b = m.moments(path), m.moments(blocks)
    # MC standard error of the difference: HAC for the serially dependent path,
    # i.i.d. for the independent blocks
    var_a = np.diag(variance_hac(m.contributions(path), bandwidth=50)) / path.y.size
    var_b = m.contributions(blocks).var(axis=0) / N
    assert np.all(np.abs(a - b) < 3 * np.sqrt(var_a + var_b))


def test_arma_autocovariances_white_noise():
    m = ARMA11()
    e = np.random.default_rng(15).standard_normal(10**5)
    ac = m.autocovariances(m.simulate([0.0, 0.0, 1.0], e))
    assert abs(ac[0] - 1) < 0.02 and np.all(np.abs(ac[1:]) < 0.02)


def test_arma_burn_in_must_leave_data():
    with pytest.raises(ModelError, match="burn_in"):
        ARMA11().simulate_path([0.5, 0.5, 1.0], np.zeros(10), burn_in=10)


# -- heterogeneous income -----------------------------------------------------------------


def zero_theta():
    return np.zeros(len(ESTIMATED))


def test_income_all_zero_gives_zero_panel():
    m = HetIncome(T=5, T_burn=3)
    data = m.simulate(zero_theta(), np.zeros((4, m.shock_dim)))
    assert data.y.shape == (4, 6)
    assert np.all(data.y == 0.0)


def test_income_initial_value():
    m = HetIncome(T=5, T_burn=0)
    z = np.zeros((1, m.shock_dim))
    z[0, 0] = 2.0
    assert m.simulate(zero_theta(), z).y[0, 0] == 2.0


def test_income_arch_recursion():
    # logit(varphi=0) = 0.5, nu_0 = 1, eps_1 = 2, so sigma2_2 = 1 + 0.5 * 4 = 3
    m = HetIncome(T=5, T_burn=0)
    z = np.zeros((1, m.shock_dim))
    z[0, 3] = 2.0  # e_1
    z[0, 4] = 1.0  # e_2
    y = m.simulate(zero_theta(), z).y[0]
    assert y[1] == 2.0  # y_1 = eps_1
    assert y[2] == pytest.approx(0.5 * 2.0 + np.sqrt(3.0), rel=1e-15)


def test_income_shock_width():
    m = HetIncome()
    assert m.shock_dim == 36
    with pytest.raises(ModelError, match="36"):
        m.simulate(m.default_theta(), np.zeros((3, 35)))


def test_income_overflow_names_individual():
    m = HetIncome(T=5, T_burn=0)
    theta = zero_theta()
    theta[ESTIMATED.index("tau")] = 5.0
    theta[ESTIMATED.index("phi12")] = 6.0
    z = np.zeros((3, m.shock_dim))
    z[2, 0] = 30.0
    with pytest.raises(SimulationError, match="individual 2"):
        m.simulate(theta, z)


def test_income_row_permutation_invariance():
    m = HetIncome()
    theta = m.default_theta()
    z = np.random.default_rng(5).standard_normal((400, m.shock_dim))
    perm = np.random.default_rng(6).permutation(400)
    a, b = m.simulate(theta, z), m.simulate(theta, z[perm])
    np.testing.assert_array_equal(b.y, a.y[perm])
    np.testing.assert_allclose(m.moments(b), m.moments(a), rtol=1e-9, atol=1e-12)


def test_income_moments_are_finite_and_sized():
    m = HetIncome()
    mom = m.moments(m.generate(m.default_theta(), 500, seed=7))
    assert mom.shape == (m.moment_dim,) and np.all(np.isfinite(mom))


def test_income_json_params(tmp_path):
    import json

    m = HetIncome()
    values = m.theta_to_dict(m.default_theta()) | {"phi22": 0.25}
    path = tmp_path / "theta.json"
    path.write_text(json.dumps(values))
    np.testing.assert_array_equal(m.load_params(path), m.default_theta())
    assert m.fixed["phi22"] == 0.25
    with pytest.raises(ModelError, match="missing"):
        HetIncome().load_params({"tau": 0.0})


# -- shared ---------------------------------------------------------------------------------


@pytest.mark.parametrize("name,theta", [
    ("mean_variance", [0.0, 1.0]), ("probit", [1.0, 1.0]), ("arma11", [0.5, 0.5, 1.0]),
])
def test_generate_is_deterministic(name, theta):
    m = get_model(name)
    a, b = m.generate(theta, 100, seed=3), m.generate(theta, 100, seed=3)
    np.testing.assert_array_equal(a.y, b.y)
    np.testing.assert_array_equal(m.moments(a), m.moments(b))


def test_unknown_model():
    with pytest.raises(ModelError, match="unknown model"):
        get_model("garch")


def test_dataset_rejects_nan():
    with pytest.raises(SimulationError):
        Dataset(np.array([1.0, np.nan]))
