"""Gaussian location-scale model matched on the sample mean and variance."""

from __future__ import annotations

import numpy as np

from .base import Dataset, Model, ModelError, gaussian_data_shocks


class MeanVariance(Model):
    """``y_i = mu + sqrt(sigma2) * e_i`` with ``theta = (mu, sigma2)``.

    Moments are ``(mean(y), mean((y - mean(y))**2))``; the variance uses the
    ``1/n`` divisor.

    Examples
    --------
    >>> m = MeanVariance()
    >>> m.moments(m.simulate([2.0, 4.0], [1.0, -1.0])).tolist()
    [2.0, 4.0]
    """

    name = "mean_variance"
    param_names = ("mu", "sigma2")
    moment_names = ("mean", "variance")
    lower = np.array([-50.0, 1e-8])
    upper = np.array([50.0, 1e4])
    default_start = (0.0, 1.0)

    def simulate(self, theta, shocks, x=None) -> Dataset:
        mu, sigma2 = (float(v) for v in theta)
        if not sigma2 > 0:
            raise ModelError(f"sigma2 must be positive, got {sigma2}")
        e = np.asarray(shocks, dtype=np.float64).reshape(-1)
        return Dataset(mu + np.sqrt(sigma2) * e, meta={"n": e.size})

    def moments(self, data: Dataset) -> np.ndarray:
        y = data.y
        m = y.mean()
        return np.array([m, np.mean((y - m) ** 2)])

    def contributions(self, data: Dataset) -> np.ndarray:
        y = data.y
        return np.column_stack([y, (y - y.mean()) ** 2])

    def analytic_estimate(self, data: Dataset) -> np.ndarray:
        """Method-of-moments estimate without simulation: ``(mean, variance)``."""
        return self.moments(data)

    def generate(self, theta, n: int, seed: int) -> Dataset:
        return self.simulate(theta, gaussian_data_shocks(seed, n, 1))
