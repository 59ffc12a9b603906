"""Binary choice with a Gaussian latent error, matched on OLS coefficients."""

from __future__ import annotations

import numpy as np

from .base import Dataset, Model, ModelError, SingularDesignError, gaussian_data_shocks


class Probit(Model):
    """``y_i = 1{theta1 + theta2 * x_i + e_i >= 0}``.

    The moments are the intercept and slope of the OLS regression of ``y`` on
    ``x``.  They are step functions of ``theta`` under fixed shocks.
    """

    name = "probit"
    param_names = ("theta1", "theta2")
    moment_names = ("intercept", "slope")
    lower = np.array([-10.0, -10.0])
    upper = np.array([10.0, 10.0])
    default_start = (0.0, 0.0)
    uses_covariates = True
    smooth = False

    def simulate(self, theta, shocks, x=None) -> Dataset:
        if x is None:
            raise ModelError("probit needs covariates x")
        e = np.asarray(shocks, dtype=np.float64).reshape(-1)
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        if x.size != e.size:
            raise ModelError(f"x has {x.size} entries but there are {e.size} shocks")
        t1, t2 = (float(v) for v in theta)
        y = (t1 + t2 * x + e >= 0.0).astype(np.float64)
        return Dataset(y, x, meta={"n": e.size})

    @staticmethod
    def _fit(data: Dataset):
        x, y = data.x, data.y
        xc = x - x.mean()
        sxx = np.dot(xc, xc)
        if sxx <= 1e-14 * max(1.0, np.dot(x, x)):
            raise SingularDesignError("covariate x has zero variance")
        slope = np.dot(xc, y) / sxx
        intercept = y.mean() - slope * x.mean()
        return intercept, slope, xc, sxx / x.size

    def moments(self, data: Dataset) -> np.ndarray:
        intercept, slope, _, _ = self._fit(data)
        return np.array([intercept, slope])

    def contributions(self, data: Dataset) -> np.ndarray:
        # OLS influence functions: beta + (X'X/n)^-1 X_i resid_i
        intercept, slope, xc, vxx = self._fit(data)
        x, y = data.x, data.y
        resid = y - intercept - slope * x
        d_slope = xc * resid / vxx
        d_int = resid - x.mean() * d_slope
        return np.column_stack([intercept + d_int, slope + d_slope])

    def generate(self, theta, n: int, seed: int) -> Dataset:
        z = gaussian_data_shocks(seed, n, 2)
        return self.simulate(theta, z[:, 1], x=z[:, 0])
