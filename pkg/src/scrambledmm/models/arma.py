"""Gaussian ARMA(1,1) with an exact stationary initializer.

``y_t = rho * y_{t-1} + sigma * (e_t + vartheta * e_{t-1})``, with
``theta = (rho, vartheta, sigma)``.

Two data layouts are produced:

* a *path* ``(T,)``, simulated from fixed ``y_0 = e_0 = 0``;
* *blocks* ``(N, L + 1)``, each row a short stationary stretch whose first
  value comes from the stationary law (or from an MC path) and whose
  remaining values follow the recursion.

Both are summarised by the OLS regression of ``y_t`` on an intercept and
``L = 4`` lags plus the residual variance (6 moments).
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter, lfiltic

from .base import Dataset, Model, ModelError, SingularDesignError, gaussian_data_shocks, ols

LAGS = 4


class ARMA11(Model):
    """ARMA(1,1) model.

    Parameters
    ----------
    lags : int
        Number of lags in the moment regression; blocks have ``lags + 1``
        columns.
    """

    name = "arma11"
    param_names = ("rho", "vartheta", "sigma")
    lower = np.array([-0.99, -0.99, 0.01])
    upper = np.array([0.99, 0.99, 10.0])
    default_start = (0.0, 0.0, 1.0)
    dynamic = True

    def __init__(self, lags: int = LAGS):
        if lags < 1:
            raise ModelError("need at least one lag")
        self.lags = lags
        self.moment_names = ("const",) + tuple(f"lag{k}" for k in range(1, lags + 1)) + (
            "resid_var",
        )

    @property
    def has_stationary_init(self) -> bool:
        return True

    @property
    def block_len(self) -> int:
        return self.lags + 1

    @staticmethod
    def _unpack(theta):
        rho, vt, sigma = (float(v) for v in theta)
        if not abs(rho) < 1:
            raise ModelError(f"stationarity requires |rho| < 1, got rho={rho}")
        return rho, vt, sigma

    # -- stationary law -------------------------------------------------------

    def gamma0(self, theta) -> float:
        rho, vt, sigma = self._unpack(theta)
        return (1 + vt * vt + 2 * rho * vt) * sigma * sigma / (1 - rho * rho)

    def stationary_cov(self, theta) -> np.ndarray:
        """Joint covariance of ``(y_t, e_t)`` under the stationary law.

        ``cov(y_t, e_t) = sigma`` because ``y_{t-1}`` and ``e_{t-1}`` are
        independent of ``e_t``.
        """
        rho, vt, sigma = self._unpack(theta)
        return np.array([[self.gamma0(theta), sigma], [sigma, 1.0]])

    def stationary_init(self, theta, z) -> tuple[np.ndarray, np.ndarray]:
        """Map independent ``(N, 2)`` standard normals to stationary ``(y_t, e_t)``.

        Uses the lower Cholesky factor of :meth:`stationary_cov`, so
        ``y = sqrt(gamma0) * z1`` and ``e`` loads on both columns.
        """
        z = np.asarray(z, dtype=np.float64)
        if z.ndim != 2 or z.shape[1] != 2:
            raise ModelError(f"expected (N, 2) normals, got shape {z.shape}")
        cov = self.stationary_cov(theta)
        g0 = cov[0, 0]
        if not g0 > 0:
            raise ModelError("stationary variance is not positive")
        c = cov[0, 1] / np.sqrt(g0)
        rest = 1.0 - c * c
        if rest < -1e-12:
            raise ModelError("stationary covariance is not positive semi-definite")
        return np.sqrt(g0) * z[:, 0], c * z[:, 0] + np.sqrt(max(rest, 0.0)) * z[:, 1]

    # -- simulation -----------------------------------------------------------

    def simulate_path(self, theta, e, y0: float = 0.0, e0: float = 0.0, burn_in: int = 0):
        """Run the recursion from ``(y0, e0)`` and drop the first ``burn_in`` values.

        Returns
        -------
        y, e : ndarray
            Outcomes and the matching innovations after burn-in.
        """
        rho, vt, sigma = self._unpack(theta)
        e = np.asarray(e, dtype=np.float64).reshape(-1)
        if burn_in < 0 or burn_in >= e.size:
            raise ModelError(f"burn_in={burn_in} leaves no observations from {e.size} shocks")
        b, a = [sigma, sigma * vt], [1.0, -rho]
        zi = lfiltic(b, a, y=[y0], x=[e0])
        y, _ = lfilter(b, a, e, zi=zi)
        return y[burn_in:], e[burn_in:]

    def simulate_blocks(self, theta, y1, e1, e_rest) -> np.ndarray:
        """Continue each initial pair ``(y1, e1)`` with the columns of ``e_rest``.

        ``e_rest`` has shape ``(N, L - 1)``; the result has shape ``(N, L)``.
        """
        rho, vt, sigma = self._unpack(theta)
        e_rest = np.asarray(e_rest, dtype=np.float64)
        if e_rest.ndim != 2 or e_rest.shape[1] < 1:
            raise ModelError("blocks need length L >= 2")
        N, steps = e_rest.shape
        out = np.empty((N, steps + 1))
        out[:, 0] = y1
        e_prev = np.asarray(e1, dtype=np.float64)
        for k in range(steps):
            e_k = e_rest[:, k]
            out[:, k + 1] = rho * out[:, k] + sigma * (e_k + vt * e_prev)
            e_prev = e_k
        return out

    def simulate(self, theta, shocks, x=None) -> Dataset:
        """Path from ``y_0 = e_0 = 0`` driven by the ``(T,)`` or ``(T, 1)`` shocks."""
        y, _ = self.simulate_path(theta, shocks)
        return Dataset(y, meta={"kind": "path", "T": y.size, "L": self.lags})

    def blocks_dataset(self, blocks) -> Dataset:
        blocks = np.asarray(blocks)
        if blocks.ndim != 2 or blocks.shape[1] != self.block_len:
            raise ModelError(f"blocks must have {self.block_len} columns")
        return Dataset(blocks, meta={"kind": "blocks", "N": blocks.shape[0], "L": self.lags})

    def generate(self, theta, n: int, seed: int, burn_in: int = 200) -> Dataset:
        """Observed path of length ``n`` after ``burn_in`` discarded periods."""
        e = gaussian_data_shocks(seed, n + burn_in, 1)[:, 0]
        y, _ = self.simulate_path(theta, e, burn_in=burn_in)
        return Dataset(y, meta={"kind": "path", "T": n, "L": self.lags})

    # -- moments --------------------------------------------------------------

    def _regression(self, data: Dataset):
        y = data.y
        L = self.lags
        if data.meta.get("kind") == "blocks" or y.ndim == 2:
            if y.shape[1] != L + 1:
                raise ModelError(f"blocks must have {L + 1} columns")
            target = y[:, L]
            lagged = [y[:, L - k] for k in range(1, L + 1)]
        else:
            if y.size <= L + 1:
                raise ModelError(f"path of length {y.size} is too short for {L} lags")
            target = y[L:]
            lagged = [y[L - k:y.size - k] for k in range(1, L + 1)]
        X = np.column_stack([np.ones_like(target)] + lagged)
        return X, target

    def moments(self, data: Dataset) -> np.ndarray:
        X, target = self._regression(data)
        beta, resid, _ = ols(X, target)
        return np.append(beta, np.mean(resid**2))

    def contributions(self, data: Dataset) -> np.ndarray:
        """Per-period influence contributions (a time series for HAC)."""
        X, target = self._regression(data)
        beta, resid, Q = ols(X, target)
        infl = beta[None, :] + (X * resid[:, None]) @ Q.T
        return np.column_stack([infl, resid**2])

    def autocovariances(self, data: Dataset) -> np.ndarray:
        """Auxiliary statistics ``cov(y_t, y_{t-k})`` for ``k = 0..L``.

        Computed on the same aligned pairs for paths and blocks.
        """
        X, target = self._regression(data)
        t = target - target.mean()
        out = [np.mean(t * t)]
        for k in range(1, self.lags + 1):
            col = X[:, k]
            out.append(np.mean(t * (col - col.mean())))
        if out[0] <= 0:
            raise SingularDesignError("zero variance in autocovariance auxiliary")
        return np.array(out)
