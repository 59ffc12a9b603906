"""Income process with heterogeneous ARMA(1,1) coefficients and ARCH shocks.

For household ``i`` and period ``t = 1 .. T + T_burn``::

    y_it = delta_i ((1 - omega_i^t) + beta_i (1 - omega_i^(t-1))) + alpha_i beta_i
           + beta_i y_i,t-1 + alpha_i (1 - beta_i) t + eps_it + theta_i eps_i,t-1

with ``y_i0 = exp(tau) eta_i0``, ``eps_i0 = 0`` and::

    nu_i0    = exp(phi11 + phi12 y_i0 + psi11 eta_i1)
    theta_i  = logit(phi21 + phi22 y_i0 + psi21 eta_i1 + psi22 eta_i2) - 1/2
    alpha_i  = phi31 + phi32 y_i0 + psi31 eta_i1
    beta_i   = logit(phi41 + phi42 y_i0 + psi41 eta_i1 + psi42 eta_i2)
    delta_i  = phi51 + phi52 y_i0 + psi51 eta_i1 + psi52 eta_i2
    omega_i  = logit(phi61 + psi62 eta_i2)
    sigma2_i1 = nu_i0,  sigma2_it = nu_i0 + logit(varphi) eps_i,t-1^2

where ``logit(x) = 1 / (1 + exp(-x))`` (the logistic function).  The first
``T_burn`` periods are discarded.

Shock columns: ``0..2`` hold ``eta_i0, eta_i1, eta_i2`` and the rest hold
``e_i1 .. e_i,T+T_burn``.
"""

from __future__ import annotations

import json

import numpy as np
from scipy.special import expit

from .base import Dataset, Model, ModelError, SimulationError, SingularDesignError, gaussian_data_shocks

ESTIMATED = (
    "tau", "phi11", "phi12", "phi21", "phi31", "phi32", "phi41", "phi51", "phi52",
    "phi61", "psi11", "psi22", "psi31", "psi41", "psi42", "psi51", "psi52", "psi62",
    "varphi",
)
FIXED_DEFAULTS = {"phi22": 0.0, "psi21": 0.0, "phi42": 0.0}

# Illustrative parameter point; see the README for how it was chosen.
DEFAULT_THETA = {
    "tau": 0.0, "phi11": -3.0, "phi12": 0.2, "phi21": 0.0, "phi31": 0.02,
    "phi32": 0.01, "phi41": 1.0, "phi51": 0.5, "phi52": 0.8, "phi61": 1.0,
    "psi11": 0.5, "psi22": 0.5, "psi31": 0.01, "psi41": 0.5, "psi42": 0.3,
    "psi51": 0.3, "psi52": 0.2, "psi62": 0.5, "varphi": 0.0,
}

_MOMENTS = (
    "mean_b0", "mean_b1", "mean_b2", "var_b0", "var_b1", "var_b2",
    "cov_b0b1", "cov_b0b2", "cov_b1b2", "mean_s2", "var_s2",
    "skew_resid", "kurt_resid", "acf1_resid", "acf2_resid", "acf3_resid",
    "acf1_resid_sq", "mean_y_first", "var_y_first", "mean_y_mid", "var_y_mid",
    "mean_y_last", "var_y_last", "quintile_stay", "corr_first_last",
    "corr_b0_first", "corr_b1_first", "corr_b2_first",
)


def _corr(a, b):
    a = a - a.mean()
    b = b - b.mean()
    den = np.sqrt(np.dot(a, a) * np.dot(b, b))
    if den == 0:
        raise SingularDesignError("zero variance in a correlation moment")
    return np.dot(a, b) / den


def _acf(r, k):
    # pooled within-individual autocorrelation of the rows of r at lag k
    num = np.sum(r[:, k:] * r[:, :-k])
    den = np.sum(r * r)
    if den == 0:
        raise SingularDesignError("zero residual variance")
    return num / den


class HetIncome(Model):
    """Heterogeneous income process.

    Parameters
    ----------
    T : int
        Observed periods.
    T_burn : int
        Discarded initial periods.
    fixed : dict, optional
        Values of the non-estimated coefficients ``phi22``, ``psi21`` and
        ``phi42`` (all 0 by default).
    """

    name = "het_income"
    param_names = ESTIMATED
    moment_names = _MOMENTS

    def __init__(self, T: int = 30, T_burn: int = 3, fixed: dict | None = None):
        if T < 5:
            raise ModelError("need at least 5 observed periods")
        self.T = T
        self.T_burn = T_burn
        self.fixed = dict(FIXED_DEFAULTS)
        for k, v in (fixed or {}).items():
            if k not in FIXED_DEFAULTS:
                raise ModelError(f"{k} is not a fixed coefficient")
            self.fixed[k] = float(v)
        self.shock_dim = 3 + T + T_burn
        self.default_start = tuple(DEFAULT_THETA[k] for k in ESTIMATED)
        self.lower = np.full(len(ESTIMATED), -6.0)
        self.upper = np.full(len(ESTIMATED), 6.0)
        self.lower[ESTIMATED.index("phi11")] = -10.0
        self.lower[ESTIMATED.index("varphi")] = -10.0

    # -- parameters -----------------------------------------------------------

    def load_params(self, source) -> np.ndarray:
        """Read a JSON object keyed by parameter names.

        Fixed coefficients may be included; they update :attr:`fixed`.
        """
        if isinstance(source, dict):
            values = dict(source)
        else:
            with open(source) as fh:
                values = json.load(fh)
        for k in list(values):
            if k in FIXED_DEFAULTS:
                self.fixed[k] = float(values.pop(k))
        return self.theta_from_dict(values)

    def default_theta(self) -> np.ndarray:
        return self.theta_from_dict(DEFAULT_THETA)

    # -- simulation -----------------------------------------------------------

    def simulate(self, theta, shocks, x=None) -> Dataset:
        p = dict(zip(ESTIMATED, (float(v) for v in theta)))
        p.update(self.fixed)
        z = np.asarray(shocks, dtype=np.float64)
        if z.ndim != 2 or z.shape[1] != self.shock_dim:
            raise ModelError(
                f"shock matrix must have {self.shock_dim} columns, got shape {z.shape}"
            )
        eta0, eta1, eta2 = z[:, 0], z[:, 1], z[:, 2]
        e = z[:, 3:]
        n, periods = e.shape
        with np.errstate(over="ignore", invalid="ignore"):
            y0 = np.exp(p["tau"]) * eta0
            nu0 = np.exp(p["phi11"] + p["phi12"] * y0 + p["psi11"] * eta1)
            th = expit(p["phi21"] + p["phi22"] * y0 + p["psi21"] * eta1 + p["psi22"] * eta2) - 0.5
            alpha = p["phi31"] + p["phi32"] * y0 + p["psi31"] * eta1
            beta = expit(p["phi41"] + p["phi42"] * y0 + p["psi41"] * eta1 + p["psi42"] * eta2)
            delta = p["phi51"] + p["phi52"] * y0 + p["psi51"] * eta1 + p["psi52"] * eta2
            omega = expit(p["phi61"] + p["psi62"] * eta2)
            arch = expit(p["varphi"])
            y = np.empty((n, periods))
            y_prev = y0
            eps_prev = np.zeros(n)
            w_prev = np.ones(n)  # omega^(t-1)
            for t in range(1, periods + 1):
                w = w_prev * omega
                s2 = nu0 + arch * eps_prev * eps_prev
                eps = np.sqrt(s2) * e[:, t - 1]
                y_t = (
                    delta * ((1 - w) + beta * (1 - w_prev))
                    + alpha * beta
                    + beta * y_prev
                    + alpha * (1 - beta) * t
                    + eps
                    + th * eps_prev
                )
                y[:, t - 1] = y_t
                y_prev, eps_prev, w_prev = y_t, eps, w
        bad = ~np.all(np.isfinite(y), axis=1) | ~np.isfinite(y0)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise SimulationError(f"non-finite income path for individual {i}")
        keep = y[:, self.T_burn - 1:] if self.T_burn > 0 else np.column_stack([y0, y])
        # column 0 is the last burn-in period, used only as the first lag
        return Dataset(keep, meta={"kind": "panel", "n": n, "T": self.T})

    def generate(self, theta, n: int, seed: int) -> Dataset:
        return self.simulate(theta, gaussian_data_shocks(seed, n, self.shock_dim))

    # -- moments --------------------------------------------------------------

    def individual_ols(self, data: Dataset):
        """Per-individual OLS of ``y_t`` on ``(1, t, y_{t-1})``.

        Returns
        -------
        coefs : ndarray, shape (n, 3)
        resid : ndarray, shape (n, T)
        """
        panel = data.y
        ylag, ycur = panel[:, :-1], panel[:, 1:]
        n, T = ycur.shape
        t = np.arange(1, T + 1, dtype=np.float64)
        # batched 3x3 normal equations
        s_t, s_tt = t.sum(), np.dot(t, t)
        s_l = ylag.sum(axis=1)
        s_ll = np.einsum("ij,ij->i", ylag, ylag)
        s_tl = ylag @ t
        XtX = np.empty((n, 3, 3))
        XtX[:, 0, 0] = T
        XtX[:, 0, 1] = XtX[:, 1, 0] = s_t
        XtX[:, 0, 2] = XtX[:, 2, 0] = s_l
        XtX[:, 1, 1] = s_tt
        XtX[:, 1, 2] = XtX[:, 2, 1] = s_tl
        XtX[:, 2, 2] = s_ll
        Xty = np.stack([ycur.sum(axis=1), ycur @ t, np.einsum("ij,ij->i", ylag, ycur)], axis=1)
        det = np.linalg.det(XtX)
        scale = T * s_tt * np.maximum(s_ll, 1e-300)
        if np.any(np.abs(det) <= 1e-12 * scale):
            raise SingularDesignError("singular individual regression")
        coefs = np.linalg.solve(XtX, Xty[:, :, None])[:, :, 0]
        resid = ycur - coefs[:, [0]] - coefs[:, [1]] * t[None, :] - coefs[:, [2]] * ylag
        return coefs, resid

    def moments(self, data: Dataset) -> np.ndarray:
        panel = data.y
        obs = panel[:, 1:]
        T = obs.shape[1]
        coefs, resid = self.individual_ols(data)
        cov_b = np.cov(coefs, rowvar=False, bias=True)
        s2 = np.mean(resid**2, axis=1)
        r = resid.ravel()
        sd = r.std()
        if sd == 0:
            raise SingularDesignError("zero residual variance")
        zr = (r - r.mean()) / sd
        rsq = resid**2 - np.mean(resid**2)
        first, mid, last = obs[:, 0], obs[:, T // 2 - 1], obs[:, -1]
        q_first = np.searchsorted(np.quantile(first, [0.2, 0.4, 0.6, 0.8]), first, side="right")
        q_last = np.searchsorted(np.quantile(last, [0.2, 0.4, 0.6, 0.8]), last, side="right")
        out = [
            *coefs.mean(axis=0),
            *np.diag(cov_b),
            cov_b[0, 1], cov_b[0, 2], cov_b[1, 2],
            s2.mean(), s2.var(),
            np.mean(zr**3), np.mean(zr**4),
            _acf(resid, 1), _acf(resid, 2), _acf(resid, 3),
            _acf(rsq, 1),
            first.mean(), first.var(), mid.mean(), mid.var(), last.mean(), last.var(),
            np.mean(q_first == q_last),
            _corr(first, last),
            _corr(coefs[:, 0], first), _corr(coefs[:, 1], first), _corr(coefs[:, 2], first),
        ]
        return np.asarray(out, dtype=np.float64)
