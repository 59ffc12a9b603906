"""Jacobians, sandwich standard errors and moment-variance estimators."""

from __future__ import annotations

import math

import numpy as np


class InferenceError(ValueError):
    """Invalid input for a variance or standard-error computation."""


def fd_steps(theta, rel: float = 1e-5) -> np.ndarray:
    """Default central-difference steps ``rel * max(1, |theta_j|)``."""
    return rel * np.maximum(1.0, np.abs(np.asarray(theta, dtype=np.float64)))


def jacobian_fd(fn, theta, step=None) -> np.ndarray:
    """Central-difference Jacobian of the moment map ``fn`` at ``theta``.

    Parameters
    ----------
    fn : callable
        ``theta -> q``-vector, evaluated with fixed simulation shocks.
    theta : array_like
    step : float or array_like, optional
        Per-coordinate steps; defaults to :func:`fd_steps`.

    Returns
    -------
    ndarray, shape (q, p)
    """
    theta = np.asarray(theta, dtype=np.float64)
    h = fd_steps(theta) if step is None else np.broadcast_to(
        np.asarray(step, dtype=np.float64), theta.shape
    )
    if np.any(h <= 0):
        raise InferenceError("finite-difference step must be positive")
    cols = []
    for j in range(theta.size):
        e = np.zeros_like(theta)
        e[j] = h[j]
        up, down = np.asarray(fn(theta + e)), np.asarray(fn(theta - e))
        if not (np.all(np.isfinite(up)) and np.all(np.isfinite(down))):
            raise InferenceError(f"non-finite moments when perturbing coordinate {j}")
        cols.append((up - down) / (2 * h[j]))
    return np.column_stack(cols)


def sandwich_cov(G, W, V) -> np.ndarray:
    """``(G'WG)^-1 G'WVWG (G'WG)^-1``."""
    G = np.atleast_2d(np.asarray(G, dtype=np.float64))
    W = np.atleast_2d(np.asarray(W, dtype=np.float64))
    V = np.atleast_2d(np.asarray(V, dtype=np.float64))
    if np.linalg.matrix_rank(G) < G.shape[1]:
        raise InferenceError("Jacobian G is rank deficient")
    A = G.T @ W @ G
    try:
        Ainv = np.linalg.inv(A)
    except np.linalg.LinAlgError:
        raise InferenceError("G'WG is singular") from None
    B = G.T @ W @ V @ W @ G
    S = Ainv @ B @ Ainv
    return 0.5 * (S + S.T)


def sandwich_se(G, W, V, n: int) -> np.ndarray:
    """Standard errors ``sqrt(diag(Sigma) / n)``.

    Examples
    --------
    >>> sandwich_se(np.eye(2), np.eye(2), np.eye(2), 100).tolist()
    [0.1, 0.1]
    """
    S = sandwich_cov(G, W, V)
    return np.sqrt(np.maximum(np.diag(S), 0.0) / n)


def variance_pooled(data_contrib, sim_contrib=None) -> np.ndarray:
    """Cross-sectional covariance of ``data_i - mean_s sim_i^s``.

    Parameters
    ----------
    data_contrib : ndarray, shape (n, q)
        Per-observation moment contributions of the data.
    sim_contrib : ndarray, shape (n, q), optional
        Simulated contributions already averaged over the ``S`` samples.
        Omit it for scrambled simulations, whose noise is negligible.

    Notes
    -----
    Averaging over samples before taking the variance keeps the estimator
    consistent for antithetic draws, where the per-sample terms are
    dependent.
    """
    D = np.asarray(data_contrib, dtype=np.float64)
    D = D[:, None] if D.ndim == 1 else D
    if sim_contrib is not None:
        M = np.asarray(sim_contrib, dtype=np.float64)
        M = M[:, None] if M.ndim == 1 else M
        if M.shape != D.shape:
            raise InferenceError(f"shape mismatch {D.shape} vs {M.shape}")
        D = D - M
    if D.shape[0] < 2:
        raise InferenceError("need at least 2 observations")
    return np.atleast_2d(np.cov(D, rowvar=False, ddof=1))


def default_bandwidth(T: int) -> int:
    return int(math.floor(4 * (T / 100) ** (2 / 9)))


def variance_hac(series, bandwidth=None) -> np.ndarray:
    """Bartlett-kernel long-run variance of a ``(T, q)`` series.

    ``Gamma_0 + sum_{k=1..B} (1 - k / (B + 1)) (Gamma_k + Gamma_k')`` with
    autocovariances normalised by ``T``.
    """
    X = np.asarray(series, dtype=np.float64)
    X = X[:, None] if X.ndim == 1 else X
    T = X.shape[0]
    B = default_bandwidth(T) if bandwidth is None else int(bandwidth)
    if B < 0:
        raise InferenceError("bandwidth must be non-negative")
    if B >= T:
        raise InferenceError(f"bandwidth {B} must be smaller than the series length {T}")
    Xc = X - X.mean(axis=0)
    V = Xc.T @ Xc / T
    for k in range(1, B + 1):
        G = Xc[k:].T @ Xc[:-k] / T
        V += (1 - k / (B + 1)) * (G + G.T)
    return V
