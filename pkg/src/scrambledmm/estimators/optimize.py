"""Derivative-free minimisation with the Nelder-Mead simplex."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class OptimizerError(ValueError):
    """The objective cannot be minimised from the given start."""


@dataclass(frozen=True)
class OptimizeResult:
    x: np.ndarray
    fun: float
    nit: int
    nfev: int
    converged: bool
    message: str


def initial_simplex(start, step: float = 0.05) -> np.ndarray:
    """Start point plus one vertex per coordinate moved by ``step`` (relative).

    Coordinates equal to zero move by ``step`` in absolute terms.
    """
    x0 = np.asarray(start, dtype=np.float64).reshape(-1)
    sim = np.tile(x0, (x0.size + 1, 1))
    for j in range(x0.size):
        sim[j + 1, j] = x0[j] * (1 + step) if x0[j] != 0 else step
    return sim


def nelder_mead(
    f,
    start,
    tol: float = 1e-8,
    max_iter: int = 2000,
    xtol: float = 1e-8,
    step: float = 0.05,
    alpha: float = 1.0,
    gamma: float = 2.0,
    rho: float = 0.5,
    sigma: float = 0.5,
) -> OptimizeResult:
    """Minimise ``f`` with the Nelder-Mead simplex method.

    Parameters
    ----------
    f : callable
        Objective ``f(x) -> float``; ``inf`` marks infeasible points.
    start : array_like
        Starting point; must give a finite value.
    tol : float
        Stop once the spread of the simplex values falls below ``tol``
        times the spread of the initial simplex values.  The test is
        relative so that scaling ``f`` by a positive constant leaves the
        whole trajectory unchanged.
    xtol : float
        The simplex must also have shrunk: every vertex within
        ``xtol * max(1, |x_best|)`` of the best one, coordinatewise.  Without
        this a simplex straddling a minimum with equal values would stop early.
    max_iter : int
        Iteration cap; hitting it returns ``converged=False``.
    step : float
        Relative size of the initial simplex.
    alpha, gamma, rho, sigma : float
        Reflection, expansion, contraction and shrink coefficients.

    Returns
    -------
    OptimizeResult

    Notes
    -----
    If every vertex of the initial simplex has the same value the objective
    is treated as flat: the start point is returned with ``converged=False``.

    Examples
    --------
    >>> res = nelder_mead(lambda x: (x[0] - 3.0) ** 2, [0.0])
    >>> bool(abs(res.x[0] - 3.0) < 1e-5)
    True
    """
    x0 = np.asarray(start, dtype=np.float64).reshape(-1)
    f0 = float(f(x0))
    if not np.isfinite(f0):
        raise OptimizerError(f"objective is not finite at the start point ({f0})")
    sim = initial_simplex(x0, step)
    fs = np.empty(len(sim))
    fs[0] = f0
    for k in range(1, len(sim)):
        fs[k] = f(sim[k])
    nfev = len(sim)
    finite = fs[np.isfinite(fs)]
    scale = finite.max() - finite.min()
    if scale == 0.0:
        if finite.size == fs.size:
            return OptimizeResult(x0, f0, 0, nfev, False, "objective is flat on the initial simplex")
        scale = max(abs(f0), 1.0)
    threshold = tol * scale

    def done():
        if fs[-1] - fs[0] > threshold:
            return False
        size = np.max(np.abs(sim[1:] - sim[0]), axis=0)
        return bool(np.all(size <= xtol * np.maximum(1.0, np.abs(sim[0]))))

    def order():
        idx = np.argsort(fs, kind="stable")
        return sim[idx], fs[idx]

    sim, fs = order()
    nit = 0
    converged = False
    while nit < max_iter:
        if done():
            converged = True
            break
        nit += 1
        centroid = sim[:-1].mean(axis=0)
        worst = sim[-1]
        xr = centroid + alpha * (centroid - worst)
        fr = f(xr)
        nfev += 1
        if fr < fs[0]:
            xe = centroid + gamma * (xr - centroid)
            fe = f(xe)
            nfev += 1
            if fe < fr:
                sim[-1], fs[-1] = xe, fe
            else:
                sim[-1], fs[-1] = xr, fr
        elif fr < fs[-2]:
            sim[-1], fs[-1] = xr, fr
        else:
            if fr < fs[-1]:
                xc = centroid + rho * (xr - centroid)
                fc = f(xc)
                nfev += 1
                accept = fc <= fr
            else:
                xc = centroid + rho * (worst - centroid)
                fc = f(xc)
                nfev += 1
                accept = fc < fs[-1]
            if accept:
                sim[-1], fs[-1] = xc, fc
            else:
                for k in range(1, len(sim)):
                    sim[k] = sim[0] + sigma * (sim[k] - sim[0])
                    fs[k] = f(sim[k])
                nfev += len(sim) - 1
        sim, fs = order()
    else:
        converged = done()
    message = "converged" if converged else f"iteration cap {max_iter} reached"
    return OptimizeResult(sim[0].copy(), float(fs[0]), nit, nfev, bool(converged), message)


def nelder_mead_restarts(f, start, restarts: int = 10, **kwargs) -> OptimizeResult:
    """Nelder-Mead restarted from its best point until a restart stops improving.

    On piecewise-constant objectives a collapsed simplex often sits on one
    plateau next to a lower one; a fresh simplex around the best point lets
    the search continue.  At most ``restarts`` extra runs are made.

    Returns
    -------
    OptimizeResult
        Best point, with iteration and evaluation counts summed over runs.
        ``converged`` refers to the last run.
    """
    res = nelder_mead(f, start, **kwargs)
    nit, nfev = res.nit, res.nfev
    for _ in range(restarts):
        if not res.converged:
            break
        nxt = nelder_mead(f, res.x, **kwargs)
        nit, nfev = nit + nxt.nit, nfev + nxt.nfev
        if not nxt.fun < res.fun:
            break
        res = nxt
    return OptimizeResult(res.x, res.fun, nit, nfev, res.converged, res.message)
