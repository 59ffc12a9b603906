"""Common contract for the data-generating processes.

A model maps ``(theta, gaussian shocks[, covariates])`` to a :class:`Dataset`
and a dataset to a moment vector.  Simulation is deterministic given its
inputs, so holding the shocks fixed gives common random numbers for free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .._hashing import derive_key
from ..qmc.normal import inv_normal_cdf
from ..samplers import pseudo_uniforms


class ModelError(ValueError):
    """Invalid parameter, shape or configuration for a model."""


class SingularDesignError(ModelError):
    """An OLS design matrix is (numerically) singular."""


class SimulationError(ArithmeticError):
    """A simulated quantity became non-finite."""


@dataclass(frozen=True)
class Dataset:
    """Outcomes with optional covariates.

    Parameters
    ----------
    y : ndarray
        ``(n,)`` cross-section, ``(T,)`` path, ``(N, L+1)`` blocks or
        ``(n, T)`` panel, depending on the model.
    x : ndarray, optional
        Covariates aligned with the rows of ``y``.
    meta : dict
        Shape information such as ``n``, ``T``, ``L`` and ``kind``.
    """

    y: np.ndarray
    x: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        y = np.array(self.y, dtype=np.float64)
        if not np.all(np.isfinite(y)):
            raise SimulationError("dataset contains non-finite outcomes")
        y.setflags(write=False)
        object.__setattr__(self, "y", y)
        if self.x is not None:
            x = np.array(self.x, dtype=np.float64)
            if x.shape[0] != y.shape[0]:
                raise ModelError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
            x.setflags(write=False)
            object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.y.shape[0]

    def to_csv(self, path=None) -> str:
        y = self.y if self.y.ndim > 1 else self.y[:, None]
        cols = [y] if self.x is None else [y, self.x.reshape(len(self.x), -1)]
        table = np.hstack(cols)
        text = "\n".join(",".join(f"{v:.17g}" for v in row) for row in table) + "\n"
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


def gaussian_data_shocks(seed: int, rows: int, d: int) -> np.ndarray:
    """Pseudo-random N(0, 1) shocks for generating an observed dataset."""
    return inv_normal_cdf(pseudo_uniforms(derive_key(seed, "data"), rows, d))


def ols(X: np.ndarray, y: np.ndarray, *, rcond: float = 1e-12):
    """Least squares via the normal equations.

    Returns
    -------
    beta : ndarray
    resid : ndarray
    XtX_inv : ndarray
        Inverse of ``X'X / N``, reused by influence-function contributions.
    """
    N = X.shape[0]
    XtX = X.T @ X / N
    scale = np.sqrt(np.diag(XtX))
    if np.any(scale == 0) or np.linalg.cond(XtX / np.outer(scale, scale)) > 1 / rcond:
        raise SingularDesignError("OLS design matrix is singular")
    XtX_inv = np.linalg.inv(XtX)
    beta = XtX_inv @ (X.T @ y / N)
    return beta, y - X @ beta, XtX_inv


class Model:
    """Base class for the data-generating processes.

    Subclasses set ``name``, ``param_names``, ``lower``/``upper`` (the
    compact box Theta), ``shock_dim`` and ``moment_names`` and implement
    :meth:`simulate` and :meth:`moments`.
    """

    name = "model"
    param_names: tuple[str, ...] = ()
    moment_names: tuple[str, ...] = ()
    lower: np.ndarray
    upper: np.ndarray
    shock_dim = 1
    uses_covariates = False
    dynamic = False
    default_start: tuple[float, ...] = ()
    smooth = True

    @property
    def theta_dim(self) -> int:
        return len(self.param_names)

    @property
    def moment_dim(self) -> int:
        return len(self.moment_names)

    @property
    def has_stationary_init(self) -> bool:
        return False

    def in_bounds(self, theta) -> bool:
        theta = np.asarray(theta, dtype=np.float64)
        return bool(np.all(theta >= self.lower) & np.all(theta <= self.upper))

    def theta_from_dict(self, values: dict) -> np.ndarray:
        missing = [k for k in self.param_names if k not in values]
        if missing:
            raise ModelError(f"{self.name}: missing parameters {missing}")
        extra = sorted(set(values) - set(self.param_names))
        if extra:
            raise ModelError(f"{self.name}: unknown parameters {extra}")
        return np.array([float(values[k]) for k in self.param_names])

    def theta_to_dict(self, theta) -> dict:
        return {k: float(v) for k, v in zip(self.param_names, theta)}

    def simulate(self, theta, shocks, x=None) -> Dataset:
        raise NotImplementedError

    def moments(self, data: Dataset) -> np.ndarray:
        raise NotImplementedError

    def contributions(self, data: Dataset) -> np.ndarray:
        """Per-observation moment contributions whose mean is :meth:`moments`."""
        raise NotImplementedError(f"{self.name} has no per-observation contributions")

    def generate(self, theta, n: int, seed: int) -> Dataset:
        """Draw an observed dataset of size ``n`` at ``theta``."""
        raise NotImplementedError
