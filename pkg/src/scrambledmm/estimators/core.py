"""Moment-matching estimation: the static and dynamic algorithms, indirect
inference and their standard errors.

Every call to :func:`estimate` draws the simulation shocks once and keeps them
fixed, so the objective is a deterministic function of ``theta`` (common
random numbers).  The :class:`Simulator` holds those shocks and maps
``theta`` to simulated moments for one algorithm.

Simulated moments by algorithm:

========================  ==================================================
StaticSMM                 average over ``s`` of the moments of sample ``s``
StaticScrambledPooled     moments of one scrambled sample of size ``n * S``
StaticScrambledPerSample  average over ``S`` independently scrambled samples
DynamicSMM                average over ``S`` paths of length ``T`` (burn-in)
DynamicQmcOnly            ``T * S`` stationary blocks, scrambled shocks
DynamicHybrid             MC path for block starts, scrambled continuation
========================  ==================================================
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .._hashing import counter_words, derive_key
from ..models.base import Dataset, Model, ModelError, SimulationError
from ..samplers import RANDOMIZED_QMC, DrawSpec, Layout, Method, make_gaussian
from .inference import (
    InferenceError,
    fd_steps,
    jacobian_fd,
    sandwich_se,
    variance_hac,
    variance_pooled,
)
from .optimize import nelder_mead, nelder_mead_restarts


class EstimationError(ValueError):
    """Base class for estimation failures."""


class ConfigError(EstimationError):
    """Inconsistent estimation configuration."""


class WeightingError(EstimationError):
    """Weighting matrix is not symmetric positive semi-definite."""


class AuxiliaryError(EstimationError):
    """The auxiliary estimator failed."""


class Algorithm(str, enum.Enum):
    STATIC_SMM = "StaticSMM"
    STATIC_SCRAMBLED_POOLED = "StaticScrambledPooled"
    STATIC_SCRAMBLED_PER_SAMPLE = "StaticScrambledPerSample"
    DYNAMIC_SMM = "DynamicSMM"
    DYNAMIC_QMC_ONLY = "DynamicQmcOnly"
    DYNAMIC_HYBRID = "DynamicHybrid"
    INDIRECT_INFERENCE = "IndirectInference"


STATIC = (Algorithm.STATIC_SMM, Algorithm.STATIC_SCRAMBLED_POOLED, Algorithm.STATIC_SCRAMBLED_PER_SAMPLE)
DYNAMIC = (Algorithm.DYNAMIC_SMM, Algorithm.DYNAMIC_QMC_ONLY, Algorithm.DYNAMIC_HYBRID)
# algorithms whose simulation noise is of the same order as the data noise
MONTE_CARLO = (Algorithm.STATIC_SMM, Algorithm.DYNAMIC_SMM, Algorithm.DYNAMIC_HYBRID)


@dataclass(frozen=True)
class Weighting:
    """``Identity``, ``Fixed`` (with ``matrix``) or ``TwoStep``."""

    kind: str = "Identity"
    matrix: Optional[np.ndarray] = None

    @classmethod
    def identity(cls):
        return cls("Identity")

    @classmethod
    def fixed(cls, matrix):
        return cls("Fixed", np.asarray(matrix, dtype=np.float64))

    @classmethod
    def two_step(cls):
        return cls("TwoStep")


@dataclass(frozen=True)
class SEMethod:
    """``SandwichPooled``, ``SandwichHAC`` (``bandwidth``), ``RepeatedScramble`` (``R``) or ``None``."""

    kind: str = "None"
    bandwidth: Optional[int] = None
    R: Optional[int] = None

    @classmethod
    def none(cls):
        return cls("None")

    @classmethod
    def pooled(cls):
        return cls("SandwichPooled")

    @classmethod
    def hac(cls, bandwidth=None):
        return cls("SandwichHAC", bandwidth=bandwidth)

    @classmethod
    def repeated_scramble(cls, R: int = 50):
        return cls("RepeatedScramble", R=R)


@dataclass(frozen=True)
class Auxiliary:
    """Auxiliary estimator for indirect inference.

    Parameters
    ----------
    name : str
    fit : callable
        ``Dataset -> psi``.
    contributions : callable, optional
        ``Dataset -> (N, q)`` influence contributions, needed for sandwich
        standard errors.
    """

    name: str
    fit: Callable[[Dataset], np.ndarray]
    contributions: Optional[Callable[[Dataset], np.ndarray]] = None

    @classmethod
    def from_model(cls, model: Model):
        """The model's own moment vector as an auxiliary statistic."""
        return cls(f"{model.name}_moments", model.moments, model.contributions)

    @classmethod
    def from_criterion(cls, name: str, criterion, start, tol: float = 1e-10, max_iter: int = 5000):
        """Auxiliary M-estimator ``argmin_psi criterion(psi, data)`` via Nelder-Mead."""

        def fit(data):
            res = nelder_mead(lambda psi: criterion(psi, data), start, tol=tol, max_iter=max_iter)
            if not res.converged:
                raise AuxiliaryError(f"auxiliary {name!r}: inner minimiser did not converge")
            return res.x

        return cls(name, fit)


@dataclass(frozen=True)
class EstimationConfig:
    """Everything needed to run one estimation.

    ``draw_spec`` supplies the method, ``S``, layout and seed; its ``n`` and
    ``d`` are filled in from the data and the model.
    """

    model: Model
    draw_spec: DrawSpec
    algorithm: Algorithm = Algorithm.STATIC_SMM
    weighting: Weighting = field(default_factory=Weighting.identity)
    start: Optional[tuple] = None
    tol: float = 1e-8
    xtol: float = 1e-8
    max_iter: int = 2000
    se_method: SEMethod = field(default_factory=SEMethod.none)
    fd_step: Optional[float] = None
    burn_in: int = 200
    shuffle_covariates: bool = False
    auxiliary: Optional[Auxiliary] = None
    restarts: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))

    @property
    def n_restarts(self) -> int:
        """Simplex restarts; by default 10 for non-smooth moments and none otherwise."""
        if self.restarts is not None:
            return int(self.restarts)
        return 0 if self.model.smooth else 10


@dataclass
class EstimationResult:
    theta_hat: np.ndarray
    objective_value: float
    moment_gap: np.ndarray
    iterations: int
    converged: bool
    n_evals: int
    param_names: tuple
    algorithm: str
    weighting: np.ndarray
    std_errors: Optional[np.ndarray] = None
    jacobian: Optional[np.ndarray] = None
    variance: Optional[np.ndarray] = None
    message: str = ""
    runtime_ms: float = 0.0

    def to_dict(self) -> dict:
        def arr(a):
            return None if a is None else np.asarray(a).tolist()

        return {
            "algorithm": self.algorithm,
            "theta": dict(zip(self.param_names, map(float, self.theta_hat))),
            "std_errors": None if self.std_errors is None
            else dict(zip(self.param_names, map(float, self.std_errors))),
            "objective_value": float(self.objective_value),
            "moment_gap": arr(self.moment_gap),
            "jacobian": arr(self.jacobian),
            "iterations": int(self.iterations),
            "n_evals": int(self.n_evals),
            "converged": bool(self.converged),
            "message": self.message,
            "runtime_ms": float(self.runtime_ms),
        }

    def to_json(self, path=None, **kwargs) -> str:
        text = json.dumps(self.to_dict(), indent=2, **kwargs)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text + "\n")
        return text


# -- configuration checks ----------------------------------------------------


def _layout(config: EstimationConfig) -> Algorithm:
    """The simulation scheme used, resolving indirect inference to a static one."""
    if config.algorithm is not Algorithm.INDIRECT_INFERENCE:
        return config.algorithm
    spec = config.draw_spec
    if config.model.dynamic:
        raise ConfigError(
            "for dynamic models call indirect_inference() with a dynamic algorithm"
        )
    if spec.method not in RANDOMIZED_QMC:
        return Algorithm.STATIC_SMM
    if spec.layout is Layout.POOLED and not config.model.uses_covariates:
        return Algorithm.STATIC_SCRAMBLED_POOLED
    return Algorithm.STATIC_SCRAMBLED_PER_SAMPLE


def validate_config(config: EstimationConfig) -> None:
    """Raise :class:`ConfigError` for algorithm/model/draw incompatibilities."""
    model, spec = config.model, config.draw_spec
    if config.restarts is not None and int(config.restarts) < 0:
        raise ConfigError(f"restarts must be >= 0, got {config.restarts}")
    if config.algorithm is Algorithm.INDIRECT_INFERENCE and config.auxiliary is None:
        raise ConfigError("IndirectInference needs an auxiliary estimator")
    algo = _layout(config)
    mc = spec.method in (Method.PSEUDO_RANDOM, Method.ANTITHETIC)
    if algo in (Algorithm.STATIC_SMM, Algorithm.DYNAMIC_SMM) and not mc:
        raise ConfigError(f"{algo.value} needs PseudoRandom or Antithetic draws")
    if algo in (Algorithm.STATIC_SCRAMBLED_POOLED, Algorithm.STATIC_SCRAMBLED_PER_SAMPLE,
                Algorithm.DYNAMIC_QMC_ONLY, Algorithm.DYNAMIC_HYBRID) and mc:
        raise ConfigError(f"{algo.value} needs ScrambledSobol or DigitalShiftedSobol draws")
    if algo is Algorithm.STATIC_SCRAMBLED_POOLED:
        if spec.layout is not Layout.POOLED:
            raise ConfigError("StaticScrambledPooled needs the Pooled layout")
        if model.uses_covariates:
            raise ConfigError(
                "StaticScrambledPooled is for models without covariates; use StaticScrambledPerSample"
            )
    if algo is Algorithm.STATIC_SCRAMBLED_PER_SAMPLE and spec.layout is not Layout.PER_SAMPLE:
        raise ConfigError("StaticScrambledPerSample needs the PerSample layout")
    if algo in STATIC and model.dynamic:
        raise ConfigError(f"{algo.value} is a static algorithm but {model.name} is dynamic")
    if algo in DYNAMIC and not model.dynamic:
        raise ConfigError(f"{algo.value} needs a dynamic model, got {model.name}")
    if algo is Algorithm.DYNAMIC_QMC_ONLY and not model.has_stationary_init:
        raise ConfigError(f"{model.name} has no stationary initializer for DynamicQmcOnly")
    if algo in (Algorithm.DYNAMIC_SMM, Algorithm.DYNAMIC_HYBRID) and config.burn_in < 0:
        raise ConfigError("burn_in must be non-negative")
    se = config.se_method.kind
    if se not in ("None", "SandwichPooled", "SandwichHAC", "RepeatedScramble"):
        raise ConfigError(f"unknown se_method {se!r}")
    if se == "SandwichPooled" and algo in DYNAMIC:
        raise ConfigError("use SandwichHAC for dynamic models")
    if se == "SandwichHAC" and algo in STATIC:
        raise ConfigError("SandwichHAC is for dynamic models; use SandwichPooled")
    if se == "RepeatedScramble":
        if spec.method not in RANDOMIZED_QMC:
            raise ConfigError("RepeatedScramble needs a randomised QMC method")
        if config.se_method.R is None or config.se_method.R < 2:
            raise ConfigError("RepeatedScramble needs R >= 2")
    if config.weighting.kind not in ("Identity", "Fixed", "TwoStep"):
        raise ConfigError(f"unknown weighting {config.weighting.kind!r}")
    if config.weighting.kind == "Fixed":
        check_weighting(config.weighting.matrix, model.moment_dim if config.auxiliary is None else None)
    if config.start is not None and len(config.start) != model.theta_dim:
        raise ConfigError(f"start has {len(config.start)} entries, model has {model.theta_dim}")


def check_weighting(W, q: Optional[int] = None) -> np.ndarray:
    """Return ``W`` as a float matrix after checking symmetry and PSD-ness."""
    if W is None:
        raise WeightingError("Fixed weighting needs a matrix")
    W = np.atleast_2d(np.asarray(W, dtype=np.float64))
    if W.shape[0] != W.shape[1] or (q is not None and W.shape[0] != q):
        raise WeightingError(f"weighting matrix has shape {W.shape}, expected ({q}, {q})")
    if not np.allclose(W, W.T, rtol=1e-10, atol=1e-12):
        raise WeightingError("weighting matrix is not symmetric")
    eig = np.linalg.eigvalsh(0.5 * (W + W.T))
    if eig.min() < -1e-10 * max(1.0, abs(eig).max()):
        raise WeightingError("weighting matrix is not positive semi-definite")
    return W


# -- simulation --------------------------------------------------------------


def _sub_spec(spec: DrawSpec, **kw) -> DrawSpec:
    return replace(spec, **kw)


def _mc_seed(spec: DrawSpec, replicate: Optional[int], label: str) -> int:
    return derive_key(spec.seed, label) if replicate is None else derive_key(spec.seed, label, "replicate", replicate)


class Simulator:
    """Fixed simulation shocks plus the map ``theta -> simulated moments``.

    Parameters
    ----------
    config : EstimationConfig
    data : Dataset
        Observed data; fixes ``n`` (or ``T``) and the covariates.
    replicate : int, optional
        Re-randomise the scrambled shocks under this replicate index; MC
        components are redrawn from a replicate-specific seed.
    fit : callable, optional
        Moment map applied to simulated datasets (defaults to the model's).
    """

    def __init__(self, config: EstimationConfig, data: Dataset, replicate=None, fit=None):
        self.config = config
        self.model = model = config.model
        self.fit = fit or model.moments
        self.algorithm = algo = _layout(config)
        spec = config.draw_spec
        S = spec.S
        if algo in STATIC:
            n = data.n
            if algo is Algorithm.STATIC_SMM and replicate is not None:
                spec = spec.with_seed(_mc_seed(spec, replicate, "mc"))
                replicate = None
            shocks = make_gaussian(
                _sub_spec(spec, n=n, d=model.shock_dim), replicate=replicate
            ).values
            self.shocks = shocks
            self.n, self.S = n, S
            if model.uses_covariates:
                x = data.x
                if x is None:
                    raise ConfigError(f"{model.name} needs covariates in the data")
                xs = []
                for s in range(S):
                    if config.shuffle_covariates:
                        perm = np.argsort(counter_words(derive_key(spec.seed, "shuffle", s), n), kind="stable")
                        xs.append(x[perm])
                    else:
                        xs.append(x)
                self.x = xs
            else:
                self.x = [None] * S
        else:
            T = data.n
            self.T, self.S = T, S
            if algo is Algorithm.DYNAMIC_SMM:
                if replicate is not None:
                    spec = spec.with_seed(_mc_seed(spec, replicate, "mc"))
                self.e = make_gaussian(_sub_spec(spec, n=T + config.burn_in, d=1)).values
            elif algo is Algorithm.DYNAMIC_QMC_ONLY:
                d = 2 + model.block_len - 1
                self.z = make_gaussian(_sub_spec(spec, n=T, d=d), replicate=replicate).values
            else:
                mc = DrawSpec(Method.PSEUDO_RANDOM, T * S + config.burn_in, 1, 1,
                              seed=_mc_seed(spec, replicate, "mc"))
                self.e_mc = make_gaussian(mc).values[:, 0]
                self.z = make_gaussian(
                    _sub_spec(spec, n=T, d=model.block_len - 1), replicate=replicate
                ).values

    # datasets simulated at theta, one per averaged sample
    def datasets(self, theta) -> list[Dataset]:
        model, algo = self.model, self.algorithm
        if algo is Algorithm.STATIC_SCRAMBLED_POOLED:
            return [model.simulate(theta, self.shocks)]
        if algo in STATIC:
            n = self.n
            return [
                model.simulate(theta, self.shocks[s * n:(s + 1) * n], self.x[s])
                for s in range(self.S)
            ]
        if algo is Algorithm.DYNAMIC_SMM:
            Tb = self.T + self.config.burn_in
            out = []
            for s in range(self.S):
                y, _ = model.simulate_path(
                    theta, self.e[s * Tb:(s + 1) * Tb, 0], burn_in=self.config.burn_in
                )
                out.append(Dataset(y, meta={"kind": "path", "T": y.size}))
            return out
        if algo is Algorithm.DYNAMIC_QMC_ONLY:
            y1, e1 = model.stationary_init(theta, self.z[:, :2])
            blocks = model.simulate_blocks(theta, y1, e1, self.z[:, 2:])
        else:
            y1, e1 = model.simulate_path(theta, self.e_mc, burn_in=self.config.burn_in)
            blocks = model.simulate_blocks(theta, y1, e1, self.z)
        return [model.blocks_dataset(blocks)]

    def moments(self, theta) -> np.ndarray:
        sims = self.datasets(theta)
        if len(sims) == 1:
            return np.asarray(self.fit(sims[0]), dtype=np.float64)
        return np.mean([self.fit(d) for d in sims], axis=0)

    def contributions(self, theta, contrib=None) -> np.ndarray:
        """Simulated contributions averaged over samples (static) or as a series (dynamic)."""
        contrib = contrib or self.model.contributions
        sims = self.datasets(theta)
        if self.algorithm is Algorithm.STATIC_SCRAMBLED_POOLED:
            c = contrib(sims[0])
            return c.reshape(self.S, self.n, -1).mean(axis=0)
        return np.mean([contrib(d) for d in sims], axis=0)


# -- objective ---------------------------------------------------------------

_RECOVERABLE = (SimulationError, ModelError, FloatingPointError, np.linalg.LinAlgError, AuxiliaryError)


def objective(theta, sample_moments, simulator: Simulator, W) -> float:
    """Weighted distance ``g' W g`` with ``g = sample_moments - simulated moments``.

    Returns ``inf`` outside the model's parameter box or when the
    simulation breaks down at ``theta``.

    Raises
    ------
    WeightingError
        If ``W`` is not symmetric positive semi-definite.
    """
    W = check_weighting(W)
    return _Objective(np.asarray(sample_moments, dtype=np.float64), simulator, W)(theta)


class _Objective:
    def __init__(self, psi, simulator, W):
        self.psi, self.sim, self.W = psi, simulator, W
        self.calls = 0

    def gap(self, theta):
        return self.psi - self.sim.moments(theta)

    def __call__(self, theta) -> float:
        self.calls += 1
        theta = np.asarray(theta, dtype=np.float64)
        if not self.sim.model.in_bounds(theta):
            return np.inf
        try:
            g = self.gap(theta)
        except _RECOVERABLE:
            return np.inf
        val = float(g @ self.W @ g)
        return val if np.isfinite(val) else np.inf


# -- estimation --------------------------------------------------------------


def n_obs(config: EstimationConfig, data: Dataset) -> int:
    """Sample size that scales variances: ``n`` for static data, ``T - L`` for paths."""
    if config.model.dynamic:
        return data.n - config.model.lags
    return data.n


def _data_variance(config, data, algo, contrib, simulator=None, theta=None, bandwidth=None):
    dc = contrib(data)
    if algo in DYNAMIC:
        V = variance_hac(dc, bandwidth)
        if algo in MONTE_CARLO and simulator is not None:
            sc = simulator.contributions(theta, contrib)
            bw = None if bandwidth is None else min(int(bandwidth), sc.shape[0] - 1)
            # long-run variance of the simulated mean, in units of the data sample size
            V = V + variance_hac(sc, bw) * (dc.shape[0] / sc.shape[0])
        return V
    sc = simulator.contributions(theta, contrib) if (algo in MONTE_CARLO and simulator is not None) else None
    return variance_pooled(dc, sc)


def _contrib_fn(config, aux):
    if aux is None:
        return config.model.contributions
    if aux.contributions is None:
        raise ConfigError(f"auxiliary {aux.name!r} has no contributions; standard errors unavailable")
    return aux.contributions


def _minimize(obj, start, config: EstimationConfig):
    kw = dict(tol=config.tol, max_iter=config.max_iter, xtol=config.xtol)
    if config.n_restarts:
        return nelder_mead_restarts(obj, start, config.n_restarts, **kw)
    return nelder_mead(obj, start, **kw)


def _run(config: EstimationConfig, data: Dataset, aux: Optional[Auxiliary]) -> EstimationResult:
    t0 = time.perf_counter()
    validate_config(config)
    model = config.model
    fit = model.moments if aux is None else aux.fit
    try:
        psi = np.asarray(fit(data), dtype=np.float64)
    except Exception as exc:
        if aux is not None:
            raise AuxiliaryError(f"auxiliary {aux.name!r} failed on the data: {exc}") from exc
        raise
    q = psi.size
    if q < model.theta_dim:
        raise ConfigError(f"{q} moments cannot identify {model.theta_dim} parameters")
    simulator = Simulator(config, data, fit=fit)
    algo = simulator.algorithm
    start = np.asarray(config.start if config.start is not None else model.default_start, dtype=np.float64)
    if start.size != model.theta_dim:
        raise ConfigError(f"{model.name} needs a start point with {model.theta_dim} entries")

    if config.weighting.kind == "Fixed":
        W = check_weighting(config.weighting.matrix, q)
    else:
        W = np.eye(q)
    obj = _Objective(psi, simulator, W)
    res = _minimize(obj, start, config)
    iterations, converged, message = res.nit, res.converged, res.message
    if config.weighting.kind == "TwoStep":
        contrib = _contrib_fn(config, aux)
        V = _data_variance(config, data, algo, contrib, simulator, res.x)
        try:
            W = check_weighting(np.linalg.inv(V), q)
        except np.linalg.LinAlgError:
            raise WeightingError("first-stage variance is singular") from None
        W = 0.5 * (W + W.T)
        obj = _Objective(psi, simulator, W)
        res = _minimize(obj, res.x, config)
        iterations += res.nit
        converged, message = converged and res.converged, res.message
    theta_hat = res.x
    gap = obj.gap(theta_hat) if np.isfinite(res.fun) else np.full(q, np.nan)

    se = G = V = None
    kind = config.se_method.kind
    if kind != "None":
        contrib = _contrib_fn(config, aux)
        step = None
        if config.fd_step is not None:
            step = fd_steps(theta_hat, config.fd_step)
        elif not model.smooth:
            step = fd_steps(theta_hat, 0.05)
        G = jacobian_fd(simulator.moments, theta_hat, step)
        N = n_obs(config, data)
        if kind == "RepeatedScramble":
            V = _data_variance(config, data, algo, contrib, None, theta_hat, config.se_method.bandwidth)
            V = V + variance_repeated_scramble(config, data, theta_hat, config.se_method.R, fit=fit)
        else:
            V = _data_variance(config, data, algo, contrib, simulator, theta_hat, config.se_method.bandwidth)
        se = sandwich_se(G, W, V, N)
    return EstimationResult(
        theta_hat=theta_hat,
        objective_value=float(res.fun),
        moment_gap=gap,
        iterations=iterations,
        converged=converged,
        n_evals=obj.calls,
        param_names=model.param_names,
        algorithm=config.algorithm.value,
        weighting=W,
        std_errors=se,
        jacobian=G,
        variance=V,
        message=message,
        runtime_ms=1000 * (time.perf_counter() - t0),
    )


def estimate(config: EstimationConfig, dataset: Dataset) -> EstimationResult:
    """Run the configured algorithm on ``dataset``.

    Optimiser non-convergence is reported through ``converged=False``
    rather than raised.
    """
    return _run(config, dataset, config.auxiliary if config.algorithm is Algorithm.INDIRECT_INFERENCE else None)


def indirect_inference(config: EstimationConfig, dataset: Dataset, auxiliary: Auxiliary) -> EstimationResult:
    """Match ``auxiliary.fit`` on the data to its value on simulated data.

    ``config.algorithm`` selects how the simulated data are produced; it may
    be any of the static or dynamic algorithms.
    """
    if config.algorithm is Algorithm.INDIRECT_INFERENCE:
        config = replace(config, auxiliary=auxiliary)
    return _run(config, dataset, auxiliary)


def variance_repeated_scramble(
    config: EstimationConfig, dataset: Dataset, theta_hat, R: int, replicate_ids=None, fit=None
) -> np.ndarray:
    """``n`` times the covariance of the simulated moments across ``R`` scrambles.

    Parameters
    ----------
    replicate_ids : sequence of int, optional
        Replicate indices (``range(R)`` by default); equal ids reuse the same
        scramble.
    """
    if config.draw_spec.method not in RANDOMIZED_QMC:
        raise ConfigError("repeated scrambling needs ScrambledSobol or DigitalShiftedSobol draws")
    if R < 2:
        raise ConfigError("need R >= 2 replicates")
    ids = list(range(R)) if replicate_ids is None else list(replicate_ids)
    if len(ids) != R:
        raise ConfigError("replicate_ids must have length R")
    vals = np.array([Simulator(config, dataset, replicate=r, fit=fit).moments(theta_hat) for r in ids])
    return n_obs(config, dataset) * np.atleast_2d(np.cov(vals, rowvar=False, ddof=1))


__all__ = [
    "Algorithm", "Auxiliary", "AuxiliaryError", "ConfigError", "EstimationConfig",
    "EstimationError", "EstimationResult", "InferenceError", "SEMethod", "Simulator",
    "Weighting", "WeightingError", "check_weighting", "estimate", "indirect_inference",
    "n_obs", "objective", "validate_config", "variance_repeated_scramble",
]
