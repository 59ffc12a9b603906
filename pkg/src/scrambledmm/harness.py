"""Monte-Carlo replication and integration-rate studies.

A replication study draws ``R`` data sets from a known parameter, estimates
the parameter with every requested (method, S) pair and summarises the
spread and bias of the estimates.  Seeds are derived, never drawn:

* data for replication ``r`` uses ``derive_key(master, "data", r)``;
* simulation shocks use ``derive_key(master, "sim", r, method, S)``.

So the data never depend on the method list, and each table cell can be
rebuilt from the config and master seed alone.  Replications are farmed out
to a process pool, but results are always gathered in replication order,
which makes the output identical for any number of workers.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import os
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

import numpy as np
import scipy

from . import __version__
from ._hashing import derive_key
from .estimators import (
    Algorithm,
    ConfigError,
    EstimationConfig,
    EstimationError,
    OptimizerError,
    Weighting,
    estimate,
    validate_config,
)
from .models import ModelError, SimulationError, get_model
from .samplers import DrawSpec, Layout, Method, make_uniform

CSV_HEADER = ("coef", "method", "S", "sqrt_n_std", "bias_x100", "runtime_ms", "failures")
MAX_FAILURE_RATE = 0.02
DEFAULT_REPS = 500

ANALYTIC = "MM-analytic"
METHODS = (
    ANALYTIC, "SMM", "Antithetic", "ScrambledPooled", "ScrambledPerSample",
    "DynamicQmcOnly", "DynamicHybrid",
)

# (algorithm for static models, algorithm for dynamic models, draw method, layout)
_METHOD_TABLE = {
    "SMM": (Algorithm.STATIC_SMM, Algorithm.DYNAMIC_SMM, Method.PSEUDO_RANDOM, Layout.POOLED),
    "Antithetic": (Algorithm.STATIC_SMM, Algorithm.DYNAMIC_SMM, Method.ANTITHETIC, Layout.POOLED),
    "ScrambledPooled": (Algorithm.STATIC_SCRAMBLED_POOLED, None, Method.SCRAMBLED_SOBOL, Layout.POOLED),
    "ScrambledPerSample": (
        Algorithm.STATIC_SCRAMBLED_PER_SAMPLE, None, Method.SCRAMBLED_SOBOL, Layout.PER_SAMPLE,
    ),
    "DynamicQmcOnly": (None, Algorithm.DYNAMIC_QMC_ONLY, Method.SCRAMBLED_SOBOL, Layout.POOLED),
    "DynamicHybrid": (None, Algorithm.DYNAMIC_HYBRID, Method.SCRAMBLED_SOBOL, Layout.POOLED),
}

# failures that are counted rather than propagated
_REPLICATION_ERRORS = (SimulationError, ModelError, OptimizerError, EstimationError,
                       FloatingPointError, np.linalg.LinAlgError)


def workers_from_env(default: int = 1) -> int:
    """Parallelism degree, overridden by the ``SMM_THREADS`` environment variable."""
    raw = os.environ.get("SMM_THREADS")
    if raw is None or raw.strip() == "":
        return default
    try:
        k = int(raw)
    except ValueError:
        raise ConfigError(f"SMM_THREADS must be an integer, got {raw!r}") from None
    if k < 1:
        raise ConfigError("SMM_THREADS must be >= 1")
    return k


@dataclass
class ExperimentConfig:
    """One replication study.

    Parameters
    ----------
    model : str
        Registry name, see :data:`scrambledmm.models.MODELS`.
    theta : sequence or dict
        True parameter; a dict is keyed by parameter name.
    n : int
        Sample size, or path length ``T`` for dynamic models.
    S : list of int
    methods : list of str
        Any of :data:`METHODS`.  Antithetic rows are skipped for odd ``S``.
    reps : int
        Replications ``R``.
    seed : int
        Master seed.
    output : str, optional
        CSV path; a JSON sidecar is written next to it.
    workers : int
        Process pool size (1 runs in-process).
    weighting : str
        ``"Identity"`` or ``"TwoStep"``.
    model_kwargs : dict
        Passed to the model constructor (e.g. ``{"T": 30}``).
    burn_in : int
        Burn-in for dynamic data and MC paths.
    tol, xtol, max_iter, restarts
        Optimizer settings; every estimate starts from the true value.
        ``restarts=None`` restarts the simplex only for non-smooth models.
    """

    model: str
    theta: object
    n: int
    S: list = field(default_factory=lambda: [1])
    methods: list = field(default_factory=lambda: ["SMM"])
    reps: int = DEFAULT_REPS
    seed: int = 0
    output: Optional[str] = None
    workers: int = 1
    weighting: str = "Identity"
    model_kwargs: dict = field(default_factory=dict)
    burn_in: int = 200
    tol: float = 1e-8
    xtol: float = 1e-8
    max_iter: int = 2000
    restarts: Optional[int] = None

    @classmethod
    def from_dict(cls, values: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(values) - known
        if extra:
            raise ConfigError(f"unknown experiment fields: {sorted(extra)}")
        missing = {"model", "theta", "n"} - set(values)
        if missing:
            raise ConfigError(f"missing experiment fields: {sorted(missing)}")
        return cls(**values)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                values = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
        if not isinstance(values, dict):
            raise ConfigError("experiment config must be a JSON object")
        return cls.from_dict(values)

    def to_dict(self) -> dict:
        out = asdict(self)
        if isinstance(self.theta, np.ndarray):
            out["theta"] = self.theta.tolist()
        return out

    # -- derived pieces ---------------------------------------------------------

    def build_model(self):
        try:
            return get_model(self.model, **self.model_kwargs)
        except TypeError as exc:
            raise ConfigError(f"bad model_kwargs for {self.model}: {exc}") from None

    def true_theta(self, model=None) -> np.ndarray:
        model = model or self.build_model()
        if isinstance(self.theta, dict):
            return model.theta_from_dict(self.theta)
        theta = np.asarray(self.theta, dtype=np.float64).reshape(-1)
        if theta.size != model.theta_dim:
            raise ConfigError(f"{model.name} has {model.theta_dim} parameters, theta has {theta.size}")
        return theta

    def cells(self) -> list:
        """The (method, S) pairs that get a row; analytic rows have ``S = 0``."""
        out = []
        for method in self.methods:
            if method == ANALYTIC:
                out.append((method, 0))
                continue
            for S in self.S:
                if method == "Antithetic" and S % 2:
                    continue
                out.append((method, int(S)))
        return out

    def estimation_config(self, model, method: str, S: int, sim_seed: int, theta) -> EstimationConfig:
        static_algo, dynamic_algo, draw, layout = _METHOD_TABLE[method]
        algo = dynamic_algo if model.dynamic else static_algo
        if algo is None:
            kind = "dynamic" if model.dynamic else "static"
            raise ConfigError(f"method {method} does not apply to the {kind} model {model.name}")
        spec = DrawSpec(draw, self.n, S, 1, layout, sim_seed)
        weighting = {"Identity": Weighting.identity, "TwoStep": Weighting.two_step}.get(self.weighting)
        if weighting is None:
            raise ConfigError(f"weighting must be Identity or TwoStep, got {self.weighting!r}")
        return EstimationConfig(
            model, spec, algo, weighting=weighting(), start=tuple(theta), tol=self.tol,
            xtol=self.xtol, max_iter=self.max_iter, restarts=self.restarts, burn_in=self.burn_in,
        )

    def validate(self):
        """Check everything that can fail before replication 1 runs."""
        if int(self.reps) < 1:
            raise ConfigError("reps must be >= 1")
        if int(self.n) < 2:
            raise ConfigError("n must be >= 2")
        if int(self.workers) < 1:
            raise ConfigError("workers must be >= 1")
        if not self.methods:
            raise ConfigError("no methods requested")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ConfigError(f"unknown methods {unknown}; choose from {list(METHODS)}")
        if any(int(S) < 1 for S in self.S):
            raise ConfigError("every S must be >= 1")
        model = self.build_model()
        theta = self.true_theta(model)
        if not model.in_bounds(theta):
            raise ConfigError("true theta lies outside the parameter box")
        for method, S in self.cells():
            if method == ANALYTIC:
                if not hasattr(model, "analytic_estimate"):
                    raise ConfigError(f"{model.name} has no analytic estimator")
                continue
            validate_config(self.estimation_config(model, method, S, 0, theta))
        if not self.cells():
            raise ConfigError("the method/S grid is empty")
        return model, theta


# -- replications ------------------------------------------------------------------


def _generate(model, theta, n, seed, burn_in):
    if model.dynamic:
        return model.generate(theta, n, seed, burn_in=burn_in)
    return model.generate(theta, n, seed)


def _replicate(args):
    """Run every cell on replication ``r``; returns one record per cell."""
    config, r = args
    model = config.build_model()
    theta = config.true_theta(model)
    data = _generate(model, theta, config.n, derive_key(config.seed, "data", r), config.burn_in)
    out = []
    for method, S in config.cells():
        t0 = time.perf_counter()
        if method == ANALYTIC:
            est = np.asarray(model.analytic_estimate(data), dtype=np.float64)
            out.append((est, True, 1000 * (time.perf_counter() - t0)))
            continue
        ec = config.estimation_config(model, method, S, derive_key(config.seed, "sim", r, method, S), theta)
        try:
            res = estimate(ec, data)
        except _REPLICATION_ERRORS:
            out.append((np.full(model.theta_dim, np.nan), False, 1000 * (time.perf_counter() - t0)))
            continue
        ok = res.converged and bool(np.all(np.isfinite(res.theta_hat)))
        out.append((res.theta_hat, ok, res.runtime_ms))
    return out


@dataclass
class SummaryRow:
    coef: str
    method: str
    S: int
    sqrt_n_std: float
    bias_x100: float
    runtime_ms: float
    failures: int


@dataclass
class SummaryTable:
    """Per-(coefficient, method, S) summary of a replication study.

    ``estimates[(method, S)]`` keeps the raw ``(R, p)`` estimates with NaN
    rows for failed replications, so further statistics (bootstrap, coverage)
    can be computed without rerunning.
    """

    rows: list
    config: ExperimentConfig
    estimates: dict
    converged: dict
    degenerate: bool
    total_runtime_s: float = 0.0

    @property
    def failures(self) -> dict:
        return {cell: int((~ok).sum()) for cell, ok in self.converged.items()}

    @property
    def failure_rate(self) -> float:
        """Worst failure share over all cells."""
        R = self.config.reps
        return max(self.failures.values(), default=0) / R

    def row(self, coef: str, method: str, S: int) -> SummaryRow:
        for row in self.rows:
            if (row.coef, row.method, row.S) == (coef, method, S):
                return row
        raise KeyError((coef, method, S))

    def to_csv(self, path=None, timings: bool = False) -> str:
        """CSV text with the fixed header.

        ``runtime_ms`` is left empty unless ``timings`` is set, since wall
        clock times are the one thing that differs between identical runs.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in self.rows:
            S = "" if row.method == ANALYTIC else row.S
            rt = f"{row.runtime_ms:.3f}" if timings and np.isfinite(row.runtime_ms) else ""
            w.writerow([
                row.coef, row.method, S, _fmt(row.sqrt_n_std), _fmt(row.bias_x100), rt, row.failures,
            ])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text

    def metadata(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "degenerate": self.degenerate,
            "failures": {f"{m}|S={S}": k for (m, S), k in self.failures.items()},
            "failure_rate": self.failure_rate,
            "total_runtime_s": self.total_runtime_s,
            "versions": {
                "scrambledmm": __version__,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "python": platform.python_version(),
            },
        }

    def write(self, path, timings: bool = False) -> str:
        """Write the CSV and its ``.json`` sidecar; returns the sidecar path."""
        self.to_csv(path, timings=timings)
        side = os.path.splitext(str(path))[0] + ".json"
        with open(side, "w") as fh:
            json.dump(self.metadata(), fh, indent=2)
            fh.write("\n")
        return side


def _fmt(x: float) -> str:
    return "nan" if not np.isfinite(x) else f"{x:.6f}"


def summarise(config: ExperimentConfig, model, theta, records) -> SummaryTable:
    cells = config.cells()
    R = len(records)
    estimates, converged, runtimes = {}, {}, {}
    for k, cell in enumerate(cells):
        estimates[cell] = np.array([rec[k][0] for rec in records])
        converged[cell] = np.array([rec[k][1] for rec in records], dtype=bool)
        runtimes[cell] = np.array([rec[k][2] for rec in records])
    degenerate = R == 1
    root_n = np.sqrt(config.n)
    rows = []
    for j, coef in enumerate(model.param_names):
        for cell in cells:
            ok = converged[cell]
            vals = estimates[cell][ok, j]
            if vals.size == 0:
                sd = bias = np.nan
            else:
                sd = 0.0 if vals.size == 1 else float(np.std(vals, ddof=1))
                bias = float(np.mean(vals) - theta[j])
            rt = float(np.mean(runtimes[cell])) if R else np.nan
            rows.append(SummaryRow(coef, cell[0], cell[1], root_n * sd, 100 * bias, rt, int((~ok).sum())))
    return SummaryTable(rows, config, estimates, converged, degenerate)


def run_replication_study(config: ExperimentConfig, progress=None) -> SummaryTable:
    """Run ``config.reps`` replications and summarise them.

    Statistics use converged replications only; failures are counted per
    cell.  The result does not depend on ``config.workers``.

    Parameters
    ----------
    config : ExperimentConfig
    progress : callable, optional
        Called as ``progress(done, total)`` after each replication.

    Raises
    ------
    ConfigError
        Before any work, if a method does not fit the model.
    """
    model, theta = config.validate()
    t0 = time.perf_counter()
    R = int(config.reps)
    jobs = [(config, r) for r in range(R)]
    records = []
    if config.workers == 1 or R == 1:
        for k, job in enumerate(jobs):
            records.append(_replicate(job))
            if progress:
                progress(k + 1, R)
    else:
        with ProcessPoolExecutor(max_workers=int(config.workers)) as pool:
            # map yields in submission order, so aggregation is order-fixed
            for k, rec in enumerate(pool.map(_replicate, jobs, chunksize=max(1, R // (8 * config.workers)))):
                records.append(rec)
                if progress:
                    progress(k + 1, R)
    table = summarise(config, model, theta, records)
    table.total_runtime_s = time.perf_counter() - t0
    return table


# -- presets -------------------------------------------------------------------------

PRESETS = {
    "table1": dict(
        model="mean_variance", theta=[0.0, 1.0], n=100, S=[1, 2, 4, 20],
        methods=[ANALYTIC, "SMM", "Antithetic", "ScrambledPooled"],
    ),
    "table2": dict(
        model="probit", theta=[1.0, 1.0], n=1000, S=[1, 2, 4, 10],
        methods=["SMM", "Antithetic", "ScrambledPerSample"],
    ),
    "table3": dict(
        model="arma11", theta=[0.5, 0.5, 1.0], n=200, S=[1, 2],
        methods=["SMM", "Antithetic", "DynamicQmcOnly", "DynamicHybrid"], weighting="TwoStep",
    ),
    "table4": dict(
        model="het_income", theta=None, n=1000, S=[1, 2, 4],
        methods=["SMM", "Antithetic", "ScrambledPerSample", "ScrambledPooled"],
        model_kwargs={"T": 30, "T_burn": 3}, max_iter=20000, tol=1e-6, xtol=1e-4,
    ),
}


def preset(name: str, **overrides) -> ExperimentConfig:
    """Experiment grid for one of the paper's tables, with overrides applied.

    ``None`` overrides are ignored so CLI flags can be passed straight through.
    """
    try:
        values = dict(PRESETS[name])
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    if values["theta"] is None:
        from .models import INCOME_DEFAULT_THETA

        values["theta"] = dict(INCOME_DEFAULT_THETA)
    return ExperimentConfig.from_dict(values)


# -- integration-rate study -------------------------------------------------------


class Integrand(str, enum.Enum):
    LINEAR = "Linear"
    SQUARE = "Square"
    STEP_AT_HALF = "StepAtHalf"


_INTEGRANDS = {
    Integrand.LINEAR: (lambda u: u, 0.5),
    Integrand.SQUARE: (lambda u: u * u, 1.0 / 3.0),
    Integrand.STEP_AT_HALF: (lambda u: (u < 0.5).astype(np.float64), 0.5),
}


@dataclass
class RateStudy:
    integrand: Integrand
    rows: list  # (method, n, rmse)
    slopes: dict

    def rmse(self, method: str) -> np.ndarray:
        return np.array([r for m, _, r in self.rows if m == method])

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("method", "n", "rmse"))
        for m, n, r in self.rows:
            w.writerow((m, n, f"{r:.17g}"))
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


def loglog_slope(ns, rmse) -> float:
    """Least-squares slope of ``log2 rmse`` on ``log2 n``.

    Zero RMSEs carry no rate information and are dropped; fewer than two
    positive values give NaN.
    """
    ns, rmse = np.asarray(ns, dtype=np.float64), np.asarray(rmse, dtype=np.float64)
    keep = rmse > 0
    if keep.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log2(ns[keep]), np.log2(rmse[keep]), 1)[0])


def run_rate_study(
    integrand,
    methods: Sequence[str] = ("PseudoRandom", "ScrambledSobol"),
    ns: Sequence[int] = tuple(2**m for m in range(4, 13)),
    reps: int = 100,
    seed: int = 0,
) -> RateStudy:
    """RMSE of the equal-weight rule for a one-dimensional integrand.

    Each of ``reps`` randomisations (fresh scramble or fresh MC seed) gives
    one integration error per ``n``.

    Examples
    --------
    >>> st = run_rate_study("StepAtHalf", ["ScrambledSobol"], [16, 32], reps=50)
    >>> float(st.rmse("ScrambledSobol").max())
    0.0
    """
    integrand = Integrand(integrand)
    ns = [int(n) for n in ns]
    if reps < 50:
        raise ConfigError("the rate study needs reps >= 50")
    if any(n < 2 or n & (n - 1) for n in ns):
        raise ConfigError("the n grid must hold powers of 2")
    f, exact = _INTEGRANDS[integrand]
    rows, slopes = [], {}
    for method in methods:
        Method(method)
        if method == "Antithetic":
            raise ConfigError("Antithetic needs S >= 2 and is not part of the rate study")
        rmse = []
        for n in ns:
            err = np.empty(reps)
            for r in range(reps):
                spec = DrawSpec(method, n, 1, 1, seed=derive_key(seed, "rate", method, n, r))
                err[r] = f(make_uniform(spec).values[:, 0]).mean() - exact
            rmse.append(float(np.sqrt(np.mean(err * err))))
            rows.append((method, n, rmse[-1]))
        slopes[method] = loglog_slope(ns, rmse)
    return RateStudy(integrand, rows, slopes)


def print_progress(done: int, total: int, stream=sys.stderr):
    step = max(1, total // 10)
    if done == total or done % step == 0:
        print(f"  {done}/{total} replications", file=stream, flush=True)


__all__ = [
    "ANALYTIC", "CSV_HEADER", "DEFAULT_REPS", "ExperimentConfig", "Integrand", "MAX_FAILURE_RATE",
    "METHODS", "PRESETS", "RateStudy", "SummaryRow", "SummaryTable", "loglog_slope", "preset",
    "print_progress", "run_rate_study", "run_replication_study", "summarise", "workers_from_env",
]
