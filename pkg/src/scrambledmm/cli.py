"""Command-line entry point: ``scrambledmm <command> [options]``.

Exit status is 0 on success, 1 for usage or configuration errors and 2 for
numerical failures (simulation overflow, singular designs, a replication
preset with too many failed estimates).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .estimators import (
    AuxiliaryError,
    ConfigError,
    EstimationConfig,
    InferenceError,
    OptimizerError,
    SEMethod,
    Weighting,
    WeightingError,
    estimate,
)
from .harness import (
    MAX_FAILURE_RATE,
    PRESETS,
    ExperimentConfig,
    preset,
    print_progress,
    run_rate_study,
    run_replication_study,
    workers_from_env,
)
from .models import Dataset, ModelError, SimulationError, SingularDesignError, get_model
from .qmc import DirectionFileError, inv_normal_cdf, parse_direction_file, sobol_points
from .samplers import DrawSpec, DrawSpecError, make_uniform


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for numerical failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


_POINT_METHODS = {
    "sobol": None,
    "scrambled": "ScrambledSobol",
    "shifted": "DigitalShiftedSobol",
    "random": "PseudoRandom",
}


def _write(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


# -- points ------------------------------------------------------------------------


def cmd_points(args) -> int:
    table = parse_direction_file(args.directions) if args.directions else None
    if args.method not in _POINT_METHODS:
        raise ConfigError(f"unknown point method {args.method!r}; choose from {sorted(_POINT_METHODS)}")
    if args.n < 1 or args.d < 1:
        raise ConfigError("--n and --d must be >= 1")
    method = _POINT_METHODS[args.method]
    if method is None:
        vals = sobol_points(args.n, args.d, table=table).values
    else:
        vals = make_uniform(DrawSpec(method, args.n, 1, args.d, seed=args.seed), table).values
    if args.gaussian:
        if method is None:
            raise ConfigError("the unrandomised Sobol set starts at 0; use --method scrambled for Gaussian draws")
        vals = inv_normal_cdf(vals)
    text = "".join(",".join(f"{v:.17g}" for v in row) + "\n" for row in vals)
    _write(text, args.out)
    return 0


# -- rate --------------------------------------------------------------------------


def cmd_rate(args) -> int:
    ns = [2**m for m in range(args.m_min, args.m_max + 1)]
    study = run_rate_study(args.integrand, args.methods.split(","), ns, args.reps, args.seed)
    _write(study.to_csv(), args.out)
    for method, slope in study.slopes.items():
        print(f"slope {method}: {slope:.4f}", file=sys.stderr)
    return 0


# -- estimate ----------------------------------------------------------------------


def _weighting(value):
    if value is None or value == "Identity":
        return Weighting.identity()
    if value == "TwoStep":
        return Weighting.two_step()
    if isinstance(value, dict) and "Fixed" in value:
        return Weighting.fixed(np.asarray(value["Fixed"], dtype=np.float64))
    raise ConfigError(f"weighting must be Identity, TwoStep or {{\"Fixed\": matrix}}, got {value!r}")


def _se_method(value):
    if value is None or value == "None":
        return SEMethod.none()
    if isinstance(value, str):
        value = {"kind": value}
    kind = value.get("kind")
    if kind == "SandwichPooled":
        return SEMethod.pooled()
    if kind == "SandwichHAC":
        return SEMethod.hac(value.get("bandwidth"))
    if kind == "RepeatedScramble":
        return SEMethod.repeated_scramble(int(value.get("R", 50)))
    raise ConfigError(f"unknown se_method {value!r}")


_ESTIMATE_FIELDS = {
    "model", "model_kwargs", "algorithm", "method", "S", "layout", "seed", "weighting",
    "se_method", "start", "tol", "xtol", "max_iter", "restarts", "burn_in", "fd_step", "shuffle_covariates",
}


def _load_estimation(path, model_name):
    values = {}
    if path:
        try:
            with open(path) as fh:
                values = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    extra = set(values) - _ESTIMATE_FIELDS
    if extra:
        raise ConfigError(f"unknown estimation fields: {sorted(extra)}")
    name = model_name or values.get("model")
    if not name:
        raise ConfigError("no model given (--model or \"model\" in the config)")
    model = get_model(name, **values.get("model_kwargs", {}))
    return model, values


def _read_data(model, path) -> Dataset:
    try:
        table = np.loadtxt(path, delimiter=",", ndmin=2)
    except OSError:
        raise ConfigError(f"data file not found: {path}") from None
    except ValueError as exc:
        raise ConfigError(f"cannot parse data file {path}: {exc}") from None
    if model.uses_covariates:
        if table.shape[1] < 2:
            raise ConfigError("this model needs columns y,x")
        return Dataset(table[:, 0], table[:, 1:].squeeze(axis=1) if table.shape[1] == 2 else table[:, 1:])
    if model.dynamic:
        return Dataset(table.ravel(), meta={"kind": "path", "T": table.size})
    if table.shape[1] == 1:
        return Dataset(table[:, 0])
    return Dataset(table, meta={"kind": "panel", "n": table.shape[0], "T": table.shape[1] - 1})


def cmd_estimate(args) -> int:
    model, values = _load_estimation(args.config, args.model)
    if (args.data is None) == (args.simulate_data is None):
        raise ConfigError("give exactly one of --data and --simulate-data")
    if args.data is not None:
        data = _read_data(model, args.data)
    else:
        if args.theta is None:
            raise ConfigError("--simulate-data needs --theta")
        theta0 = np.asarray(_floats(args.theta))
        if theta0.size != model.theta_dim:
            raise ConfigError(f"--theta needs {model.theta_dim} values for {model.name}")
        data = model.generate(theta0, args.simulate_data, args.data_seed)
    method = values.get("method", "PseudoRandom")
    spec = DrawSpec(method, data.n, int(values.get("S", 1)), 1, values.get("layout", "Pooled"),
                    int(values.get("seed", args.seed)))
    default_algo = "DynamicSMM" if model.dynamic else "StaticSMM"
    start = values.get("start")
    config = EstimationConfig(
        model, spec, values.get("algorithm", default_algo),
        weighting=_weighting(values.get("weighting")),
        start=None if start is None else tuple(start),
        tol=float(values.get("tol", 1e-8)),
        xtol=float(values.get("xtol", 1e-8)),
        max_iter=int(values.get("max_iter", 2000)),
        restarts=values.get("restarts"),
        se_method=_se_method(values.get("se_method")),
        fd_step=values.get("fd_step"),
        burn_in=int(values.get("burn_in", 200)),
        shuffle_covariates=bool(values.get("shuffle_covariates", False)),
    )
    result = estimate(config, data)
    _write(result.to_json() + "\n", args.out)
    if not result.converged:
        print(f"warning: {result.message}", file=sys.stderr)
        return 2
    return 0


# -- replication studies -----------------------------------------------------------


def _run_study(config: ExperimentConfig, out, timings: bool, quiet: bool) -> int:
    config.workers = workers_from_env(config.workers)
    table = run_replication_study(config, None if quiet else print_progress)
    if out in (None, "-"):
        sys.stdout.write(table.to_csv(timings=timings))
    else:
        side = table.write(out, timings=timings)
        print(f"wrote {out} and {side}", file=sys.stderr)
    if table.degenerate:
        print("warning: a single replication gives degenerate (zero) spreads", file=sys.stderr)
    if table.failure_rate > MAX_FAILURE_RATE:
        print(f"error: {100 * table.failure_rate:.1f}% of replications failed in some cell "
              f"(limit {100 * MAX_FAILURE_RATE:.0f}%)", file=sys.stderr)
        return 2
    return 0


def cmd_replicate(args) -> int:
    config = ExperimentConfig.from_json(args.config)
    if args.workers is not None:
        config.workers = args.workers
    if args.reps is not None:
        config.reps = args.reps
    return _run_study(config, args.out or config.output, args.timings, args.quiet)


def cmd_table(args) -> int:
    config = preset(
        args.command, reps=args.reps, seed=args.seed, n=args.n,
        S=None if args.S is None else _ints(args.S), workers=args.workers,
    )
    out = args.out if args.out is not None else f"{args.command}.csv"
    return _run_study(config, out, args.timings, args.quiet)


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="scrambledmm", description="Scrambled Sobol draws and simulated method-of-moments studies.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pt = sub.add_parser("points", help="print a point set as CSV")
    pt.add_argument("--method", default="sobol", help="sobol, scrambled, shifted or random")
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--d", type=int, default=1)
    pt.add_argument("--seed", type=int, default=0)
    pt.add_argument("--gaussian", action="store_true", help="map to standard normals")
    pt.add_argument("--directions", help="direction-number file in the Joe-Kuo format")
    pt.add_argument("--out")
    pt.set_defaults(func=cmd_points)

    rt = sub.add_parser("rate", help="integration-error rate study")
    rt.add_argument("--integrand", default="Square", choices=["Linear", "Square", "StepAtHalf"])
    rt.add_argument("--methods", default="PseudoRandom,ScrambledSobol")
    rt.add_argument("--m-min", type=int, default=4)
    rt.add_argument("--m-max", type=int, default=12)
    rt.add_argument("--reps", type=int, default=100)
    rt.add_argument("--seed", type=int, default=0)
    rt.add_argument("--out")
    rt.set_defaults(func=cmd_rate)

    es = sub.add_parser("estimate", help="estimate one model on one data set")
    es.add_argument("--model")
    es.add_argument("--config", help="JSON estimation settings")
    es.add_argument("--data", help="CSV data file")
    es.add_argument("--simulate-data", type=int, metavar="N", help="simulate N observations instead")
    es.add_argument("--theta", help="true parameter for --simulate-data, comma-separated")
    es.add_argument("--data-seed", type=int, default=0)
    es.add_argument("--seed", type=int, default=0, help="simulation seed if the config has none")
    es.add_argument("--out")
    es.set_defaults(func=cmd_estimate)

    rp = sub.add_parser("replicate", help="replication study from a JSON config")
    rp.add_argument("--config", required=True)
    rp.add_argument("--reps", type=int)
    rp.add_argument("--workers", type=int)
    rp.add_argument("--out")
    rp.add_argument("--timings", action="store_true", help="fill the runtime_ms column")
    rp.add_argument("--quiet", action="store_true")
    rp.set_defaults(func=cmd_replicate)

    for name in sorted(PRESETS):
        tb = sub.add_parser(name, help=f"preset replication grid {name}")
        tb.add_argument("--reps", type=int)
        tb.add_argument("--seed", type=int, default=0)
        tb.add_argument("--n", type=int, help="override the sample size")
        tb.add_argument("--S", help="override the S list, e.g. 1,2")
        tb.add_argument("--workers", type=int)
        tb.add_argument("--out", help="CSV path (default <name>.csv; '-' for stdout)")
        tb.add_argument("--timings", action="store_true", help="fill the runtime_ms column")
        tb.add_argument("--quiet", action="store_true")
        tb.set_defaults(func=cmd_table)
    return p


_CONFIG_ERRORS = (ConfigError, WeightingError, DrawSpecError, DirectionFileError, UsageError)
_NUMERIC_ERRORS = (SimulationError, SingularDesignError, OptimizerError, InferenceError,
                   AuxiliaryError, FloatingPointError, np.linalg.LinAlgError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _CONFIG_ERRORS + (ModelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
