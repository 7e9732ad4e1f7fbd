"""Module for the command line interface ``magkern``.

Subcommands:

- ``magkern eval TARGET``: Evaluate a kernel, envelope, or constant.
- ``magkern sweep TARGET --grid ...``: Evaluate a target on a grid.
- ``magkern certify NAME``: Run a certificate (or ``all``).
- ``magkern verify``: Verify the integral identities.

Exit status is 0 on success (or pass), 1 if a certificate fails,
and 2 on usage or domain errors, with a one-line diagnostic on stderr.

Examples:
    To evaluate the free heat kernel at coincident points::

        $ magkern eval mehler --b0 0 --t 1 --x 0,0,0 --xp 0,0,0

"""
__all__ = [
    "EVAL_TARGETS",
    "CERTIFY_TARGETS",
    "RunConfig",
    "build_parser",
    "main",
    "run",
]


# standard library
import logging
import sys
import time
from argparse import ArgumentParser, Namespace
from dataclasses import dataclass, field
from logging import getLogger
from math import sqrt
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple


# dependencies
import xarray as xr
from .certify import (
    BoundCertificate,
    certify_coupling,
    certify_decay,
    certify_diamagnetic,
    certify_ea_envelope,
    certify_free_limit,
    certify_hyperbolic,
    certify_oscillatory,
    certify_semigroup,
    certify_singularity,
    coupling_constants,
    default_suite,
    verify_identities,
)
from .config import default_jobs, load_config
from .ekernel import (
    Displacement,
    OmegaVector,
    ae_bound_integral,
    ea2_tau_derivative,
    ea_bound_integral,
    ea_kernel,
    ea_kernel_bound,
    exp_tea_bound,
    exp_tea_bound_integral,
    exp_tea_derivative_bound,
    exp_tea_derivative_integral,
    exp_tea_kernel,
    free_relativistic_kernel,
    sk_closed_form,
    sk_quadrature,
    u0_offdiag_bound,
    u0_offdiag_integral,
    u0_tau_bound,
    u0_tau_integral,
)
from .errors import MagkernError
from .grids import DEFAULT_SEED, GridSpec
from .mehler import (
    DEFAULT_COUPLING,
    FieldConfig,
    KernelValue,
    ea2_heat_kernel,
    free_heat_kernel,
    mehler_hs_kernel,
    prefactor_bound,
)
from .quad import QuadratureResult
from .report import Format, to_csv, to_json, write_report
from .specfun import bessel_j, bessel_k, gamma_fn
from .utils import parallel_map


# constants
COMMANDS = ("eval", "sweep", "certify", "verify")
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"
PARAM_DEFAULTS: Dict[str, Any] = {
    "b0": None,
    "eb0": None,
    "m": None,
    "e2": DEFAULT_COUPLING**2,
    "t": 1.0,
    "tau": 1.0,
    "x": (0.0, 0.0, 0.0),
    "xp": (0.0, 0.0, 0.0),
    "r": None,
    "direction": (0.0, 0.0, 1.0),
    "spin": 1,
    "k": 1,
    "omega": (1.0, 0.0),
    "gamma": 0.0,
    "order": 0.0,
    "z": 1.0,
    "relaxed": False,
    "tol": None,
    "grid": [],
    "seed": DEFAULT_SEED,
    "jobs": None,
    "format": Format.JSON.value,
    "out": None,
}
VECTOR_PARAMS = {"x": 3, "xp": 3, "direction": 3, "omega": 2}


# module logger
logger = getLogger(__name__)


@dataclass
class RunConfig:
    """Parsed run of the command line interface.

    Args:
        command: One of ``eval``, ``sweep``, ``certify``, ``verify``.
        target: Name of an operation or certificate.
        params: Physical and numerical parameters.
        tol: Tolerance of quadratures (None for per-target defaults).
        out_format: Format of the report.
        out_path: Path of the report (None for stdout).

    """

    command: str
    target: str
    params: Dict[str, Any] = field(default_factory=dict)
    tol: Optional[float] = None
    out_format: Format = Format.JSON
    out_path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command: {self.command!r}")

        targets = {
            "eval": EVAL_TARGETS,
            "sweep": EVAL_TARGETS,
            "certify": CERTIFY_TARGETS,
            "verify": {"identities": None},
        }[self.command]

        if self.target not in targets:
            raise ValueError(
                f"Unknown target {self.target!r} for {self.command}. "
                f"Choose from: {', '.join(sorted(targets))}"
            )

        self.out_format = Format(self.out_format)

    @property
    def cfg(self) -> FieldConfig:
        """Field configuration of the run."""
        return field_config(self.params)

    @property
    def jobs(self) -> int:
        jobs = self.params.get("jobs")
        return default_jobs() if jobs is None else int(jobs)

    @property
    def grid(self) -> Optional[GridSpec]:
        texts = self.params.get("grid") or []
        return GridSpec.parse(texts, int(self.params["seed"])) if texts else None


# main functions
def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of ``magkern``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        config = _run_config(args)
        return run(config, sys.stdout)
    except (MagkernError, ValueError) as error:
        print(f"magkern: error: {_one_line(error)}", file=sys.stderr)
        return EXIT_USAGE


def run(config: RunConfig, stream: Optional[TextIO] = None) -> int:
    """Execute a run and write its report.

    Args:
        config: Parsed run.
        stream: Stream of the report if ``config.out_path`` is None.

    Returns:
        Exit status (0 on success or pass, 1 on certificate failure).

    """
    start = time.perf_counter()
    certificate: Any = None
    dataset: Optional[xr.Dataset] = None

    if config.command == "eval":
        results = [evaluate(config.target, _with_tol(config))]
    elif config.command == "sweep":
        results, dataset = _sweep(config)
    else:
        certificates = _certify(config)
        results = [_certificate_row(c) for c in certificates]
        certificate = [c.to_dict() for c in certificates]

        if len(certificates) == 1:
            certificate = certificate[0]

    runtime_ms = 1e3 * (time.perf_counter() - start)
    params = {k: v for k, v in config.params.items() if k not in ("format", "out")}

    if config.out_format == Format.CSV:
        text = to_csv(dataset if dataset is not None else results)
    else:
        text = to_json(config.target, params, results, runtime_ms, certificate)

    write_report(text, config.out_path, stream)

    if config.command in ("certify", "verify"):
        passed = all(row["pass"] and not row["incomplete"] for row in results)
        return EXIT_OK if passed else EXIT_FAILED

    return EXIT_OK


def build_parser() -> ArgumentParser:
    """Build the argument parser of ``magkern``."""
    parser = ArgumentParser(
        prog="magkern",
        description="Magnetic heat kernels, kernel envelopes, and their certification.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        sub = commands.add_parser(command, help=f"{command} a target")

        if command in ("eval", "sweep"):
            sub.add_argument("target", choices=sorted(EVAL_TARGETS))
        elif command == "certify":
            sub.add_argument("target", choices=sorted(CERTIFY_TARGETS))

        _add_options(sub)

    return parser


def field_config(params: Dict[str, Any]) -> FieldConfig:
    """Create a field configuration from run parameters."""
    e = sqrt(float(params.get("e2", PARAM_DEFAULTS["e2"])))
    m = float(params.get("m") or 0.0)

    if params.get("eb0") is not None:
        return FieldConfig.from_eb0(float(params["eb0"]), m, e)

    return FieldConfig(float(params.get("b0") or 0.0), m, e)


def evaluate(target: str, params: Dict[str, Any]) -> Dict[str, Any]:
    """Evaluate a target of ``eval`` and return its result row."""
    params = {**PARAM_DEFAULTS, **{k: v for k, v in params.items() if v is not None}}
    value = EVAL_TARGETS[target](params)

    if isinstance(value, KernelValue):
        return {
            "value": value.value,
            "translation_part": value.translation_part,
            "gauge_phase": value.gauge_phase,
        }

    if isinstance(value, QuadratureResult):
        return {
            "value": value.value,
            "error_estimate": value.error_estimate,
            "evaluations": value.evaluations,
        }

    if isinstance(value, dict):
        return value

    return {"value": value}


# helper functions
def _displacement(p: Dict[str, Any]) -> Displacement:
    if p.get("r") is not None:
        return Displacement.along(float(p["r"]), p["direction"])

    return Displacement.between(p["x"], p["xp"])


def _separation(p: Dict[str, Any]) -> float:
    return _displacement(p).r


def _tol(p: Dict[str, Any], default: float) -> float:
    return default if p.get("tol") is None else float(p["tol"])


def _given(p: Dict[str, Any], name: str, default: float) -> float:
    return default if p.get(name) is None else float(p[name])


def _mass(p: Dict[str, Any], default: float) -> float:
    return _given(p, "m", default)


def _field(p: Dict[str, Any], default: float) -> float:
    """Return e B0 of the run, or a default if neither --eb0 nor --b0 is set."""
    if p.get("eb0") is None and p.get("b0") is None:
        return default

    return field_config(p).eb0


EVAL_TARGETS: Dict[str, Callable[[Dict[str, Any]], Any]] = {
    "mehler": lambda p: mehler_hs_kernel(field_config(p), p["t"], p["x"], p["xp"]),
    "ea2": lambda p: ea2_heat_kernel(
        field_config(p), p["spin"], p["t"], p["x"], p["xp"]
    ),
    "free": lambda p: free_heat_kernel(p["t"], p["x"], p["xp"]),
    "prefactor": lambda p: prefactor_bound(field_config(p), p["t"], p["x"], p["xp"]),
    "ea2_derivative": lambda p: ea2_tau_derivative(
        field_config(p), p["spin"], p["tau"], _displacement(p)
    ),
    "ea_kernel": lambda p: ea_kernel(
        field_config(p), p["spin"], _displacement(p), _tol(p, 1e-10)
    ),
    "ea_bound": lambda p: ea_kernel_bound(field_config(p), _separation(p)),
    "ea_bound_integral": lambda p: ea_bound_integral(
        field_config(p), _separation(p), _tol(p, 1e-10)
    ),
    "free_relativistic": lambda p: free_relativistic_kernel(
        field_config(p).m, _separation(p)
    ),
    "exp_tea_kernel": lambda p: exp_tea_kernel(
        field_config(p), p["spin"], p["t"], _displacement(p), _tol(p, 1e-10)
    ),
    "exp_tea_bound": lambda p: exp_tea_bound(field_config(p), p["t"], _separation(p)),
    "exp_tea_bound_integral": lambda p: exp_tea_bound_integral(
        field_config(p), p["t"], _separation(p), _tol(p, 1e-10)
    ),
    "u0_bound": lambda p: u0_offdiag_bound(field_config(p), _separation(p)),
    "u0_integral": lambda p: u0_offdiag_integral(
        field_config(p), _separation(p), _tol(p, 1e-10)
    ),
    "exp_tea_derivative_bound": lambda p: exp_tea_derivative_bound(
        field_config(p), p["t"], _separation(p)
    ),
    "exp_tea_derivative_integral": lambda p: exp_tea_derivative_integral(
        field_config(p), p["t"], _separation(p), _tol(p, 1e-10)
    ),
    "u0_tau_bound": lambda p: u0_tau_bound(field_config(p), p["t"], _separation(p)),
    "u0_tau_integral": lambda p: u0_tau_integral(
        field_config(p), p["t"], _separation(p), _tol(p, 1e-10)
    ),
    "ae_bound": lambda p: ae_bound_integral(
        field_config(p), _separation(p), _tol(p, 1e-6), bool(p["relaxed"])
    ),
    "sk": lambda p: sk_closed_form(
        field_config(p), int(p["k"]), OmegaVector(*p["omega"])
    ),
    "sk_quadrature": lambda p: sk_quadrature(
        field_config(p), int(p["k"]), OmegaVector(*p["omega"]), _tol(p, 1e-10)
    ),
    "constants": lambda p: coupling_constants(
        field_config(p), float(p["gamma"])
    ).to_dict(),
    "bessel_k": lambda p: bessel_k(float(p["order"]), float(p["z"])),
    "bessel_j": lambda p: bessel_j(float(p["order"]), float(p["z"])),
    "gamma": lambda p: gamma_fn(float(p["z"])),
}


CERTIFY_TARGETS: Dict[str, Callable[[RunConfig], List[BoundCertificate]]] = {
    "hyperbolic": lambda c: [certify_hyperbolic(c.grid)],
    "diamagnetic": lambda c: [certify_diamagnetic(c.grid, _mass(c.params, 0.0))],
    "ea_envelope": lambda c: [
        certify_ea_envelope(
            c.grid, _tol(c.params, 1e-8), c.params["direction"], c.jobs
        )
    ],
    "semigroup": lambda c: [
        certify_semigroup(c.grid, _mass(c.params, 1.0), _tol(c.params, 1e-6))
    ],
    "free_limit": lambda c: [
        certify_free_limit(c.grid, _mass(c.params, 1.0), _tol(c.params, 1e-6))
    ],
    "singularity": lambda c: [
        certify_singularity(
            _given(c.params, "r", 0.05),
            _mass(c.params, 1.0),
            _field(c.params, 1.0),
        )
    ],
    "decay": lambda c: [certify_decay(c.grid)],
    "oscillatory": lambda c: [certify_oscillatory(c.grid, tol=_tol(c.params, 1e-5))],
    "coupling": lambda c: [certify_coupling(c.grid, float(c.params["e2"]))],
    "all": lambda c: default_suite(c.jobs),
}


def _certify(config: RunConfig) -> List[BoundCertificate]:
    if config.command == "verify":
        return verify_identities(_tol(config.params, 1e-8))

    return CERTIFY_TARGETS[config.target](config)


def _certificate_row(certificate: BoundCertificate) -> Dict[str, Any]:
    return {
        "name": certificate.name,
        "worst_ratio": certificate.worst_ratio,
        "pass": certificate.passed,
        "incomplete": certificate.incomplete,
        "violations": len(certificate.violations),
        "empirical_constant": certificate.empirical_constant,
        "slack": certificate.slack,
    }


def _sweep(config: RunConfig) -> Tuple[List[Dict[str, Any]], xr.Dataset]:
    """Evaluate a target on every grid point in C order."""
    grid = config.grid

    if grid is None:
        raise ValueError("sweep requires at least one --grid axis.")

    points = list(grid.points())
    tasks = [(config.target, {**config.params, **point}) for point in points]
    rows = parallel_map(_evaluate_task, tasks, config.jobs)
    results = [{**point, **row} for point, row in zip(points, rows)]

    variables = {
        name: grid.to_dataarray([row[name] for row in rows], name)
        for name in rows[0]
        if all(isinstance(row[name], (int, float, complex)) for row in rows)
    }
    return results, xr.Dataset(variables)


def _evaluate_task(task: Tuple[str, Dict[str, Any]]) -> Dict[str, Any]:
    target, params = task
    return evaluate(target, params)


def _with_tol(config: RunConfig) -> Dict[str, Any]:
    return {**config.params, "tol": config.tol}


def _run_config(args: Namespace) -> RunConfig:
    """Merge defaults, the configuration file, and options."""
    params = dict(PARAM_DEFAULTS)

    if args.config is not None:
        params.update(load_config(args.config))

    options = {
        k: v
        for k, v in vars(args).items()
        if v is not None and k in PARAM_DEFAULTS
    }

    if not options.get("grid"):
        options.pop("grid", None)

    params.update(options)

    for name, size in VECTOR_PARAMS.items():
        params[name] = _vector(params[name], size, name)

    return RunConfig(
        command=args.command,
        target=getattr(args, "target", "identities"),
        params=params,
        tol=params["tol"],
        out_format=params["format"],
        out_path=params["out"],
    )


def _vector(value: Any, size: int, name: str) -> Tuple[float, ...]:
    """Parse a comma-separated vector (or a sequence) of a given size."""
    if isinstance(value, str):
        value = value.split(",")

    try:
        vector = tuple(float(v) for v in value)
    except (TypeError, ValueError):
        raise ValueError(f"--{name} must be {size} comma-separated numbers: {value!r}")

    if len(vector) != size:
        raise ValueError(f"--{name} must have {size} components: {value!r}")

    return vector


def _add_options(parser: ArgumentParser) -> None:
    """Add the long options shared by every subcommand."""
    parser.add_argument("--b0", type=float, help="field strength B0 (>= 0)")
    parser.add_argument("--eb0", type=float, help="product e B0 (overrides --b0)")
    parser.add_argument("--m", type=float, help="mass (>= 0)")
    parser.add_argument("--e2", type=float, help="squared coupling (default 1/137.04)")
    parser.add_argument("--t", type=float, help="semigroup parameter t")
    parser.add_argument("--tau", type=float, help="semigroup parameter tau")
    parser.add_argument("--x", help="first point as x1,x2,x3")
    parser.add_argument("--xp", help="second point as x1,x2,x3")
    parser.add_argument("--r", type=float, help="separation (overrides --x/--xp)")
    parser.add_argument("--direction", help="direction of the separation as d1,d2,d3")
    parser.add_argument("--spin", type=int, choices=(1, -1), help="spin channel")
    parser.add_argument(
        "--k", type=int, choices=(1, 2), help="axis of the oscillatory integral"
    )
    parser.add_argument("--omega", help="omega vector as w1,w2")
    parser.add_argument("--gamma", type=float, help="Coulomb coupling Z e**2")
    parser.add_argument("--order", type=float, help="order of a Bessel function")
    parser.add_argument("--z", type=float, help="argument of a special function")
    parser.add_argument(
        "--relaxed", action="store_true", default=None, help="relaxed A_E envelope"
    )
    parser.add_argument("--tol", type=float, help="relative tolerance")
    parser.add_argument(
        "--grid", action="append", help="grid axis as name:min:max:count:lin|log"
    )
    parser.add_argument("--seed", type=int, help="seed of random sampling")
    parser.add_argument(
        "--jobs", type=int, help="worker processes (default $MAGKERN_JOBS or 1)"
    )
    parser.add_argument(
        "--format", choices=[f.value for f in Format], help="report format"
    )
    parser.add_argument("--out", help="report path (default stdout)")
    parser.add_argument("--config", help="run configuration file (JSON, TOML, or YAML)")
    parser.add_argument("--verbose", action="store_true", help="log debug messages")


def _one_line(error: BaseException) -> str:
    return " ".join(str(error).split()) or type(error).__name__
