""" Command-line interface: `run`, `convergence` and `list`. """

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from geometric_integrators.core.constants import (
    DEFAULT_LOG_LEVEL,
    EXIT_NUMERICAL_FAILURE,
    EXIT_OK,
    EXIT_REGISTRY_MISS,
)
from geometric_integrators.core.logging_config import setup_logger
from geometric_integrators.core.registry import Registry
from geometric_integrators.harness.config import ExperimentConfig
from geometric_integrators.harness.diagnostics import DIAGNOSTICS
from geometric_integrators.harness.integrators import INTEGRATORS
from geometric_integrators.harness.report import write_atomically
from geometric_integrators.harness.runner import convergence, run
from geometric_integrators.problems.catalog import PROBLEMS
from geometric_integrators.utils.exceptions import (
    AlgebraMismatchError,
    GridTooLargeError,
    IncompatibleProblemError,
    IntegrationStepError,
    NonFiniteStateError,
    OrderSaturatedError,
    ProblemDefinitionError,
    RegistryMissError,
    SolverNonConvergenceError,
    StepSizeError,
)

REGISTRIES: Dict[str, Registry] = {
    "problems": PROBLEMS,
    "integrators": INTEGRATORS,
    "diagnostics": DIAGNOSTICS,
}

# Failures of the request itself
USAGE_ERRORS = (
    RegistryMissError,
    IncompatibleProblemError,
    ValueError,
    TypeError,
    OSError,
    GridTooLargeError,
)

# Failures of the numerics, reported with the step index where known
NUMERICAL_ERRORS = (
    IntegrationStepError,
    SolverNonConvergenceError,
    StepSizeError,
    NonFiniteStateError,
    OrderSaturatedError,
    ProblemDefinitionError,
    AlgebraMismatchError,
)


def _comma_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _float_list(text: str) -> List[float]:
    return [float(item) for item in _comma_list(text)]


def _key_value(text: str) -> Tuple[str, Any]:
    """Parse key=value; the value is read as JSON, else kept as text."""
    key, separator, raw = text.partition("=")
    if not separator or not key:
        raise argparse.ArgumentTypeError(f"Expected key=value, got '{text}'.")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def _experiment_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="JSON experiment file.")
    parent.add_argument("--problem", help="Problem id.")
    parent.add_argument("--integrator", help="Integrator id.")
    parent.add_argument("--h", type=float, help="Step size.")
    parent.add_argument("--steps", type=int, help="Number of steps.")
    parent.add_argument(
        "--t-final", type=float, help="End time (default: problem's)."
    )
    parent.add_argument(
        "--problem-param",
        type=_key_value,
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Problem parameter; values are parsed as JSON.",
    )
    parent.add_argument(
        "--integrator-param",
        type=_key_value,
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Integrator parameter; values are parsed as JSON.",
    )
    parent.add_argument(
        "--observables",
        type=_comma_list,
        help="Comma-separated observables (default: all).",
    )
    parent.add_argument(
        "--diagnostics",
        type=_comma_list,
        help="Comma-separated diagnostic ids.",
    )
    parent.add_argument("--out", help="Output path (default: stdout).")
    parent.add_argument(
        "--format", dest="output_format", choices=("csv", "json")
    )
    parent.add_argument("--seed", type=int, help="Seed of self-checks.")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the run, convergence and list commands."""
    parser = argparse.ArgumentParser(
        prog="geometric-integrators",
        description="Structure-preserving integrators and their checks.",
    )
    parser.add_argument(
        "--log-level",
        default=DEFAULT_LOG_LEVEL,
        help="DEBUG, INFO, WARNING, ERROR or CRITICAL.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    parent = _experiment_parser()

    run_parser = commands.add_parser(
        "run", parents=[parent], help="Integrate one problem."
    )
    run_parser.add_argument(
        "--emit-plot-data",
        metavar="DIR",
        help="Write <observable>.dat files of (t, value) pairs.",
    )

    convergence_parser = commands.add_parser(
        "convergence", parents=[parent], help="Observed order table."
    )
    convergence_parser.add_argument(
        "--h-list",
        type=_float_list,
        help="Comma-separated geometric step sizes (at least three).",
    )
    convergence_parser.add_argument(
        "--integrators",
        type=_comma_list,
        help="Comma-separated integrator ids (default: --integrator).",
    )

    list_parser = commands.add_parser("list", help="Print registered ids.")
    list_parser.add_argument("registry", choices=sorted(REGISTRIES))
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (if any) with every given flag applied on top."""
    config = (
        ExperimentConfig.from_json(args.config)
        if args.config
        else ExperimentConfig()
    )
    problem_params = {**config.problem_params, **dict(args.problem_param)}
    integrator_params = {
        **config.integrator_params,
        **dict(args.integrator_param),
    }
    return config.with_overrides(
        problem=args.problem,
        integrator=args.integrator,
        h=args.h,
        n_steps=args.steps,
        t_final=args.t_final,
        problem_params=problem_params,
        integrator_params=integrator_params,
        observables=args.observables,
        diagnostics=args.diagnostics,
        output_format=args.output_format,
        out=args.out,
        seed=args.seed,
        emit_plot_data=getattr(args, "emit_plot_data", None),
        h_list=getattr(args, "h_list", None),
        integrators=getattr(args, "integrators", None),
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_atomically(out, text)


def list_registry(name: str) -> str:
    """One line per id with its parameter schema and summary."""
    lines = []
    for entry in REGISTRIES[name].describe():
        schema = f"({', '.join(entry.parameters)})" if entry.parameters else ""
        lines.append(f"{entry.key}{schema}\t{entry.summary}")
    return "\n".join(lines) + "\n"


def _dispatch(args: argparse.Namespace) -> None:
    if args.command == "list":
        _emit(list_registry(args.registry), None)
        return
    config = load_config(args)
    if args.command == "run":
        report = run(config)
        _emit(report.render(config.output_format), config.out)
        if config.emit_plot_data:
            report.write_plot_data(config.emit_plot_data)
        return
    table = convergence(config)
    _emit(table.render(config.output_format), config.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the `geometric-integrators` command.

    Returns
    -------
    int
        0 on success, 2 for an unknown id or invalid request, 3 for a
        numerical failure.
    """
    parser = build_parser()
    args: Any = parser.parse_args(argv)
    setup_logger(args.log_level, force=True)
    try:
        _dispatch(args)
    except NUMERICAL_ERRORS as e:
        if isinstance(e, StepSizeError):
            logging.error("Try halving the step size h = %g.", e.h)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_NUMERICAL_FAILURE
    except USAGE_ERRORS as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_REGISTRY_MISS
    return EXIT_OK
