""" Experiment runner: single runs and convergence tables. """

import logging
import time
from typing import Dict, List, Optional, Sequence

import numpy as np

from geometric_integrators.core.decorators import logged_failure
from geometric_integrators.core.driver import fit_order, step_errors
from geometric_integrators.core.types import FloatArray, StepMap
from geometric_integrators.harness.config import ExperimentConfig
from geometric_integrators.harness.diagnostics import get_diagnostic
from geometric_integrators.harness.integrators import (
    INTEGRATORS,
    PreparedIntegrator,
    prepare,
)
from geometric_integrators.harness.report import ConvergenceTable, RunReport
from geometric_integrators.problems.catalog import (
    BenchmarkProblem,
    get_problem,
)
from geometric_integrators.utils.exceptions import IncompatibleProblemError


def _load(config: ExperimentConfig) -> BenchmarkProblem:
    problem = get_problem(config.problem, **config.problem_params)
    problem.validate(np.random.default_rng(config.seed))
    return problem


def _diagnostic_series(
    names: Sequence[str],
    step_map: Optional[StepMap],
    states: FloatArray,
    h: float,
) -> Dict[str, FloatArray]:
    series = {}
    for name in names:
        diagnostic = get_diagnostic(name)
        series[name] = np.array(
            [diagnostic(step_map, state, h) for state in states]
        )
    return series


@logged_failure("run")
def run(config: ExperimentConfig) -> RunReport:
    """Integrate one problem with one integrator.

    Parameters
    ----------
    config: ExperimentConfig
        Problem, integrator, step size, length and requested output.

    Returns
    -------
    RunReport
        Observable and diagnostic series with their summary.

    Raises
    ------
    RegistryMissError
        if the problem, integrator or a diagnostic id is unknown.

    IncompatibleProblemError
        if the integrator cannot advance the problem.

    IntegrationStepError
        if a step fails, naming its index.
    """
    problem = _load(config)
    prepared = prepare(
        config.integrator, problem, **config.integrator_params
    )
    n_steps = config.steps_for(problem.t_final)
    observers = problem.observers(config.h, config.observables)
    # Unknown diagnostic ids fail before the run starts
    for name in config.diagnostics:
        get_diagnostic(name)
    step_map = prepared.step_map() if config.diagnostics else None
    logging.info(
        "Running %s on %s: h = %g, %d steps.",
        prepared.name,
        problem.key,
        config.h,
        n_steps,
    )
    start = time.perf_counter()
    trajectory = prepared.trajectory(problem.x0, config.h, n_steps, observers)
    diagnostics = _diagnostic_series(
        config.diagnostics, step_map, trajectory.states, config.h
    )
    report = RunReport.from_trajectory(
        problem.key,
        prepared.name,
        config.h,
        trajectory,
        diagnostics,
        time.perf_counter() - start,
    )
    for name in report.observables:
        logging.info("%s: max drift %.3e.", name, report.max_drift(name))
    return report


def _one_step(prepared: PreparedIntegrator, key: str) -> PreparedIntegrator:
    if prepared.stepper is None:
        raise IncompatibleProblemError(
            f"{prepared.name} (not a one-step map)", key
        )
    return prepared


@logged_failure("convergence")
def convergence(
    config: ExperimentConfig,
    h_list: Optional[Sequence[float]] = None,
    integrators: Optional[List[str]] = None,
) -> ConvergenceTable:
    """Observed order of each integrator on the configured problem.

    Global errors at the problem's t_final (or config.t_final) are taken
    against the analytic reference when the problem has one, otherwise
    against the same integrator at min(h) / 100.

    Raises
    ------
    ValueError
        if fewer than three geometric step sizes are given.

    OrderSaturatedError
        if the error is at round-off level already at the largest h.
    """
    steps = list(h_list or config.h_list)
    names = list(integrators or config.integrators or [config.integrator])
    if len(steps) < 3:
        raise ValueError("convergence needs at least three step sizes.")
    problem = _load(config)
    t_final = problem.t_final if config.t_final is None else config.t_final
    table = ConvergenceTable(problem.key, t_final, steps)
    for name in names:
        # Shared parameters go to the integrators that declare them
        accepted = INTEGRATORS.entry(name).parameters
        parameters = {
            key: value
            for key, value in config.integrator_params.items()
            if key in accepted
        }
        prepared = _one_step(
            prepare(name, problem, **parameters), problem.key
        )
        errors = step_errors(
            prepared.stepper,  # type: ignore[arg-type]
            prepared.target,
            problem.reference,
            steps,
            x0=problem.x0,
            t_final=t_final,
        )
        table.errors[name] = errors
        table.orders[name] = fit_order(steps, errors)
        logging.info(
            "%s on %s: observed order %.2f.",
            name,
            problem.key,
            table.orders[name],
        )
    return table
