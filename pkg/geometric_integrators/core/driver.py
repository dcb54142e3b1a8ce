""" Step loop and convergence-order estimation. """

import logging
from typing import Any, Callable, Dict, Optional, Protocol, Sequence, Union

import numpy as np

from geometric_integrators.core.constants import (
    GEOMETRIC_RATIO_RTOL,
    MACHINE_EPSILON,
    SATURATION_FACTOR,
)
from geometric_integrators.core.state import Trajectory, as_state
from geometric_integrators.core.types import FloatArray, Observer, StateVector
from geometric_integrators.utils.exceptions import (
    IntegrationStepError,
    OrderSaturatedError,
    SolverNonConvergenceError,
)
from geometric_integrators.utils.numeric_utils import max_norm


class Stepper(Protocol):
    """One-step map x_n -> x_{n+1} of an integrator."""

    def __call__(
        self, problem: Any, x: StateVector, h: float, t: float = 0.0
    ) -> StateVector: ...


ReferenceSolution = Union[None, FloatArray, Callable[[float], FloatArray]]


def solve(
    problem: Any,
    integrator: Stepper,
    h: float,
    n_steps: int,
    x0: FloatArray,
    observers: Optional[Dict[str, Observer]] = None,
    t0: float = 0.0,
) -> Trajectory:
    """Advance x0 by n_steps constant steps of size h.

    Parameters
    ----------
    problem: Any
        Problem object understood by the integrator.

    integrator: Stepper
        Called as integrator(problem, x, h, t=t_n).

    h: float
        Step size, non-zero; negative values integrate backwards.

    n_steps: int
        Number of steps.

    x0: FloatArray
        Initial state.

    observers: Optional[Dict[str, Observer]]
        Named functions evaluated at every state.

    t0: float
        Initial time; the grid is t_n = t0 + n h.

    Returns
    -------
    Trajectory
        n_steps + 1 states with one channel per observer.

    Raises
    ------
    ValueError
        if h is zero or n_steps is negative.

    IntegrationStepError
        if the implicit solver fails, naming the step index.

    NonFiniteStateError
        if a step produces NaN or Inf.
    """
    if h == 0:
        raise ValueError("The step size h must be non-zero.")
    if n_steps < 0:
        raise ValueError("n_steps must be non-negative.")
    observers = observers or {}
    states = np.empty((n_steps + 1, np.size(x0)))
    states[0] = as_state(x0)
    times = t0 + h * np.arange(n_steps + 1)
    for step in range(1, n_steps + 1):
        try:
            new_state = integrator(
                problem, states[step - 1], h, t=times[step - 1]
            )
        except SolverNonConvergenceError as e:
            logging.error("Step %d failed: %s", step, e)
            raise IntegrationStepError(step, e.residual) from e
        states[step] = as_state(new_state, step)
    observables = {
        name: np.array([observer(state) for state in states], dtype=float)
        for name, observer in observers.items()
    }
    return Trajectory(times, states, observables)


def _check_geometric(h_list: Sequence[float]) -> FloatArray:
    steps = np.asarray(h_list, dtype=float)
    if steps.size < 3:
        raise ValueError("observed_order needs at least three step sizes.")
    ratios = steps[1:] / steps[:-1]
    if not np.allclose(ratios, ratios[0], rtol=GEOMETRIC_RATIO_RTOL, atol=0.0):
        raise ValueError(f"Step sizes are not geometric: {list(h_list)}")
    return steps


def _n_steps(h: float, t_final: float) -> int:
    n_steps = int(round(t_final / h))
    if n_steps < 1 or abs(n_steps * h - t_final) > 1e-9 * abs(t_final):
        raise ValueError(f"h = {h} does not divide t_final = {t_final}.")
    return n_steps


def final_state(
    integrator: Stepper,
    problem: Any,
    x0: FloatArray,
    h: float,
    t_final: float,
) -> StateVector:
    """State reached at t_final with constant steps h (no observers)."""
    return solve(problem, integrator, h, _n_steps(h, t_final), x0).final_state


def step_errors(
    integrator: Stepper,
    problem: Any,
    reference_solution: ReferenceSolution,
    h_list: Sequence[float],
    *,
    x0: FloatArray,
    t_final: float,
) -> FloatArray:
    """Global errors |x_N(h) - x(t_final)|_inf for every h in h_list.

    When reference_solution is None it is computed with the same
    integrator at min(h_list) / 100.
    """
    steps = np.asarray(h_list, dtype=float)
    if reference_solution is None:
        h_reference = float(np.min(np.abs(steps))) / 100.0
        logging.debug("Computing reference at h = %.3e.", h_reference)
        reference = final_state(
            integrator, problem, x0, np.sign(t_final) * h_reference, t_final
        )
    elif callable(reference_solution):
        reference = np.asarray(reference_solution(t_final), dtype=float)
    else:
        reference = np.asarray(reference_solution, dtype=float)
    return np.array(
        [
            max_norm(
                final_state(integrator, problem, x0, h, t_final) - reference
            )
            for h in steps
        ]
    )


def fit_order(h_list: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(h).

    Errors at round-off level are left out of the fit.

    Raises
    ------
    OrderSaturatedError
        if the error at the largest h is already at round-off level.
    """
    steps = np.abs(np.asarray(h_list, dtype=float))
    values = np.asarray(errors, dtype=float)
    floor = SATURATION_FACTOR * MACHINE_EPSILON
    largest = int(np.argmax(steps))
    if values[largest] < floor:
        raise OrderSaturatedError(float(values[largest]))
    usable = values >= floor
    if np.count_nonzero(usable) < 2:
        raise OrderSaturatedError(float(np.min(values)))
    slope, _ = np.polyfit(np.log(steps[usable]), np.log(values[usable]), 1)
    return float(slope)


def observed_order(
    integrator: Stepper,
    problem: Any,
    reference_solution: ReferenceSolution,
    h_list: Sequence[float],
    *,
    x0: FloatArray,
    t_final: float,
) -> float:
    """Observed convergence order of an integrator on a problem.

    Parameters
    ----------
    integrator: Stepper
        Step function under test.

    problem: Any
        Problem passed to the integrator.

    reference_solution: None, array or callable
        Exact state at t_final, a function of time, or None to compute
        one with the same integrator at min(h_list) / 100.

    h_list: Sequence[float]
        At least three geometric step sizes dividing t_final.

    x0: FloatArray
        Initial state.

    t_final: float
        End of the integration interval.

    Returns
    -------
    float
        Slope of log(error) against log(h).

    Raises
    ------
    ValueError
        if h_list is too short or not geometric.

    OrderSaturatedError
        if the errors are at round-off level.
    """
    steps = _check_geometric(h_list)
    errors = step_errors(
        integrator, problem, reference_solution, steps, x0=x0, t_final=t_final
    )
    order = fit_order(steps, errors)
    logging.debug("Observed order %.3f from errors %s.", order, errors)
    return order
