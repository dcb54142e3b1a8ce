""" Energy- and integral-preserving integrators. """

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from geometric_integrators.core.constants import AVF_RESIDUAL_WARNING
from geometric_integrators.core.solvers import DEFAULT_SETTINGS, solve_implicit
from geometric_integrators.core.state import SolverSettings, VectorFieldProblem
from geometric_integrators.core.types import (
    DiscreteGradientKind,
    FloatArray,
    SkewApproximationKind,
    StateVector,
)
from geometric_integrators.integrals.discrete_gradients import (
    DiscreteGradient,
    SkewApproximation,
    avf_nodes_for_degree,
    segment_average,
)
from geometric_integrators.integrals.systems import FirstIntegralSystem
from geometric_integrators.utils.exceptions import ProblemDefinitionError
from geometric_integrators.utils.numeric_utils import max_norm


def _averaged_field(
    problem: VectorFieldProblem,
    x: FloatArray,
    x_new: FloatArray,
    t: float,
    q: int,
) -> FloatArray:
    return segment_average(lambda y: problem(t, y), x, x_new, q)


def avf_quadrature_residual(
    problem: VectorFieldProblem,
    x: FloatArray,
    x_new: FloatArray,
    q: int,
    t: float = 0.0,
) -> float:
    """Difference between the q- and 2q-point averages of f on [x, x']."""
    return max_norm(
        _averaged_field(problem, x, x_new, t, q)
        - _averaged_field(problem, x, x_new, t, 2 * q)
    )


def avf_step(
    problem: VectorFieldProblem,
    x: StateVector,
    h: float,
    quad_order: Optional[int] = None,
    t: float = 0.0,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """Average vector field step (x' - x)/h = int_0^1 f(s x' + (1-s) x) ds.

    Parameters
    ----------
    quad_order: Optional[int]
        Gauss-Legendre nodes; chosen from problem.polynomial_degree
        when omitted.

    Raises
    ------
    SolverNonConvergenceError
        if the implicit relation cannot be solved.
    """
    state = np.asarray(x, dtype=float)
    q = quad_order or avf_nodes_for_degree(problem.polynomial_degree)
    midtime = t + 0.5 * h
    x_new = solve_implicit(
        lambda y: state + h * _averaged_field(problem, state, y, midtime, q),
        state + h * problem(t, state),
        settings,
    )
    if problem.polynomial_degree is None:
        residual = avf_quadrature_residual(problem, state, x_new, q, midtime)
        if residual > AVF_RESIDUAL_WARNING:
            logging.warning(
                "AVF quadrature with %d nodes has residual %.3e; "
                "energy is conserved only up to it.",
                q,
                residual,
            )
    return x_new


def simpson_rk_step(
    problem: VectorFieldProblem,
    x: StateVector,
    h: float,
    t: float = 0.0,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """(x' - x)/h = [f(x) + 4 f((x + x')/2) + f(x')] / 6.

    Preserves every quartic Hamiltonian.
    """
    state = np.asarray(x, dtype=float)
    start = problem(t, state)

    def mapping(y: FloatArray) -> FloatArray:
        return state + (h / 6.0) * (
            start
            + 4.0 * problem(t + 0.5 * h, 0.5 * (state + y))
            + problem(t + h, y)
        )

    return solve_implicit(mapping, state + h * start, settings)


def discrete_gradient_step(
    system: FirstIntegralSystem,
    gradient: DiscreteGradient,
    skew: SkewApproximation,
    x: StateVector,
    h: float,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """(x' - x)/h = S(x, x') G(x, x'); conserves I to solver tolerance.

    Raises
    ------
    SolverNonConvergenceError
        if the implicit relation cannot be solved.
    """
    state = np.asarray(x, dtype=float)
    return solve_implicit(
        lambda y: state + h * (skew(state, y) @ gradient(state, y)),
        state + h * system.evaluate(0.0, state),
        settings,
    )


def discrete_gradient_stepper(
    kind: DiscreteGradientKind = "itoh-abe",
    skew_kind: SkewApproximationKind = "midpoint",
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> Callable[..., StateVector]:
    """discrete_gradient_step in the driver's (system, x, h, t) form."""

    def step(
        system: FirstIntegralSystem, x: StateVector, h: float, t: float = 0.0
    ) -> StateVector:
        del t
        gradient = DiscreteGradient(kind, system.integral, system.gradient)
        return discrete_gradient_step(
            system,
            gradient,
            SkewApproximation(system.skew_matrix, skew_kind),
            x,
            h,
            settings,
        )

    return step


def _discrete_gradients(
    system: FirstIntegralSystem, kind: DiscreteGradientKind
) -> Tuple[DiscreteGradient, DiscreteGradient]:
    if system.second_integral is None or system.skew_tensor is None:
        raise ProblemDefinitionError(
            f"'{system.name}' needs J and S_ijk for the two-integral scheme"
        )
    return (
        DiscreteGradient(kind, system.integral, system.gradient),
        DiscreteGradient(kind, system.second_integral, system.second_gradient),
    )


def two_integral_increment(
    system: FirstIntegralSystem,
    x: FloatArray,
    x_new: FloatArray,
    kind: DiscreteGradientKind = "avf",
) -> FloatArray:
    """S_ijk G^I_j G^J_k for the pair (x, x')."""
    first, second = _discrete_gradients(system, kind)
    return np.einsum(
        "ijk,j,k->i", system.skew_tensor, first(x, x_new), second(x, x_new)
    )


def two_integral_step(
    system: FirstIntegralSystem,
    x: StateVector,
    h: float,
    kind: DiscreteGradientKind = "avf",
    t: float = 0.0,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """(x' - x)/h = S_ijk G^I_j(x, x') G^J_k(x, x'); conserves I and J.

    Raises
    ------
    ProblemDefinitionError
        if the system lacks J or the tensor.

    SolverNonConvergenceError
        if the implicit relation cannot be solved.
    """
    del t
    _discrete_gradients(system, kind)
    state = np.asarray(x, dtype=float)
    return solve_implicit(
        lambda y: state + h * two_integral_increment(system, state, y, kind),
        state + h * system.evaluate(0.0, state),
        settings,
    )
