""" Explicit baseline steppers (negative controls). """

import numpy as np

from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.tableau import (
    CLASSICAL_RK4,
    EXPLICIT_EULER,
    ButcherTableau,
)
from geometric_integrators.core.types import FloatArray, StateVector


def explicit_rk_step(
    tableau: ButcherTableau,
    problem: VectorFieldProblem,
    x: StateVector,
    h: float,
    t: float = 0.0,
) -> StateVector:
    """One step of an explicit Runge-Kutta method.

    Raises
    ------
    ValueError
        if the tableau has a non-zero diagonal or upper part.
    """
    if not tableau.explicit:
        raise ValueError(f"Tableau '{tableau.name}' is not explicit.")
    state = np.asarray(x, dtype=float)
    slopes: FloatArray = np.zeros((tableau.stages, state.size))
    for i in range(tableau.stages):
        stage = state + h * (tableau.a[i, :i] @ slopes[:i])
        slopes[i] = problem(t + tableau.c[i] * h, stage)
    return state + h * (tableau.b @ slopes)


def explicit_euler_step(
    problem: VectorFieldProblem, x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    """x' = x + h f(t, x)."""
    return explicit_rk_step(EXPLICIT_EULER, problem, x, h, t)


def rk4_step(
    problem: VectorFieldProblem, x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    """Classical fourth-order Runge-Kutta step."""
    return explicit_rk_step(CLASSICAL_RK4, problem, x, h, t)
