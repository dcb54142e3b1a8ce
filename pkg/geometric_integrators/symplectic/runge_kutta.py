""" Implicit (Gauss-Legendre) Runge-Kutta methods. """

from typing import Dict

import numpy as np

from geometric_integrators.core.solvers import DEFAULT_SETTINGS, solve_implicit
from geometric_integrators.core.state import SolverSettings, VectorFieldProblem
from geometric_integrators.core.tableau import ButcherTableau
from geometric_integrators.core.types import FloatArray, StateVector

# Coefficients to 30 significant digits; rounding them would show up as
# spurious conservation defects.
_GL2_C1 = 0.211324865405187117745425609749
_GL2_C2 = 0.788675134594812882254574390251
_GL3_C1 = 0.112701665379258311482073460022
_GL3_C3 = 0.887298334620741688517926539978
_GL3_B1 = 0.277777777777777777777777777778
_GL3_B2 = 0.444444444444444444444444444444

GAUSS_LEGENDRE: Dict[int, ButcherTableau] = {
    1: ButcherTableau(
        np.array([[0.5]]),
        np.array([1.0]),
        np.array([0.5]),
        2,
        "gauss-legendre-1",
    ),
    2: ButcherTableau(
        np.array(
            [
                [0.25, -0.038675134594812882254574390251],
                [0.538675134594812882254574390251, 0.25],
            ]
        ),
        np.array([0.5, 0.5]),
        np.array([_GL2_C1, _GL2_C2]),
        4,
        "gauss-legendre-2",
    ),
    3: ButcherTableau(
        np.array(
            [
                [
                    0.138888888888888888888888888889,
                    -0.035976667524938903456395471097,
                    0.009789444015308326049580042230,
                ],
                [
                    0.300263194980864592438024947213,
                    0.222222222222222222222222222222,
                    -0.022485417203086814660247169435,
                ],
                [
                    0.267988333762469451728197735548,
                    0.480421111969383347900839915541,
                    0.138888888888888888888888888889,
                ],
            ]
        ),
        np.array([_GL3_B1, _GL3_B2, _GL3_B1]),
        np.array([_GL3_C1, 0.5, _GL3_C3]),
        6,
        "gauss-legendre-3",
    ),
}


def implicit_rk_step(
    tableau: ButcherTableau,
    problem: VectorFieldProblem,
    x: StateVector,
    h: float,
    t: float = 0.0,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """One step of a (possibly implicit) Runge-Kutta method.

    The stage derivatives K_i = f(t + c_i h, x + h sum_j A_ij K_j) are
    the unknowns of the implicit system.

    Parameters
    ----------
    tableau: ButcherTableau
        Method coefficients.

    problem: VectorFieldProblem
        Right-hand side f(t, x).

    x: StateVector
        Current state.

    h: float
        Step size.

    t: float
        Current time.

    settings: SolverSettings
        Stage-solver configuration.

    Returns
    -------
    StateVector
        x + h sum_i b_i K_i.

    Raises
    ------
    SolverNonConvergenceError
        if the stage equations cannot be solved.
    """
    state = np.asarray(x, dtype=float)
    stage_times = t + tableau.c * h

    def stage_map(slopes: FloatArray) -> FloatArray:
        stages = state + h * (tableau.a @ slopes)
        return np.array(
            [problem(stage_times[i], stages[i]) for i in range(tableau.stages)]
        )

    guess = np.tile(problem(t, state), (tableau.stages, 1))
    slopes = solve_implicit(stage_map, guess, settings)
    return state + h * (tableau.b @ slopes)


def gauss_legendre_step(
    s: int,
    problem: VectorFieldProblem,
    x: StateVector,
    h: float,
    t: float = 0.0,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """One step of the s-stage Gauss-Legendre method (order 2s).

    Raises
    ------
    ValueError
        if s is not 1, 2 or 3.
    """
    if s not in GAUSS_LEGENDRE:
        raise ValueError(
            f"Gauss-Legendre methods exist for s in 1..3, not {s}."
        )
    return implicit_rk_step(GAUSS_LEGENDRE[s], problem, x, h, t, settings)


def implicit_midpoint_step(
    problem: VectorFieldProblem,
    x: StateVector,
    h: float,
    t: float = 0.0,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """(x' - x)/h = f(t + h/2, (x + x')/2), the one-stage Gauss method."""
    return gauss_legendre_step(1, problem, x, h, t, settings)
