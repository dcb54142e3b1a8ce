""" Implicit-equation solvers shared by every implicit scheme. """

import logging
from typing import Callable, Optional

import numpy as np
from scipy import linalg, optimize

from geometric_integrators.core.constants import (
    FD_STEP,
    SCALAR_TOLERANCE,
    DEFAULT_MAX_ITERATIONS,
)
from geometric_integrators.core.state import SolverSettings
from geometric_integrators.core.types import FloatArray
from geometric_integrators.utils.exceptions import (
    SingularLinearizationError,
    SolverNonConvergenceError,
)
from geometric_integrators.utils.numeric_utils import max_norm

VectorMap = Callable[[FloatArray], FloatArray]

DEFAULT_SETTINGS = SolverSettings()


def fd_jacobian(
    mapping: VectorMap, x: FloatArray, delta: Optional[float] = None
) -> FloatArray:
    """Central-difference Jacobian of a vector map.

    Parameters
    ----------
    mapping: Callable
        Map R^n -> R^m.

    x: FloatArray
        Point of evaluation.

    delta: Optional[float]
        Difference step; defaults to eps^(1/3) * max(1, |x|_inf).

    Returns
    -------
    FloatArray
        The m x n matrix of partial derivatives, entry error O(delta^2).

    Raises
    ------
    ValueError
        if delta is not positive.
    """
    point = np.asarray(x, dtype=float).reshape(-1)
    if delta is None:
        delta = FD_STEP * max(1.0, max_norm(point))
    if delta <= 0:
        raise ValueError(f"Finite-difference step must be positive: {delta}")
    columns = []
    for i in range(point.size):
        shift = np.zeros_like(point)
        shift[i] = delta
        forward = np.asarray(mapping(point + shift), dtype=float).reshape(-1)
        backward = np.asarray(mapping(point - shift), dtype=float).reshape(-1)
        columns.append((forward - backward) / (2.0 * delta))
    return np.column_stack(columns)


def fixed_point_solve(
    mapping: VectorMap,
    guess: FloatArray,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> FloatArray:
    """Solve x = mapping(x) by Picard iteration.

    Returns the first iterate whose increment is within tolerance.

    Raises
    ------
    SolverNonConvergenceError
        after max_iterations, or as soon as an iterate is not finite.
    """
    x = np.array(guess, dtype=float)
    residual = np.inf
    for iteration in range(1, settings.max_iterations + 1):
        x_next = np.asarray(mapping(x), dtype=float)
        residual = max_norm(x_next - x)
        if not np.isfinite(residual):
            logging.debug("Fixed-point iterate diverged at %d.", iteration)
            raise SolverNonConvergenceError(iteration, residual)
        x = x_next
        if residual <= settings.tolerance:
            logging.debug(
                "Fixed-point converged in %d iterations (%.3e).",
                iteration,
                residual,
            )
            return x
    raise SolverNonConvergenceError(settings.max_iterations, residual)


def newton_solve(
    residual: VectorMap,
    guess: FloatArray,
    settings: SolverSettings = DEFAULT_SETTINGS,
    jacobian: Optional[VectorMap] = None,
) -> FloatArray:
    """Solve residual(x) = 0 by Newton's method.

    Parameters
    ----------
    residual: Callable
        Continuously differentiable map R^n -> R^n.

    guess: FloatArray
        Starting point.

    settings: SolverSettings
        Tolerance on |residual(x)|_inf, iteration cap and FD step.

    jacobian: Optional[Callable]
        Analytic Jacobian; central differences are used when omitted.

    Returns
    -------
    FloatArray
        A point with |residual(x)|_inf <= tolerance.

    Raises
    ------
    SingularLinearizationError
        if a Newton matrix is singular.

    SolverNonConvergenceError
        if the tolerance is not met within max_iterations.
    """
    x = np.array(guess, dtype=float).reshape(-1)
    value = np.asarray(residual(x), dtype=float).reshape(-1)
    norm = max_norm(value)
    for iteration in range(settings.max_iterations):
        if norm <= settings.tolerance:
            logging.debug("Newton converged in %d iterations.", iteration)
            return x
        if not np.isfinite(norm):
            raise SolverNonConvergenceError(iteration, norm)
        if jacobian is None:
            matrix = fd_jacobian(residual, x, settings.fd_step)
        else:
            matrix = np.atleast_2d(np.asarray(jacobian(x), dtype=float))
        try:
            increment = linalg.solve(matrix, -value)
        except linalg.LinAlgError as e:
            logging.debug("Newton matrix singular at iteration %d.", iteration)
            raise SingularLinearizationError(iteration, norm) from e
        x = x + increment
        value = np.asarray(residual(x), dtype=float).reshape(-1)
        norm = max_norm(value)
    if norm <= settings.tolerance:
        return x
    raise SolverNonConvergenceError(settings.max_iterations, norm)


def solve_implicit(
    mapping: VectorMap,
    guess: FloatArray,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> FloatArray:
    """Solve x = mapping(x), falling back to Newton on x - mapping(x).

    Raises
    ------
    SolverNonConvergenceError
        if both the fixed-point iteration and Newton's method fail.
    """
    try:
        return fixed_point_solve(mapping, guess, settings)
    except SolverNonConvergenceError as e:
        logging.debug("Fixed-point iteration failed (%s), trying Newton.", e)
    shape = np.shape(guess)

    def residual(x: FloatArray) -> FloatArray:
        image = np.asarray(mapping(x.reshape(shape)), dtype=float)
        return x - image.reshape(-1)

    return newton_solve(residual, guess, settings).reshape(shape)


def safeguarded_scalar_solve(
    func: Callable[[float], float],
    guess: float,
    derivative: Optional[Callable[[float], float]] = None,
    tolerance: float = SCALAR_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> float:
    """Root of a scalar equation: Newton first, then Brent on a bracket.

    A Newton root is accepted once |func| <= tolerance. Otherwise the
    bracket is grown geometrically around the best point so far (the
    Newton iterate if finite, else the guess) until func changes sign.

    Raises
    ------
    SolverNonConvergenceError
        if Newton fails and no sign change is found.
    """
    start = float(guess)
    try:
        root = optimize.newton(
            func,
            guess,
            fprime=derivative,
            tol=tolerance,
            maxiter=max_iterations,
        )
        if np.isfinite(root):
            if abs(func(root)) <= tolerance:
                return float(root)
            start = float(root)
    except (RuntimeError, OverflowError, ZeroDivisionError) as e:
        logging.debug("Scalar Newton failed (%s), bracketing.", e)
    width = max(1.0, abs(start)) * 1e-3
    f_start = func(start)
    for _ in range(max_iterations):
        low, high = start - width, start + width
        f_low, f_high = func(low), func(high)
        if f_start == 0.0:
            return start
        if np.sign(f_low) != np.sign(f_start):
            high, f_high = start, f_start
        elif np.sign(f_high) != np.sign(f_start):
            low, f_low = start, f_start
        else:
            width *= 2.0
            continue
        return float(optimize.brentq(func, low, high, xtol=tolerance))
    raise SolverNonConvergenceError(max_iterations, abs(f_start))
