""" Kahan's method and its conserved quantities. """

import logging
import warnings

import numpy as np
from scipy import linalg

from geometric_integrators.core.solvers import DEFAULT_SETTINGS, solve_implicit
from geometric_integrators.core.state import SolverSettings
from geometric_integrators.core.types import FloatArray, StateVector
from geometric_integrators.kahan.fields import (
    CubicHamiltonianStructure,
    QuadraticVectorField,
)
from geometric_integrators.utils.exceptions import StepSizeError


def _solve(matrix: FloatArray, rhs: FloatArray, h: float) -> FloatArray:
    with warnings.catch_warnings():
        warnings.simplefilter("error", linalg.LinAlgWarning)
        try:
            return linalg.solve(matrix, rhs)
        except (linalg.LinAlgError, linalg.LinAlgWarning) as e:
            logging.error("Linearly implicit system singular at h=%r.", h)
            raise StepSizeError(h, "the Kahan matrix is singular") from e


def _resolvent_determinant(
    field: QuadraticVectorField, x: FloatArray, h: float, sign: float
) -> float:
    identity = np.eye(field.dimension)
    return float(np.linalg.det(identity + sign * 0.5 * h * field.jacobian(x)))


def field_jacobian(field: QuadraticVectorField, x: FloatArray) -> FloatArray:
    """Exact Jacobian f'(x) from the tensors."""
    return field.jacobian(x)


def kahan_step(
    field: QuadraticVectorField, x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    """One Kahan step: a single dense solve of

    (I - h A(x) - (h/2) B) x' = x + (h/2) B x + h c.

    Raises
    ------
    StepSizeError
        if the matrix is singular for this h.
    """
    del t
    state = np.asarray(x, dtype=float)
    identity = np.eye(field.dimension)
    matrix = identity - h * field.bilinear(state) - 0.5 * h * field.b
    rhs = state + 0.5 * h * (field.b @ state) + h * field.c
    return _solve(matrix, rhs, h)


def kahan_residual(
    field: QuadraticVectorField,
    x: FloatArray,
    x_new: FloatArray,
    h: float,
) -> FloatArray:
    """(x' - x)/h - a(x, x') - B(x + x')/2 - c, zero on a Kahan step."""
    start = np.asarray(x, dtype=float)
    end = np.asarray(x_new, dtype=float)
    return (
        (end - start) / h
        - field.bilinear(start) @ end
        - 0.5 * field.b @ (start + end)
        - field.c
    )


def kahan_rk_form_step(
    field: QuadraticVectorField,
    x: StateVector,
    h: float,
    t: float = 0.0,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> StateVector:
    """(x' - x)/h = 2 f((x + x')/2) - f(x)/2 - f(x')/2, solved iteratively.

    Raises
    ------
    SolverNonConvergenceError
        if the implicit relation cannot be solved.
    """
    state = np.asarray(x, dtype=float)
    start = field.evaluate(t, state)

    def mapping(y: FloatArray) -> FloatArray:
        return state + h * (
            2.0 * field.evaluate(t, 0.5 * (state + y))
            - 0.5 * start
            - 0.5 * field.evaluate(t, y)
        )

    return solve_implicit(mapping, state + h * start, settings)


def modified_energy(
    structure: CubicHamiltonianStructure,
    field: QuadraticVectorField,
    x: FloatArray,
    h: float,
) -> float:
    """H(x) + (h/3) grad H(x)^T (I - (h/2) f'(x))^{-1} f(x).

    Raises
    ------
    StepSizeError
        if I - (h/2) f'(x) is singular.
    """
    point = np.asarray(x, dtype=float)
    energy = float(structure.hamiltonian(point))
    if h == 0:
        return energy
    resolvent = np.eye(field.dimension) - 0.5 * h * field.jacobian(point)
    correction = _solve(resolvent, field.evaluate(0.0, point), h)
    gradient = np.asarray(structure.gradient(point), dtype=float)
    return energy + h / 3.0 * float(gradient @ correction)


def modified_measure_weight(
    field: QuadraticVectorField, x: FloatArray, h: float
) -> float:
    """Density 1 / det(I - (h/2) f'(x)) of the measure Kahan preserves.

    Raises
    ------
    StepSizeError
        if the determinant vanishes.
    """
    determinant = _resolvent_determinant(field, x, h, -1.0)
    if determinant == 0.0:
        raise StepSizeError(h, "I - (h/2) f'(x) is singular")
    return 1.0 / determinant


def kahan_jacobian_determinant(
    field: QuadraticVectorField,
    x: FloatArray,
    x_new: FloatArray,
    h: float,
) -> float:
    """det DPhi(x) = det(I + (h/2) f'(x')) / det(I - (h/2) f'(x))."""
    denominator = _resolvent_determinant(field, x, h, -1.0)
    if denominator == 0.0:
        raise StepSizeError(h, "I - (h/2) f'(x) is singular")
    return _resolvent_determinant(field, x_new, h, 1.0) / denominator
