""" Lanczos approximation of exp(A) u for skew-Hermitian A. """

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import linalg

from geometric_integrators.core.constants import (
    KRYLOV_BREAKDOWN_TOLERANCE,
    KRYLOV_MAX_ITERATIONS,
)
from geometric_integrators.core.types import ComplexArray


@dataclass(frozen=True)
class KrylovResult:
    """exp(A) u projected on a Krylov space, with the remainder estimate
    beta_0 beta_m |e_m^T exp(-i T) e_1|."""

    vector: ComplexArray
    residual_estimate: float
    iterations: int


def _projected_exponential(
    alpha: np.ndarray, beta: np.ndarray, size: int
) -> ComplexArray:
    tridiagonal = (
        np.diag(alpha[:size])
        + np.diag(beta[: size - 1], 1)
        + np.diag(beta[: size - 1], -1)
    )
    return linalg.expm(-1j * tridiagonal)[:, 0]


def krylov_exp_apply(
    operator: Callable[[np.ndarray], np.ndarray],
    u: np.ndarray,
    iterations: int,
    tolerance: Optional[float] = None,
    max_iterations: int = KRYLOV_MAX_ITERATIONS,
) -> KrylovResult:
    """exp(A) u for skew-Hermitian A by Lanczos on the Hermitian iA.

    Full reorthogonalisation keeps the basis orthonormal, so the result
    has the norm of u up to round-off. A lucky breakdown ends the
    iteration with an exact result.

    Parameters
    ----------
    operator: Callable[[np.ndarray], np.ndarray]
        v -> A v.

    u: np.ndarray
        Vector to propagate.

    iterations: int
        Krylov dimension; the minimum dimension when a tolerance is
        given.

    tolerance: Optional[float]
        If given, the space grows until the remainder estimate is at
        most tolerance * |u| or max_iterations is reached.

    max_iterations: int
        Upper bound on the dimension when a tolerance is given.

    Raises
    ------
    ValueError
        if iterations < 1 or the tolerance is not positive.
    """
    if iterations < 1:
        raise ValueError(
            f"Krylov iterations must be positive, got {iterations}."
        )
    if tolerance is not None and tolerance <= 0.0:
        raise ValueError(f"Krylov tolerance must be positive: {tolerance}.")
    start = np.asarray(u, dtype=complex)
    beta0 = float(np.linalg.norm(start))
    if beta0 == 0.0:
        return KrylovResult(np.zeros_like(start), 0.0, 0)
    limit = (
        iterations if tolerance is None else max(iterations, max_iterations)
    )
    limit = min(limit, start.size)
    basis = np.zeros((limit, start.size), dtype=complex)
    alpha = np.zeros(limit)
    beta = np.zeros(limit)
    basis[0] = start / beta0
    size = limit
    for j in range(limit):
        w = 1j * np.asarray(operator(basis[j]), dtype=complex)
        alpha[j] = float(np.real(np.vdot(basis[j], w)))
        w = w - alpha[j] * basis[j]
        if j > 0:
            w = w - beta[j - 1] * basis[j - 1]
        w = w - basis[: j + 1].T @ (basis[: j + 1].conj() @ w)
        beta[j] = float(np.linalg.norm(w))
        if beta[j] <= KRYLOV_BREAKDOWN_TOLERANCE * max(1.0, abs(alpha[j])):
            logging.debug("Lanczos breakdown after %d iterations.", j + 1)
            size = j + 1
            beta[j] = 0.0
            break
        if tolerance is not None and j + 1 >= iterations:
            last = _projected_exponential(alpha, beta, j + 1)[-1]
            if beta[j] * abs(last) <= tolerance:
                size = j + 1
                break
        if j + 1 < limit:
            basis[j + 1] = w / beta[j]
    coefficients = _projected_exponential(alpha, beta, size)
    vector = beta0 * (basis[:size].T @ coefficients)
    residual = beta0 * beta[size - 1] * abs(coefficients[-1])
    if tolerance is not None and residual > tolerance * beta0:
        logging.warning(
            "Lanczos stopped at %d iterations with remainder %.3e.",
            size,
            residual,
        )
    return KrylovResult(vector, float(residual), size)
