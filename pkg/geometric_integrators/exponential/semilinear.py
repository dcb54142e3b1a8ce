""" Exponential Euler for semilinear problems y' = A y + b(y). """

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.linalg import expm

from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray, StateVector


def _augmented_exponential(matrix: FloatArray) -> FloatArray:
    """expm([[M, I], [0, 0]]) = [[e^M, phi1(M)], [0, I]]."""
    n = matrix.shape[0]
    augmented = np.zeros((2 * n, 2 * n), dtype=matrix.dtype)
    augmented[:n, :n] = matrix
    augmented[:n, n:] = np.eye(n)
    return expm(augmented)


def phi1(matrix: FloatArray) -> FloatArray:
    """phi1(M) = sum_k M^k / (k+1)!, also for singular M.

    Computed from the exponential of an augmented block matrix, so no
    inverse of M is ever formed.
    """
    m = np.atleast_2d(np.asarray(matrix))
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"phi1 needs a square matrix, got {m.shape}.")
    return _augmented_exponential(m)[: m.shape[0], m.shape[0] :]


@lru_cache(maxsize=64)
def _propagators(
    raw: bytes, n: int, h: float
) -> Tuple[FloatArray, FloatArray]:
    logging.debug("Computing exponential propagators for h = %g.", h)
    matrix = np.frombuffer(raw, dtype=float).reshape(n, n)
    blocks = _augmented_exponential(h * matrix)
    return blocks[:n, :n], blocks[:n, n:]


@dataclass(frozen=True)
class SemilinearProblem:
    """y' = A y + b(y) with a (possibly stiff) matrix A."""

    a: FloatArray
    nonlinearity: Callable[[FloatArray], FloatArray]
    name: str = ""

    def __post_init__(self) -> None:
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        if a.shape[0] != a.shape[1]:
            raise ValueError("A must be square.")
        object.__setattr__(self, "a", a)

    @property
    def dimension(self) -> int:
        """State dimension d."""
        return int(self.a.shape[0])

    def b(self, y: FloatArray) -> FloatArray:
        """Evaluate the nonlinearity."""
        return np.asarray(self.nonlinearity(y), dtype=float)

    def evaluate(self, _t: float, y: FloatArray) -> FloatArray:
        """Full right-hand side A y + b(y)."""
        return self.a @ y + self.b(y)

    def vector_field(self) -> VectorFieldProblem:
        """The problem as a first-order field."""
        return VectorFieldProblem(
            self.dimension, self.evaluate, name=self.name
        )


def exponential_euler_step(
    problem: SemilinearProblem, y: StateVector, h: float, t: float = 0.0
) -> StateVector:
    """y' = e^{hA} y + h phi1(hA) b(y)."""
    del t
    state = np.asarray(y, dtype=float)
    a = np.ascontiguousarray(problem.a)
    exponential, phi = _propagators(a.tobytes(), a.shape[0], float(h))
    return exponential @ state + h * (phi @ problem.b(state))
