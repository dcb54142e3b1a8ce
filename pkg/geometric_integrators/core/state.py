""" State vectors, trajectories and problem abstractions. """

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from geometric_integrators.core.constants import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    GRADIENT_CHECK_RTOL,
    MACHINE_EPSILON,
)
from geometric_integrators.core.types import FloatArray, StateVector
from geometric_integrators.utils.exceptions import (
    NonFiniteStateError,
    ProblemDefinitionError,
)


def as_state(values: object, step: Optional[int] = None) -> StateVector:
    """Copy values into a finite one-dimensional float array.

    Parameters
    ----------
    values: object
        Anything numpy can turn into a real vector.

    step: Optional[int]
        Step index reported if the values are not finite.

    Returns
    -------
    StateVector
        A fresh float64 array.

    Raises
    ------
    NonFiniteStateError
        if any entry is NaN or Inf.
    """
    state = np.array(values, dtype=float, copy=True).reshape(-1)
    if not np.all(np.isfinite(state)):
        raise NonFiniteStateError(step)
    return state


@dataclass(frozen=True)
class SolverSettings:
    """Configuration of the implicit-equation solvers."""

    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    # None selects eps^(1/3) * max(1, |x|_inf)
    fd_step: Optional[float] = None

    def __post_init__(self) -> None:
        if self.tolerance < 10 * MACHINE_EPSILON:
            raise ValueError(
                f"Tolerance {self.tolerance} is below 10 machine epsilons."
            )
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer.")
        if self.fd_step is not None and self.fd_step <= 0:
            raise ValueError("fd_step must be positive.")


@dataclass(frozen=True)
class VectorFieldProblem:
    """An ODE x' = f(t, x) in R^d."""

    dimension: int
    evaluate: Callable[[float, FloatArray], FloatArray]
    jacobian: Optional[Callable[[FloatArray], FloatArray]] = None
    autonomous: bool = True
    # Total degree when f is polynomial, used to pick exact quadratures
    polynomial_degree: Optional[int] = None
    name: str = ""

    def __call__(self, t: float, x: FloatArray) -> FloatArray:
        return np.asarray(self.evaluate(t, x), dtype=float)

    def scaled(self, factor: float) -> "VectorFieldProblem":
        """The field factor * f (used for negative-time sub-flows)."""
        jacobian = self.jacobian
        return VectorFieldProblem(
            self.dimension,
            lambda t, x: factor * self(t, x),
            None if jacobian is None else (lambda x: factor * jacobian(x)),
            self.autonomous,
            self.polynomial_degree,
            self.name,
        )


@dataclass(frozen=True)
class SecondOrderProblem:
    """y'' + Omega^2 y = g(y) with symmetric positive semidefinite Omega."""

    omega: FloatArray
    nonlinearity: Callable[[FloatArray], FloatArray]
    potential: Optional[Callable[[FloatArray], float]] = None
    name: str = ""

    def __post_init__(self) -> None:
        omega = np.atleast_2d(np.asarray(self.omega, dtype=float))
        if omega.shape[0] != omega.shape[1]:
            raise ProblemDefinitionError("Omega must be square")
        if not np.allclose(omega, omega.T, atol=1e-14, rtol=0.0):
            raise ProblemDefinitionError("Omega must be symmetric")
        object.__setattr__(self, "omega", omega)

    @property
    def dimension(self) -> int:
        """Number n of positions."""
        return int(self.omega.shape[0])

    def g(self, y: FloatArray) -> FloatArray:
        """Evaluate the nonlinearity."""
        return np.asarray(self.nonlinearity(y), dtype=float)

    def check_potential(
        self, rng: np.random.Generator, points: int = 5
    ) -> None:
        """Check g = -grad U by central differences at random points.

        Raises
        ------
        ProblemDefinitionError
            if the potential gradient and g disagree.
        """
        if self.potential is None:
            return
        potential = self.potential
        for _ in range(points):
            y = rng.standard_normal(self.dimension)
            gradient = fd_gradient(potential, y)
            expected = -self.g(y)
            scale = max(1.0, float(np.max(np.abs(expected))))
            error = np.max(np.abs(gradient - expected))
            if error > GRADIENT_CHECK_RTOL * scale:
                raise ProblemDefinitionError("g does not match -grad U")


def fd_gradient(
    function: Callable[[FloatArray], float],
    x: FloatArray,
    delta: Optional[float] = None,
) -> FloatArray:
    """Central-difference gradient of a scalar function."""
    point = np.asarray(x, dtype=float)
    if delta is None:
        delta = MACHINE_EPSILON ** (1.0 / 3.0) * max(
            1.0, float(np.max(np.abs(point), initial=0.0))
        )
    gradient = np.empty_like(point)
    for i in range(point.size):
        shift = np.zeros_like(point)
        shift[i] = delta
        gradient[i] = (function(point + shift) - function(point - shift)) / (
            2.0 * delta
        )
    return gradient


@dataclass
class Trajectory:
    """Time-stamped states with named observable channels."""

    times: FloatArray
    states: FloatArray
    observables: Dict[str, FloatArray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.atleast_2d(np.asarray(self.states, dtype=float))
        if self.states.shape[0] != self.times.size:
            raise ValueError("times and states must have the same length.")
        if self.times.size > 1:
            increments = np.diff(self.times)
            if not (np.all(increments > 0) or np.all(increments < 0)):
                raise ValueError("times must be strictly monotone.")
        for name, channel in self.observables.items():
            if np.size(channel) != self.times.size:
                raise ValueError(
                    f"Observable '{name}' has {np.size(channel)} samples "
                    f"for {self.times.size} times."
                )

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def final_state(self) -> StateVector:
        """Last state of the trajectory."""
        return self.states[-1].copy()

    def channel(self, name: str) -> FloatArray:
        """Samples of an observable.

        Raises
        ------
        KeyError
            if the observable was not recorded.
        """
        return self.observables[name]

    def max_drift(self, name: str) -> float:
        """max_n |obs_n - obs_0| of an observable."""
        series = self.observables[name]
        return float(np.max(np.abs(series - series[0])))

    def observable_names(self) -> List[str]:
        """Recorded observables in insertion order."""
        return list(self.observables)
