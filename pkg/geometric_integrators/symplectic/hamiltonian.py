""" Canonical and partitioned Hamiltonian systems. """

from dataclasses import dataclass, field
from typing import Any, Callable, Tuple

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from geometric_integrators.core.constants import GRADIENT_CHECK_RTOL
from geometric_integrators.core.state import VectorFieldProblem, fd_gradient
from geometric_integrators.core.types import FloatArray
from geometric_integrators.utils.exceptions import ProblemDefinitionError

PartialGradient = Callable[[FloatArray, FloatArray], FloatArray]


@dataclass(frozen=True)
class HamiltonianSystem:
    """Canonical system p' = -dH/dq, q' = dH/dp on states x = (p, q).

    The first d components of a state are the momenta, the last d the
    positions.
    """

    degrees_of_freedom: int
    hamiltonian: Callable[[FloatArray, FloatArray], float]
    grad_p: PartialGradient
    grad_q: PartialGradient
    name: str = ""

    @property
    def dimension(self) -> int:
        """Phase-space dimension 2d."""
        return 2 * self.degrees_of_freedom

    def split(self, x: FloatArray) -> Tuple[FloatArray, FloatArray]:
        """Return views (p, q) of a packed state."""
        d = self.degrees_of_freedom
        return x[:d], x[d:]

    def energy(self, x: FloatArray) -> float:
        """H at a packed state."""
        p, q = self.split(np.asarray(x, dtype=float))
        return float(self.hamiltonian(p, q))

    def gradient(self, x: FloatArray) -> FloatArray:
        """grad H = (dH/dp, dH/dq) at a packed state."""
        p, q = self.split(np.asarray(x, dtype=float))
        return np.concatenate([self.grad_p(p, q), self.grad_q(p, q)])

    def evaluate(self, _t: float, x: FloatArray) -> FloatArray:
        """Canonical vector field J grad H."""
        p, q = self.split(np.asarray(x, dtype=float))
        return np.concatenate([-self.grad_q(p, q), self.grad_p(p, q)])

    def vector_field(self) -> VectorFieldProblem:
        """The system as an autonomous first-order problem."""
        return VectorFieldProblem(
            self.dimension, self.evaluate, name=self.name or "hamiltonian"
        )

    def check_gradients(
        self, rng: np.random.Generator, points: int = 5
    ) -> None:
        """Compare the supplied gradients with central differences of H.

        Raises
        ------
        ProblemDefinitionError
            if they disagree beyond the relative tolerance.
        """
        for _ in range(points):
            x = rng.standard_normal(self.dimension)
            expected = self.gradient(x)
            approximate = fd_gradient(self.energy, x)
            scale = max(1.0, float(np.max(np.abs(expected))))
            error = np.max(np.abs(expected - approximate))
            if error > GRADIENT_CHECK_RTOL * scale:
                raise ProblemDefinitionError(
                    f"gradients of '{self.name}' do not match H"
                )


@dataclass(frozen=True)
class PartitionedSystem:
    """H(p, q) = 1/2 p^T M^-1 p + V(q) with M symmetric positive definite."""

    mass: FloatArray
    potential: Callable[[FloatArray], float]
    grad_potential: Callable[[FloatArray], FloatArray]
    name: str = ""
    _factor: Any = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        mass = np.atleast_2d(np.asarray(self.mass, dtype=float))
        if mass.shape[0] != mass.shape[1] or not np.allclose(mass, mass.T):
            raise ProblemDefinitionError("mass matrix must be symmetric")
        try:
            factor = cho_factor(mass)
        except LinAlgError as e:
            raise ProblemDefinitionError(
                "mass matrix must be positive definite"
            ) from e
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "_factor", factor)

    @property
    def degrees_of_freedom(self) -> int:
        """Number d of positions."""
        return int(self.mass.shape[0])

    def velocity(self, p: FloatArray) -> FloatArray:
        """M^-1 p."""
        return cho_solve(self._factor, np.asarray(p, dtype=float))

    def kinetic_energy(self, p: FloatArray) -> float:
        """1/2 p^T M^-1 p."""
        return 0.5 * float(np.dot(p, self.velocity(p)))

    def energy(self, q: FloatArray, p: FloatArray) -> float:
        """Total energy at (q, p)."""
        return self.kinetic_energy(p) + float(self.potential(q))

    def as_hamiltonian(self) -> HamiltonianSystem:
        """Canonical view on packed states (p, q)."""
        return HamiltonianSystem(
            self.degrees_of_freedom,
            lambda p, q: self.energy(q, p),
            lambda p, q: self.velocity(p),
            lambda p, q: np.asarray(self.grad_potential(q), dtype=float),
            self.name,
        )


def packed_state(q: FloatArray, p: FloatArray) -> FloatArray:
    """Pack positions and momenta into a canonical state (p, q)."""
    return np.concatenate([np.atleast_1d(p), np.atleast_1d(q)]).astype(float)
