""" Classical mechanics benchmarks: oscillators, pendulum, Kepler, N-body. """

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from geometric_integrators.composition.splitting import SplitProblem
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray
from geometric_integrators.symplectic.hamiltonian import (
    HamiltonianSystem,
    PartitionedSystem,
    packed_state,
)
from geometric_integrators.utils.exceptions import ProblemDefinitionError

# Choreography of three equal masses (G = 1)
FIGURE_EIGHT: Dict[str, Any] = {
    "masses": [1.0, 1.0, 1.0],
    "positions": [
        [0.97000436, -0.24308753],
        [-0.97000436, 0.24308753],
        [0.0, 0.0],
    ],
    "velocities": [
        [0.466203685, 0.43236573],
        [0.466203685, 0.43236573],
        [-0.93240737, -0.86473146],
    ],
}


def kinetic_potential_split(system: PartitionedSystem) -> SplitProblem:
    """T + V split on packed states (p, q) with exact drift and kick."""
    d = system.degrees_of_freedom

    def drift_field(_t: float, x: FloatArray) -> FloatArray:
        return np.concatenate([np.zeros(d), system.velocity(x[:d])])

    def kick_field(_t: float, x: FloatArray) -> FloatArray:
        return np.concatenate(
            [-np.asarray(system.grad_potential(x[d:])), np.zeros(d)]
        )

    def drift(x: FloatArray, tau: float) -> FloatArray:
        return np.concatenate([x[:d], x[d:] + tau * system.velocity(x[:d])])

    def kick(x: FloatArray, tau: float) -> FloatArray:
        gradient = np.asarray(system.grad_potential(x[d:]), dtype=float)
        return np.concatenate([x[:d] - tau * gradient, x[d:]])

    return SplitProblem(
        [
            VectorFieldProblem(2 * d, drift_field, name="kinetic"),
            VectorFieldProblem(2 * d, kick_field, name="potential"),
        ],
        [drift, kick],
        name=system.name,
    )


def harmonic_oscillator(frequency: float = 1.0) -> PartitionedSystem:
    """H = p^2/2 + frequency^2 q^2/2."""
    return PartitionedSystem(
        np.eye(1),
        lambda q: 0.5 * frequency**2 * float(q[0] ** 2),
        lambda q: frequency**2 * np.asarray(q, dtype=float),
        "harmonic",
    )


def harmonic_solution(
    frequency: float, q0: float, p0: float
) -> Callable[[float], FloatArray]:
    """Exact packed state (p(t), q(t)) of the harmonic oscillator."""

    def solution(t: float) -> FloatArray:
        c, s = np.cos(frequency * t), np.sin(frequency * t)
        q = q0 * c + p0 / frequency * s
        p = p0 * c - frequency * q0 * s
        return np.array([p, q])

    return solution


def pendulum() -> PartitionedSystem:
    """H = p^2/2 - cos q."""
    return PartitionedSystem(
        np.eye(1),
        lambda q: -float(np.cos(q[0])),
        lambda q: np.sin(np.asarray(q, dtype=float)),
        "pendulum",
    )


def quartic_oscillator() -> PartitionedSystem:
    """H = p^2/2 + q^4/4, a cubic vector field."""
    return PartitionedSystem(
        np.eye(1),
        lambda q: 0.25 * float(q[0] ** 4),
        lambda q: np.asarray(q, dtype=float) ** 3,
        "quartic",
    )


def kepler_partitioned() -> PartitionedSystem:
    """H = |p|^2/2 - 1/|q| in the plane."""

    def potential(q: FloatArray) -> float:
        return -1.0 / float(np.linalg.norm(q))

    def grad_potential(q: FloatArray) -> FloatArray:
        position = np.asarray(q, dtype=float)
        return position / float(np.linalg.norm(position)) ** 3

    return PartitionedSystem(np.eye(2), potential, grad_potential, "kepler")


def kepler() -> HamiltonianSystem:
    """Kepler Hamiltonian |p|^2 / 2 - 1 / |q|; the orbit shape comes
    from kepler_initial_state.
    """
    return kepler_partitioned().as_hamiltonian()


def kepler_initial_state(eccentricity: float = 0.0) -> FloatArray:
    """Pericentre start q = (1 - e, 0), p = (0, sqrt((1 + e)/(1 - e)))."""
    if not 0.0 <= eccentricity < 1.0:
        raise ValueError(f"Eccentricity must lie in [0, 1): {eccentricity}.")
    q = np.array([1.0 - eccentricity, 0.0])
    p = np.array([0.0, np.sqrt((1.0 + eccentricity) / (1.0 - eccentricity))])
    return packed_state(q, p)


def angular_momentum(x: FloatArray) -> float:
    """q1 p2 - q2 p1 of a planar packed state (p, q)."""
    p1, p2, q1, q2 = (float(value) for value in x)
    return q1 * p2 - q2 * p1


@dataclass(frozen=True)
class NBodyProblem:
    """Point masses under Newtonian gravity, positions in R^spatial.

    Packed states are (p_1, ..., p_N, q_1, ..., q_N).
    """

    masses: Sequence[float]
    spatial_dimension: int = 2
    gravitational_constant: float = 1.0

    def __post_init__(self) -> None:
        masses = np.asarray(self.masses, dtype=float)
        if masses.size < 2 or np.any(masses <= 0):
            raise ProblemDefinitionError("N-body needs >= 2 positive masses")
        object.__setattr__(self, "masses", masses)

    @property
    def n_bodies(self) -> int:
        """Number of bodies."""
        return int(self.masses.size)

    def _positions(self, q: FloatArray) -> FloatArray:
        return np.asarray(q, dtype=float).reshape(
            self.n_bodies, self.spatial_dimension
        )

    def potential(self, q: FloatArray) -> float:
        """-G sum_{i<j} m_i m_j / |q_i - q_j|."""
        positions = self._positions(q)
        total = 0.0
        for i in range(self.n_bodies):
            others = positions[i + 1 :] - positions[i]
            distances = np.linalg.norm(others, axis=1)
            total -= float(
                np.sum(self.masses[i] * self.masses[i + 1 :] / distances)
            )
        return self.gravitational_constant * total

    def grad_potential(self, q: FloatArray) -> FloatArray:
        """Gradient of the potential."""
        positions = self._positions(q)
        gradient = np.zeros_like(positions)
        for i in range(self.n_bodies):
            offsets = positions[i] - positions
            distances = np.linalg.norm(offsets, axis=1)
            distances[i] = np.inf
            weights = self.masses[i] * self.masses / distances**3
            gradient[i] = np.sum(weights[:, None] * offsets, axis=0)
        return self.gravitational_constant * gradient.reshape(-1)

    def partitioned(self) -> PartitionedSystem:
        """Separable form with the block-diagonal mass matrix."""
        mass = np.diag(np.repeat(self.masses, self.spatial_dimension))
        return PartitionedSystem(
            mass, self.potential, self.grad_potential, "nbody"
        )

    def total_momentum(self, x: FloatArray) -> FloatArray:
        """Sum of the momenta, a linear first integral."""
        size = self.n_bodies * self.spatial_dimension
        momenta = np.asarray(x, dtype=float)[:size]
        shape = (self.n_bodies, self.spatial_dimension)
        return momenta.reshape(shape).sum(axis=0)


def nbody(config: Optional[Dict[str, Any]] = None) -> HamiltonianSystem:
    """Canonical N-body system from a config with "masses" (and an
    optional "gravitational_constant")."""
    config = config or FIGURE_EIGHT
    problem = NBodyProblem(
        config["masses"],
        len(config["positions"][0]),
        float(config.get("gravitational_constant", 1.0)),
    )
    return problem.partitioned().as_hamiltonian()


def nbody_initial_state(config: Optional[Dict[str, Any]] = None) -> FloatArray:
    """Packed (p, q) from positions and velocities (or momenta)."""
    config = config or FIGURE_EIGHT
    masses = np.asarray(config["masses"], dtype=float)
    positions = np.asarray(config["positions"], dtype=float)
    if "momenta" in config:
        momenta = np.asarray(config["momenta"], dtype=float)
    else:
        velocities = np.asarray(config["velocities"], dtype=float)
        momenta = masses[:, None] * velocities
    return packed_state(positions.reshape(-1), momenta.reshape(-1))
