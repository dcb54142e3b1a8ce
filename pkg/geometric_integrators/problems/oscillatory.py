""" Highly oscillatory Hamiltonian systems (modified Fermi-Pasta-Ulam). """

from dataclasses import dataclass
from typing import Callable, Sequence, Tuple, Union

import numpy as np

from geometric_integrators.core.state import SecondOrderProblem
from geometric_integrators.core.types import FloatArray
from geometric_integrators.symplectic.hamiltonian import HamiltonianSystem

PositionMomentum = Tuple[FloatArray, FloatArray]


@dataclass(frozen=True)
class OscillatoryHamiltonian:
    """H = ||p||^2/2 + ||Omega q||^2/2 + U(q), q = (q0, q1),
    Omega = blockdiag(0, diag(omega)).

    Parameters
    ----------
    n_slow: int
        Dimension of q0.

    omega: float or Sequence[float]
        One frequency for all fast components, or one per component.

    potential: Callable
        U(q) on the full position vector.

    grad_potential: Callable
        grad U(q).
    """

    n_slow: int
    n_fast: int
    omega: Union[float, Sequence[float]]
    potential: Callable[[FloatArray], float]
    grad_potential: Callable[[FloatArray], FloatArray]
    name: str = ""

    def __post_init__(self) -> None:
        if self.n_slow < 0 or self.n_fast < 1:
            raise ValueError("Need n_slow >= 0 and n_fast >= 1.")
        frequencies = np.broadcast_to(
            np.asarray(self.omega, dtype=float), (self.n_fast,)
        ).copy()
        if np.any(frequencies <= 0):
            raise ValueError("Frequencies must be positive.")
        object.__setattr__(self, "omega", frequencies)

    @property
    def dimension(self) -> int:
        """Number of positions n0 + n1."""
        return self.n_slow + self.n_fast

    @property
    def omega_matrix(self) -> FloatArray:
        """Omega = blockdiag(0_{n0}, diag(omega))."""
        return np.diag(np.concatenate([np.zeros(self.n_slow), self.omega]))

    def fast(self, vector: FloatArray) -> FloatArray:
        """The fast block of a position or momentum vector."""
        return np.asarray(vector, dtype=float)[self.n_slow :]

    def slow(self, vector: FloatArray) -> FloatArray:
        """The slow block of a position or momentum vector."""
        return np.asarray(vector, dtype=float)[: self.n_slow]

    def hamiltonian(self) -> HamiltonianSystem:
        """Canonical view on packed states (p, q)."""
        squares = np.diag(self.omega_matrix) ** 2

        def energy(p: FloatArray, q: FloatArray) -> float:
            return total_energy(self, (p, q))

        return HamiltonianSystem(
            self.dimension,
            energy,
            lambda p, q: np.asarray(p, dtype=float),
            lambda p, q: squares * q + self.grad_potential(q),
            self.name,
        )

    def second_order(self) -> SecondOrderProblem:
        """y'' + Omega^2 y = -grad U(y)."""
        return SecondOrderProblem(
            self.omega_matrix,
            lambda y: -np.asarray(self.grad_potential(y), dtype=float),
            self.potential,
            self.name,
        )


def oscillatory_energy(
    osc: OscillatoryHamiltonian, state: PositionMomentum
) -> float:
    """I = ||p1||^2/2 + sum_j omega_j^2 q1_j^2 / 2."""
    p, q = state
    p1, q1 = osc.fast(p), osc.fast(q)
    return 0.5 * float(p1 @ p1) + 0.5 * float(np.sum((osc.omega * q1) ** 2))


def total_energy(
    osc: OscillatoryHamiltonian, state: PositionMomentum
) -> float:
    """I + ||p0||^2/2 + U(q0, q1)."""
    p, q = state
    p0 = osc.slow(p)
    return (
        oscillatory_energy(osc, state)
        + 0.5 * float(p0 @ p0)
        + float(osc.potential(np.asarray(q, dtype=float)))
    )


def nonresonance_ok(h: float, omega: float, n_terms: int, c: float) -> bool:
    """True iff |sin(m h omega / 2)| >= c sqrt(h) for m = 1..n_terms.

    Raises
    ------
    ValueError
        if n_terms < 2 or c <= 0.
    """
    if n_terms < 2:
        raise ValueError(f"The condition needs N >= 2, got {n_terms}.")
    if c <= 0:
        raise ValueError(f"The constant c must be positive, got {c}.")
    m = np.arange(1, n_terms + 1)
    return bool(np.all(np.abs(np.sin(0.5 * m * h * omega)) >= c * np.sqrt(h)))


def _spring_matrix(n_pairs: int) -> FloatArray:
    """Rows give the soft spring elongations from (q0, q1)."""
    m = n_pairs
    matrix = np.zeros((m + 1, 2 * m))
    matrix[0, 0], matrix[0, m] = 1.0, -1.0
    for i in range(1, m):
        matrix[i, i], matrix[i, m + i] = 1.0, -1.0
        matrix[i, i - 1], matrix[i, m + i - 1] = -1.0, -1.0
    matrix[m, m - 1], matrix[m, 2 * m - 1] = 1.0, 1.0
    return matrix


def fpu_system(
    n_pairs: int = 3, omega: float = 50.0, coupling: float = 1.0
) -> OscillatoryHamiltonian:
    """Stiff harmonic springs alternating with soft quartic springs.

    q0_i and q1_i are the centre displacement and the elongation of
    stiff spring i; U = coupling/4 sum of the soft elongations^4:
    (q0_1 - q1_1), (q0_{i+1} - q1_{i+1} - q0_i - q1_i), (q0_m + q1_m).

    Raises
    ------
    ValueError
        if n_pairs < 1 or omega < 1.
    """
    if n_pairs < 1:
        raise ValueError(f"Need at least one spring pair, got {n_pairs}.")
    if omega < 1.0:
        raise ValueError(f"The stiff frequency must be >= 1, got {omega}.")
    springs = _spring_matrix(n_pairs)

    def potential(q: FloatArray) -> float:
        return 0.25 * coupling * float(np.sum((springs @ q) ** 4))

    def grad_potential(q: FloatArray) -> FloatArray:
        return coupling * springs.T @ (springs @ q) ** 3

    return OscillatoryHamiltonian(
        n_pairs, n_pairs, omega, potential, grad_potential, "fpu"
    )


def fpu_initial_state(n_pairs: int = 3, omega: float = 50.0) -> FloatArray:
    """q0_1 = p0_1 = 1, q1_1 = 1/omega, p1_1 = 1, all else zero;
    packed as (p, q)."""
    q = np.zeros(2 * n_pairs)
    p = np.zeros(2 * n_pairs)
    q[0], p[0] = 1.0, 1.0
    q[n_pairs], p[n_pairs] = 1.0 / omega, 1.0
    return np.concatenate([p, q])


def multi_frequency_system(
    frequencies: Sequence[float] = (20.0, 40.0), coupling: float = 1.0
) -> OscillatoryHamiltonian:
    """One slow degree of freedom coupled to several fast ones through
    U = coupling/4 (q0 - sum_j q1_j)^4."""
    n_fast = len(frequencies)
    direction = np.concatenate([[1.0], -np.ones(n_fast)])

    def potential(q: FloatArray) -> float:
        return 0.25 * coupling * float(direction @ q) ** 4

    def grad_potential(q: FloatArray) -> FloatArray:
        return coupling * float(direction @ q) ** 3 * direction

    return OscillatoryHamiltonian(
        1,
        n_fast,
        tuple(frequencies),
        potential,
        grad_potential,
        "multi-frequency",
    )
