""" Stormer-Verlet (kick-drift-kick leapfrog) for separable systems. """

from typing import Tuple

import numpy as np

from geometric_integrators.core.types import FloatArray, StateVector
from geometric_integrators.symplectic.hamiltonian import PartitionedSystem


def stormer_verlet_step(
    system: PartitionedSystem,
    state: Tuple[FloatArray, FloatArray],
    h: float,
) -> Tuple[FloatArray, FloatArray]:
    """Explicit second-order symplectic step on (q, p).

    Half kick p, full drift q with M^-1 p, half kick p.
    """
    q, p = (np.asarray(part, dtype=float) for part in state)
    p_half = p - 0.5 * h * np.asarray(system.grad_potential(q), dtype=float)
    q_new = q + h * system.velocity(p_half)
    p_new = p_half - 0.5 * h * np.asarray(
        system.grad_potential(q_new), dtype=float
    )
    return q_new, p_new


def stormer_verlet_packed_step(
    system: PartitionedSystem, x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    """Stormer-Verlet on a canonical packed state (p, q)."""
    del t
    d = system.degrees_of_freedom
    q_new, p_new = stormer_verlet_step(system, (x[d:], x[:d]), h)
    return np.concatenate([p_new, q_new])
