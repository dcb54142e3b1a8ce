""" Symmetric Zassenhaus splitting and its dense oracle. """

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import fft, linalg

from geometric_integrators.core.constants import (
    KRYLOV_ITERATIONS_R2,
    KRYLOV_ITERATIONS_R3,
    KRYLOV_TOLERANCE,
    REFERENCE_PROPAGATOR_MAX_POINTS,
)
from geometric_integrators.core.types import ComplexArray, R3Variant
from geometric_integrators.schrodinger.grid import SemiclassicalGrid
from geometric_integrators.schrodinger.krylov import krylov_exp_apply
from geometric_integrators.schrodinger.operators import (
    ZassenhausOperators,
    apply_exp_r1,
    operator_matrix,
)
from geometric_integrators.schrodinger.potentials import PotentialData
from geometric_integrators.utils.exceptions import GridTooLargeError

# Exponents applied right to left, with their weights
ZASSENHAUS_SEQUENCE: Tuple[Tuple[str, float], ...] = (
    ("R0", 1.0),
    ("R1", 1.0),
    ("R2", 1.0),
    ("R3", 2.0),
    ("R2", 1.0),
    ("R1", 1.0),
    ("R0", 1.0),
)


@dataclass(frozen=True)
class ZassenhausSplitting:
    """Propagator u -> exp(R0) exp(R1) exp(R2) exp(2 R3) exp(R2)
    exp(R1) exp(R0) u for a fixed grid and potential.

    Parameters
    ----------
    krylov_iterations: Tuple[int, int]
        Minimum Lanczos iterations for the exponentials of R2 and R3.

    krylov_tolerance: Optional[float]
        Remainder bound, relative to |u|, up to which the Lanczos runs
        are extended; None keeps exactly krylov_iterations.

    variant: R3Variant
        Which eps power the fourth-derivative term of R3 carries.
    """

    grid: SemiclassicalGrid
    potential: PotentialData
    krylov_iterations: Tuple[int, int] = (
        KRYLOV_ITERATIONS_R2,
        KRYLOV_ITERATIONS_R3,
    )
    variant: R3Variant = "scaled"
    krylov_tolerance: Optional[float] = KRYLOV_TOLERANCE

    @staticmethod
    def coefficient_string() -> List[str]:
        """Exponent sequence, equal to its reversal."""
        return [f"{weight:g}{name}" for name, weight in ZASSENHAUS_SEQUENCE]

    def operators(self, h: float) -> ZassenhausOperators:
        """Exponents for step h."""
        return ZassenhausOperators(self.grid, self.potential, h, self.variant)

    def step(self, u: np.ndarray, h: Optional[float] = None) -> ComplexArray:
        """One step of size h (default eps^sigma)."""
        h = self.grid.default_step if h is None else h
        ops = self.operators(h)
        r2_iterations, r3_iterations = self.krylov_iterations
        state = np.asarray(u, dtype=complex)
        worst = 0.0
        for name, weight in ZASSENHAUS_SEQUENCE:
            if name == "R0":
                state = np.exp(weight * ops.r0) * state
            elif name == "R1":
                state = apply_exp_r1(
                    state, weight * ops.r1_coefficient, self.grid
                )
            else:
                apply = ops.apply_r2 if name == "R2" else ops.apply_r3
                result = krylov_exp_apply(
                    lambda v, a=apply, c=weight: c * a(v),
                    state,
                    r2_iterations if name == "R2" else r3_iterations,
                    self.krylov_tolerance,
                )
                worst = max(worst, result.residual_estimate)
                state = result.vector
        logging.debug("Zassenhaus step: Krylov residual %.3e.", worst)
        return state


def zassenhaus_step(
    grid: SemiclassicalGrid,
    potential: PotentialData,
    u: np.ndarray,
    h: Optional[float] = None,
    krylov_iterations: Tuple[int, int] = (
        KRYLOV_ITERATIONS_R2,
        KRYLOV_ITERATIONS_R3,
    ),
    variant: R3Variant = "scaled",
    krylov_tolerance: Optional[float] = KRYLOV_TOLERANCE,
) -> ComplexArray:
    """One symmetric Zassenhaus step; unitary up to Krylov round-off."""
    splitting = ZassenhausSplitting(
        grid, potential, krylov_iterations, variant, krylov_tolerance
    )
    return splitting.step(u, h)


def reference_propagator(
    grid: SemiclassicalGrid, potential: PotentialData, h: float
) -> ComplexArray:
    """Dense exp(h (i eps d^2 - i V / eps)) of the collocation matrix.

    Raises
    ------
    GridTooLargeError
        if N exceeds the dense limit.
    """
    n = grid.n_points
    if n > REFERENCE_PROPAGATOR_MAX_POINTS:
        raise GridTooLargeError(n, REFERENCE_PROPAGATOR_MAX_POINTS)
    second = operator_matrix(
        lambda v: fft.ifft(grid.symbol(2) * fft.fft(v)), n
    )
    generator = 1j * h * (
        grid.epsilon * second - np.diag(potential.values) / grid.epsilon
    )
    return linalg.expm(generator)
