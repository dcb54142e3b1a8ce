""" Symplecticity diagnostics. """

from dataclasses import dataclass
from typing import Optional

import numpy as np

from geometric_integrators.core.constants import SYMPLECTIC_CRITERION_TOLERANCE
from geometric_integrators.core.solvers import fd_jacobian
from geometric_integrators.core.tableau import ButcherTableau
from geometric_integrators.core.types import FloatArray, StepMap
from geometric_integrators.utils.numeric_utils import (
    canonical_skew_matrix,
    max_norm,
)


@dataclass(frozen=True)
class SymplecticityReport:
    """Outcome of the algebraic symplecticity criterion of a tableau."""

    is_symplectic: bool
    defect: FloatArray
    max_defect: float


def rk_symplecticity_check(tableau: ButcherTableau) -> SymplecticityReport:
    """Evaluate m_ij = b_i A_ij + b_j A_ji - b_i b_j.

    The method is symplectic iff every m_ij vanishes.
    """
    weighted = tableau.b[:, None] * tableau.a
    defect = weighted + weighted.T - np.outer(tableau.b, tableau.b)
    largest = max_norm(defect)
    return SymplecticityReport(
        largest < SYMPLECTIC_CRITERION_TOLERANCE, defect, largest
    )


def symplecticity_defect(
    step_map: StepMap, x: FloatArray, h: float, delta: Optional[float] = None
) -> float:
    """|DPhi^T J DPhi - J|_inf with DPhi from central differences.

    Raises
    ------
    ValueError
        if the state dimension is odd.
    """
    point = np.asarray(x, dtype=float)
    if point.size % 2:
        raise ValueError("Symplecticity needs an even-dimensional state.")
    jacobian = fd_jacobian(lambda y: step_map(y, h), point, delta)
    structure = canonical_skew_matrix(point.size // 2)
    return max_norm(jacobian.T @ structure @ jacobian - structure)
