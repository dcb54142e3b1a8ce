""" Free rigid body, Mathieu equation and an isospectral flow. """

from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from geometric_integrators.core.types import FloatArray
from geometric_integrators.integrals.systems import FirstIntegralSystem
from geometric_integrators.liegroup.actions import (
    ISOSPECTRAL,
    LEFT_MULTIPLICATION,
)
from geometric_integrators.liegroup.algebra import AlgebraElement
from geometric_integrators.liegroup.integrators import LieGroupProblem
from geometric_integrators.utils.exceptions import ProblemDefinitionError
from geometric_integrators.utils.numeric_utils import levi_civita_tensor

DEFAULT_INERTIA = (2.0, 1.0, 2.0 / 3.0)

MATHIEU_AMPLITUDE = 0.2

# Tolerances of the high-accuracy reference integration
_REFERENCE_RTOL = 1e-13
_REFERENCE_ATOL = 1e-13


def hat(w: FloatArray) -> FloatArray:
    """Skew matrix with hat(w) v = w x v."""
    w1, w2, w3 = (float(value) for value in w)
    return np.array([[0.0, -w3, w2], [w3, 0.0, -w1], [-w2, w1, 0.0]])


def _inertia(inertia: Sequence[float]) -> FloatArray:
    moments = np.asarray(inertia, dtype=float)
    if moments.shape != (3,) or np.any(moments <= 0):
        raise ProblemDefinitionError(
            "three positive moments of inertia needed"
        )
    return moments


def rigid_body_initial_state() -> FloatArray:
    """Angular momentum (cos 1.1, 0, sin 1.1)."""
    return np.array([np.cos(1.1), 0.0, np.sin(1.1)])


def rigid_body_system(
    inertia: Sequence[float] = DEFAULT_INERTIA,
) -> FirstIntegralSystem:
    """Euler equations x' = x cross (I^-1 x) as x'_i = eps_ijk dI_j dJ_k
    with I = |x|^2/2 (Casimir) and J = sum x_i^2 / (2 I_i) (energy)."""
    moments = _inertia(inertia)
    return FirstIntegralSystem(
        3,
        lambda x: 0.5 * float(np.dot(x, x)),
        lambda x: np.asarray(x, dtype=float),
        second_integral=lambda x: 0.5 * float(np.sum(np.square(x) / moments)),
        second_gradient=lambda x: np.asarray(x, dtype=float) / moments,
        skew_tensor=levi_civita_tensor(),
        name="rigid-body",
    )


def rigid_body_lie_problem(
    inertia: Sequence[float] = DEFAULT_INERTIA,
) -> LieGroupProblem:
    """y' = hat(-I^-1 y) y on the sphere, SO(3) acting from the left."""
    moments = _inertia(inertia)
    return LieGroupProblem(
        lambda t, y: AlgebraElement(hat(-np.asarray(y) / moments), "so"),
        LEFT_MULTIPLICATION,
        rigid_body_initial_state(),
        name="rigid-body-sphere",
    )


def mathieu_matrix(
    t: float, amplitude: float = MATHIEU_AMPLITUDE
) -> FloatArray:
    """a(t) = [[0, 1], [-(1 + amplitude cos t), 0]]."""
    return np.array([[0.0, 1.0], [-(1.0 + amplitude * np.cos(t)), 0.0]])


def mathieu_problem(amplitude: float = MATHIEU_AMPLITUDE) -> LieGroupProblem:
    """Linear v' = a(t) v with traceless a (flow in SL(2))."""
    return LieGroupProblem(
        lambda t, v: AlgebraElement(mathieu_matrix(t, amplitude), "sl"),
        LEFT_MULTIPLICATION,
        np.array([1.0, 0.0]),
        state_independent=True,
        name="mathieu",
    )


def mathieu_reference(
    t_final: float,
    v0: FloatArray,
    amplitude: float = MATHIEU_AMPLITUDE,
) -> FloatArray:
    """High-accuracy solution at t_final (DOP853)."""
    solution = solve_ivp(
        lambda t, v: mathieu_matrix(t, amplitude) @ v,
        (0.0, t_final),
        np.asarray(v0, dtype=float),
        method="DOP853",
        rtol=_REFERENCE_RTOL,
        atol=_REFERENCE_ATOL,
    )
    return solution.y[:, -1]


def isospectral_problem(
    diagonal: Sequence[float] = (1.0, 2.0, 3.0),
    y0: Optional[FloatArray] = None,
) -> LieGroupProblem:
    """y' = [N, y] y - y [N, y] with N diagonal and y symmetric.

    [N, y] is skew for symmetric y, so the flow is isospectral under
    y -> Q y Q^T with Q in SO(n).
    """
    n_matrix = np.diag(np.asarray(diagonal, dtype=float))
    if y0 is None:
        size = n_matrix.shape[0]
        indices = np.arange(size)
        y0 = np.add.outer(indices, indices) / size + np.eye(size)
    return LieGroupProblem(
        lambda t, y: AlgebraElement(n_matrix @ y - y @ n_matrix, "so"),
        ISOSPECTRAL,
        np.asarray(y0, dtype=float),
        name="isospectral",
    )


def spectrum(y: FloatArray) -> FloatArray:
    """Sorted eigenvalues of a symmetric matrix."""
    return np.linalg.eigvalsh(0.5 * (y + y.T))
