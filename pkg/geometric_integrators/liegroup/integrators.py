""" Lie-group integrators: RKMK3 and fourth-order Magnus. """

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from geometric_integrators.liegroup.actions import GroupAction
from geometric_integrators.liegroup.algebra import (
    AlgebraElement,
    commutator,
    expm,
)
from geometric_integrators.utils.exceptions import IncompatibleProblemError

_SQRT3 = np.sqrt(3.0)


@dataclass(frozen=True)
class LieGroupProblem:
    """y' = a(t, y) . y on a manifold acted on by a matrix group.

    Parameters
    ----------
    coefficient: Callable
        a(t, y), an algebra element.

    action: GroupAction
        How group elements move manifold points.

    y0: Any
        Initial manifold point (vector or matrix).

    state_independent: bool
        True when a depends on t only (linear equation v' = a(t) v).
    """

    coefficient: Callable[[float, np.ndarray], AlgebraElement]
    action: GroupAction
    y0: Any = None
    state_independent: bool = False
    name: str = ""

    def a(self, t: float, y: np.ndarray) -> AlgebraElement:
        """Evaluate the algebra-valued coefficient."""
        return self.coefficient(t, y)


def rkmk3_step(
    problem: LieGroupProblem, y: np.ndarray, t: float, h: float
) -> np.ndarray:
    """Third-order Runge-Kutta-Munthe-Kaas step.

    k1 = a(t, y), k2 = a(t + h/2, exp(h k1 / 2) . y),
    k3 = a(t + h, exp(-h k1 + 2 h k2) . y),
    D = h (k1/6 + 2 k2/3 + k3/6), w = D + (h/6)[D, k1],
    y' = exp(w) . y.
    """
    h = float(h)
    action = problem.action
    k1 = problem.a(t, y)
    k2 = problem.a(t + 0.5 * h, action.apply(expm(k1 * (0.5 * h)), y))
    k3 = problem.a(t + h, action.apply(expm(k1 * (-h) + k2 * (2.0 * h)), y))
    delta = (k1 * (1.0 / 6.0) + k2 * (2.0 / 3.0) + k3 * (1.0 / 6.0)) * h
    omega = delta + commutator(delta, k1) * (h / 6.0)
    return action.apply(expm(omega), y)


def magnus4_step(
    problem: LieGroupProblem, v: np.ndarray, t: float, h: float
) -> np.ndarray:
    """Fourth-order Gauss-Magnus step for v' = a(t) v.

    w = (h/2)(a1 + a2) + (sqrt(3)/12) h^2 [a2, a1] with a1, a2 at the
    two Gauss nodes of [t, t + h]; returns exp(w) . v.

    Raises
    ------
    IncompatibleProblemError
        if a depends on the state.
    """
    if not problem.state_independent:
        raise IncompatibleProblemError("magnus4", problem.name or "lie-group")
    h = float(h)
    a1 = problem.a(t + (0.5 - _SQRT3 / 6.0) * h, v)
    a2 = problem.a(t + (0.5 + _SQRT3 / 6.0) * h, v)
    omega = (a1 + a2) * (0.5 * h) + commutator(a2, a1) * (
        _SQRT3 / 12.0 * h**2
    )
    return problem.action.apply(expm(omega), v)


def lie_stepper(
    method: Callable[..., np.ndarray],
) -> Callable[..., np.ndarray]:
    """Adapt a Lie-group step to the driver's (problem, x, h, t) order.

    States are flattened so the driver can store them; the matrix shape
    is recovered from y0.
    """

    def step(
        problem: LieGroupProblem, x: np.ndarray, h: float, t: float = 0.0
    ) -> np.ndarray:
        shape = np.shape(problem.y0)
        point = np.reshape(x, shape)
        return np.asarray(method(problem, point, t, h)).reshape(-1)

    return step
