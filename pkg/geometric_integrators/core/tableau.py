""" Butcher tableaux of Runge-Kutta methods. """

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from geometric_integrators.core.types import FloatArray
from geometric_integrators.utils.exceptions import ProblemDefinitionError


@dataclass(frozen=True)
class ButcherTableau:
    """Coefficients (A, b, c) of an s-stage Runge-Kutta method."""

    a: FloatArray
    b: FloatArray
    c: FloatArray
    order: int
    name: str = ""
    explicit: bool = field(init=False)

    def __post_init__(self) -> None:
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        c = np.asarray(self.c, dtype=float).reshape(-1)
        stages = b.size
        if a.shape != (stages, stages) or c.size != stages:
            raise ProblemDefinitionError(
                f"tableau '{self.name}' has inconsistent shapes"
            )
        if not np.allclose(a.sum(axis=1), c, atol=1e-14, rtol=0.0):
            raise ProblemDefinitionError(
                f"tableau '{self.name}' violates c_i = sum_j A_ij"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "explicit", bool(np.all(np.triu(a) == 0.0)))

    @property
    def stages(self) -> int:
        """Number s of stages."""
        return int(self.b.size)


def _tableau(
    a: Tuple[Tuple[float, ...], ...],
    b: Tuple[float, ...],
    order: int,
    name: str,
) -> ButcherTableau:
    matrix = np.array(a, dtype=float)
    return ButcherTableau(matrix, np.array(b), matrix.sum(axis=1), order, name)


EXPLICIT_EULER = _tableau(((0.0,),), (1.0,), 1, "explicit-euler")

CLASSICAL_RK4 = _tableau(
    (
        (0.0, 0.0, 0.0, 0.0),
        (0.5, 0.0, 0.0, 0.0),
        (0.0, 0.5, 0.0, 0.0),
        (0.0, 0.0, 1.0, 0.0),
    ),
    (1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0),
    4,
    "rk4",
)

# Three-stage third-order tableau underlying the RKMK3 Lie-group scheme
KUTTA_RK3 = _tableau(
    (
        (0.0, 0.0, 0.0),
        (0.5, 0.0, 0.0),
        (-1.0, 2.0, 0.0),
    ),
    (1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0),
    3,
    "kutta-rk3",
)
