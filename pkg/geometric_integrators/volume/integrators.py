""" Volume-preserving integrators and volume diagnostics. """

from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Optional, Union

import numpy as np

from geometric_integrators.composition.scheme import symmetric_scheme
from geometric_integrators.composition.splitting import (
    SplitProblem,
    compose_step,
)
from geometric_integrators.core.solvers import (
    fd_jacobian,
    safeguarded_scalar_solve,
)
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray, StateVector, StepMap
from geometric_integrators.symplectic.runge_kutta import implicit_midpoint_step
from geometric_integrators.volume.fields import (
    DivergenceFree3D,
    PolynomialVectorField,
    vp_split,
    vp_split_polynomial,
)

SplittableField = Union[DivergenceFree3D, PolynomialVectorField]

# g(x1', x_j, x_k, h) -> real
TriangularRelation = Callable[[float, float, float, float], float]

_PARTIAL_STEP = 1e-6


def _midpoint_flow(
    piece: VectorFieldProblem, x: FloatArray, tau: float
) -> FloatArray:
    return implicit_midpoint_step(piece, x, tau)


@lru_cache(maxsize=32)
def volume_preserving_split(field: SplittableField) -> SplitProblem:
    """Split problem whose pieces are two-dimensional divergence-free
    fields, each advanced by the (area-preserving) implicit midpoint rule.
    """
    if isinstance(field, DivergenceFree3D):
        pieces = list(vp_split(field))
    else:
        pieces = vp_split_polynomial(field)
    return SplitProblem(
        pieces,
        [partial(_midpoint_flow, piece) for piece in pieces],
        name=field.name,
    )


def vp_splitting_step(
    field: SplittableField, x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    """Symmetric composition of the volume-preserving split sub-flows.

    Raises
    ------
    SolverNonConvergenceError
        if a midpoint substep fails.
    """
    split = volume_preserving_split(field)
    return compose_step(symmetric_scheme(split.n_parts), split, x, h, t)


def volume_defect(
    step_map: StepMap, x: FloatArray, h: float, delta: Optional[float] = None
) -> float:
    """||det DPhi(x)| - 1| with DPhi from central differences."""
    jacobian = fd_jacobian(lambda y: step_map(y, h), np.asarray(x), delta)
    return abs(abs(float(np.linalg.det(jacobian))) - 1.0)


@dataclass(frozen=True)
class TriangularVPMap:
    """Map x -> x' in R^3 defined by

    x1 = g1(x1', x2, x3), x2' = g2(x1', x2, x3), x3' = g3(x1', x2', x3),

    volume-preserving iff dg1/dx1' = (dg2/dx2)(dg3/dx3).
    """

    g1: TriangularRelation
    g2: TriangularRelation
    g3: TriangularRelation
    h: float

    def first_component(self, x: FloatArray) -> float:
        """Solve the implicit relation for x1'.

        Raises
        ------
        SolverNonConvergenceError
            if no root is found.
        """
        x1, x2, x3 = (float(value) for value in x)
        return safeguarded_scalar_solve(
            lambda s: self.g1(s, x2, x3, self.h) - x1, x1
        )

    def step(self, x: FloatArray) -> StateVector:
        """Apply the map."""
        _, x2, x3 = (float(value) for value in x)
        s = self.first_component(x)
        x2_new = self.g2(s, x2, x3, self.h)
        x3_new = self.g3(s, x2_new, x3, self.h)
        return np.array([s, x2_new, x3_new])


def _partial(func: Callable[[float], float], at: float) -> float:
    delta = _PARTIAL_STEP * max(1.0, abs(at))
    return (func(at + delta) - func(at - delta)) / (2.0 * delta)


def triangular_vp_condition_defect(
    triangular: TriangularVPMap, x: FloatArray
) -> float:
    """|dx1/dx1' - (dx2'/dx2)(dx3'/dx3)| by central differences."""
    _, x2, x3 = (float(value) for value in x)
    h = triangular.h
    s = triangular.first_component(x)
    x2_new = triangular.g2(s, x2, x3, h)
    d1 = _partial(lambda value: triangular.g1(value, x2, x3, h), s)
    d2 = _partial(lambda value: triangular.g2(s, value, x3, h), x2)
    d3 = _partial(lambda value: triangular.g3(s, x2_new, value, h), x3)
    return abs(d1 - d2 * d3)


def _example_g1(s: float, x2: float, x3: float, h: float) -> float:
    return s - h * (x2 + s**2 + x3**3) - h**2 * s**3


def _example_g1_without_correction(
    s: float, x2: float, x3: float, h: float
) -> float:
    return s - h * (x2 + s**2 + x3**3)


def _example_g2(s: float, x2: float, x3: float, h: float) -> float:
    return x2 + h * (x3 + s * x2 + s**4)


def _example_g3(s: float, x2_new: float, x3: float, h: float) -> float:
    return x3 + h * (s - 3.0 * s * x3 + x2_new**5)


def shang_quispel_map(h: float, corrected: bool = True) -> TriangularVPMap:
    """Triangular integrator of x' = (x2 + x1^2 + x3^3,
    x3 + x1 x2 + x1^4, x1 - 3 x1 x3 + x2^5).

    corrected=False drops the h^2 x1'^3 term: still consistent, no
    longer volume-preserving.
    """
    g1 = _example_g1 if corrected else _example_g1_without_correction
    return TriangularVPMap(g1, _example_g2, _example_g3, h)


def shang_quispel_example_step(
    x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    """One step of the volume-preserving triangular integrator."""
    del t
    return shang_quispel_map(h).step(x)
