""" Discrete gradients and skew approximations. """

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from geometric_integrators.core.constants import (
    AVF_DEFAULT_NODES,
    MACHINE_EPSILON,
)
from geometric_integrators.core.state import fd_gradient
from geometric_integrators.core.types import (
    DiscreteGradientKind,
    FloatArray,
    SkewApproximationKind,
)

ScalarFunction = Callable[[FloatArray], float]
VectorFunction = Callable[[FloatArray], FloatArray]
MatrixFunction = Callable[[FloatArray], FloatArray]


@lru_cache(maxsize=16)
def unit_gauss_nodes(q: int) -> Tuple[FloatArray, FloatArray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1].

    Raises
    ------
    ValueError
        if q is not a positive integer.
    """
    if q < 1:
        raise ValueError(f"Quadrature needs at least one node, got {q}.")
    nodes, weights = np.polynomial.legendre.leggauss(q)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def avf_nodes_for_degree(degree: Optional[int]) -> int:
    """Smallest q whose rule integrates a degree-`degree` polynomial
    exactly; AVF_DEFAULT_NODES when the degree is unknown.
    """
    if degree is None:
        return AVF_DEFAULT_NODES
    return max(1, int(np.ceil((degree + 1) / 2.0)))


def segment_average(
    function: VectorFunction, x: FloatArray, x_new: FloatArray, q: int
) -> FloatArray:
    """int_0^1 function(s x' + (1 - s) x) ds by q-point Gauss quadrature."""
    nodes, weights = unit_gauss_nodes(q)
    start = np.asarray(x, dtype=float)
    end = np.asarray(x_new, dtype=float)
    return sum(
        weight * np.asarray(function(s * end + (1.0 - s) * start), dtype=float)
        for s, weight in zip(nodes, weights)
    )


def itoh_abe_gradient(
    integral: ScalarFunction,
    x: FloatArray,
    x_new: FloatArray,
    gradient: Optional[VectorFunction] = None,
) -> FloatArray:
    """Coordinate-increment discrete gradient.

    Component i is the difference quotient of I along coordinate i
    between the mixed points (x'_1..x'_{i-1}, x_i, ..) and
    (x'_1..x'_i, x_{i+1}, ..). Where x'_i = x_i it is the partial
    derivative at the mixed point, analytic when `gradient` is given.
    """
    start = np.asarray(x, dtype=float)
    end = np.asarray(x_new, dtype=float)
    result = np.empty_like(start)
    mixed = start.copy()
    value = integral(mixed)
    for i in range(start.size):
        increment = end[i] - start[i]
        if abs(increment) <= MACHINE_EPSILON * max(1.0, abs(start[i])):
            if gradient is not None:
                result[i] = np.asarray(gradient(mixed), dtype=float)[i]
            else:
                result[i] = fd_gradient(integral, mixed)[i]
            mixed[i] = end[i]
            value = integral(mixed)
            continue
        mixed[i] = end[i]
        following = integral(mixed)
        result[i] = (following - value) / increment
        value = following
    return result


def avf_gradient(
    gradient: VectorFunction, x: FloatArray, x_new: FloatArray, q: int
) -> FloatArray:
    """Mean-value discrete gradient int_0^1 grad I(s x' + (1-s) x) ds."""
    return segment_average(gradient, x, x_new, q)


@dataclass(frozen=True)
class DiscreteGradient:
    """A discrete gradient of I: (x' - x) . G(x, x') = I(x') - I(x).

    Parameters
    ----------
    kind: DiscreteGradientKind
        "itoh-abe" or "avf".

    integral: Callable
        I(x).

    gradient: Optional[Callable]
        grad I(x); required by "avf", optional for "itoh-abe".

    nodes: int
        Quadrature nodes of the "avf" kind; exact for polynomial I of
        degree <= 2 * nodes.
    """

    kind: DiscreteGradientKind
    integral: ScalarFunction
    gradient: Optional[VectorFunction] = None
    nodes: int = AVF_DEFAULT_NODES

    def __post_init__(self) -> None:
        if self.kind not in ("itoh-abe", "avf"):
            raise ValueError(f"Unknown discrete gradient kind: {self.kind}")
        if self.kind == "avf" and self.gradient is None:
            raise ValueError("The avf discrete gradient needs grad I.")

    def __call__(self, x: FloatArray, x_new: FloatArray) -> FloatArray:
        if self.kind == "itoh-abe":
            return itoh_abe_gradient(self.integral, x, x_new, self.gradient)
        return avf_gradient(self.gradient, x, x_new, self.nodes)


@dataclass(frozen=True)
class SkewApproximation:
    """Consistent skew approximation S(x, x') of S(x).

    "midpoint" evaluates S((x + x') / 2) (symmetric, second order);
    "left" evaluates S(x).
    """

    skew: MatrixFunction
    kind: SkewApproximationKind = "midpoint"

    def __post_init__(self) -> None:
        if self.kind not in ("midpoint", "left"):
            raise ValueError(f"Unknown skew approximation: {self.kind}")

    def __call__(self, x: FloatArray, x_new: FloatArray) -> FloatArray:
        start = np.asarray(x, dtype=float)
        if self.kind == "left":
            return np.asarray(self.skew(start), dtype=float)
        midpoint = 0.5 * (start + np.asarray(x_new, dtype=float))
        return np.asarray(self.skew(midpoint), dtype=float)
