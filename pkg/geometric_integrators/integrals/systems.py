""" Systems with first integrals in skew-gradient form. """

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from geometric_integrators.core.constants import SKEW_TOLERANCE
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray
from geometric_integrators.utils.exceptions import ProblemDefinitionError
from geometric_integrators.utils.numeric_utils import max_norm

ScalarFunction = Callable[[FloatArray], float]
VectorFunction = Callable[[FloatArray], FloatArray]
MatrixFunction = Callable[[FloatArray], FloatArray]

_FACTORISATION_TOLERANCE = 1e-8


@dataclass(frozen=True)
class FirstIntegralSystem:
    """x' = S(x) grad I(x) with S skew, optionally also
    x'_i = S_ijk dI/dx_j dJ/dx_k with a fully antisymmetric tensor.
    """

    dimension: int
    integral: ScalarFunction
    gradient: VectorFunction
    skew: Optional[MatrixFunction] = None
    second_integral: Optional[ScalarFunction] = None
    second_gradient: Optional[VectorFunction] = None
    skew_tensor: Optional[FloatArray] = None
    name: str = ""

    @classmethod
    def from_field(
        cls,
        field: VectorFunction,
        integral: ScalarFunction,
        gradient: VectorFunction,
        dimension: int,
        name: str = "",
    ) -> "FirstIntegralSystem":
        """Build S = (f grad I^T - grad I f^T) / |grad I|^2 from (f, I).

        S(x) raises ProblemDefinitionError where grad I vanishes.
        """

        def skew(x: FloatArray) -> FloatArray:
            f = np.asarray(field(x), dtype=float)
            g = np.asarray(gradient(x), dtype=float)
            norm = float(np.dot(g, g))
            if norm == 0.0:
                raise ProblemDefinitionError(
                    "grad I vanishes; S cannot be constructed"
                )
            return (np.outer(f, g) - np.outer(g, f)) / norm

        return cls(dimension, integral, gradient, skew, name=name)

    def skew_matrix(self, x: FloatArray) -> FloatArray:
        """S(x); from the tensor and grad J when only those are given."""
        if self.skew is not None:
            return np.asarray(self.skew(x), dtype=float)
        if self.skew_tensor is not None and self.second_gradient is not None:
            return np.einsum(
                "ijk,k->ij", self.skew_tensor, self.second_gradient(x)
            )
        raise ProblemDefinitionError(f"'{self.name}' has no skew structure")

    def evaluate(self, _t: float, x: FloatArray) -> FloatArray:
        """f(x) = S(x) grad I(x)."""
        return self.skew_matrix(x) @ np.asarray(self.gradient(x), dtype=float)

    def vector_field(self) -> VectorFieldProblem:
        """The system as a first-order problem."""
        return VectorFieldProblem(
            self.dimension, self.evaluate, name=self.name
        )

    def check(
        self,
        rng: np.random.Generator,
        field: Optional[VectorFunction] = None,
        points: int = 5,
    ) -> None:
        """Check skewness, S grad I = f and tensor antisymmetry.

        Raises
        ------
        ProblemDefinitionError
            if any invariant fails at a random point.
        """
        if self.skew_tensor is not None:
            tensor = self.skew_tensor
            for axes in ((1, 0, 2), (0, 2, 1), (2, 1, 0)):
                if max_norm(tensor + np.transpose(tensor, axes)) > 0.0:
                    raise ProblemDefinitionError("S_ijk is not antisymmetric")
        for _ in range(points):
            x = rng.standard_normal(self.dimension)
            matrix = self.skew_matrix(x)
            if max_norm(matrix + matrix.T) > SKEW_TOLERANCE * max(
                1.0, max_norm(matrix)
            ):
                raise ProblemDefinitionError("S(x) is not skew")
            if field is not None and max_norm(
                self.evaluate(0.0, x) - field(x)
            ) > _FACTORISATION_TOLERANCE * max(1.0, max_norm(field(x))):
                raise ProblemDefinitionError("S grad I does not reproduce f")
