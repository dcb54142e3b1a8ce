""" Quadratic vector fields and cubic Hamiltonian structures. """

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
import sympy

from geometric_integrators.core.constants import SKEW_TOLERANCE
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray
from geometric_integrators.utils.exceptions import ProblemDefinitionError
from geometric_integrators.utils.numeric_utils import max_norm

# S grad H = f is checked to this relative tolerance
_STRUCTURE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class QuadraticVectorField:
    """f_i(x) = a_ijk x_j x_k + b_ij x_j + c_i with a symmetric in (j, k).

    Parameters
    ----------
    a: FloatArray
        d x d x d tensor, a[i, j, k] == a[i, k, j].

    b: FloatArray
        d x d matrix.

    c: FloatArray
        Constant vector of length d.
    """

    a: FloatArray
    b: FloatArray
    c: FloatArray
    name: str = ""

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=float)
        d = a.shape[0]
        b = np.asarray(self.b, dtype=float).reshape(d, d)
        c = np.asarray(self.c, dtype=float).reshape(d)
        if a.shape != (d, d, d):
            raise ProblemDefinitionError(f"a has shape {a.shape}")
        if not np.array_equal(a, np.transpose(a, (0, 2, 1))):
            raise ProblemDefinitionError("a_ijk must equal a_ikj")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def dimension(self) -> int:
        """State dimension d."""
        return int(self.c.size)

    def bilinear(self, x: FloatArray) -> FloatArray:
        """The matrix A(x)_ik = a_ijk x_j."""
        return np.einsum("ijk,j->ik", self.a, np.asarray(x, dtype=float))

    def evaluate(self, _t: float, x: FloatArray) -> FloatArray:
        """f(x)."""
        point = np.asarray(x, dtype=float)
        return self.bilinear(point) @ point + self.b @ point + self.c

    def jacobian(self, x: FloatArray) -> FloatArray:
        """f'(x)_ik = 2 a_ijk x_j + b_ik."""
        return 2.0 * self.bilinear(x) + self.b

    def as_problem(self) -> VectorFieldProblem:
        """The field as a first-order problem."""
        return VectorFieldProblem(
            self.dimension,
            self.evaluate,
            self.jacobian,
            polynomial_degree=2,
            name=self.name,
        )

    @classmethod
    def from_sympy(
        cls,
        expressions: Sequence[sympy.Expr],
        symbols: Sequence[sympy.Symbol],
        name: str = "",
    ) -> "QuadraticVectorField":
        """Extract (a, b, c) from polynomial expressions of degree <= 2.

        Mixed terms x_j x_k are shared equally between a_ijk and a_ikj.

        Raises
        ------
        ProblemDefinitionError
            if a component has degree above two.
        """
        d = len(symbols)
        a = np.zeros((d, d, d))
        b = np.zeros((d, d))
        c = np.zeros(d)
        for i, expression in enumerate(expressions):
            polynomial = sympy.Poly(sympy.expand(expression), *symbols)
            if polynomial.total_degree() > 2:
                raise ProblemDefinitionError(
                    f"component {i} of '{name}' is not quadratic"
                )
            for exponents, coefficient in polynomial.terms():
                value = float(coefficient)
                support = [j for j, e in enumerate(exponents) if e > 0]
                degree = sum(exponents)
                if degree == 0:
                    c[i] = value
                elif degree == 1:
                    b[i, support[0]] = value
                elif len(support) == 1:
                    a[i, support[0], support[0]] = value
                else:
                    j, k = support
                    a[i, j, k] = a[i, k, j] = 0.5 * value
        return cls(a, b, c, name)

    @classmethod
    def random(
        cls, rng: np.random.Generator, dimension: int, scale: float = 1.0
    ) -> "QuadraticVectorField":
        """Field with standard normal coefficients times scale."""
        a = rng.standard_normal((dimension, dimension, dimension)) * scale
        a = 0.5 * (a + np.transpose(a, (0, 2, 1)))
        return cls(
            a,
            rng.standard_normal((dimension, dimension)) * scale,
            rng.standard_normal(dimension) * scale,
            "random-quadratic",
        )

    def check_against(
        self,
        closed_form: Callable[[FloatArray], FloatArray],
        rng: np.random.Generator,
        points: int = 5,
    ) -> None:
        """Compare with a closed form at random points (1e-12 relative).

        Raises
        ------
        ProblemDefinitionError
            on a mismatch.
        """
        for _ in range(points):
            x = rng.standard_normal(self.dimension)
            expected = np.asarray(closed_form(x), dtype=float)
            if max_norm(self.evaluate(0.0, x) - expected) > 1e-12 * max(
                1.0, max_norm(expected)
            ):
                raise ProblemDefinitionError(
                    f"'{self.name}' tensors do not match the closed form"
                )


@dataclass(frozen=True)
class CubicHamiltonianStructure:
    """f = S grad H with constant skew S and cubic H."""

    skew: FloatArray
    hamiltonian: Callable[[FloatArray], float]
    gradient: Callable[[FloatArray], FloatArray]
    name: str = ""

    def __post_init__(self) -> None:
        skew = np.atleast_2d(np.asarray(self.skew, dtype=float))
        if max_norm(skew + skew.T) > SKEW_TOLERANCE:
            raise ProblemDefinitionError("S must be skew-symmetric")
        object.__setattr__(self, "skew", skew)

    def check(
        self,
        field: QuadraticVectorField,
        rng: np.random.Generator,
        points: int = 5,
        tolerance: Optional[float] = None,
    ) -> None:
        """Check S grad H = f at random points.

        Raises
        ------
        ProblemDefinitionError
            if the factorisation fails somewhere.
        """
        tolerance = tolerance or _STRUCTURE_TOLERANCE
        for _ in range(points):
            x = rng.standard_normal(field.dimension)
            expected = field.evaluate(0.0, x)
            found = self.skew @ np.asarray(self.gradient(x), dtype=float)
            if max_norm(found - expected) > tolerance * max(
                1.0, max_norm(expected)
            ):
                raise ProblemDefinitionError(
                    f"S grad H does not reproduce '{field.name}'"
                )
