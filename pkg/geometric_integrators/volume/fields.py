""" Divergence-free fields and their volume-preserving splits. """

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray
from geometric_integrators.utils.exceptions import ProblemDefinitionError

Monomial = Tuple[Tuple[int, ...], float]
ScalarField = Callable[[FloatArray], float]

# Finite-difference floor of the divergence check
_FD_DIVERGENCE_TOLERANCE = 1e-8


def _symbols(dimension: int) -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.symbols(f"x1:{dimension + 1}", real=True))


def _lambdify(
    symbols: Sequence[sympy.Symbol], expression: sympy.Expr
) -> ScalarField:
    compiled = sympy.lambdify(symbols, expression, "numpy")
    return lambda x: float(compiled(*np.asarray(x, dtype=float)))


@dataclass(frozen=True)
class PolynomialVectorField:
    """Sparse multivariate polynomial per component.

    terms[i] lists (exponent tuple, coefficient) pairs of component i.
    """

    terms: Tuple[Tuple[Monomial, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        dimension = len(self.terms)
        for component in self.terms:
            for exponents, _ in component:
                negative = min(exponents, default=0) < 0
                if len(exponents) != dimension or negative:
                    raise ProblemDefinitionError(
                        f"exponents {exponents} do not fit "
                        f"dimension {dimension}"
                    )

    @property
    def dimension(self) -> int:
        """Number of variables and components."""
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Total degree of the field."""
        return max(
            (sum(e) for component in self.terms for e, _ in component),
            default=0,
        )

    @classmethod
    def from_sympy(
        cls,
        expressions: Sequence[sympy.Expr],
        symbols: Sequence[sympy.Symbol],
        name: str = "",
    ) -> "PolynomialVectorField":
        """Build from sympy polynomials in the given symbols."""
        terms = []
        for expression in expressions:
            polynomial = sympy.Poly(sympy.expand(expression), *symbols)
            terms.append(
                tuple(
                    (tuple(int(e) for e in exponents), float(coefficient))
                    for exponents, coefficient in polynomial.terms()
                    if coefficient != 0
                )
            )
        return cls(tuple(terms), name)

    def to_sympy(
        self, symbols: Optional[Sequence[sympy.Symbol]] = None
    ) -> Tuple[List[sympy.Expr], Tuple[sympy.Symbol, ...]]:
        """Components as sympy expressions, with the symbols used."""
        variables = tuple(symbols) if symbols else _symbols(self.dimension)
        expressions = [
            sympy.Add(
                *(
                    sympy.nsimplify(coefficient, rational=True)
                    * sympy.Mul(*(v**e for v, e in zip(variables, exponents)))
                    for exponents, coefficient in component
                )
            )
            for component in self.terms
        ]
        return expressions, variables

    def evaluate(self, _t: float, x: FloatArray) -> FloatArray:
        """Value of the field at x."""
        point = np.asarray(x, dtype=float)
        return np.array(
            [
                sum(
                    coefficient * float(np.prod(point ** np.array(exponents)))
                    for exponents, coefficient in component
                )
                for component in self.terms
            ]
        )

    def divergence(self) -> sympy.Expr:
        """Symbolic divergence."""
        expressions, variables = self.to_sympy()
        return sympy.expand(
            sum(sympy.diff(e, v) for e, v in zip(expressions, variables))
        )

    def is_divergence_free(self) -> bool:
        """True iff the divergence vanishes identically."""
        return self.divergence() == 0

    def as_problem(self) -> VectorFieldProblem:
        """The field as a first-order problem."""
        return VectorFieldProblem(
            self.dimension,
            self.evaluate,
            polynomial_degree=self.degree,
            name=self.name,
        )


@dataclass(frozen=True)
class DivergenceFree3D:
    """Field (u, v, w) in R^3 with u_x + v_y + w_z = 0.

    antiderivative is P(x, y, z) with dP/dy = u_x; it is required by
    vp_split and generated symbolically for polynomial fields.
    """

    u: ScalarField
    v: ScalarField
    w: ScalarField
    antiderivative: Optional[ScalarField] = None
    polynomial: Optional[PolynomialVectorField] = None
    name: str = ""

    @classmethod
    def from_polynomial(
        cls, field: PolynomialVectorField
    ) -> "DivergenceFree3D":
        """Wrap a polynomial field, integrating u_x in y symbolically.

        Raises
        ------
        ProblemDefinitionError
            if the field is not three-dimensional or not divergence-free.
        """
        if field.dimension != 3:
            raise ProblemDefinitionError(
                "DivergenceFree3D needs three components"
            )
        if not field.is_divergence_free():
            raise ProblemDefinitionError(
                f"'{field.name}' has non-zero divergence"
            )
        (u, v, w), symbols = field.to_sympy()
        x, y, _ = symbols
        p = sympy.integrate(sympy.diff(u, x), y)
        return cls(
            _lambdify(symbols, u),
            _lambdify(symbols, v),
            _lambdify(symbols, w),
            _lambdify(symbols, p),
            field,
            field.name,
        )

    def evaluate(self, _t: float, x: FloatArray) -> FloatArray:
        """Value (u, v, w) at x."""
        return np.array([self.u(x), self.v(x), self.w(x)])

    def as_problem(self) -> VectorFieldProblem:
        """The field as a first-order problem."""
        degree = None if self.polynomial is None else self.polynomial.degree
        return VectorFieldProblem(
            3, self.evaluate, polynomial_degree=degree, name=self.name
        )

    def divergence(self, x: FloatArray, delta: float = 1e-5) -> float:
        """Central-difference divergence at x."""
        point = np.asarray(x, dtype=float)
        total = 0.0
        for i, component in enumerate((self.u, self.v, self.w)):
            shift = np.zeros(3)
            shift[i] = delta
            total += (component(point + shift) - component(point - shift)) / (
                2.0 * delta
            )
        return total

    def check_divergence(
        self,
        rng: np.random.Generator,
        points: int = 5,
        tolerance: float = _FD_DIVERGENCE_TOLERANCE,
    ) -> None:
        """Finite-difference divergence check at random points.

        Raises
        ------
        ProblemDefinitionError
            if the divergence exceeds the tolerance somewhere.
        """
        for _ in range(points):
            if abs(self.divergence(rng.standard_normal(3))) > tolerance:
                raise ProblemDefinitionError(
                    f"'{self.name}' is not divergence-free"
                )


def vp_split(
    field: DivergenceFree3D,
) -> Tuple[VectorFieldProblem, VectorFieldProblem]:
    """Split into (u, -P, 0) and (0, v + P, w), both divergence-free.

    Raises
    ------
    ProblemDefinitionError
        if the field has no antiderivative P.
    """
    p = field.antiderivative
    if p is None:
        raise ProblemDefinitionError(
            f"'{field.name}' has no antiderivative of u_x in y"
        )

    def first(_t: float, x: FloatArray) -> FloatArray:
        return np.array([field.u(x), -p(x), 0.0])

    def second(_t: float, x: FloatArray) -> FloatArray:
        return np.array([0.0, field.v(x) + p(x), field.w(x)])

    return (
        VectorFieldProblem(3, first, name=f"{field.name}:A"),
        VectorFieldProblem(3, second, name=f"{field.name}:B"),
    )


def vp_split_polynomial(
    field: PolynomialVectorField,
) -> List[VectorFieldProblem]:
    """Split an n-dimensional divergence-free polynomial field into
    n - 1 fields, each moving only the coordinate pair (k, k+1).

    Piece k carries the residual's component k and -P_k in slot k+1,
    with P_k the antiderivative in x_{k+1} of the x_k-derivative of that
    component.

    Raises
    ------
    ProblemDefinitionError
        if the field is not divergence-free or has dimension < 2.
    """
    if field.dimension < 2:
        raise ProblemDefinitionError("splitting needs at least two dimensions")
    if not field.is_divergence_free():
        raise ProblemDefinitionError(f"'{field.name}' has non-zero divergence")
    residual, symbols = field.to_sympy()
    n = field.dimension
    pieces: List[List[sympy.Expr]] = []
    for k in range(n - 2):
        antiderivative = sympy.integrate(
            sympy.diff(residual[k], symbols[k]), symbols[k + 1]
        )
        piece = [sympy.Integer(0)] * n
        piece[k] = residual[k]
        piece[k + 1] = -antiderivative
        pieces.append(piece)
        residual = [sympy.Integer(0)] * (k + 1) + [
            sympy.expand(residual[k + 1] + antiderivative)
        ] + list(residual[k + 2 :])
    pieces.append(residual)
    return [
        PolynomialVectorField.from_sympy(
            piece, symbols, f"{field.name}:{index}"
        ).as_problem()
        for index, piece in enumerate(pieces)
    ]
