""" Integrable planar quadratic vector fields for Kahan's method. """

from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import sympy

from geometric_integrators.core.types import FloatArray
from geometric_integrators.kahan.fields import (
    CubicHamiltonianStructure,
    QuadraticVectorField,
)
from geometric_integrators.utils.exceptions import RegistryMissError

KAHAN_FAMILIES = (
    "quadratic-hamiltonian-2d",
    "suslov-2d",
    "nahm-octahedral",
    "nahm-icosahedral",
)

PARAMETER_NAMES = tuple("abcdefghi")

# Small cubic part around a centre at the origin
DEFAULT_PARAMETERS: Dict[str, Tuple[float, ...]] = {
    "quadratic-hamiltonian-2d": (
        0.1, 0.2, -0.1, 0.15, 1.0, 0.0, 1.0, 0.0, 0.0
    ),
    "suslov-2d": (0.1, 0.2, 1.0, 1.0, 0.0, 1.0, 0.1, -0.1, 0.0),
}

PLANAR_SKEW = np.array([[0.0, 1.0], [-1.0, 0.0]])

_X, _Y = sympy.symbols("x y", real=True)


def _parameters(
    name: str, params: Optional[Sequence[float]]
) -> Tuple[sympy.Expr, ...]:
    values = tuple(DEFAULT_PARAMETERS[name] if params is None else params)
    if len(values) != len(PARAMETER_NAMES):
        raise ValueError(f"'{name}' takes nine parameters a..i.")
    return tuple(sympy.nsimplify(value, rational=True) for value in values)


def _cubic_hamiltonian(params: Sequence[float]) -> sympy.Expr:
    a, b, c, d, e, f, g, h, i = params
    return (
        a * _X**3 / 3
        + b * _X**2 * _Y
        + c * _X * _Y**2
        + d * _Y**3 / 3
        + e * _X**2 / 2
        + f * _X * _Y
        + g * _Y**2 / 2
        + h * _X
        + i * _Y
    )


def _suslov_parts(params: Sequence[float]) -> Tuple[sympy.Expr, sympy.Expr]:
    a, b, c, d, e, f, g, h, i = params
    multiplier = a * _X + b * _Y + c
    hamiltonian = d * _X**2 + e * _X * _Y + f * _Y**2 + g * _X + h * _Y + i
    return multiplier, hamiltonian


def kahan_family(
    name: str, params: Optional[Sequence[float]] = None
) -> QuadraticVectorField:
    """Quadratic field of a named planar family.

    quadratic-hamiltonian-2d: (H_y, -H_x) for the nine-parameter cubic H;
    suslov-2d: l(x, y) (H_y, -H_x) with l linear and H quadratic;
    nahm-octahedral: (2x^2 - 12y^2, -6x^2 - 4y^2);
    nahm-icosahedral: (2x^2 - y^2, -10xy + y^2).

    Raises
    ------
    RegistryMissError
        if the family name is unknown.
    """
    if name == "quadratic-hamiltonian-2d":
        hamiltonian = _cubic_hamiltonian(_parameters(name, params))
        components = [
            sympy.diff(hamiltonian, _Y),
            -sympy.diff(hamiltonian, _X),
        ]
    elif name == "suslov-2d":
        multiplier, hamiltonian = _suslov_parts(_parameters(name, params))
        components = [
            multiplier * sympy.diff(hamiltonian, _Y),
            -multiplier * sympy.diff(hamiltonian, _X),
        ]
    elif name == "nahm-octahedral":
        components = [2 * _X**2 - 12 * _Y**2, -6 * _X**2 - 4 * _Y**2]
    elif name == "nahm-icosahedral":
        components = [2 * _X**2 - _Y**2, -10 * _X * _Y + _Y**2]
    else:
        raise RegistryMissError("Kahan family", name)
    return QuadraticVectorField.from_sympy(components, (_X, _Y), name)


def _lambdified(expression: sympy.Expr) -> Callable[[FloatArray], float]:
    compiled = sympy.lambdify((_X, _Y), expression, "numpy")
    return lambda z: float(compiled(*np.asarray(z, dtype=float)))


def family_hamiltonian(
    name: str, params: Optional[Sequence[float]] = None
) -> CubicHamiltonianStructure:
    """S and H of the constant-structure family (quadratic-hamiltonian-2d),
    or the quadratic H of suslov-2d with S = [[0, 1], [-1, 0]].

    Raises
    ------
    RegistryMissError
        for families without a Hamiltonian.
    """
    if name == "quadratic-hamiltonian-2d":
        hamiltonian = _cubic_hamiltonian(_parameters(name, params))
    elif name == "suslov-2d":
        _, hamiltonian = _suslov_parts(_parameters(name, params))
    else:
        raise RegistryMissError("Hamiltonian family", name)
    partials = [
        _lambdified(sympy.diff(hamiltonian, symbol)) for symbol in (_X, _Y)
    ]
    return CubicHamiltonianStructure(
        PLANAR_SKEW,
        _lambdified(hamiltonian),
        lambda z: np.array([partial(z) for partial in partials]),
        name,
    )


def nahm_initial_state() -> FloatArray:
    """A start away from the singular lines, well before blow-up."""
    return np.array([0.1, 0.05])


def family_skew(
    name: str, params: Optional[Sequence[float]] = None
) -> Callable[[FloatArray], FloatArray]:
    """S(x) with f = S(x) grad H: constant for the Hamiltonian family,
    l(x, y) [[0, 1], [-1, 0]] for suslov-2d.

    Raises
    ------
    RegistryMissError
        for families without a Hamiltonian.
    """
    if name == "quadratic-hamiltonian-2d":
        return lambda z: PLANAR_SKEW
    if name == "suslov-2d":
        multiplier, _ = _suslov_parts(_parameters(name, params))
        compiled = _lambdified(multiplier)
        return lambda z: compiled(z) * PLANAR_SKEW
    raise RegistryMissError("Hamiltonian family", name)
