""" Divergence-free polynomial fields in three dimensions. """

import numpy as np
import sympy

from geometric_integrators.core.types import FloatArray
from geometric_integrators.volume.fields import (
    DivergenceFree3D,
    PolynomialVectorField,
)


def shang_quispel_polynomial() -> PolynomialVectorField:
    """x' = (x2 + x1^2 + x3^3, x3 + x1 x2 + x1^4, x1 - 3 x1 x3 + x2^5)."""
    x1, x2, x3 = sympy.symbols("x1:4", real=True)
    return PolynomialVectorField.from_sympy(
        [
            x2 + x1**2 + x3**3,
            x3 + x1 * x2 + x1**4,
            x1 - 3 * x1 * x3 + x2**5,
        ],
        (x1, x2, x3),
        "shang-quispel",
    )


def shang_quispel_field() -> DivergenceFree3D:
    """The same field with its symbolic antiderivative P = 2 x1 x2."""
    return DivergenceFree3D.from_polynomial(shang_quispel_polynomial())


def shang_quispel_initial_state() -> FloatArray:
    """A start near the origin; the quintic terms blow up further out."""
    return np.array([0.1, 0.1, 0.1])
