""" Module with all types."""

from typing import Callable, Literal

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]
ComplexArray = NDArray[np.complex128]

# A point in phase space; see core.state.as_state for the invariants.
StateVector = FloatArray
# Callables (x, h) -> x' used by the structural diagnostics
StepMap = Callable[[FloatArray, float], FloatArray]
Observer = Callable[[FloatArray], float]

OutputFileFormat = Literal["csv", "json"]
AlgebraTag = Literal["so", "sl", "general", "skew-hermitian"]
GroupTag = Literal["SO", "SL", "GL", "U"]
ActionKind = Literal["left-multiplication", "isospectral"]
DiscreteGradientKind = Literal["itoh-abe", "avf"]
SkewApproximationKind = Literal["midpoint", "left"]
R3Variant = Literal["scaled", "printed"]
FilterName = Literal["sinc", "sinc2"]
