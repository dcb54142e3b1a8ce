""" Filter functions damping numerical resonances. """

from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from geometric_integrators.core.types import FloatArray, FilterName
from geometric_integrators.utils.numeric_utils import (
    sinc,
    symmetric_matrix_function,
)


@dataclass(frozen=True)
class FilterFunction:
    """Scalar function Phi with Phi(0) = 1 and Phi(k pi) = 0, k >= 1."""

    name: str
    scalar: Callable[[np.ndarray], np.ndarray]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.scalar(np.asarray(x, dtype=float))

    def of_matrix(self, matrix: FloatArray) -> FloatArray:
        """Phi(M) for symmetric M via its eigendecomposition."""
        return symmetric_matrix_function(matrix, self.scalar)


SINC = FilterFunction("sinc", sinc)
SINC_SQUARED = FilterFunction("sinc2", lambda x: sinc(x) ** 2)

_FILTERS: Dict[str, FilterFunction] = {
    SINC.name: SINC,
    SINC_SQUARED.name: SINC_SQUARED,
}


def builtin_filters() -> List[FilterFunction]:
    """The built-in filters sinc and sinc^2."""
    return list(_FILTERS.values())


def get_filter(name: FilterName) -> FilterFunction:
    """Look a built-in filter up by name.

    Raises
    ------
    ValueError
        if the name is unknown.
    """
    try:
        return _FILTERS[name]
    except KeyError as e:
        raise ValueError(f"Unknown filter '{name}'.") from e
