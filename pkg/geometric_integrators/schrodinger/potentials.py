""" Potentials sampled on the grid, with their spectral derivatives. """

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Tuple, Union

import numpy as np

from geometric_integrators.core.decorators import registered
from geometric_integrators.core.registry import Registry
from geometric_integrators.core.types import FloatArray
from geometric_integrators.schrodinger.grid import (
    SemiclassicalGrid,
    spectral_derivative,
)
from geometric_integrators.utils.exceptions import ProblemDefinitionError
from geometric_integrators.utils.numeric_utils import max_norm

PotentialFunction = Callable[[FloatArray], FloatArray]

POTENTIALS: Registry[PotentialFunction] = Registry("potential")

_CONSISTENCY_TOLERANCE = 1e-8


@dataclass(frozen=True)
class PotentialData:
    """V and its first four derivatives on the grid."""

    values: FloatArray
    derivatives: Tuple[FloatArray, ...]

    @classmethod
    def from_samples(
        cls, grid: SemiclassicalGrid, values: np.ndarray
    ) -> "PotentialData":
        """Differentiate real samples spectrally.

        Raises
        ------
        ValueError
            if the number of samples differs from N.
        """
        samples = np.asarray(values, dtype=float).reshape(-1)
        if samples.size != grid.n_points:
            raise ValueError(
                f"Expected {grid.n_points} potential samples, "
                f"got {samples.size}."
            )
        derivatives = tuple(
            np.real(spectral_derivative(samples, grid, order))
            for order in range(1, 5)
        )
        return cls(samples, derivatives)

    @classmethod
    def from_function(
        cls, grid: SemiclassicalGrid, function: PotentialFunction
    ) -> "PotentialData":
        """Sample a closed form on the grid."""
        return cls.from_samples(grid, function(grid.points))

    def derivative(self, order: int) -> FloatArray:
        """d^order V / dx^order for order 0..4."""
        if order == 0:
            return self.values
        return self.derivatives[order - 1]

    def check_consistency(
        self,
        grid: SemiclassicalGrid,
        exact: Callable[[FloatArray, int], FloatArray],
    ) -> None:
        """Compare the derivatives with closed forms.

        Raises
        ------
        ProblemDefinitionError
            if some derivative is off by more than 1e-8 relative.
        """
        for order in range(1, 5):
            expected = exact(grid.points, order)
            if max_norm(self.derivative(order) - expected) > (
                _CONSISTENCY_TOLERANCE * max(1.0, max_norm(expected))
            ):
                raise ProblemDefinitionError(
                    f"derivative of order {order} is not spectrally consistent"
                )


@registered(POTENTIALS, "cos")
def cosine_potential(x: FloatArray) -> FloatArray:
    """V(x) = cos(pi x)."""
    return np.cos(np.pi * x)


@registered(POTENTIALS, "double-well")
def double_well_potential(x: FloatArray) -> FloatArray:
    """V(x) = cos(2 pi x), wells at x = +-1/2."""
    return np.cos(2.0 * np.pi * x)


@registered(POTENTIALS, "zero")
def zero_potential(x: FloatArray) -> FloatArray:
    """V(x) = 0 (free propagation)."""
    return np.zeros_like(x, dtype=float)


def load_potential_samples(
    path: Union[str, Path], grid: SemiclassicalGrid
) -> PotentialData:
    """Read N real samples, one per line, from a plain-text file.

    Raises
    ------
    ValueError
        if the file does not hold exactly N values.
    """
    return PotentialData.from_samples(grid, np.loadtxt(path, ndmin=1))


def potential_for(
    grid: SemiclassicalGrid, source: Union[str, Path]
) -> PotentialData:
    """Potential from a registry id, or from a sample file path.

    Raises
    ------
    RegistryMissError
        if source is neither a registered id nor an existing file.
    """
    if isinstance(source, str) and source in POTENTIALS:
        return PotentialData.from_function(grid, POTENTIALS.get(source))
    if Path(source).is_file():
        return load_potential_samples(source, grid)
    return PotentialData.from_function(grid, POTENTIALS.get(str(source)))
