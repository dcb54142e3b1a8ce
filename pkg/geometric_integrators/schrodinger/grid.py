""" Periodic spectral grid on [-1, 1) for the semiclassical regime. """

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft

from geometric_integrators.core.constants import (
    GRID_POINTS_PER_INVERSE_EPSILON,
)
from geometric_integrators.core.types import ComplexArray, FloatArray
from geometric_integrators.utils.numeric_utils import is_power_of_two


@dataclass(frozen=True)
class SemiclassicalGrid:
    """N collocation points x_j = -1 + 2j/N and the scale epsilon.

    Wavenumbers are the integers of fftfreq(N, 1/N), so d/dx acts as
    i pi k on the Fourier coefficients.

    Parameters
    ----------
    n_points: int
        N, a power of two.

    epsilon: float
        Semiclassical parameter in (0, 1].

    sigma: float
        Exponent of the step-size regime h = epsilon^sigma.
    """

    n_points: int
    epsilon: float
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if not is_power_of_two(self.n_points):
            raise ValueError(f"N must be a power of two, got {self.n_points}.")
        if not 0.0 < self.epsilon <= 1.0:
            raise ValueError(
                f"epsilon must lie in (0, 1], got {self.epsilon}."
            )
        if self.n_points < GRID_POINTS_PER_INVERSE_EPSILON / self.epsilon:
            logging.warning(
                "N = %d under-resolves epsilon = %g (guideline N >= %g).",
                self.n_points,
                self.epsilon,
                GRID_POINTS_PER_INVERSE_EPSILON / self.epsilon,
            )

    @property
    def points(self) -> FloatArray:
        """Collocation points."""
        return -1.0 + 2.0 * np.arange(self.n_points) / self.n_points

    @property
    def wavenumbers(self) -> FloatArray:
        """Integer wavenumbers in FFT order."""
        return fft.fftfreq(self.n_points, 1.0 / self.n_points)

    @property
    def default_step(self) -> float:
        """h = epsilon^sigma."""
        return self.epsilon**self.sigma

    def tau(self, h: Optional[float] = None) -> complex:
        """tau = i h."""
        return 1j * (self.default_step if h is None else h)

    def symbol(self, order: int) -> ComplexArray:
        """Fourier multiplier (i pi k)^order of d^order/dx^order.

        For odd orders the Nyquist mode is dropped so that real
        functions keep real derivatives.
        """
        multiplier = (1j * np.pi * self.wavenumbers) ** order
        if order % 2 == 1:
            multiplier[self.n_points // 2] = 0.0
        return multiplier


def spectral_derivative(
    u: np.ndarray, grid: SemiclassicalGrid, order: int = 1
) -> ComplexArray:
    """d^order u / dx^order by FFT."""
    return fft.ifft(grid.symbol(order) * fft.fft(u))


def l2_norm(u: np.ndarray, grid: SemiclassicalGrid) -> float:
    """Discrete L2 norm sqrt((2/N) sum |u_j|^2) on [-1, 1)."""
    return float(np.sqrt(2.0 / grid.n_points * np.sum(np.abs(u) ** 2)))


def free_plane_wave(
    grid: SemiclassicalGrid, mode: int, t: float
) -> ComplexArray:
    """Exact free solution exp(i pi m x - i epsilon pi^2 m^2 t)."""
    phase = np.pi * mode * grid.points - grid.epsilon * (np.pi * mode) ** 2 * t
    return np.exp(1j * phase)


def as_real_state(u: np.ndarray) -> FloatArray:
    """Pack a wave function as the real vector [Re u, Im u]."""
    wave = np.asarray(u, dtype=complex)
    return np.concatenate([wave.real, wave.imag])


def as_wave(x: np.ndarray) -> ComplexArray:
    """Inverse of as_real_state.

    Raises
    ------
    ValueError
        if x has odd length.
    """
    state = np.asarray(x, dtype=float)
    if state.size % 2:
        raise ValueError("A packed wave function has even length.")
    half = state.size // 2
    return state[:half] + 1j * state[half:]
