""" Trigonometric integrators for y'' + Omega^2 y = g(y). """

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh

from geometric_integrators.core.constants import PSI_SERIES_THRESHOLD
from geometric_integrators.core.state import SecondOrderProblem
from geometric_integrators.core.types import FloatArray
from geometric_integrators.exponential.filters import SINC, FilterFunction
from geometric_integrators.utils.numeric_utils import sinc

PositionVelocity = Tuple[FloatArray, FloatArray]

# Where |sinc(h omega)| drops below this the velocity falls back to
# the plain central difference.
_SINC_FLOOR = 1e-8


@lru_cache(maxsize=32)
def _spectrum(raw: bytes, n: int) -> Tuple[FloatArray, FloatArray]:
    logging.debug("Eigendecomposition of a %dx%d frequency matrix.", n, n)
    omega = np.frombuffer(raw, dtype=float).reshape(n, n)
    eigenvalues, eigenvectors = eigh(omega)
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return eigenvalues, eigenvectors


def omega_function(
    omega: FloatArray, func: Callable[[np.ndarray], np.ndarray]
) -> FloatArray:
    """f(Omega) for symmetric Omega, reusing a cached eigendecomposition."""
    matrix = np.ascontiguousarray(omega, dtype=float)
    eigenvalues, eigenvectors = _spectrum(matrix.tobytes(), matrix.shape[0])
    return (eigenvectors * func(eigenvalues)) @ eigenvectors.T


def psi(x: np.ndarray) -> np.ndarray:
    """Psi(x) = 2 (1 - cos x) / x^2, by its series near zero."""
    values = np.asarray(x, dtype=float)
    small = np.abs(values) < PSI_SERIES_THRESHOLD
    safe = np.where(small, 1.0, values)
    return np.where(
        small, 1.0 - values**2 / 12.0, 2.0 * (1.0 - np.cos(safe)) / safe**2
    )


@dataclass(frozen=True)
class TrigStepperState:
    """Back values (y_{n-1}, y_n) of the two-step Gautschi scheme."""

    previous: FloatArray
    current: FloatArray

    def __post_init__(self) -> None:
        if not (
            np.all(np.isfinite(self.previous))
            and np.all(np.isfinite(self.current))
        ):
            raise ValueError("Gautschi back values must be finite.")

    def advance(self, following: FloatArray) -> "TrigStepperState":
        """Shift the window by one step."""
        return TrigStepperState(self.current, following)


def trig_voc_step(
    problem: SecondOrderProblem,
    state: PositionVelocity,
    h: float,
    quadrature_nodes: int = 1,
) -> PositionVelocity:
    """Variation-of-constants step with g frozen on quadrature nodes.

    Parameters
    ----------
    problem: SecondOrderProblem
        Omega and g.

    state: Tuple[FloatArray, FloatArray]
        Position y and velocity y'.

    h: float
        Step size.

    quadrature_nodes: int
        Number of Gauss-Legendre nodes on [0, h] for the convolution
        with g; g is evaluated on the free oscillator prediction. One
        node (the midpoint) gives a second-order method.

    Returns
    -------
    Tuple[FloatArray, FloatArray]
        New position and velocity; exact when g vanishes.
    """
    if quadrature_nodes < 1:
        raise ValueError("quadrature_nodes must be positive.")
    y, velocity = (np.asarray(part, dtype=float) for part in state)
    omega = problem.omega
    cosine = omega_function(omega, lambda w: np.cos(h * w))
    y_new = cosine @ y + omega_function(
        omega, lambda w: h * sinc(h * w)
    ) @ velocity
    v_new = (
        omega_function(omega, lambda w: -w * np.sin(h * w)) @ y
        + cosine @ velocity
    )
    nodes, weights = np.polynomial.legendre.leggauss(quadrature_nodes)
    for node, weight in zip(0.5 * (nodes + 1.0), 0.5 * weights):
        s = node * h
        remaining = h - s
        free = omega_function(omega, lambda w: np.cos(s * w)) @ y + (
            omega_function(omega, lambda w: s * sinc(s * w)) @ velocity
        )
        force = problem.g(free)
        y_new = y_new + h * weight * (
            omega_function(omega, lambda w: remaining * sinc(remaining * w))
            @ force
        )
        v_new = v_new + h * weight * (
            omega_function(omega, lambda w: np.cos(remaining * w)) @ force
        )
    return y_new, v_new


def gautschi_step(
    problem: SecondOrderProblem,
    state: TrigStepperState,
    h: float,
    filter_function: Optional[FilterFunction] = SINC,
) -> FloatArray:
    """y_{n+1} = 2 y_n - y_{n-1} + h^2 Psi(h Omega)(g_n - Omega^2 y_n).

    g_n = g(Phi(h Omega) y_n); filter_function=None disables the filter.
    """
    omega = problem.omega
    current = state.current
    if filter_function is None:
        filtered = current
    else:
        filtered = omega_function(omega, lambda w: filter_function(h * w)) @ (
            current
        )
    forcing = problem.g(filtered) - omega @ (omega @ current)
    return (
        2.0 * current
        - state.previous
        + h**2 * (omega_function(omega, lambda w: psi(h * w)) @ forcing)
    )


def gautschi_velocity(
    problem: SecondOrderProblem,
    previous: FloatArray,
    following: FloatArray,
    h: float,
) -> FloatArray:
    """Velocity from 2 h sinc(h Omega) y'_n = y_{n+1} - y_{n-1}."""

    def inverse_sinc(w: np.ndarray) -> np.ndarray:
        values = sinc(h * w)
        return np.where(
            np.abs(values) > _SINC_FLOOR,
            1.0 / np.where(values == 0.0, 1.0, values),
            1.0,
        )

    difference = (np.asarray(following) - np.asarray(previous)) / (2.0 * h)
    return omega_function(problem.omega, inverse_sinc) @ difference


def gautschi_run(
    problem: SecondOrderProblem,
    initial: PositionVelocity,
    h: float,
    n_steps: int,
    filter_function: Optional[FilterFunction] = SINC,
) -> PositionVelocity:
    """Positions and velocities of n_steps Gautschi steps.

    The first step is taken with trig_voc_step. A run whose positions
    stop being finite is cut short and padded with NaN.

    Returns
    -------
    Tuple[FloatArray, FloatArray]
        Arrays of shape (n_steps + 1, n).
    """
    y0, v0 = (np.asarray(part, dtype=float) for part in initial)
    positions = np.full((n_steps + 2, y0.size), np.nan)
    positions[0] = y0
    positions[1], _ = trig_voc_step(problem, (y0, v0), h)
    for step in range(2, n_steps + 2):
        following = gautschi_step(
            problem,
            TrigStepperState(positions[step - 2], positions[step - 1]),
            h,
            filter_function,
        )
        if not np.all(np.isfinite(following)):
            logging.warning("Gautschi run diverged at step %d.", step)
            break
        positions[step] = following
    velocities = np.full((n_steps + 1, y0.size), np.nan)
    velocities[0] = v0
    for step in range(1, n_steps + 1):
        velocities[step] = gautschi_velocity(
            problem, positions[step - 1], positions[step + 1], h
        )
    return positions[:-1], velocities


def oscillatory_energy_drifts(
    problem: SecondOrderProblem,
    initial: PositionVelocity,
    h: float,
    n_steps: int,
    energy: Callable[[FloatArray, FloatArray], float],
    filters: Sequence[Optional[FilterFunction]] = (SINC, None),
) -> Dict[str, float]:
    """Max |E_n - E_0| of Gautschi runs per filter ("none" if unfiltered).

    A run that leaves the finite range reports an infinite drift.
    """
    drifts = {}
    for filter_function in filters:
        positions, velocities = gautschi_run(
            problem, initial, h, n_steps, filter_function
        )
        values = np.array(
            [energy(y, v) for y, v in zip(positions, velocities)]
        )
        label = "none" if filter_function is None else filter_function.name
        if np.all(np.isfinite(values)):
            drifts[label] = float(np.max(np.abs(values - values[0])))
        else:
            drifts[label] = float("inf")
    return drifts
