""" This module provides a set of useful functions for numeric arrays. """

from typing import Callable

import numpy as np
from scipy.linalg import eigh

from geometric_integrators.core.types import FloatArray


def max_norm(vector: np.ndarray) -> float:
    """Infinity norm of an array (0.0 for empty arrays)."""
    if np.size(vector) == 0:
        return 0.0
    return float(np.max(np.abs(vector)))


def canonical_skew_matrix(degrees_of_freedom: int) -> FloatArray:
    """Canonical structure matrix J for states packed as (p, q).

    Parameters
    ----------
    degrees_of_freedom: int
        Number d of (p, q) pairs.

    Returns
    -------
    FloatArray
        The 2d x 2d matrix [[0, -I], [I, 0]], so that x' = J grad H(x)
        reproduces p' = -dH/dq and q' = dH/dp.

    Raises
    ------
    ValueError
        if degrees_of_freedom is not positive.
    """
    if degrees_of_freedom < 1:
        raise ValueError(
            f"Unsupported number of degrees of freedom: {degrees_of_freedom}."
        )
    identity = np.eye(degrees_of_freedom)
    zero = np.zeros((degrees_of_freedom, degrees_of_freedom))
    return np.block([[zero, -identity], [identity, zero]])


def levi_civita_tensor() -> FloatArray:
    """Fully antisymmetric 3x3x3 tensor with eps_012 = 1."""
    tensor = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        tensor[i, j, k] = 1.0
        tensor[i, k, j] = -1.0
    return tensor


def symmetric_matrix_function(
    matrix: FloatArray, func: Callable[[FloatArray], FloatArray]
) -> FloatArray:
    """Apply a scalar function to a symmetric matrix.

    Parameters
    ----------
    matrix: FloatArray
        Symmetric matrix.

    func: Callable
        Vectorised scalar function applied to the eigenvalues.

    Returns
    -------
    FloatArray
        V diag(func(lambda)) V^T.
    """
    eigenvalues, eigenvectors = eigh(matrix)
    return (eigenvectors * func(eigenvalues)) @ eigenvectors.T


def sinc(x: np.ndarray) -> np.ndarray:
    """Unnormalised sinc, sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def drift_slope(values: np.ndarray) -> float:
    """Least-squares slope, per sample, of |values - values[0]|.

    Raises
    ------
    ValueError
        if fewer than two samples are passed.
    """
    series = np.asarray(values, dtype=float)
    if series.size < 2:
        raise ValueError("A drift slope needs at least two samples.")
    steps = np.arange(series.size, dtype=float)
    slope, _ = np.polyfit(steps, np.abs(series - series[0]), 1)
    return float(slope)


def is_power_of_two(value: int) -> bool:
    """True iff value is a positive power of two."""
    return value > 0 and (value & (value - 1)) == 0
