""" Matrix Lie algebras and groups. """

import logging
from dataclasses import dataclass
from typing import Dict, Union

import numpy as np
from scipy import linalg
from scipy.special import bernoulli

from geometric_integrators.core.constants import (
    DEXPINV_DEFAULT_TERMS,
    DEXPINV_MAX_TERMS,
    ORTHOGONALITY_TOLERANCE,
    SKEW_TOLERANCE,
)
from geometric_integrators.core.types import AlgebraTag, GroupTag
from geometric_integrators.utils.exceptions import AlgebraMismatchError

GROUP_OF_ALGEBRA: Dict[str, GroupTag] = {
    "so": "SO",
    "sl": "SL",
    "general": "GL",
    "skew-hermitian": "U",
}

# Tolerance of the group-membership checks
_GROUP_TOLERANCE = 1e-10


def _scale(matrix: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(matrix), initial=0.0)))


@dataclass(frozen=True)
class AlgebraElement:
    """Square matrix in so(n), sl(n), u(n) or gl(n).

    Raises
    ------
    AlgebraMismatchError
        if the matrix is not square or violates its tag.
    """

    matrix: np.ndarray
    tag: AlgebraTag = "general"

    # numpy scalars defer to __rmul__ instead of building object arrays
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        matrix = np.atleast_2d(np.asarray(self.matrix))
        if not np.iscomplexobj(matrix):
            matrix = matrix.astype(float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise AlgebraMismatchError(f"matrix of shape {matrix.shape}")
        tolerance = SKEW_TOLERANCE * _scale(matrix)
        if self.tag == "so" and (
            np.iscomplexobj(matrix)
            or np.max(np.abs(matrix + matrix.T)) > tolerance
        ):
            raise AlgebraMismatchError("element of so(n) is not skew")
        if self.tag == "sl" and abs(np.trace(matrix)) > tolerance:
            raise AlgebraMismatchError("element of sl(n) is not traceless")
        if self.tag == "skew-hermitian" and (
            np.max(np.abs(matrix + matrix.conj().T)) > tolerance
        ):
            raise AlgebraMismatchError("element of u(n) is not skew-hermitian")
        object.__setattr__(self, "matrix", matrix)

    @property
    def size(self) -> int:
        """Matrix dimension n."""
        return int(self.matrix.shape[0])

    def _check_compatible(self, other: "AlgebraElement") -> None:
        if self.matrix.shape != other.matrix.shape:
            raise AlgebraMismatchError(
                f"shapes {self.matrix.shape} and {other.matrix.shape}"
            )
        if self.tag != other.tag:
            raise AlgebraMismatchError(f"tags '{self.tag}' and '{other.tag}'")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_compatible(other)
        return AlgebraElement(self.matrix + other.matrix, self.tag)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_compatible(other)
        return AlgebraElement(self.matrix - other.matrix, self.tag)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.matrix, self.tag)

    def __mul__(self, scalar: float) -> "AlgebraElement":
        return AlgebraElement(scalar * self.matrix, self.tag)

    __rmul__ = __mul__

    def zero(self) -> "AlgebraElement":
        """The zero element of the same algebra."""
        return AlgebraElement(np.zeros_like(self.matrix), self.tag)


@dataclass(frozen=True)
class GroupElement:
    """Square matrix in SO(n), SL(n), U(n) or GL(n)."""

    matrix: np.ndarray
    tag: GroupTag = "GL"

    def defect(self) -> float:
        """Distance from the group: |M^H M - I| or |det M - 1|."""
        if self.tag in ("SO", "U"):
            identity = np.eye(self.matrix.shape[0])
            return float(
                np.max(np.abs(self.matrix.conj().T @ self.matrix - identity))
            )
        if self.tag == "SL":
            return float(abs(np.linalg.det(self.matrix) - 1.0))
        return 0.0

    def validate(self) -> None:
        """Check the group invariants.

        Raises
        ------
        ValueError
            if the matrix is not in the tagged group.
        """
        if self.defect() > _GROUP_TOLERANCE:
            raise ValueError(f"Matrix is not in {self.tag}(n).")
        if self.tag == "SO" and np.linalg.det(self.matrix) < 0:
            raise ValueError("Orthogonal matrix has determinant -1.")

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        tag = self.tag if self.tag == other.tag else "GL"
        return GroupElement(self.matrix @ other.matrix, tag)


def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Lie bracket [a, b] = ab - ba."""
    a._check_compatible(b)
    return AlgebraElement(a.matrix @ b.matrix - b.matrix @ a.matrix, a.tag)


def expm(a: AlgebraElement) -> GroupElement:
    """Exponential map onto the group of a's algebra.

    Compact groups are re-projected (polar factor) when the
    orthogonality defect exceeds its tolerance.
    """
    tag = GROUP_OF_ALGEBRA[a.tag]
    element = GroupElement(linalg.expm(a.matrix), tag)
    if tag in ("SO", "U"):
        defect = element.defect()
        if defect > ORTHOGONALITY_TOLERANCE:
            logging.info(
                "Re-orthonormalising exponential (defect %.3e).", defect
            )
            unitary, _ = linalg.polar(element.matrix)
            element = GroupElement(unitary, tag)
    return element


def dexpinv_apply(
    a: AlgebraElement,
    omega: AlgebraElement,
    m_max: int = DEXPINV_DEFAULT_TERMS,
) -> AlgebraElement:
    """Truncated dexpinv: sum_{m <= m_max} B_m / m! ad_omega^m (a).

    Raises
    ------
    ValueError
        if m_max is negative or above the supported depth.
    """
    if not 0 <= m_max <= DEXPINV_MAX_TERMS:
        raise ValueError(
            f"m_max must lie in [0, {DEXPINV_MAX_TERMS}], got {m_max}."
        )
    coefficients = bernoulli(m_max)
    total = a
    term = a
    factorial = 1.0
    for m in range(1, m_max + 1):
        term = commutator(omega, term)
        factorial *= m
        if coefficients[m] != 0.0:
            total = total + term * float(coefficients[m] / factorial)
    return total


def as_group_matrix(p: Union[GroupElement, np.ndarray]) -> np.ndarray:
    """Underlying matrix of a group element or a plain array."""
    return p.matrix if isinstance(p, GroupElement) else np.asarray(p)
