""" Composition schemes: coefficient strings of split flows. """

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from geometric_integrators.utils.exceptions import (
    InvalidCompositionSchemeError,
)

Substep = Tuple[int, float]

_WEIGHT_SUM_TOLERANCE = 1e-12
_PALINDROME_TOLERANCE = 1e-15


def _merge_adjacent(coefficients: Sequence[Substep]) -> Tuple[Substep, ...]:
    """Fuse consecutive substeps of the same part.

    e^{aL} e^{bL} = e^{(a+b)L}.
    """
    merged: List[Substep] = []
    for part, weight in coefficients:
        if merged and merged[-1][0] == part:
            merged[-1] = (part, merged[-1][1] + weight)
        else:
            merged.append((part, weight))
    return tuple(merged)


@dataclass(frozen=True)
class CompositionScheme:
    """Ordered substeps e^{w_1 h L_{i_1}} ... e^{w_m h L_{i_m}}.

    Parameters
    ----------
    coefficients: Tuple[Tuple[int, float], ...]
        (part index, weight) pairs, applied left to right.

    order: int
        Declared order of the composed method.

    stages: int
        Number of base-method applications (Strang counts as one).

    name: str
        Label used in reports.
    """

    coefficients: Tuple[Substep, ...]
    order: int
    stages: int = 1
    name: str = ""

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise InvalidCompositionSchemeError("no substeps")
        if any(part < 0 for part, _ in self.coefficients):
            raise InvalidCompositionSchemeError("negative part index")
        for part in range(self.n_parts):
            total = sum(w for p, w in self.coefficients if p == part)
            if abs(total - 1.0) > _WEIGHT_SUM_TOLERANCE:
                raise InvalidCompositionSchemeError(
                    f"weights of part {part} sum to {total!r}, not 1"
                )

    @property
    def n_parts(self) -> int:
        """Number of split parts the scheme addresses."""
        return 1 + max(part for part, _ in self.coefficients)

    @property
    def palindromic(self) -> bool:
        """True iff the coefficient string equals its reversal."""
        reversed_string = self.coefficients[::-1]
        return all(
            part == other_part
            and abs(weight - other_weight) <= _PALINDROME_TOLERANCE
            for (part, weight), (other_part, other_weight) in zip(
                self.coefficients, reversed_string
            )
        )

    @property
    def has_negative_weights(self) -> bool:
        """True iff some substep runs backwards in time."""
        return any(weight < 0 for _, weight in self.coefficients)

    def weight_sums(self) -> List[float]:
        """Total weight per part (all equal to 1 for a consistent scheme)."""
        return [
            sum(w for p, w in self.coefficients if p == part)
            for part in range(self.n_parts)
        ]


def strang_scheme() -> CompositionScheme:
    """(1/2 L_1)(L_2)(1/2 L_1), second order and palindromic."""
    return CompositionScheme(((0, 0.5), (1, 1.0), (0, 0.5)), 2, 1, "strang")


def symmetric_scheme(n_parts: int) -> CompositionScheme:
    """L_1(1/2) ... L_{n-1}(1/2) L_n(1) L_{n-1}(1/2) ... L_1(1/2).

    Raises
    ------
    ValueError
        if n_parts < 1.
    """
    if n_parts < 1:
        raise ValueError("A composition needs at least one part.")
    outer = [(part, 0.5) for part in range(n_parts - 1)]
    coefficients = outer + [(n_parts - 1, 1.0)] + outer[::-1]
    return CompositionScheme(
        tuple(coefficients), 2, 1, f"symmetric-{n_parts}"
    )


def yoshida_factor(order: int) -> float:
    """alpha = (2^(1/(2P+1)) - 1) / (2 - 2^(1/(2P+1))) for order 2P."""
    root = np.power(2.0, 1.0 / (order + 1))
    return float((root - 1.0) / (2.0 - root))


def yoshida_boost(scheme: CompositionScheme) -> CompositionScheme:
    """Raise a time-symmetric scheme of order 2P to order 2P + 2.

    The result is Phi((1+alpha)h) Phi(-(1+2 alpha)h) Phi((1+alpha)h).

    Raises
    ------
    InvalidCompositionSchemeError
        if the input is not palindromic or its order is odd.
    """
    if not scheme.palindromic:
        raise InvalidCompositionSchemeError(
            f"'{scheme.name}' is not palindromic"
        )
    if scheme.order % 2:
        raise InvalidCompositionSchemeError(
            f"'{scheme.name}' has odd order {scheme.order}"
        )
    alpha = yoshida_factor(scheme.order)
    outer, inner = 1.0 + alpha, -(1.0 + 2.0 * alpha)
    coefficients = (
        [(part, weight * outer) for part, weight in scheme.coefficients]
        + [(part, weight * inner) for part, weight in scheme.coefficients]
        + [(part, weight * outer) for part, weight in scheme.coefficients]
    )
    return CompositionScheme(
        _merge_adjacent(coefficients),
        scheme.order + 2,
        3 * scheme.stages,
        f"yoshida({scheme.name})",
    )
