""" Group actions on manifolds. """

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from geometric_integrators.core.types import ActionKind
from geometric_integrators.liegroup.algebra import (
    GroupElement,
    as_group_matrix,
)

GroupLike = Union[GroupElement, np.ndarray]


def _left_multiplication(p: np.ndarray, y: np.ndarray) -> np.ndarray:
    return p @ y


def _isospectral(p: np.ndarray, y: np.ndarray) -> np.ndarray:
    return p @ y @ p.conj().T


@dataclass(frozen=True)
class GroupAction:
    """Action Lambda(p, y) of a matrix group on manifold points."""

    kind: ActionKind
    rule: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def apply(self, p: GroupLike, y: np.ndarray) -> np.ndarray:
        """Lambda(p, y)."""
        return self.rule(as_group_matrix(p), np.asarray(y))


LEFT_MULTIPLICATION = GroupAction("left-multiplication", _left_multiplication)
ISOSPECTRAL = GroupAction("isospectral", _isospectral)


def action_for(kind: ActionKind) -> GroupAction:
    """Built-in action by kind.

    Raises
    ------
    ValueError
        if the kind is unknown.
    """
    for action in (LEFT_MULTIPLICATION, ISOSPECTRAL):
        if action.kind == kind:
            return action
    raise ValueError(f"Unknown action kind '{kind}'.")
