""" Definition of the main classes and functions for the package liegroup"""

from .algebra import (
    GROUP_OF_ALGEBRA,
    AlgebraElement,
    GroupElement,
    commutator,
    dexpinv_apply,
    expm,
)
from .actions import ISOSPECTRAL, LEFT_MULTIPLICATION, GroupAction, action_for
from .integrators import LieGroupProblem, lie_stepper, magnus4_step, rkmk3_step
