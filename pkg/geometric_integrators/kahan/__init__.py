""" Definition of the main classes and functions for the package kahan"""

from .fields import CubicHamiltonianStructure, QuadraticVectorField
from .integrators import (
    field_jacobian,
    kahan_jacobian_determinant,
    kahan_residual,
    kahan_rk_form_step,
    kahan_step,
    modified_energy,
    modified_measure_weight,
)
