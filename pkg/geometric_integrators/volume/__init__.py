""" Definition of the main classes and functions for the package volume"""

from .fields import (
    DivergenceFree3D,
    PolynomialVectorField,
    vp_split,
    vp_split_polynomial,
)
from .integrators import (
    TriangularVPMap,
    shang_quispel_example_step,
    shang_quispel_map,
    triangular_vp_condition_defect,
    volume_defect,
    volume_preserving_split,
    vp_splitting_step,
)
