""" Definition of the main classes and functions for the package symplectic"""

from .hamiltonian import HamiltonianSystem, PartitionedSystem, packed_state
from .runge_kutta import (
    GAUSS_LEGENDRE,
    gauss_legendre_step,
    implicit_midpoint_step,
    implicit_rk_step,
)
from .stormer_verlet import stormer_verlet_packed_step, stormer_verlet_step
from .diagnostics import (
    SymplecticityReport,
    rk_symplecticity_check,
    symplecticity_defect,
)
