""" Definition of the main classes and functions for the package schrodinger"""

from .grid import (
    SemiclassicalGrid,
    as_real_state,
    as_wave,
    free_plane_wave,
    l2_norm,
    spectral_derivative,
)
from .krylov import KrylovResult, krylov_exp_apply
from .operators import (
    ZassenhausOperators,
    apply_exp_r1,
    operator_matrix,
    zassenhaus_operators,
)
from .potentials import (
    POTENTIALS,
    PotentialData,
    load_potential_samples,
    potential_for,
)
from .zassenhaus import (
    ZASSENHAUS_SEQUENCE,
    ZassenhausSplitting,
    reference_propagator,
    zassenhaus_step,
)
