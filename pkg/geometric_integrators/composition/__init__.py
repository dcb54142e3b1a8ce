""" Definition of the main classes and functions for the package composition"""

from .scheme import (
    CompositionScheme,
    strang_scheme,
    symmetric_scheme,
    yoshida_boost,
    yoshida_factor,
)
from .splitting import (
    SplitProblem,
    compose_step,
    composition_stepper,
    time_symmetry_defect,
)
