""" Definition of the main classes and functions for the package problems"""

from .catalog import PROBLEMS, BenchmarkProblem, get_problem
from .mechanics import (
    FIGURE_EIGHT,
    NBodyProblem,
    angular_momentum,
    harmonic_oscillator,
    harmonic_solution,
    kepler,
    kepler_initial_state,
    kinetic_potential_split,
    nbody,
    nbody_initial_state,
    pendulum,
    quartic_oscillator,
)
from .oscillatory import (
    OscillatoryHamiltonian,
    fpu_initial_state,
    fpu_system,
    multi_frequency_system,
    nonresonance_ok,
    oscillatory_energy,
    total_energy,
)
from .quadratic import (
    KAHAN_FAMILIES,
    family_hamiltonian,
    family_skew,
    kahan_family,
    nahm_initial_state,
)
from .rigid_body import (
    hat,
    isospectral_problem,
    mathieu_problem,
    mathieu_reference,
    rigid_body_initial_state,
    rigid_body_lie_problem,
    rigid_body_system,
    spectrum,
)
from .divergence_free import (
    shang_quispel_field,
    shang_quispel_initial_state,
    shang_quispel_polynomial,
)

# Populates PROBLEMS
from . import builtin
