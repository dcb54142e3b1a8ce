""" Definition of the main classes and functions for the package exponential"""

from .semilinear import SemilinearProblem, exponential_euler_step, phi1
from .filters import (
    SINC,
    SINC_SQUARED,
    FilterFunction,
    builtin_filters,
    get_filter,
)
from .trigonometric import (
    TrigStepperState,
    gautschi_run,
    gautschi_step,
    gautschi_velocity,
    omega_function,
    oscillatory_energy_drifts,
    psi,
    trig_voc_step,
)
