""" Definition of the main classes and functions for the package integrals"""

from .discrete_gradients import (
    DiscreteGradient,
    SkewApproximation,
    avf_gradient,
    avf_nodes_for_degree,
    itoh_abe_gradient,
    unit_gauss_nodes,
)
from .integrators import (
    avf_quadrature_residual,
    avf_step,
    discrete_gradient_step,
    discrete_gradient_stepper,
    simpson_rk_step,
    two_integral_increment,
    two_integral_step,
)
from .systems import FirstIntegralSystem
