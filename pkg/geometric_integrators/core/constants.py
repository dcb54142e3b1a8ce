""" Module with the constants of the project. """

import numpy as np

# General constants
DEFAULT_LOG_LEVEL = "INFO"  # Default log level for the application
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

MACHINE_EPSILON = float(np.finfo(np.float64).eps)

# Implicit solvers
DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITERATIONS = 50
# Scalar implicit relations (triangular volume-preserving maps)
SCALAR_TOLERANCE = 1e-13
# Central differences: optimal step eps^(1/3), scaled by max(1, |x|_inf)
FD_STEP = MACHINE_EPSILON ** (1.0 / 3.0)

# Convergence-order estimation
SATURATION_FACTOR = 100.0  # errors below 100*eps carry no order information
GEOMETRIC_RATIO_RTOL = 1e-8

# Structure checks
SYMPLECTIC_CRITERION_TOLERANCE = 1e-14
ORTHOGONALITY_TOLERANCE = 1e-12
SKEW_TOLERANCE = 1e-12
GRADIENT_CHECK_RTOL = 1e-6

# Lie-group methods
DEXPINV_MAX_TERMS = 8
DEXPINV_DEFAULT_TERMS = 2

# Exponential integrators: below this |x| the Gautschi Psi uses its series
PSI_SERIES_THRESHOLD = 1e-4

# Average vector field quadrature when the field degree is unknown
AVF_DEFAULT_NODES = 8
AVF_RESIDUAL_WARNING = 1e-10

# Semiclassical Schroedinger
KRYLOV_ITERATIONS_R2 = 3
KRYLOV_ITERATIONS_R3 = 2
# Remainder estimate relative to |u| that ends a Lanczos run early
KRYLOV_TOLERANCE = 1e-12
KRYLOV_MAX_ITERATIONS = 64
KRYLOV_BREAKDOWN_TOLERANCE = 1e-14
REFERENCE_PROPAGATOR_MAX_POINTS = 512
GRID_POINTS_PER_INVERSE_EPSILON = 4

# Experiment output
CSV_SIGNIFICANT_DIGITS = 17
EXIT_OK = 0
EXIT_REGISTRY_MISS = 2
EXIT_NUMERICAL_FAILURE = 3
