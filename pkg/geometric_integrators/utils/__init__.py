""" Definition of the main classes and functions for the package utils"""

from .exceptions import (
    AlgebraMismatchError,
    GridTooLargeError,
    IncompatibleProblemError,
    IntegrationStepError,
    InvalidCompositionSchemeError,
    NonFiniteStateError,
    OrderSaturatedError,
    ProblemDefinitionError,
    RegistryMissError,
    SingularLinearizationError,
    SolverNonConvergenceError,
    StepSizeError,
    SubflowNonConvergenceError,
)
