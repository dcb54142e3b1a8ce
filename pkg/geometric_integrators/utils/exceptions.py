""" This module provides a set of custom Exceptions. """

from typing import Optional


class SolverNonConvergenceError(Exception):
    """Exception when an implicit solver misses its tolerance."""

    def __init__(self, iterations: int, residual: float) -> None:
        self.iterations = iterations
        self.residual = residual
        message = (
            f"Implicit solver did not converge after {iterations} "
            f"iterations (residual {residual:.3e})"
        )
        Exception.__init__(self, message)


class SingularLinearizationError(SolverNonConvergenceError):
    """Exception when Newton's method meets a singular Jacobian."""

    def __init__(self, iterations: int, residual: float) -> None:
        SolverNonConvergenceError.__init__(self, iterations, residual)
        self.args = (
            f"Singular linearization after {iterations} iterations "
            f"(residual {residual:.3e})",
        )


class SubflowNonConvergenceError(SolverNonConvergenceError):
    """Exception when the flow of one part of a splitting fails."""

    def __init__(self, part: int, iterations: int, residual: float) -> None:
        SolverNonConvergenceError.__init__(self, iterations, residual)
        self.part = part
        self.args = (
            f"Flow of part {part} did not converge after {iterations} "
            f"iterations (residual {residual:.3e})",
        )


class IntegrationStepError(Exception):
    """Exception when a step of a trajectory cannot be computed."""

    def __init__(self, step: int, residual: float) -> None:
        self.step = step
        self.residual = residual
        message = (
            f"Integration failed at step {step} "
            f"(residual norm {residual:.3e})"
        )
        Exception.__init__(self, message)


class NonFiniteStateError(Exception):
    """Exception when a state holds NaN or Inf entries."""

    def __init__(self, step: Optional[int] = None) -> None:
        self.step = step
        where = "on construction" if step is None else f"at step {step}"
        message = f"State vector is not finite {where}"
        Exception.__init__(self, message)


class StepSizeError(Exception):
    """Exception when the step size makes a linearly implicit scheme
    singular."""

    def __init__(self, h: float, reason: str) -> None:
        self.h = h
        message = (
            f"Step size h={h!r} is not admissible: {reason}. Try halving h."
        )
        Exception.__init__(self, message)


class OrderSaturatedError(Exception):
    """Exception when errors are at round-off level and carry no order."""

    def __init__(self, error: float) -> None:
        self.error = error
        message = (
            f"Order saturated: error {error:.3e} at the largest step is "
            "already at round-off level"
        )
        Exception.__init__(self, message)


class RegistryMissError(Exception):
    """Exception when an id is not found in a registry."""

    def __init__(self, kind: str, key: str) -> None:
        self.kind = kind
        self.key = key
        message = f"Unknown {kind} id '{key}'"
        Exception.__init__(self, message)


class IncompatibleProblemError(Exception):
    """Exception when an integrator cannot handle a problem kind."""

    def __init__(self, integrator: str, problem: str) -> None:
        message = (
            f"Integrator '{integrator}' is not compatible with "
            f"problem '{problem}'"
        )
        Exception.__init__(self, message)


class ProblemDefinitionError(Exception):
    """Exception when a problem object violates its invariants."""

    def __init__(self, reason: str) -> None:
        message = f"Invalid problem definition: {reason}"
        Exception.__init__(self, message)


class InvalidCompositionSchemeError(Exception):
    """Exception when a composition scheme is inconsistent."""

    def __init__(self, reason: str) -> None:
        message = f"Invalid composition scheme: {reason}"
        Exception.__init__(self, message)


class AlgebraMismatchError(Exception):
    """Exception when Lie-algebra elements cannot be combined."""

    def __init__(self, reason: str) -> None:
        message = f"Lie-algebra mismatch: {reason}"
        Exception.__init__(self, message)


class GridTooLargeError(Exception):
    """Exception when a dense oracle is requested on a large grid."""

    def __init__(self, n_points: int, limit: int) -> None:
        message = (
            f"Dense reference needs N <= {limit}, got N = {n_points}"
        )
        Exception.__init__(self, message)
