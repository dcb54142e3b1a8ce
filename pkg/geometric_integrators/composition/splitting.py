""" Split problems and composed steps. """

import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, List, Optional, Sequence

import numpy as np

from geometric_integrators.composition.scheme import CompositionScheme
from geometric_integrators.core.driver import Stepper
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray, StateVector, StepMap
from geometric_integrators.symplectic.runge_kutta import gauss_legendre_step
from geometric_integrators.utils.exceptions import (
    InvalidCompositionSchemeError,
    ProblemDefinitionError,
    SolverNonConvergenceError,
    SubflowNonConvergenceError,
)
from geometric_integrators.utils.numeric_utils import max_norm

PartFlow = Callable[[FloatArray, float], FloatArray]

_SPLIT_CONSISTENCY_TOLERANCE = 1e-10


def _designated_flow(
    part: VectorFieldProblem, x: FloatArray, tau: float
) -> FloatArray:
    # Sixth order covers every scheme built by a double boost of Strang.
    return gauss_legendre_step(3, part, x, tau)


@dataclass(frozen=True)
class SplitProblem:
    """u' = L_1(u) + L_2(u) + ... with a flow map per part.

    Parameters
    ----------
    parts: Sequence[VectorFieldProblem]
        Summands of the full field.

    flows: Sequence[Optional[PartFlow]]
        Exact flows (x, tau) -> x(tau); None selects a sixth-order
        Gauss-Legendre substep.

    negative_time: bool
        False if some sub-flow is undefined backwards in time.
    """

    parts: Sequence[VectorFieldProblem]
    flows: Sequence[Optional[PartFlow]] = ()
    negative_time: bool = True
    name: str = ""
    _resolved: List[PartFlow] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.parts:
            raise ProblemDefinitionError("a split problem needs parts")
        flows = list(self.flows) or [None] * len(self.parts)
        if len(flows) != len(self.parts):
            raise ProblemDefinitionError("one flow slot per part is needed")
        resolved = [
            flow if flow is not None else partial(_designated_flow, part)
            for part, flow in zip(self.parts, flows)
        ]
        object.__setattr__(self, "_resolved", resolved)

    @property
    def n_parts(self) -> int:
        """Number of summands."""
        return len(self.parts)

    @property
    def dimension(self) -> int:
        """State dimension."""
        return self.parts[0].dimension

    def flow(self, index: int) -> PartFlow:
        """Flow map of one part."""
        return self._resolved[index]

    def evaluate(self, t: float, x: FloatArray) -> FloatArray:
        """The full field, sum of the parts."""
        return np.sum([part(t, x) for part in self.parts], axis=0)

    def full_field(self) -> VectorFieldProblem:
        """The summed field as a first-order problem."""
        return VectorFieldProblem(
            self.dimension, self.evaluate, name=self.name
        )

    def check_sum(
        self,
        full: VectorFieldProblem,
        rng: np.random.Generator,
        points: int = 5,
    ) -> None:
        """Check that the parts add up to full at random points.

        Raises
        ------
        ProblemDefinitionError
            if they differ by more than 1e-10.
        """
        for _ in range(points):
            x = rng.standard_normal(self.dimension)
            if max_norm(self.evaluate(0.0, x) - full(0.0, x)) > (
                _SPLIT_CONSISTENCY_TOLERANCE
            ):
                raise ProblemDefinitionError(
                    f"parts of '{self.name}' do not sum to the full field"
                )


def _check_compatible(scheme: CompositionScheme, split: SplitProblem) -> None:
    if scheme.n_parts > split.n_parts:
        raise InvalidCompositionSchemeError(
            f"'{scheme.name}' needs {scheme.n_parts} parts, "
            f"'{split.name}' has {split.n_parts}"
        )
    if scheme.has_negative_weights and not split.negative_time:
        raise InvalidCompositionSchemeError(
            f"'{split.name}' has no backward sub-flows"
        )


def compose_step(
    scheme: CompositionScheme,
    split: SplitProblem,
    x: StateVector,
    h: float,
    t: float = 0.0,
) -> StateVector:
    """Apply the scheme's substeps left to right.

    Raises
    ------
    InvalidCompositionSchemeError
        if the scheme addresses more parts than the split has, or needs
        backward sub-flows the split cannot provide.

    SubflowNonConvergenceError
        if a part flow fails; carries the index of the failing part.
    """
    del t
    _check_compatible(scheme, split)
    state = np.asarray(x, dtype=float)
    for part, weight in scheme.coefficients:
        try:
            flow = split.flow(part)
            state = np.asarray(flow(state, weight * h), dtype=float)
        except SolverNonConvergenceError as e:
            logging.error("Flow of part %d failed: %s", part, e)
            raise SubflowNonConvergenceError(
                part, e.iterations, e.residual
            ) from e
    return state


def composition_stepper(
    scheme: CompositionScheme, split: SplitProblem
) -> Stepper:
    """Stepper (problem, x, h, t) for the driver, validated up front.

    Raises
    ------
    InvalidCompositionSchemeError
        if the scheme cannot run on the split.
    """
    _check_compatible(scheme, split)

    def step(
        problem: object, x: StateVector, h: float, t: float = 0.0
    ) -> StateVector:
        del problem
        return compose_step(scheme, split, x, h, t)

    return step


def time_symmetry_defect(stepper: StepMap, x: FloatArray, h: float) -> float:
    """|Phi_{-h}(Phi_h(x)) - x|_inf."""
    point = np.asarray(x, dtype=float)
    return max_norm(stepper(stepper(point, h), -h) - point)
