""" Benchmark problem entries and the problem registry. """

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from geometric_integrators.core.registry import Registry
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray, Observer
from geometric_integrators.utils.exceptions import IncompatibleProblemError

PROBLEMS: Registry["BenchmarkProblem"] = Registry("problem")


@dataclass(frozen=True)
class BenchmarkProblem:
    """A problem with its initial state, observables and the structured
    views the integrators understand.

    Parameters
    ----------
    key: str
        Registry id.

    vector_field: VectorFieldProblem
        First-order form x' = f(t, x) on the state vector.

    x0: FloatArray
        Initial state.

    observables: Dict[str, Observer]
        Named functions of the state.

    views: Dict[str, Any]
        Structured forms by kind ("hamiltonian", "partitioned", "split",
        "quadratic", "cubic-structure", "integrals", "second-order",
        "oscillatory", "lie", "volume", "schrodinger").

    reference: Optional[Callable]
        Exact state as a function of time, where known.

    t_final: float
        Default length of a run.
    """

    key: str
    vector_field: VectorFieldProblem
    x0: FloatArray
    observables: Dict[str, Observer] = field(default_factory=dict)
    views: Dict[str, Any] = field(default_factory=dict)
    reference: Optional[Callable[[float], FloatArray]] = None
    t_final: float = 10.0
    # h-dependent observables, e.g. Kahan's modified energy
    step_observables: Dict[str, Callable[[FloatArray, float], float]] = field(
        default_factory=dict
    )
    # Self-checks of the supplied derivatives, run before an experiment
    checks: Tuple[Callable[[np.random.Generator], None], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float))

    @property
    def dimension(self) -> int:
        """State dimension."""
        return int(self.x0.size)

    def view(self, kind: str, integrator: str = "") -> Any:
        """Structured form of the given kind.

        Raises
        ------
        IncompatibleProblemError
            if the problem has no such form.
        """
        found = self.views.get(kind)
        if found is None:
            raise IncompatibleProblemError(integrator or kind, self.key)
        return found

    def validate(self, rng: np.random.Generator) -> None:
        """Run the self-checks.

        Raises
        ------
        ProblemDefinitionError
            if a supplied gradient or structure is inconsistent.
        """
        for check in self.checks:
            check(rng)

    def has_view(self, kind: str) -> bool:
        """True if a view of this kind is attached."""
        return kind in self.views

    def observers(
        self, h: float, names: Optional[List[str]] = None
    ) -> Dict[str, Observer]:
        """Observables for a run with step h, all of them by default.

        Raises
        ------
        IncompatibleProblemError
            if a requested observable is unknown for this problem.
        """
        available: Dict[str, Observer] = dict(self.observables)
        for name, observable in self.step_observables.items():
            available[name] = lambda x, o=observable: o(x, h)
        if names is None:
            return available
        missing = [name for name in names if name not in available]
        if missing:
            raise IncompatibleProblemError(
                f"observable {missing[0]}", self.key
            )
        return {name: available[name] for name in names}


def get_problem(key: str, **parameters: Any) -> BenchmarkProblem:
    """Build a registered problem.

    Raises
    ------
    RegistryMissError
        if no problem is registered under key.
    """
    return PROBLEMS.get(key)(**parameters)
