""" Integrator registry: binds a stepper to the view it needs. """

from dataclasses import dataclass, replace
from functools import partial
from typing import Any, Callable, Dict, Optional

import numpy as np

from geometric_integrators.composition.scheme import (
    strang_scheme,
    yoshida_boost,
)
from geometric_integrators.composition.splitting import composition_stepper
from geometric_integrators.core.decorators import registered
from geometric_integrators.core.driver import Stepper, solve
from geometric_integrators.core.registry import Registry
from geometric_integrators.core.state import Trajectory
from geometric_integrators.core.steppers import explicit_euler_step, rk4_step
from geometric_integrators.core.types import (
    FloatArray,
    Observer,
    StateVector,
    StepMap,
)
from geometric_integrators.exponential.filters import get_filter
from geometric_integrators.exponential.semilinear import (
    exponential_euler_step,
)
from geometric_integrators.exponential.trigonometric import (
    gautschi_run,
    trig_voc_step,
)
from geometric_integrators.integrals.integrators import (
    avf_step,
    discrete_gradient_stepper,
    simpson_rk_step,
    two_integral_step,
)
from geometric_integrators.kahan.integrators import (
    kahan_rk_form_step,
    kahan_step,
)
from geometric_integrators.liegroup.integrators import (
    lie_stepper,
    magnus4_step,
    rkmk3_step,
)
from geometric_integrators.problems.catalog import BenchmarkProblem
from geometric_integrators.schrodinger.grid import as_real_state, as_wave
from geometric_integrators.symplectic.runge_kutta import (
    gauss_legendre_step,
    implicit_midpoint_step,
)
from geometric_integrators.symplectic.stormer_verlet import (
    stormer_verlet_packed_step,
)
from geometric_integrators.utils.exceptions import (
    IncompatibleProblemError,
    NonFiniteStateError,
)
from geometric_integrators.volume.integrators import vp_splitting_step

# Runs a whole trajectory for methods that are not one-step maps
MultistepRun = Callable[[FloatArray, float, int], FloatArray]


@dataclass(frozen=True)
class PreparedIntegrator:
    """A stepper bound to the problem form it advances.

    Parameters
    ----------
    name: str
        Integrator id.

    target: Any
        First argument of every stepper call (a view of the problem).

    stepper: Optional[Stepper]
        One-step map; None for multistep methods.

    multistep: Optional[MultistepRun]
        Whole-run routine (x0, h, n_steps) -> states.
    """

    name: str
    target: Any
    stepper: Optional[Stepper] = None
    multistep: Optional[MultistepRun] = None

    def step_map(self) -> StepMap:
        """(x, h) -> x' for the structural diagnostics.

        Raises
        ------
        IncompatibleProblemError
            for multistep methods.
        """
        stepper = self.stepper
        if stepper is None:
            raise IncompatibleProblemError(
                f"{self.name} (not a one-step map)", "diagnostics"
            )
        return lambda x, h: stepper(self.target, x, h)

    def trajectory(
        self,
        x0: FloatArray,
        h: float,
        n_steps: int,
        observers: Optional[Dict[str, Observer]] = None,
        t0: float = 0.0,
    ) -> Trajectory:
        """Run the integrator from x0."""
        if self.stepper is not None:
            return solve(
                self.target, self.stepper, h, n_steps, x0, observers, t0
            )
        states = self.multistep(np.asarray(x0, dtype=float), h, n_steps)
        finite = np.all(np.isfinite(states), axis=1)
        if not np.all(finite):
            raise NonFiniteStateError(int(np.argmin(finite)))
        observables = {
            name: np.array([observer(state) for state in states])
            for name, observer in (observers or {}).items()
        }
        times = t0 + h * np.arange(n_steps + 1)
        return Trajectory(times, states, observables)


INTEGRATORS: Registry[PreparedIntegrator] = Registry("integrator")


def prepare(
    key: str, problem: BenchmarkProblem, **parameters: Any
) -> PreparedIntegrator:
    """Bind a registered integrator to a problem.

    Raises
    ------
    RegistryMissError
        if the id is unknown.

    IncompatibleProblemError
        if the problem lacks the structure the integrator needs.
    """
    return INTEGRATORS.get(key)(problem, **parameters)


@registered(INTEGRATORS, "explicit-euler")
def explicit_euler(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Explicit Euler, a non-structure-preserving control."""
    return PreparedIntegrator(
        "explicit-euler", problem.vector_field, explicit_euler_step
    )


@registered(INTEGRATORS, "rk4")
def rk4(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Classical Runge-Kutta of order 4, a non-symplectic control."""
    return PreparedIntegrator("rk4", problem.vector_field, rk4_step)


@registered(INTEGRATORS, "implicit-midpoint")
def implicit_midpoint(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Implicit midpoint rule, symplectic of order 2."""
    return PreparedIntegrator(
        "implicit-midpoint", problem.vector_field, implicit_midpoint_step
    )


@registered(INTEGRATORS, "gauss-legendre", parameters=("stages",))
def gauss_legendre(
    problem: BenchmarkProblem, stages: int = 2
) -> PreparedIntegrator:
    """s-stage Gauss-Legendre collocation, symplectic of order 2s."""
    return PreparedIntegrator(
        "gauss-legendre",
        problem.vector_field,
        partial(gauss_legendre_step, int(stages)),
    )


@registered(INTEGRATORS, "stormer-verlet")
def stormer_verlet(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Stormer-Verlet for separable Hamiltonians."""
    return PreparedIntegrator(
        "stormer-verlet",
        problem.view("partitioned", "stormer-verlet"),
        stormer_verlet_packed_step,
    )


@registered(INTEGRATORS, "strang")
def strang(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Strang splitting of the problem's split form."""
    split = problem.view("split", "strang")
    return PreparedIntegrator(
        "strang", split, composition_stepper(strang_scheme(), split)
    )


@registered(INTEGRATORS, "yoshida", parameters=("boosts",))
def yoshida(problem: BenchmarkProblem, boosts: int = 1) -> PreparedIntegrator:
    """Strang raised by `boosts` Yoshida triple compositions."""
    split = problem.view("split", "yoshida")
    scheme = strang_scheme()
    for _ in range(int(boosts)):
        scheme = yoshida_boost(scheme)
    return PreparedIntegrator(
        "yoshida", split, composition_stepper(scheme, split)
    )


@registered(INTEGRATORS, "kahan")
def kahan(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Kahan's linearly implicit method for quadratic fields."""
    return PreparedIntegrator(
        "kahan", problem.view("quadratic", "kahan"), kahan_step
    )


@registered(INTEGRATORS, "kahan-rk")
def kahan_rk(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Kahan's method in its Runge-Kutta form, solved iteratively."""
    return PreparedIntegrator(
        "kahan-rk", problem.view("quadratic", "kahan-rk"), kahan_rk_form_step
    )


@registered(INTEGRATORS, "avf", parameters=("quad_order",))
def avf(
    problem: BenchmarkProblem, quad_order: Optional[int] = None
) -> PreparedIntegrator:
    """Average vector field method (energy-preserving)."""
    return PreparedIntegrator(
        "avf", problem.vector_field, partial(avf_step, quad_order=quad_order)
    )


@registered(INTEGRATORS, "simpson-rk")
def simpson_rk(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Simpson-weighted RK, preserving quartic Hamiltonians."""
    return PreparedIntegrator(
        "simpson-rk", problem.vector_field, simpson_rk_step
    )


@registered(INTEGRATORS, "discrete-gradient", parameters=("kind", "skew"))
def discrete_gradient(
    problem: BenchmarkProblem,
    kind: str = "itoh-abe",
    skew: str = "midpoint",
) -> PreparedIntegrator:
    """Discrete-gradient method preserving the first integral I."""
    return PreparedIntegrator(
        "discrete-gradient",
        problem.view("integrals", "discrete-gradient"),
        discrete_gradient_stepper(kind, skew),  # type: ignore[arg-type]
    )


@registered(INTEGRATORS, "two-integral", parameters=("kind",))
def two_integral(
    problem: BenchmarkProblem, kind: str = "avf"
) -> PreparedIntegrator:
    """Tensor discrete-gradient method preserving I and J."""
    system = problem.view("integrals", "two-integral")
    if system.second_integral is None or system.skew_tensor is None:
        raise IncompatibleProblemError("two-integral", problem.key)
    return PreparedIntegrator(
        "two-integral", system, partial(two_integral_step, kind=kind)
    )


@registered(INTEGRATORS, "rkmk3")
def rkmk3(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Third-order Runge-Kutta-Munthe-Kaas on a homogeneous space."""
    return PreparedIntegrator(
        "rkmk3", problem.view("lie", "rkmk3"), lie_stepper(rkmk3_step)
    )


@registered(INTEGRATORS, "magnus4")
def magnus4(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Fourth-order Magnus method for linear equations v' = a(t) v."""
    lie = problem.view("lie", "magnus4")
    if not lie.state_independent:
        raise IncompatibleProblemError("magnus4", problem.key)
    return PreparedIntegrator("magnus4", lie, lie_stepper(magnus4_step))


@registered(INTEGRATORS, "exponential-euler")
def exponential_euler(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Exponential Euler for y' = A y + b(y)."""
    return PreparedIntegrator(
        "exponential-euler",
        problem.view("semilinear", "exponential-euler"),
        exponential_euler_step,
    )


def _trig_voc_packed(
    nodes: int, problem: Any, x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    del t
    n = problem.dimension
    y_new, v_new = trig_voc_step(problem, (x[n:], x[:n]), h, nodes)
    return np.concatenate([v_new, y_new])


@registered(INTEGRATORS, "trig-voc", parameters=("nodes",))
def trig_voc(problem: BenchmarkProblem, nodes: int = 1) -> PreparedIntegrator:
    """One-step trigonometric variation-of-constants method."""
    return PreparedIntegrator(
        "trig-voc",
        problem.view("second-order", "trig-voc"),
        partial(_trig_voc_packed, int(nodes)),
    )


@registered(INTEGRATORS, "gautschi", parameters=("filter_name",))
def gautschi(
    problem: BenchmarkProblem, filter_name: str = "sinc"
) -> PreparedIntegrator:
    """Two-step Gautschi method, filtered (sinc, sinc2) or "none"."""
    second_order = problem.view("second-order", "gautschi")
    filter_function = (
        None
        if filter_name == "none"
        else get_filter(filter_name)  # type: ignore[arg-type]
    )
    n = second_order.dimension

    def run(x0: FloatArray, h: float, n_steps: int) -> FloatArray:
        positions, velocities = gautschi_run(
            second_order, (x0[n:], x0[:n]), h, n_steps, filter_function
        )
        return np.hstack([velocities, positions])

    return PreparedIntegrator("gautschi", second_order, multistep=run)


@registered(INTEGRATORS, "vp-splitting")
def vp_splitting(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Volume-preserving splitting into two-dimensional flows."""
    return PreparedIntegrator(
        "vp-splitting",
        problem.view("volume", "vp-splitting"),
        vp_splitting_step,
    )


def _triangular_step(
    family: Callable[[float], Any], x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    del t
    return family(h).step(x)


@registered(INTEGRATORS, "triangular-vp")
def triangular_vp(problem: BenchmarkProblem) -> PreparedIntegrator:
    """Triangular volume-preserving map of the cubic/quintic example."""
    return PreparedIntegrator(
        "triangular-vp",
        problem.view("triangular", "triangular-vp"),
        _triangular_step,
    )


def _zassenhaus_packed(
    splitting: Any, x: StateVector, h: float, t: float = 0.0
) -> StateVector:
    del t
    return as_real_state(splitting.step(as_wave(x), h))


@registered(
    INTEGRATORS,
    "zassenhaus",
    parameters=("krylov_r2", "krylov_r3", "variant"),
)
def zassenhaus(
    problem: BenchmarkProblem,
    krylov_r2: int = 3,
    krylov_r3: int = 2,
    variant: str = "scaled",
) -> PreparedIntegrator:
    """Symmetric Zassenhaus splitting with Lanczos exponentials."""
    splitting = replace(
        problem.view("schrodinger", "zassenhaus"),
        krylov_iterations=(int(krylov_r2), int(krylov_r3)),
        variant=variant,
    )
    return PreparedIntegrator("zassenhaus", splitting, _zassenhaus_packed)
