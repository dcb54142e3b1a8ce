""" Built-in benchmark problems, registered under their CLI ids. """

from functools import partial
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np
import sympy

from geometric_integrators.core.decorators import registered
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.types import FloatArray, Observer
from geometric_integrators.exponential.semilinear import SemilinearProblem
from geometric_integrators.integrals.systems import FirstIntegralSystem
from geometric_integrators.kahan.fields import QuadraticVectorField
from geometric_integrators.kahan.integrators import modified_energy
from geometric_integrators.liegroup.integrators import LieGroupProblem
from geometric_integrators.problems.catalog import PROBLEMS, BenchmarkProblem
from geometric_integrators.problems.divergence_free import (
    shang_quispel_field,
    shang_quispel_initial_state,
)
from geometric_integrators.problems.mechanics import (
    NBodyProblem,
    FIGURE_EIGHT,
    angular_momentum,
    harmonic_solution,
    kepler_initial_state,
    kepler_partitioned,
    kinetic_potential_split,
    nbody_initial_state,
    pendulum,
    quartic_oscillator,
)
from geometric_integrators.problems.oscillatory import (
    OscillatoryHamiltonian,
    fpu_initial_state,
    fpu_system,
    multi_frequency_system,
    oscillatory_energy,
)
from geometric_integrators.problems.quadratic import (
    family_hamiltonian,
    family_skew,
    kahan_family,
    nahm_initial_state,
)
from geometric_integrators.problems.rigid_body import (
    DEFAULT_INERTIA,
    isospectral_problem,
    mathieu_problem,
    mathieu_reference,
    rigid_body_initial_state,
    rigid_body_lie_problem,
    rigid_body_system,
    spectrum,
)
from geometric_integrators.schrodinger.grid import (
    SemiclassicalGrid,
    as_real_state,
    as_wave,
    l2_norm,
    spectral_derivative,
)
from geometric_integrators.schrodinger.potentials import potential_for
from geometric_integrators.schrodinger.zassenhaus import ZassenhausSplitting
from geometric_integrators.symplectic.hamiltonian import (
    PartitionedSystem,
    packed_state,
)
from geometric_integrators.volume.integrators import shang_quispel_map
from geometric_integrators.utils.numeric_utils import canonical_skew_matrix

# Width parameter of the default Schroedinger wave packet
_PACKET_WIDTH = 20.0
_PACKET_CENTRE = 0.2


def _canonical_integrals(
    partitioned: PartitionedSystem, name: str
) -> FirstIntegralSystem:
    """x' = J grad H on packed (p, q) as a skew-gradient system."""
    hamiltonian = partitioned.as_hamiltonian()
    structure = canonical_skew_matrix(partitioned.degrees_of_freedom)
    return FirstIntegralSystem(
        hamiltonian.dimension,
        hamiltonian.energy,
        hamiltonian.gradient,
        lambda x: structure,
        name=name,
    )


def _mechanical_problem(
    key: str,
    partitioned: PartitionedSystem,
    x0: FloatArray,
    observables: Optional[Dict[str, Observer]] = None,
    reference: Optional[Callable[[float], FloatArray]] = None,
    t_final: float = 10.0,
    polynomial_degree: Optional[int] = None,
    extra_views: Optional[Dict[str, Any]] = None,
) -> BenchmarkProblem:
    """Entry with Hamiltonian, partitioned, split and integral views."""
    hamiltonian = partitioned.as_hamiltonian()
    field = VectorFieldProblem(
        hamiltonian.dimension,
        hamiltonian.evaluate,
        polynomial_degree=polynomial_degree,
        name=key,
    )
    views: Dict[str, Any] = {
        "hamiltonian": hamiltonian,
        "partitioned": partitioned,
        "split": kinetic_potential_split(partitioned),
        "integrals": _canonical_integrals(partitioned, key),
    }
    views.update(extra_views or {})
    return BenchmarkProblem(
        key,
        field,
        x0,
        observables={"energy": hamiltonian.energy, **(observables or {})},
        views=views,
        reference=reference,
        t_final=t_final,
        checks=(hamiltonian.check_gradients,),
    )


def _oscillatory_views(osc: OscillatoryHamiltonian) -> Dict[str, Any]:
    n = osc.dimension
    squares = np.diag(osc.omega_matrix) ** 2
    linear = np.block(
        [
            [np.zeros((n, n)), -np.diag(squares)],
            [np.eye(n), np.zeros((n, n))],
        ]
    )

    def nonlinearity(x: FloatArray) -> FloatArray:
        gradient = np.asarray(osc.grad_potential(x[n:]), dtype=float)
        return np.concatenate([-gradient, np.zeros(n)])

    return {
        "oscillatory": osc,
        "second-order": osc.second_order(),
        "semilinear": SemilinearProblem(linear, nonlinearity, osc.name),
    }


def _oscillatory_problem(
    key: str,
    osc: OscillatoryHamiltonian,
    x0: FloatArray,
    t_final: float,
    **options: Any,
) -> BenchmarkProblem:
    squares = np.diag(osc.omega_matrix) ** 2

    def potential(q: FloatArray) -> float:
        return 0.5 * float(squares @ q**2) + float(osc.potential(q))

    def grad_potential(q: FloatArray) -> FloatArray:
        return squares * q + np.asarray(osc.grad_potential(q), dtype=float)

    partitioned = PartitionedSystem(
        np.eye(osc.dimension), potential, grad_potential, key
    )
    n = osc.dimension
    return _mechanical_problem(
        key,
        partitioned,
        x0,
        observables={
            "oscillatory-energy": lambda x: oscillatory_energy(
                osc, (x[:n], x[n:])
            ),
        },
        t_final=t_final,
        extra_views=_oscillatory_views(osc),
        **options,
    )


@registered(PROBLEMS, "harmonic", parameters=("frequency",))
def harmonic_problem(frequency: float = 1.0) -> BenchmarkProblem:
    """Harmonic oscillator H = p^2/2 + w^2 q^2/2, exact solution known."""
    osc = OscillatoryHamiltonian(
        0,
        1,
        frequency,
        lambda q: 0.0,
        lambda q: np.zeros_like(np.asarray(q, dtype=float)),
        "harmonic",
    )
    return _oscillatory_problem(
        "harmonic",
        osc,
        packed_state(np.array([1.0]), np.array([0.0])),
        10.0,
        reference=harmonic_solution(frequency, 1.0, 0.0),
        polynomial_degree=1,
    )


@registered(PROBLEMS, "pendulum")
def pendulum_problem() -> BenchmarkProblem:
    """Mathematical pendulum H = p^2/2 - cos q."""
    x0 = packed_state(np.array([1.0]), np.array([0.0]))
    return _mechanical_problem("pendulum", pendulum(), x0)


@registered(PROBLEMS, "quartic")
def quartic_problem() -> BenchmarkProblem:
    """Quartic oscillator H = p^2/2 + q^4/4 (cubic field)."""
    x0 = packed_state(np.array([1.0]), np.array([0.0]))
    return _mechanical_problem(
        "quartic", quartic_oscillator(), x0, polynomial_degree=3
    )


def _circular_orbit(t: float) -> FloatArray:
    c, s = np.cos(t), np.sin(t)
    return np.array([-s, c, c, s])


@registered(PROBLEMS, "kepler", parameters=("eccentricity",))
def kepler_problem(eccentricity: float = 0.6) -> BenchmarkProblem:
    """Planar Kepler problem, unit semi-major axis (period 2 pi)."""
    return _mechanical_problem(
        "kepler",
        kepler_partitioned(),
        kepler_initial_state(eccentricity),
        observables={"angular-momentum": angular_momentum},
        reference=_circular_orbit if eccentricity == 0.0 else None,
        t_final=2.0 * np.pi,
    )


@registered(PROBLEMS, "nbody", parameters=("config",))
def nbody_problem(
    config: Optional[Dict[str, Any]] = None,
) -> BenchmarkProblem:
    """Gravitational N-body problem (figure-eight choreography default)."""
    config = config or FIGURE_EIGHT
    system = NBodyProblem(
        config["masses"],
        len(config["positions"][0]),
        float(config.get("gravitational_constant", 1.0)),
    )
    observables: Dict[str, Observer] = {
        f"momentum-{axis}": (
            lambda x, a=axis: float(system.total_momentum(x)[a])
        )
        for axis in range(system.spatial_dimension)
    }
    return _mechanical_problem(
        "nbody",
        system.partitioned(),
        nbody_initial_state(config),
        observables=observables,
    )


@registered(PROBLEMS, "fpu", parameters=("n_pairs", "omega", "coupling"))
def fpu_problem(
    n_pairs: int = 3, omega: float = 50.0, coupling: float = 1.0
) -> BenchmarkProblem:
    """Modified Fermi-Pasta-Ulam chain of stiff and soft springs."""
    return _oscillatory_problem(
        "fpu",
        fpu_system(n_pairs, omega, coupling),
        fpu_initial_state(n_pairs, omega),
        200.0,
    )


@registered(
    PROBLEMS, "multi-frequency", parameters=("frequencies", "coupling")
)
def multi_frequency_problem(
    frequencies: Sequence[float] = (20.0, 40.0), coupling: float = 1.0
) -> BenchmarkProblem:
    """One slow mode coupled to several fast frequencies."""
    osc = multi_frequency_system(frequencies, coupling)
    q = np.concatenate([[1.0], 1.0 / np.asarray(frequencies, dtype=float)])
    p = np.ones(osc.dimension)
    return _oscillatory_problem(
        "multi-frequency", osc, packed_state(q, p), 50.0
    )


def _rigid_body_quadratic(inertia: Sequence[float]) -> QuadraticVectorField:
    x = sympy.symbols("x1:4", real=True)
    w = [
        x[i] / sympy.nsimplify(moment, rational=True)
        for i, moment in enumerate(inertia)
    ]
    components = [
        x[1] * w[2] - x[2] * w[1],
        x[2] * w[0] - x[0] * w[2],
        x[0] * w[1] - x[1] * w[0],
    ]
    return QuadraticVectorField.from_sympy(components, x, "rigid-body")


@registered(PROBLEMS, "rigid-body", parameters=("inertia",))
def rigid_body_problem(
    inertia: Sequence[float] = DEFAULT_INERTIA,
) -> BenchmarkProblem:
    """Free rigid body with the Casimir I and the energy J."""
    system = rigid_body_system(inertia)
    quadratic = _rigid_body_quadratic(inertia)
    return BenchmarkProblem(
        "rigid-body",
        quadratic.as_problem(),
        rigid_body_initial_state(),
        observables={
            "I": system.integral,
            "J": system.second_integral,
        },
        views={"integrals": system, "quadratic": quadratic},
        checks=(
            partial(system.check, field=partial(quadratic.evaluate, 0.0)),
        ),
    )


def _lie_vector_field(problem: LieGroupProblem) -> VectorFieldProblem:
    shape = np.shape(problem.y0)
    isospectral = problem.action.kind == "isospectral"

    def evaluate(t: float, x: FloatArray) -> FloatArray:
        y = np.reshape(x, shape)
        a = problem.a(t, y).matrix
        velocity = a @ y
        if isospectral:
            velocity = velocity + y @ a.conj().T
        return np.real(velocity).reshape(-1)

    return VectorFieldProblem(
        int(np.size(problem.y0)),
        evaluate,
        autonomous=not problem.state_independent,
        name=problem.name,
    )


def _lie_benchmark(
    key: str,
    problem: LieGroupProblem,
    observables: Dict[str, Observer],
    reference: Optional[Callable[[float], FloatArray]] = None,
) -> BenchmarkProblem:
    return BenchmarkProblem(
        key,
        _lie_vector_field(problem),
        np.reshape(problem.y0, -1),
        observables=observables,
        views={"lie": problem},
        reference=reference,
    )


@registered(PROBLEMS, "rigid-body-sphere", parameters=("inertia",))
def rigid_body_sphere_problem(
    inertia: Sequence[float] = DEFAULT_INERTIA,
) -> BenchmarkProblem:
    """Rigid body as y' = a(y) y on the sphere, SO(3) acting."""
    return _lie_benchmark(
        "rigid-body-sphere",
        rigid_body_lie_problem(inertia),
        {"I": lambda x: 0.5 * float(np.dot(x, x))},
    )


@registered(PROBLEMS, "mathieu", parameters=("amplitude",))
def mathieu_benchmark(amplitude: float = 0.2) -> BenchmarkProblem:
    """Mathieu equation v' = a(t) v, a in sl(2)."""
    problem = mathieu_problem(amplitude)
    return _lie_benchmark(
        "mathieu",
        problem,
        {},
        reference=lambda t: mathieu_reference(t, problem.y0, amplitude),
    )


@registered(PROBLEMS, "isospectral", parameters=("diagonal",))
def isospectral_benchmark(
    diagonal: Sequence[float] = (1.0, 2.0, 3.0),
) -> BenchmarkProblem:
    """Isospectral flow y' = [[N, y], y] on symmetric matrices."""
    problem = isospectral_problem(diagonal)
    size = len(diagonal)
    observables: Dict[str, Observer] = {
        f"eigenvalue-{k}": (
            lambda x, k=k: float(spectrum(np.reshape(x, (size, size)))[k])
        )
        for k in range(size)
    }
    return _lie_benchmark("isospectral", problem, observables)


@registered(PROBLEMS, "shang-quispel")
def shang_quispel_problem() -> BenchmarkProblem:
    """Divergence-free cubic/quintic field in R^3."""
    field = shang_quispel_field()
    return BenchmarkProblem(
        "shang-quispel",
        field.as_problem(),
        shang_quispel_initial_state(),
        views={"volume": field, "triangular": shang_quispel_map},
        t_final=1.0,
        checks=(field.check_divergence,),
    )


def _planar_family(
    name: str, params: Optional[Sequence[float]]
) -> BenchmarkProblem:
    field = kahan_family(name, params)
    structure = family_hamiltonian(name, params)
    integrals = FirstIntegralSystem(
        2,
        structure.hamiltonian,
        structure.gradient,
        family_skew(name, params),
        name=name,
    )
    return BenchmarkProblem(
        name,
        field.as_problem(),
        np.array([0.3, 0.1]),
        observables={"energy": structure.hamiltonian},
        views={
            "quadratic": field,
            "cubic-structure": structure,
            "integrals": integrals,
        },
        step_observables={
            "modified-energy": partial(modified_energy, structure, field)
        },
        checks=(
            partial(integrals.check, field=partial(field.evaluate, 0.0)),
        ),
    )


@registered(PROBLEMS, "quadratic-hamiltonian-2d", parameters=("params",))
def quadratic_hamiltonian_problem(
    params: Optional[Sequence[float]] = None,
) -> BenchmarkProblem:
    """Planar Hamiltonian field with a nine-parameter cubic H."""
    return _planar_family("quadratic-hamiltonian-2d", params)


@registered(PROBLEMS, "suslov-2d", parameters=("params",))
def suslov_problem(
    params: Optional[Sequence[float]] = None,
) -> BenchmarkProblem:
    """Planar Suslov-type field l(x, y) J grad H."""
    return _planar_family("suslov-2d", params)


def _nahm_problem(name: str) -> BenchmarkProblem:
    field = kahan_family(name)
    return BenchmarkProblem(
        name,
        field.as_problem(),
        nahm_initial_state(),
        views={"quadratic": field},
        t_final=1.0,
    )


@registered(PROBLEMS, "nahm-octahedral")
def nahm_octahedral_problem() -> BenchmarkProblem:
    """Nahm system with octahedral symmetry."""
    return _nahm_problem("nahm-octahedral")


@registered(PROBLEMS, "nahm-icosahedral")
def nahm_icosahedral_problem() -> BenchmarkProblem:
    """Nahm system with icosahedral symmetry."""
    return _nahm_problem("nahm-icosahedral")


def gaussian_packet(grid: SemiclassicalGrid) -> np.ndarray:
    """Normalised exp(-20 (x - 0.2)^2) on the grid."""
    packet = np.exp(-_PACKET_WIDTH * (grid.points - _PACKET_CENTRE) ** 2)
    return packet / l2_norm(packet, grid)


@registered(
    PROBLEMS,
    "schrodinger",
    parameters=("epsilon", "n_points", "potential", "sigma"),
)
def schrodinger_problem(
    epsilon: float = 1.0 / 16.0,
    n_points: int = 256,
    potential: str = "cos",
    sigma: float = 1.0,
) -> BenchmarkProblem:
    """Semiclassical Schroedinger equation on [-1, 1), states [Re u, Im u]."""
    grid = SemiclassicalGrid(n_points, epsilon, sigma)
    data = potential_for(grid, potential)

    def evaluate(_t: float, x: FloatArray) -> FloatArray:
        u = as_wave(x)
        du = 1j * epsilon * spectral_derivative(u, grid, 2) - (
            1j * data.values * u / epsilon
        )
        return as_real_state(du)

    return BenchmarkProblem(
        "schrodinger",
        VectorFieldProblem(2 * n_points, evaluate, name="schrodinger"),
        as_real_state(gaussian_packet(grid)),
        observables={"norm": lambda x: l2_norm(as_wave(x), grid)},
        views={"schrodinger": ZassenhausSplitting(grid, data)},
        t_final=1.0,
    )
