import unittest
from unittest.mock import patch

import numpy as np

from geometric_integrators.core.driver import observed_order, solve
from geometric_integrators.core.state import SolverSettings, VectorFieldProblem
from geometric_integrators.integrals import (
    DiscreteGradient,
    FirstIntegralSystem,
    SkewApproximation,
    avf_gradient,
    avf_nodes_for_degree,
    avf_quadrature_residual,
    avf_step,
    discrete_gradient_step,
    discrete_gradient_stepper,
    itoh_abe_gradient,
    simpson_rk_step,
    two_integral_step,
    unit_gauss_nodes,
)
from geometric_integrators.problems.mechanics import (
    pendulum,
    quartic_oscillator,
)
from geometric_integrators.problems.rigid_body import rigid_body_system
from geometric_integrators.symplectic import implicit_midpoint_step
from geometric_integrators.utils.exceptions import ProblemDefinitionError

TIGHT = SolverSettings(tolerance=1e-14)

SKEW = np.array([[0.0, 1.0, -2.0], [-1.0, 0.0, 0.5], [2.0, -0.5, 0.0]])


def cubic(x: np.ndarray) -> float:
    return float(x[0] * x[1] * x[2] + x[0] ** 3 - 2.0 * x[1] ** 2)


def cubic_gradient(x: np.ndarray) -> np.ndarray:
    return np.array(
        [x[1] * x[2] + 3.0 * x[0] ** 2, x[0] * x[2] - 4.0 * x[1], x[0] * x[1]]
    )


class TestDiscreteGradients(unittest.TestCase):

    def test_gauss_nodes(self) -> None:
        nodes, weights = unit_gauss_nodes(3)
        self.assertAlmostEqual(float(np.sum(weights)), 1.0, 15)
        self.assertTrue(np.all((nodes > 0.0) & (nodes < 1.0)))
        with self.assertRaises(ValueError):
            unit_gauss_nodes(0)

    def test_nodes_for_degree(self) -> None:
        self.assertEqual(avf_nodes_for_degree(None), 8)
        self.assertEqual(avf_nodes_for_degree(0), 1)
        self.assertEqual(avf_nodes_for_degree(1), 1)
        self.assertEqual(avf_nodes_for_degree(3), 2)
        self.assertEqual(avf_nodes_for_degree(4), 3)

    def test_itoh_abe_on_quadratic(self) -> None:
        def squares(x: np.ndarray) -> float:
            return float(np.sum(x**2))

        gradient = itoh_abe_gradient(squares, np.zeros(3), np.ones(3))
        np.testing.assert_allclose(gradient, np.ones(3))
        self.assertAlmostEqual(float(np.ones(3) @ gradient), 3.0)

    def test_itoh_abe_limit(self) -> None:
        x = np.array([0.3, -0.7, 1.1])
        np.testing.assert_allclose(
            itoh_abe_gradient(cubic, x, x, cubic_gradient),
            cubic_gradient(x),
        )
        np.testing.assert_allclose(
            itoh_abe_gradient(cubic, x, x), cubic_gradient(x), atol=1e-8
        )

    def test_discrete_gradient_identity(self) -> None:
        rng = np.random.default_rng(6)
        for _ in range(5):
            x, x_new = rng.standard_normal((2, 3))
            difference = cubic(x_new) - cubic(x)
            with self.subTest(x=x, x_new=x_new):
                self.assertAlmostEqual(
                    float((x_new - x) @ itoh_abe_gradient(cubic, x, x_new)),
                    difference,
                    12,
                )
                averaged = avf_gradient(cubic_gradient, x, x_new, 2)
                self.assertAlmostEqual(
                    float((x_new - x) @ averaged), difference, 12
                )

    def test_discrete_gradient_validation(self) -> None:
        with self.assertRaises(ValueError):
            DiscreteGradient("gonzalez", cubic)
        with self.assertRaises(ValueError):
            DiscreteGradient("avf", cubic)
        with self.assertRaises(ValueError):
            SkewApproximation(lambda x: SKEW, "right")

    def test_skew_approximations(self) -> None:
        def rotating(x: np.ndarray) -> np.ndarray:
            return np.array([[0.0, x[0]], [-x[0], 0.0]])

        x, x_new = np.array([1.0, 0.0]), np.array([3.0, 0.0])
        np.testing.assert_array_equal(
            SkewApproximation(rotating, "left")(x, x_new), rotating(x)
        )
        np.testing.assert_array_equal(
            SkewApproximation(rotating)(x, x_new), rotating(np.array([2.0]))
        )


class TestEnergyPreservingSteps(unittest.TestCase):

    def test_avf_on_linear_field_is_midpoint(self) -> None:
        matrix = np.array([[0.0, 1.0], [-2.0, -0.1]])
        problem = VectorFieldProblem(
            2, lambda t, x: matrix @ x, polynomial_degree=1
        )
        x = np.array([1.0, 0.5])
        np.testing.assert_allclose(
            avf_step(problem, x, 0.1, settings=TIGHT),
            implicit_midpoint_step(problem, x, 0.1),
            atol=1e-12,
        )

    def test_avf_conserves_pendulum_energy(self) -> None:
        system = pendulum().as_hamiltonian()
        trajectory = solve(
            system.vector_field(),
            lambda problem, x, h, t=0.0: avf_step(
                problem, x, h, 8, settings=TIGHT
            ),
            0.1,
            1000,
            np.array([0.0, 2.0]),
            {"energy": system.energy},
        )
        self.assertLessEqual(trajectory.max_drift("energy"), 1e-10)

    def test_avf_conserves_quartic_energy(self) -> None:
        system = quartic_oscillator().as_hamiltonian()
        trajectory = solve(
            system.vector_field(),
            lambda problem, x, h, t=0.0: avf_step(
                problem, x, h, 2, settings=TIGHT
            ),
            0.1,
            100,
            np.array([0.5, 1.0]),
            {"energy": system.energy},
        )
        self.assertLessEqual(trajectory.max_drift("energy"), 1e-12)

    @patch("logging.warning")
    def test_avf_warns_about_quadrature(self, mock_warning) -> None:
        field = pendulum().as_hamiltonian().vector_field()
        x = np.array([0.0, 2.0])
        avf_step(field, x, 0.5, 1)
        mock_warning.assert_called_once()
        self.assertGreater(
            avf_quadrature_residual(field, x, x + 0.5, 1), 1e-10
        )

    def test_simpson_on_linear_field_is_midpoint(self) -> None:
        matrix = np.array([[0.0, 1.0], [-2.0, -0.1]])
        problem = VectorFieldProblem(2, lambda t, x: matrix @ x)
        x = np.array([1.0, 0.5])
        np.testing.assert_allclose(
            simpson_rk_step(problem, x, 0.1, settings=TIGHT),
            implicit_midpoint_step(problem, x, 0.1),
            atol=1e-12,
        )

    def test_simpson_matches_avf_on_cubic_field(self) -> None:
        system = quartic_oscillator().as_hamiltonian()
        field = system.vector_field()
        x = np.array([0.5, 1.0])
        simpson = simpson_rk_step(field, x, 0.1, settings=TIGHT)
        np.testing.assert_allclose(
            simpson, avf_step(field, x, 0.1, 2, settings=TIGHT), atol=1e-13
        )
        self.assertAlmostEqual(system.energy(simpson), system.energy(x), 12)


class TestDiscreteGradientSteps(unittest.TestCase):

    def test_quadratic_integral(self) -> None:
        weights = np.array([1.0, 2.0, 3.0])
        system = FirstIntegralSystem(
            3,
            lambda x: 0.5 * float(weights @ x**2),
            lambda x: weights * x,
            lambda x: SKEW,
        )
        gradient = DiscreteGradient("itoh-abe", system.integral)
        skew = SkewApproximation(system.skew_matrix)
        x = np.array([1.0, 0.5, -0.3])
        start = system.integral(x)
        for _ in range(1000):
            x = discrete_gradient_step(system, gradient, skew, x, 0.05, TIGHT)
        self.assertAlmostEqual(system.integral(x), start, 12)

    def test_cubic_integral(self) -> None:
        system = FirstIntegralSystem(
            3,
            lambda x: float(np.prod(x)),
            lambda x: np.array([x[1] * x[2], x[0] * x[2], x[0] * x[1]]),
            lambda x: SKEW,
        )
        step = discrete_gradient_stepper("itoh-abe", settings=TIGHT)
        trajectory = solve(
            system,
            step,
            0.05,
            200,
            np.array([1.0, 0.8, 0.6]),
            {"I": system.integral},
        )
        self.assertLessEqual(trajectory.max_drift("I"), 1e-11)

    def test_consistency_orders(self) -> None:
        system = rigid_body_system()
        for skew_kind, expected in (("midpoint", 2.0), ("left", 1.0)):
            with self.subTest(skew_kind=skew_kind):
                order = observed_order(
                    discrete_gradient_stepper("avf", skew_kind),
                    system,
                    None,
                    [0.2, 0.1, 0.05],
                    x0=np.array([np.cos(1.1), 0.0, np.sin(1.1)]),
                    t_final=2.0,
                )
                self.assertAlmostEqual(order, expected, delta=0.2)

    def test_two_integrals_are_conserved(self) -> None:
        system = rigid_body_system()
        x = np.array([np.cos(1.1), 0.0, np.sin(1.1)])
        trajectory = solve(
            system,
            lambda problem, y, h, t=0.0: two_integral_step(
                problem, y, h, settings=TIGHT
            ),
            0.1,
            1000,
            x,
            {"I": system.integral, "J": system.second_integral},
        )
        self.assertLessEqual(trajectory.max_drift("I"), 1e-11)
        self.assertLessEqual(trajectory.max_drift("J"), 1e-11)

    def test_two_integral_step_needs_second_integral(self) -> None:
        system = FirstIntegralSystem(
            3, cubic, cubic_gradient, lambda x: SKEW, name="single"
        )
        with self.assertRaises(ProblemDefinitionError):
            two_integral_step(system, np.ones(3), 0.1)


class TestFirstIntegralSystem(unittest.TestCase):

    def test_from_field(self) -> None:
        system = FirstIntegralSystem.from_field(
            lambda x: np.array([x[1], -x[0]]),
            lambda x: 0.5 * float(x @ x),
            lambda x: np.asarray(x, dtype=float),
            2,
        )
        x = np.array([0.3, -1.2])
        np.testing.assert_allclose(system.evaluate(0.0, x), [-1.2, -0.3])
        system.check(
            np.random.default_rng(0), lambda y: np.array([y[1], -y[0]])
        )
        with self.assertRaises(ProblemDefinitionError):
            system.skew_matrix(np.zeros(2))
        with self.assertRaises(ProblemDefinitionError):
            system.check(np.random.default_rng(0), lambda y: y)

    def test_rigid_body_structure(self) -> None:
        system = rigid_body_system()
        system.check(np.random.default_rng(1))
        x = np.array([1.0, 2.0, 3.0])
        np.testing.assert_allclose(
            system.evaluate(0.0, x),
            np.cross(x, system.second_gradient(x)),
        )

    def test_tensor_must_be_antisymmetric(self) -> None:
        system = FirstIntegralSystem(
            3,
            cubic,
            cubic_gradient,
            second_integral=cubic,
            second_gradient=cubic_gradient,
            skew_tensor=np.ones((3, 3, 3)),
        )
        with self.assertRaises(ProblemDefinitionError):
            system.check(np.random.default_rng(2))

    def test_missing_structure(self) -> None:
        system = FirstIntegralSystem(3, cubic, cubic_gradient, name="bare")
        with self.assertRaises(ProblemDefinitionError):
            system.skew_matrix(np.ones(3))


if __name__ == "__main__":
    unittest.main()
