import unittest
from unittest.mock import patch

import numpy as np

from geometric_integrators.core.driver import (
    fit_order,
    observed_order,
    solve,
    step_errors,
)
from geometric_integrators.core.solvers import (
    fd_jacobian,
    fixed_point_solve,
    newton_solve,
    safeguarded_scalar_solve,
    solve_implicit,
)
from geometric_integrators.core.state import (
    SecondOrderProblem,
    SolverSettings,
    Trajectory,
    VectorFieldProblem,
    as_state,
    fd_gradient,
)
from geometric_integrators.core.steppers import (
    explicit_euler_step,
    explicit_rk_step,
    rk4_step,
)
from geometric_integrators.core.tableau import (
    CLASSICAL_RK4,
    KUTTA_RK3,
    ButcherTableau,
)
from geometric_integrators.utils.exceptions import (
    IntegrationStepError,
    NonFiniteStateError,
    OrderSaturatedError,
    ProblemDefinitionError,
    SingularLinearizationError,
    SolverNonConvergenceError,
)

GROWTH = VectorFieldProblem(1, lambda t, x: x, name="growth")


class TestState(unittest.TestCase):

    def test_as_state_copies(self) -> None:
        values = np.array([[1.0, 2.0]])
        state = as_state(values)
        state[0] = 5.0
        self.assertEqual(values[0, 0], 1.0)
        self.assertEqual(state.shape, (2,))

    def test_as_state_rejects_nan(self) -> None:
        with self.assertRaises(NonFiniteStateError) as context:
            as_state([1.0, np.nan], step=4)
        self.assertEqual(context.exception.step, 4)

    def test_solver_settings_validation(self) -> None:
        with self.assertRaises(ValueError):
            SolverSettings(tolerance=1e-17)
        with self.assertRaises(ValueError):
            SolverSettings(max_iterations=0)
        with self.assertRaises(ValueError):
            SolverSettings(fd_step=-1.0)

    def test_scaled_field(self) -> None:
        backwards = GROWTH.scaled(-1.0)
        np.testing.assert_allclose(backwards(0.0, np.array([2.0])), [-2.0])

    def test_second_order_problem_checks(self) -> None:
        with self.assertRaises(ProblemDefinitionError):
            SecondOrderProblem(np.array([[1.0, 2.0], [0.0, 1.0]]), np.sin)
        problem = SecondOrderProblem(
            np.eye(2),
            lambda y: -(y**3),
            potential=lambda y: 0.25 * float(np.sum(y**4)),
        )
        problem.check_potential(np.random.default_rng(0))
        wrong = SecondOrderProblem(
            np.eye(1), lambda y: y**3, lambda y: 0.25 * float(y[0] ** 4)
        )
        with self.assertRaises(ProblemDefinitionError):
            wrong.check_potential(np.random.default_rng(0))

    def test_fd_gradient(self) -> None:
        gradient = fd_gradient(
            lambda x: float(x[0] ** 2 * x[1]), np.array([1.0, 2.0])
        )
        np.testing.assert_allclose(gradient, [4.0, 1.0], atol=1e-8)

    def test_trajectory_invariants(self) -> None:
        with self.assertRaises(ValueError):
            Trajectory(np.array([0.0, 0.0]), np.zeros((2, 1)))
        with self.assertRaises(ValueError):
            Trajectory(np.array([0.0, 1.0]), np.zeros((3, 1)))
        trajectory = Trajectory(
            np.array([0.0, -0.1, -0.2]),
            np.zeros((3, 1)),
            {"energy": np.array([1.0, 1.5, 0.5])},
        )
        self.assertEqual(len(trajectory), 3)
        self.assertEqual(trajectory.max_drift("energy"), 0.5)
        self.assertEqual(trajectory.observable_names(), ["energy"])
        with self.assertRaises(KeyError):
            trajectory.channel("momentum")


class TestTableau(unittest.TestCase):

    def test_builtin_tableaus(self) -> None:
        self.assertTrue(CLASSICAL_RK4.explicit)
        self.assertEqual(CLASSICAL_RK4.stages, 4)
        self.assertEqual(KUTTA_RK3.order, 3)
        np.testing.assert_allclose(KUTTA_RK3.c, [0.0, 0.5, 1.0])

    def test_row_sum_condition(self) -> None:
        with self.assertRaises(ProblemDefinitionError):
            ButcherTableau(
                np.array([[0.5]]), np.array([1.0]), np.array([0.2]), 2
            )


class TestSolvers(unittest.TestCase):

    def test_fixed_point(self) -> None:
        root = fixed_point_solve(np.cos, np.array([1.0]))
        self.assertAlmostEqual(float(root[0]), 0.7390851332151607, 11)

    def test_fixed_point_divergence(self) -> None:
        with self.assertRaises(SolverNonConvergenceError):
            fixed_point_solve(
                lambda x: 2.0 * x + 1.0,
                np.array([1.0]),
                SolverSettings(max_iterations=5),
            )

    def test_newton(self) -> None:
        root = newton_solve(lambda x: x**2 - 2.0, np.array([1.0]))
        self.assertAlmostEqual(float(root[0]), np.sqrt(2.0), 12)

    def test_newton_singular(self) -> None:
        with self.assertRaises(SingularLinearizationError):
            newton_solve(
                lambda x: x**2 + 1.0,
                np.array([0.0]),
                jacobian=lambda x: np.array([[0.0]]),
            )

    @patch("logging.debug")
    def test_solve_implicit_falls_back_to_newton(self, mock_debug) -> None:
        # x = 3x - 2 repels the Picard iteration from its root 1
        root = solve_implicit(lambda x: 3.0 * x - 2.0, np.array([0.5]))
        self.assertAlmostEqual(float(root[0]), 1.0, 12)
        self.assertTrue(
            any(
                "trying Newton" in call[0][0]
                for call in mock_debug.call_args_list
            )
        )

    def test_safeguarded_scalar_solve(self) -> None:
        root = safeguarded_scalar_solve(lambda x: x**3 - 8.0, 1.5)
        self.assertAlmostEqual(root, 2.0, 12)

    @patch("scipy.optimize.newton", return_value=2.0 + 1e-9)
    def test_scalar_solve_refines_loose_newton_root(self, _newton) -> None:
        # |f| = 1e-9 is above the scalar tolerance, so Brent refines it
        root = safeguarded_scalar_solve(lambda x: x - 2.0, 1.5)
        self.assertAlmostEqual(root, 2.0, delta=1e-12)

    def test_fd_jacobian(self) -> None:
        jacobian = fd_jacobian(
            lambda x: np.array([x[0] * x[1], np.sin(x[0])]),
            np.array([1.0, 2.0]),
        )
        np.testing.assert_allclose(
            jacobian, [[2.0, 1.0], [np.cos(1.0), 0.0]], atol=1e-9
        )


class TestSteppers(unittest.TestCase):

    def test_explicit_euler(self) -> None:
        x = explicit_euler_step(GROWTH, np.array([1.0]), 0.1)
        np.testing.assert_allclose(x, [1.1])

    def test_rk4_matches_tableau(self) -> None:
        x = np.array([1.0])
        np.testing.assert_allclose(
            rk4_step(GROWTH, x, 0.1),
            explicit_rk_step(CLASSICAL_RK4, GROWTH, x, 0.1),
        )
        # One RK4 step of x' = x is the degree-4 Taylor polynomial
        self.assertAlmostEqual(
            float(rk4_step(GROWTH, x, 0.1)[0]),
            1 + 0.1 + 0.1**2 / 2 + 0.1**3 / 6 + 0.1**4 / 24,
            14,
        )


class TestDriver(unittest.TestCase):

    def test_solve_records_observables(self) -> None:
        trajectory = solve(
            GROWTH,
            explicit_euler_step,
            0.1,
            3,
            np.array([1.0]),
            observers={"value": lambda x: float(x[0])},
        )
        np.testing.assert_allclose(trajectory.times, [0.0, 0.1, 0.2, 0.3])
        np.testing.assert_allclose(
            trajectory.channel("value"), [1.0, 1.1, 1.21, 1.331]
        )

    def test_solve_backwards(self) -> None:
        trajectory = solve(GROWTH, rk4_step, -0.1, 10, np.array([1.0]))
        self.assertAlmostEqual(trajectory.times[-1], -1.0)
        self.assertAlmostEqual(
            float(trajectory.final_state[0]), np.exp(-1.0), 6
        )

    def test_solve_rejects_bad_arguments(self) -> None:
        with self.assertRaises(ValueError):
            solve(GROWTH, rk4_step, 0.0, 3, np.array([1.0]))
        with self.assertRaises(ValueError):
            solve(GROWTH, rk4_step, 0.1, -1, np.array([1.0]))

    @patch("logging.error")
    def test_solver_failure_names_step(self, mock_error) -> None:
        def failing(problem, x, h, t=0.0):
            if t > 0.15:
                raise SolverNonConvergenceError(50, 1e-3)
            return x

        with self.assertRaises(IntegrationStepError) as context:
            solve(GROWTH, failing, 0.1, 5, np.array([1.0]))
        self.assertEqual(context.exception.step, 3)
        mock_error.assert_called_once()

    def test_non_finite_step(self) -> None:
        with self.assertRaises(NonFiniteStateError) as context:
            solve(
                GROWTH,
                lambda problem, x, h, t=0.0: x / 0.0 * 0.0,
                0.1,
                2,
                np.array([1.0]),
            )
        self.assertEqual(context.exception.step, 1)

    def test_observed_order_of_rk4(self) -> None:
        order = observed_order(
            rk4_step,
            GROWTH,
            lambda t: np.array([np.exp(t)]),
            [0.1, 0.05, 0.025],
            x0=np.array([1.0]),
            t_final=1.0,
        )
        self.assertAlmostEqual(order, 4.0, delta=0.2)

    def test_observed_order_self_reference(self) -> None:
        order = observed_order(
            explicit_euler_step,
            GROWTH,
            None,
            [0.1, 0.05, 0.025],
            x0=np.array([1.0]),
            t_final=1.0,
        )
        self.assertAlmostEqual(order, 1.0, delta=0.2)

    def test_observed_order_needs_geometric_steps(self) -> None:
        with self.assertRaises(ValueError):
            observed_order(
                rk4_step,
                GROWTH,
                None,
                [0.1, 0.05],
                x0=np.array([1.0]),
                t_final=1.0,
            )
        with self.assertRaises(ValueError):
            observed_order(
                rk4_step,
                GROWTH,
                None,
                [0.1, 0.05, 0.02],
                x0=np.array([1.0]),
                t_final=1.0,
            )

    def test_step_errors_reject_non_dividing_step(self) -> None:
        with self.assertRaises(ValueError):
            step_errors(
                rk4_step,
                GROWTH,
                np.array([np.e]),
                [0.3],
                x0=np.array([1.0]),
                t_final=1.0,
            )

    def test_fit_order_saturation(self) -> None:
        with self.assertRaises(OrderSaturatedError):
            fit_order([0.1, 0.05, 0.025], [1e-17, 1e-17, 1e-17])
        self.assertAlmostEqual(
            fit_order([0.1, 0.05, 0.025], [1e-2, 2.5e-3, 6.25e-4]), 2.0
        )


if __name__ == "__main__":
    unittest.main()
