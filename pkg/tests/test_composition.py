import unittest
from unittest.mock import patch

import numpy as np
from scipy.linalg import expm

from geometric_integrators.composition import (
    CompositionScheme,
    SplitProblem,
    compose_step,
    composition_stepper,
    strang_scheme,
    symmetric_scheme,
    time_symmetry_defect,
    yoshida_boost,
    yoshida_factor,
)
from geometric_integrators.core.driver import observed_order
from geometric_integrators.core.state import VectorFieldProblem
from geometric_integrators.core.steppers import explicit_euler_step
from geometric_integrators.problems.mechanics import (
    kinetic_potential_split,
    pendulum,
)
from geometric_integrators.symplectic import implicit_midpoint_step
from geometric_integrators.utils.exceptions import (
    InvalidCompositionSchemeError,
    ProblemDefinitionError,
    SolverNonConvergenceError,
    SubflowNonConvergenceError,
)

A = np.array([[0.0, 1.0], [0.0, 0.0]])
B = np.array([[0.0, 0.0], [-1.0, 0.0]])


def linear_split() -> SplitProblem:
    return SplitProblem(
        [
            VectorFieldProblem(2, lambda t, x: A @ x, name="A"),
            VectorFieldProblem(2, lambda t, x: B @ x, name="B"),
        ],
        [
            lambda x, tau: expm(tau * A) @ x,
            lambda x, tau: expm(tau * B) @ x,
        ],
        name="linear",
    )


def pendulum_order(scheme: CompositionScheme, steps, t_final) -> float:
    split = kinetic_potential_split(pendulum())
    return observed_order(
        composition_stepper(scheme, split),
        split,
        None,
        steps,
        x0=np.array([0.0, 1.5]),
        t_final=t_final,
    )


class TestCompositionScheme(unittest.TestCase):

    def test_strang(self) -> None:
        scheme = strang_scheme()
        self.assertTrue(scheme.palindromic)
        self.assertEqual(scheme.weight_sums(), [1.0, 1.0])
        self.assertEqual(scheme.order, 2)
        self.assertFalse(scheme.has_negative_weights)

    def test_inconsistent_weights(self) -> None:
        with self.assertRaises(InvalidCompositionSchemeError):
            CompositionScheme(((0, 0.5), (1, 1.0)), 1)
        with self.assertRaises(InvalidCompositionSchemeError):
            CompositionScheme((), 1)

    def test_symmetric_scheme(self) -> None:
        scheme = symmetric_scheme(3)
        self.assertEqual(
            scheme.coefficients,
            ((0, 0.5), (1, 0.5), (2, 1.0), (1, 0.5), (0, 0.5)),
        )
        self.assertTrue(scheme.palindromic)
        with self.assertRaises(ValueError):
            symmetric_scheme(0)

    def test_yoshida_factor(self) -> None:
        alpha = yoshida_factor(2)
        self.assertAlmostEqual(alpha, 0.35120719, 8)
        self.assertAlmostEqual(1 + alpha, 1.35120719, 8)
        self.assertAlmostEqual(-(1 + 2 * alpha), -1.70241438, 8)

    def test_yoshida_boost(self) -> None:
        boosted = yoshida_boost(strang_scheme())
        self.assertEqual(boosted.order, 4)
        self.assertEqual(boosted.stages, 3)
        self.assertTrue(boosted.palindromic)
        self.assertTrue(boosted.has_negative_weights)
        for total in boosted.weight_sums():
            self.assertAlmostEqual(total, 1.0, 14)
        twice = yoshida_boost(boosted)
        self.assertEqual((twice.order, twice.stages), (6, 9))
        self.assertTrue(twice.palindromic)

    def test_boost_rejects_non_palindromic(self) -> None:
        lie_trotter = CompositionScheme(((0, 1.0), (1, 1.0)), 1)
        with self.assertRaises(InvalidCompositionSchemeError):
            yoshida_boost(lie_trotter)


class TestComposeStep(unittest.TestCase):

    def test_single_part_is_its_flow(self) -> None:
        split = linear_split()
        scheme = CompositionScheme(((0, 1.0),), 1)
        x = np.array([1.0, 0.5])
        np.testing.assert_allclose(
            compose_step(scheme, split, x, 0.3), expm(0.3 * A) @ x
        )

    def test_commuting_parts_are_exact(self) -> None:
        diagonal = np.diag([1.0, -2.0])
        part = VectorFieldProblem(2, lambda t, x: diagonal @ x)
        split = SplitProblem(
            [part, part], [lambda x, tau: expm(tau * diagonal) @ x] * 2
        )
        x = np.array([1.0, 0.5])
        np.testing.assert_allclose(
            compose_step(strang_scheme(), split, x, 0.4),
            expm(0.8 * diagonal) @ x,
            rtol=1e-13,
        )

    def test_strang_local_error_is_third_order(self) -> None:
        split = linear_split()
        x = np.array([1.0, 0.5])
        errors = [
            np.max(
                np.abs(
                    compose_step(strang_scheme(), split, x, h)
                    - expm(h * (A + B)) @ x
                )
            )
            for h in (0.1, 0.05)
        ]
        self.assertAlmostEqual(errors[0] / errors[1], 8.0, delta=1.0)

    def test_designated_flow_when_none_given(self) -> None:
        split = SplitProblem(
            [
                VectorFieldProblem(2, lambda t, x: A @ x),
                VectorFieldProblem(2, lambda t, x: B @ x),
            ]
        )
        x = np.array([1.0, 0.5])
        np.testing.assert_allclose(
            compose_step(strang_scheme(), split, x, 0.1),
            compose_step(strang_scheme(), linear_split(), x, 0.1),
            atol=1e-11,
        )

    def test_part_sum_check(self) -> None:
        split = linear_split()
        full = VectorFieldProblem(2, lambda t, x: (A + B) @ x)
        split.check_sum(full, np.random.default_rng(0))
        with self.assertRaises(ProblemDefinitionError):
            split.check_sum(
                VectorFieldProblem(2, lambda t, x: A @ x),
                np.random.default_rng(0),
            )

    def test_backward_flows_required_for_negative_weights(self) -> None:
        forward_only = SplitProblem(
            linear_split().parts,
            linear_split().flows,
            negative_time=False,
        )
        with self.assertRaises(InvalidCompositionSchemeError):
            composition_stepper(yoshida_boost(strang_scheme()), forward_only)

    def test_scheme_needs_enough_parts(self) -> None:
        single = SplitProblem([VectorFieldProblem(2, lambda t, x: A @ x)])
        with self.assertRaises(InvalidCompositionSchemeError):
            compose_step(strang_scheme(), single, np.zeros(2), 0.1)

    @patch("logging.error")
    def test_failing_part_is_logged(self, mock_error) -> None:
        def failing(x, tau):
            raise SolverNonConvergenceError(50, 1.0)

        split = SplitProblem(linear_split().parts, [None, failing])
        with self.assertRaises(SubflowNonConvergenceError) as context:
            compose_step(strang_scheme(), split, np.ones(2), 0.1)
        self.assertEqual(context.exception.part, 1)
        self.assertEqual(context.exception.iterations, 50)
        self.assertEqual(mock_error.call_args[0][1], 1)


class TestOrders(unittest.TestCase):

    def test_strang_order(self) -> None:
        order = pendulum_order(strang_scheme(), [0.2, 0.1, 0.05], 2.0)
        self.assertAlmostEqual(order, 2.0, delta=0.2)

    def test_boosted_strang_order(self) -> None:
        order = pendulum_order(
            yoshida_boost(strang_scheme()), [0.2, 0.1, 0.05], 2.0
        )
        self.assertAlmostEqual(order, 4.0, delta=0.3)

    def test_double_boost_order(self) -> None:
        order = pendulum_order(
            yoshida_boost(yoshida_boost(strang_scheme())),
            [0.4, 0.2, 0.1],
            1.6,
        )
        self.assertAlmostEqual(order, 6.0, delta=0.5)


class TestTimeSymmetry(unittest.TestCase):

    def test_strang_is_time_symmetric(self) -> None:
        split = kinetic_potential_split(pendulum())
        for scheme in (strang_scheme(), yoshida_boost(strang_scheme())):
            stepper = composition_stepper(scheme, split)
            defect = time_symmetry_defect(
                lambda x, h: stepper(split, x, h), np.array([0.3, 1.0]), 0.1
            )
            self.assertLessEqual(defect, 1e-12)

    def test_implicit_midpoint_is_time_symmetric(self) -> None:
        field = pendulum().as_hamiltonian().vector_field()
        defect = time_symmetry_defect(
            lambda x, h: implicit_midpoint_step(field, x, h),
            np.array([0.3, 1.0]),
            0.1,
        )
        self.assertLessEqual(defect, 1e-11)

    def test_explicit_euler_is_not(self) -> None:
        square = VectorFieldProblem(1, lambda t, x: x**2)
        defect = time_symmetry_defect(
            lambda x, h: explicit_euler_step(square, x, h),
            np.array([1.0]),
            0.1,
        )
        # Phi_{-h}(1.1) = 1.1 - 0.1 * 1.21
        self.assertAlmostEqual(defect, 0.021, 12)


if __name__ == "__main__":
    unittest.main()
