import unittest

import numpy as np

from geometric_integrators.core.driver import observed_order, solve
from geometric_integrators.liegroup import (
    ISOSPECTRAL,
    LEFT_MULTIPLICATION,
    AlgebraElement,
    GroupElement,
    LieGroupProblem,
    action_for,
    commutator,
    dexpinv_apply,
    expm,
    lie_stepper,
    magnus4_step,
    rkmk3_step,
)
from geometric_integrators.problems.rigid_body import (
    hat,
    isospectral_problem,
    mathieu_problem,
    mathieu_reference,
    rigid_body_initial_state,
    rigid_body_lie_problem,
    spectrum,
)
from geometric_integrators.utils.exceptions import (
    AlgebraMismatchError,
    IncompatibleProblemError,
)

E1, E2, E3 = np.eye(3)


def random_skew(rng: np.random.Generator, n: int) -> AlgebraElement:
    matrix = rng.standard_normal((n, n))
    return AlgebraElement(matrix - matrix.T, "so")


class TestAlgebra(unittest.TestCase):

    def test_tag_checks(self) -> None:
        with self.assertRaises(AlgebraMismatchError):
            AlgebraElement(np.eye(2), "so")
        with self.assertRaises(AlgebraMismatchError):
            AlgebraElement(np.eye(2), "sl")
        with self.assertRaises(AlgebraMismatchError):
            AlgebraElement(np.ones((2, 3)))
        AlgebraElement(np.array([[1j, 0.0], [0.0, -2j]]), "skew-hermitian")

    def test_commutator(self) -> None:
        a = AlgebraElement(hat(E1), "so")
        b = AlgebraElement(hat(E2), "so")
        np.testing.assert_array_equal(
            commutator(a, a).matrix, np.zeros((3, 3))
        )
        np.testing.assert_allclose(commutator(a, b).matrix, hat(E3))
        self.assertEqual(commutator(a, b).tag, "so")
        diagonal = AlgebraElement(np.diag([1.0, 2.0]))
        other = AlgebraElement(np.diag([-3.0, 0.5]))
        np.testing.assert_array_equal(
            commutator(diagonal, other).matrix, np.zeros((2, 2))
        )

    def test_commutator_mismatch(self) -> None:
        with self.assertRaises(AlgebraMismatchError):
            commutator(AlgebraElement(np.eye(2)), AlgebraElement(np.eye(3)))
        with self.assertRaises(AlgebraMismatchError):
            commutator(
                AlgebraElement(hat(E1), "so"), AlgebraElement(hat(E1))
            )

    def test_expm(self) -> None:
        np.testing.assert_allclose(
            expm(AlgebraElement(np.zeros((3, 3)), "so")).matrix, np.eye(3)
        )
        theta = np.pi / 3
        rotation = expm(
            AlgebraElement(theta * np.array([[0.0, -1.0], [1.0, 0.0]]), "so")
        )
        self.assertEqual(rotation.tag, "SO")
        np.testing.assert_allclose(
            rotation.matrix,
            [[0.5, -np.sqrt(3) / 2], [np.sqrt(3) / 2, 0.5]],
            atol=1e-14,
        )

    def test_expm_of_so5_is_orthogonal(self) -> None:
        element = expm(random_skew(np.random.default_rng(2), 5))
        self.assertLessEqual(element.defect(), 1e-12)
        element.validate()

    def test_group_validation(self) -> None:
        with self.assertRaises(ValueError):
            GroupElement(np.diag([1.0, -1.0]), "SO").validate()
        with self.assertRaises(ValueError):
            GroupElement(2.0 * np.eye(2), "SL").validate()
        product = GroupElement(np.eye(2), "SO") @ GroupElement(np.eye(2))
        self.assertEqual(product.tag, "GL")

    def test_dexpinv(self) -> None:
        a = AlgebraElement(hat(E1), "so")
        omega = AlgebraElement(hat(E2), "so")
        self.assertIs(dexpinv_apply(a, omega, 0), a)
        np.testing.assert_allclose(
            dexpinv_apply(a, omega, 1).matrix,
            (a - commutator(omega, a) * 0.5).matrix,
        )
        np.testing.assert_allclose(
            dexpinv_apply(a, a * 0.7).matrix, a.matrix, atol=1e-15
        )
        with self.assertRaises(ValueError):
            dexpinv_apply(a, omega, -1)

    def test_dexpinv_small_omega(self) -> None:
        a = AlgebraElement(hat(E1), "so")
        for size in (1e-3, 1e-4):
            with self.subTest(size=size):
                omega = AlgebraElement(size * hat(E2), "so")
                difference = dexpinv_apply(a, omega).matrix - a.matrix
                self.assertAlmostEqual(
                    np.max(np.abs(difference)) / size, 0.5, delta=size
                )


class TestActions(unittest.TestCase):

    def test_action_axioms(self) -> None:
        rng = np.random.default_rng(4)
        p1 = expm(random_skew(rng, 3))
        p2 = expm(random_skew(rng, 3))
        point = rng.standard_normal((3, 3))
        point = point + point.T
        for action in (LEFT_MULTIPLICATION, ISOSPECTRAL):
            with self.subTest(kind=action.kind):
                np.testing.assert_allclose(
                    action.apply(np.eye(3), point), point, atol=1e-10
                )
                np.testing.assert_allclose(
                    action.apply(p1 @ p2, point),
                    action.apply(p1, action.apply(p2, point)),
                    atol=1e-10,
                )

    def test_action_for(self) -> None:
        self.assertIs(action_for("isospectral"), ISOSPECTRAL)
        with self.assertRaises(ValueError):
            action_for("right-multiplication")


class TestRkmk3(unittest.TestCase):

    def test_constant_coefficient_is_exact(self) -> None:
        generator = AlgebraElement(hat(np.array([0.3, -1.0, 0.5])), "so")
        problem = LieGroupProblem(
            lambda t, y: generator, LEFT_MULTIPLICATION, E1
        )
        np.testing.assert_allclose(
            rkmk3_step(problem, E1, 0.0, 0.4),
            expm(generator * 0.4).matrix @ E1,
            atol=1e-14,
        )

    def test_time_dependent_local_error(self) -> None:
        generator = hat(np.array([1.0, 0.5, -0.2]))
        problem = LieGroupProblem(
            lambda t, y: AlgebraElement(
                t * generator + hat(np.cross(y, E3)), "so"
            ),
            LEFT_MULTIPLICATION,
            E1,
        )
        stepper = lie_stepper(rkmk3_step)

        def local_error(h: float) -> float:
            fine = solve(problem, stepper, h / 200, 200, E1, t0=0.5)
            coarse = stepper(problem, E1, h, t=0.5)
            return float(np.max(np.abs(coarse - fine.final_state)))

        self.assertAlmostEqual(
            np.log2(local_error(0.2) / local_error(0.1)), 4.0, delta=0.5
        )

    def test_rigid_body_stays_on_sphere(self) -> None:
        problem = rigid_body_lie_problem()
        trajectory = solve(
            problem,
            lie_stepper(rkmk3_step),
            0.1,
            10_000,
            rigid_body_initial_state(),
            {"radius": lambda y: float(np.linalg.norm(y))},
        )
        self.assertLessEqual(trajectory.max_drift("radius"), 1e-9)

    def test_rigid_body_order(self) -> None:
        order = observed_order(
            lie_stepper(rkmk3_step),
            rigid_body_lie_problem(),
            None,
            [0.2, 0.1, 0.05],
            x0=rigid_body_initial_state(),
            t_final=2.0,
        )
        self.assertAlmostEqual(order, 3.0, delta=0.3)

    def test_isospectral_flow(self) -> None:
        problem = isospectral_problem()
        trajectory = solve(
            problem, lie_stepper(rkmk3_step), 0.05, 1000, problem.y0.ravel()
        )
        final = trajectory.final_state.reshape(3, 3)
        np.testing.assert_allclose(
            spectrum(final), spectrum(problem.y0), atol=1e-10
        )


class TestMagnus(unittest.TestCase):

    def test_scalar_coefficient(self) -> None:
        problem = LieGroupProblem(
            lambda t, v: AlgebraElement(np.array([[t]])),
            LEFT_MULTIPLICATION,
            np.ones(1),
            state_independent=True,
        )
        value = magnus4_step(problem, np.ones(1), 1.0, 0.5)
        self.assertAlmostEqual(float(value[0]), np.exp(0.5 * 1.25), 14)

    def test_skew_coefficient_gives_orthogonal_step(self) -> None:
        problem = LieGroupProblem(
            lambda t, v: AlgebraElement(hat([np.cos(t), t, 1.0]), "so"),
            LEFT_MULTIPLICATION,
            np.eye(3),
            state_independent=True,
        )
        step = magnus4_step(problem, np.eye(3), 0.2, 0.3)
        np.testing.assert_allclose(step.T @ step, np.eye(3), atol=1e-12)

    def test_state_dependent_coefficient_is_rejected(self) -> None:
        with self.assertRaises(IncompatibleProblemError):
            magnus4_step(rigid_body_lie_problem(), E1, 0.0, 0.1)

    def test_mathieu_order(self) -> None:
        problem = mathieu_problem()
        order = observed_order(
            lie_stepper(magnus4_step),
            problem,
            lambda t: mathieu_reference(t, problem.y0),
            [0.4, 0.2, 0.1],
            x0=problem.y0,
            t_final=4.0,
        )
        self.assertAlmostEqual(order, 4.0, delta=0.3)

    def test_mathieu_unit_determinant(self) -> None:
        problem = mathieu_problem()
        stepper = lie_stepper(magnus4_step)
        columns = np.eye(2)
        propagator = np.column_stack(
            [
                solve(problem, stepper, 0.1, 1000, column).final_state
                for column in columns
            ]
        )
        self.assertAlmostEqual(np.linalg.det(propagator), 1.0, delta=1e-9)


if __name__ == "__main__":
    unittest.main()
