import os
import tempfile
import unittest
from unittest.mock import patch

import numpy as np
from scipy import linalg

from geometric_integrators.problems import get_problem
from geometric_integrators.schrodinger import (
    POTENTIALS,
    PotentialData,
    SemiclassicalGrid,
    ZassenhausSplitting,
    apply_exp_r1,
    as_real_state,
    as_wave,
    free_plane_wave,
    krylov_exp_apply,
    l2_norm,
    operator_matrix,
    potential_for,
    reference_propagator,
    spectral_derivative,
    zassenhaus_operators,
    zassenhaus_step,
)
from geometric_integrators.utils.exceptions import (
    GridTooLargeError,
    ProblemDefinitionError,
    RegistryMissError,
)


def cosine_derivative(x: np.ndarray, order: int) -> np.ndarray:
    return np.pi**order * np.cos(np.pi * x + 0.5 * order * np.pi)


def packet(grid: SemiclassicalGrid) -> np.ndarray:
    u = np.exp(-20.0 * (grid.points - 0.2) ** 2).astype(complex)
    return u / l2_norm(u, grid)


class TestGrid(unittest.TestCase):

    def test_points_and_wavenumbers(self) -> None:
        grid = SemiclassicalGrid(8, 0.5)
        np.testing.assert_allclose(grid.points, np.linspace(-1.0, 0.75, 8))
        np.testing.assert_array_equal(
            grid.wavenumbers, [0, 1, 2, 3, -4, -3, -2, -1]
        )
        self.assertEqual(grid.default_step, 0.5)
        self.assertEqual(grid.tau(0.1), 0.1j)

    def test_invalid_grids(self) -> None:
        with self.assertRaises(ValueError):
            SemiclassicalGrid(48, 0.5)
        for epsilon in (0.0, 1.5):
            with self.subTest(epsilon=epsilon):
                with self.assertRaises(ValueError):
                    SemiclassicalGrid(64, epsilon)

    @patch("logging.warning")
    def test_under_resolved_grid_warns(self, mock_warning) -> None:
        SemiclassicalGrid(16, 1.0 / 16.0)
        mock_warning.assert_called_once()

    def test_spectral_derivatives(self) -> None:
        grid = SemiclassicalGrid(32, 0.25)
        x = grid.points
        np.testing.assert_allclose(
            spectral_derivative(np.sin(np.pi * x), grid),
            np.pi * np.cos(np.pi * x),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            spectral_derivative(np.cos(3 * np.pi * x), grid, 2),
            -9.0 * np.pi**2 * np.cos(3 * np.pi * x),
            atol=1e-10,
        )

    def test_norm_and_packing(self) -> None:
        grid = SemiclassicalGrid(16, 0.25)
        self.assertAlmostEqual(l2_norm(np.ones(16), grid), np.sqrt(2.0), 15)
        u = np.arange(4.0) + 1j * np.arange(4.0, 8.0)
        np.testing.assert_array_equal(
            as_real_state(u), np.arange(8.0)
        )
        np.testing.assert_array_equal(as_wave(np.arange(8.0)), u)
        with self.assertRaises(ValueError):
            as_wave(np.ones(3))


class TestPotentials(unittest.TestCase):

    def test_registered_potentials(self) -> None:
        for key in ("cos", "double-well", "zero"):
            with self.subTest(key=key):
                self.assertIn(key, POTENTIALS)

    def test_spectral_consistency(self) -> None:
        grid = SemiclassicalGrid(64, 0.25)
        data = potential_for(grid, "cos")
        data.check_consistency(grid, cosine_derivative)
        with self.assertRaises(ProblemDefinitionError):
            data.check_consistency(
                grid, lambda x, order: 2.0 * cosine_derivative(x, order)
            )

    def test_wrong_sample_count(self) -> None:
        grid = SemiclassicalGrid(16, 0.25)
        with self.assertRaises(ValueError):
            PotentialData.from_samples(grid, np.zeros(8))

    def test_samples_from_file(self) -> None:
        grid = SemiclassicalGrid(16, 0.25)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "potential.txt")
            np.savetxt(path, np.cos(np.pi * grid.points))
            data = potential_for(grid, path)
        np.testing.assert_allclose(
            data.derivative(2), cosine_derivative(grid.points, 2), atol=1e-9
        )

    def test_unknown_potential(self) -> None:
        grid = SemiclassicalGrid(16, 0.25)
        with self.assertRaises(RegistryMissError):
            potential_for(grid, "morse")


class TestKrylov(unittest.TestCase):

    def test_matches_dense_exponential(self) -> None:
        rng = np.random.default_rng(0)
        root = rng.standard_normal((6, 6))
        hermitian = 0.1 * (root + root.T)
        u = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        result = krylov_exp_apply(lambda v: 1j * hermitian @ v, u, 6)
        np.testing.assert_allclose(
            result.vector, linalg.expm(1j * hermitian) @ u, atol=1e-10
        )
        self.assertAlmostEqual(
            np.linalg.norm(result.vector), np.linalg.norm(u), 12
        )

    def test_lucky_breakdown(self) -> None:
        hermitian = np.diag([1.0, 2.0, 3.0])
        u = np.array([0.0, 1.0, 0.0], dtype=complex)
        result = krylov_exp_apply(lambda v: 1j * hermitian @ v, u, 3)
        self.assertEqual(result.iterations, 1)
        self.assertEqual(result.residual_estimate, 0.0)
        np.testing.assert_allclose(result.vector, np.exp(2j) * u)

    def test_zero_vector_and_validation(self) -> None:
        result = krylov_exp_apply(lambda v: v, np.zeros(4), 2)
        np.testing.assert_array_equal(result.vector, np.zeros(4))
        with self.assertRaises(ValueError):
            krylov_exp_apply(lambda v: v, np.ones(4), 0)

    def test_tolerance_extends_the_space(self) -> None:
        rng = np.random.default_rng(1)
        root = rng.standard_normal((6, 6))
        hermitian = 0.5 * (root + root.T)
        u = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        result = krylov_exp_apply(
            lambda v: 1j * hermitian @ v, u, 1, tolerance=1e-12
        )
        self.assertGreater(result.iterations, 1)
        np.testing.assert_allclose(
            result.vector, linalg.expm(1j * hermitian) @ u, atol=1e-10
        )
        for tolerance in (0.0, -1e-8):
            with self.subTest(tolerance=tolerance):
                with self.assertRaises(ValueError):
                    krylov_exp_apply(lambda v: v, u, 2, tolerance)


class TestZassenhaus(unittest.TestCase):

    def setUp(self) -> None:
        self.grid = SemiclassicalGrid(64, 0.25)
        self.cosine = potential_for(self.grid, "cos")

    def test_coefficient_string_is_palindromic(self) -> None:
        sequence = ZassenhausSplitting.coefficient_string()
        self.assertEqual(sequence, sequence[::-1])
        self.assertEqual(sequence[3], "2R3")

    def test_operators_are_skew_hermitian(self) -> None:
        grid = SemiclassicalGrid(16, 0.25)
        ops = zassenhaus_operators(grid, potential_for(grid, "cos"), 0.1)
        for apply in (ops.apply_r2, ops.apply_r3):
            matrix = operator_matrix(apply, 16)
            np.testing.assert_allclose(
                matrix, -matrix.conj().T, atol=1e-12
            )
        with self.assertRaises(ValueError):
            zassenhaus_operators(grid, ops.potential, 0.1, "corrected")

    def test_second_derivative_exponential(self) -> None:
        u = np.exp(3j * np.pi * self.grid.points)
        np.testing.assert_allclose(
            apply_exp_r1(u, 0.0, self.grid), u, atol=1e-14
        )
        coefficient = 0.01j
        np.testing.assert_allclose(
            apply_exp_r1(u, coefficient, self.grid),
            np.exp(-9.0 * np.pi**2 * coefficient) * u,
            atol=1e-12,
        )
        wave = packet(self.grid)
        self.assertAlmostEqual(
            l2_norm(apply_exp_r1(wave, coefficient, self.grid), self.grid),
            1.0,
            13,
        )

    def test_free_plane_wave_is_exact(self) -> None:
        potential = potential_for(self.grid, "zero")
        u = free_plane_wave(self.grid, 3, 0.0)
        stepped = zassenhaus_step(self.grid, potential, u, 0.05)
        np.testing.assert_allclose(
            stepped, free_plane_wave(self.grid, 3, 0.05), atol=1e-12
        )

    def test_norm_is_conserved(self) -> None:
        splitting = ZassenhausSplitting(self.grid, self.cosine)
        u = packet(self.grid)
        for _ in range(10):
            u = splitting.step(u)
        self.assertAlmostEqual(l2_norm(u, self.grid), 1.0, 12)

    def test_agrees_with_dense_propagator(self) -> None:
        h = 0.01
        u = packet(self.grid)
        exact = reference_propagator(self.grid, self.cosine, h) @ u
        stepped = zassenhaus_step(self.grid, self.cosine, u, h)
        self.assertLessEqual(l2_norm(stepped - exact, self.grid), 1e-6)

    def test_step_is_time_symmetric(self) -> None:
        problem = get_problem("schrodinger")
        splitting = problem.view("schrodinger", "zassenhaus")
        grid = splitting.grid
        u = as_wave(problem.x0)
        h = grid.default_step
        forward = splitting.step(u, h)
        self.assertAlmostEqual(l2_norm(forward, grid), l2_norm(u, grid), 10)
        back = splitting.step(forward, -h)
        self.assertLessEqual(l2_norm(back - u, grid), 1e-8)

    def test_local_error_shrinks_with_epsilon(self) -> None:
        epsilons = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0]
        errors = []
        for epsilon in epsilons:
            grid = SemiclassicalGrid(256, epsilon)
            potential = potential_for(grid, "cos")
            u = packet(grid)
            exact = reference_propagator(grid, potential, epsilon) @ u
            stepped = zassenhaus_step(grid, potential, u, epsilon)
            errors.append(l2_norm(stepped - exact, grid))
        slope = np.polyfit(np.log(epsilons), np.log(errors), 1)[0]
        self.assertGreaterEqual(slope, 3.5)

    def test_exponent_sizes_scale_with_epsilon(self) -> None:
        # h = eps on an oscillatory wave: |R2 u| ~ eps^2, |R3 u| ~ eps^4
        norms = {"R2": [], "R3": []}
        for epsilon in (1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0):
            grid = SemiclassicalGrid(256, epsilon)
            ops = zassenhaus_operators(
                grid, potential_for(grid, "cos"), epsilon
            )
            u = np.exp(1j * np.sin(np.pi * grid.points) / epsilon)
            norms["R2"].append(np.linalg.norm(ops.apply_r2(u)))
            norms["R3"].append(np.linalg.norm(ops.apply_r3(u)))
        for name, low, high in (("R2", 3.8, 4.3), ("R3", 13.0, 20.0)):
            for coarse, fine in zip(norms[name], norms[name][1:]):
                with self.subTest(operator=name, norm=coarse):
                    self.assertGreaterEqual(coarse / fine, low)
                    self.assertLessEqual(coarse / fine, high)

    def test_dense_propagator_limit(self) -> None:
        grid = SemiclassicalGrid(1024, 0.25)
        with self.assertRaises(GridTooLargeError):
            reference_propagator(grid, potential_for(grid, "zero"), 0.1)


if __name__ == "__main__":
    unittest.main()
