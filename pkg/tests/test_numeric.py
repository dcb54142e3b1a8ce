import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from geometric_integrators.utils.numeric_utils import (
    canonical_skew_matrix,
    drift_slope,
    is_power_of_two,
    levi_civita_tensor,
    max_norm,
    sinc,
    symmetric_matrix_function,
)


class TestNumeric(unittest.TestCase):

    def test_max_norm(self) -> None:
        self.assertEqual(max_norm(np.array([1.0, -3.0, 2.0])), 3.0)
        self.assertEqual(max_norm(np.array([])), 0.0)

    def test_canonical_skew_matrix(self) -> None:
        j = canonical_skew_matrix(2)
        self.assertEqual(j.shape, (4, 4))
        np.testing.assert_array_equal(j.T, -j)
        np.testing.assert_array_equal(j @ j, -np.eye(4))
        # p' = -dH/dq for x = (p, q)
        self.assertEqual(j[0, 2], -1.0)

    def test_canonical_skew_matrix_invalid(self) -> None:
        with self.assertRaises(ValueError) as context:
            canonical_skew_matrix(0)
        self.assertIn("degrees of freedom", str(context.exception))

    def test_levi_civita_tensor(self) -> None:
        eps = levi_civita_tensor()
        a, b = np.array([1.0, 2.0, 3.0]), np.array([-1.0, 0.5, 2.0])
        np.testing.assert_allclose(
            np.einsum("ijk,j,k->i", eps, a, b), np.cross(a, b)
        )

    def test_symmetric_matrix_function_square_root(self) -> None:
        matrix = np.array([[4.0, 1.0], [1.0, 3.0]])
        root = symmetric_matrix_function(matrix, np.sqrt)
        np.testing.assert_allclose(root @ root, matrix, atol=1e-13)

    def test_sinc(self) -> None:
        self.assertEqual(float(sinc(np.array(0.0))), 1.0)
        self.assertAlmostEqual(float(sinc(np.array(np.pi))), 0.0)
        self.assertAlmostEqual(float(sinc(np.array(1.0))), np.sin(1.0))

    def test_drift_slope(self) -> None:
        series = 2.0 + 0.5 * np.arange(10)
        self.assertAlmostEqual(drift_slope(series), 0.5)
        self.assertAlmostEqual(drift_slope(np.ones(5)), 0.0)
        # energy lost counts as drift
        self.assertAlmostEqual(drift_slope(2.0 - 0.5 * np.arange(10)), 0.5)

    def test_drift_slope_needs_two_samples(self) -> None:
        with self.assertRaises(ValueError):
            drift_slope(np.array([1.0]))

    def test_is_power_of_two(self) -> None:
        self.assertTrue(is_power_of_two(256))
        self.assertTrue(is_power_of_two(1))
        self.assertFalse(is_power_of_two(0))
        self.assertFalse(is_power_of_two(96))

    @given(st.floats(-1e3, 1e3), st.floats(-10.0, 10.0))
    @settings(max_examples=30, deadline=None)
    def test_drift_slope_of_linear_series(
        self, offset: float, slope: float
    ) -> None:
        series = offset + slope * np.arange(20)
        self.assertAlmostEqual(
            drift_slope(series), abs(slope), delta=1e-8
        )


if __name__ == "__main__":
    unittest.main()
