import math
import unittest

import numpy as np

from compnet.core.errors import DimensionError
from compnet.core.loss import rmse, total_loss
from compnet.core.output_vector import OutputVector, stack_outputs


class TestLossAndOutputs(unittest.TestCase):

    def test_total_loss_matches_record_sum(self):
        g = [1.0, 2.0, 4.0]
        y = [0.0, 2.0, 1.0]
        expected = sum((a - b) ** 2 for a, b in zip(g, y))
        self.assertEqual(expected, total_loss(OutputVector(g), y))

    def test_total_loss_is_symmetric(self):
        rng = np.random.default_rng(12)
        g, y = rng.normal(size=16), rng.normal(size=16)
        self.assertEqual(total_loss(g, y), total_loss(y, g))

    def test_total_loss_ignores_record_order(self):
        rng = np.random.default_rng(13)
        g, y = rng.normal(size=16), rng.normal(size=16)
        order = rng.permutation(16)
        self.assertAlmostEqual(total_loss(g, y), total_loss(g[order], y[order]), delta=1e-12 * total_loss(g, y))

    def test_total_loss_of_random_vectors(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            g, y = rng.normal(size=16), rng.normal(size=16)
            expected = math.fsum((a - b) ** 2 for a, b in zip(g, y))
            self.assertAlmostEqual(expected, total_loss(g, y), delta=1e-12 * expected)

    def test_total_loss_of_perfect_outputs_is_zero(self):
        y = np.random.default_rng(15).normal(size=16)
        self.assertEqual(0.0, total_loss(OutputVector(y), y))

    def test_total_loss_rejects_length_mismatch(self):
        with self.assertRaises(DimensionError):
            total_loss([1.0, 2.0], [1.0])

    def test_rmse(self):
        self.assertAlmostEqual(math.sqrt(2.0), rmse(8.0, 4))
        with self.assertRaises(DimensionError):
            rmse(1.0, 0)

    def test_output_vector_is_read_only(self):
        vector = OutputVector([1.0, 2.0])
        with self.assertRaises(ValueError):
            vector.values[0] = 3.0

    def test_output_vector_rejects_nan(self):
        with self.assertRaises(DimensionError):
            OutputVector([1.0, np.nan])

    def test_stack_outputs_places_vectors_in_columns(self):
        matrix = stack_outputs([OutputVector.ones(3), [1.0, 2.0, 3.0]])
        self.assertEqual((3, 2), matrix.shape)
        np.testing.assert_array_equal([1.0, 2.0, 3.0], matrix[:, 1])

    def test_stack_outputs_rejects_different_lengths(self):
        with self.assertRaises(DimensionError):
            stack_outputs([[1.0, 2.0], [1.0]])


if __name__ == '__main__':
    unittest.main()
