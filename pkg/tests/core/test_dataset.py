import os
import tempfile
import unittest

import numpy as np
import pandas as pd

from compnet.core.dataset import Dataset
from compnet.core.errors import ConfigError, DimensionError


class TestDataset(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(3)
        self.data = Dataset([rng.normal(size=(10, 2)), rng.normal(size=10)], rng.normal(size=10))

    def test_dataset_reshapes_vector_inputs_to_one_column(self):
        self.assertEqual([2, 1], self.data.dimensions())
        self.assertEqual(10, self.data.n)

    def test_dataset_flattens_structured_inputs(self):
        data = Dataset([np.zeros((4, 2, 3))], np.zeros(4))
        self.assertEqual([6], data.dimensions())

    def test_dataset_rejects_mismatched_rows(self):
        with self.assertRaises(DimensionError):
            Dataset([np.zeros((3, 2))], np.zeros(4))

    def test_dataset_rejects_empty_targets(self):
        with self.assertRaises(DimensionError):
            Dataset([], [])

    def test_inputs_for_unknown_slot_raises(self):
        with self.assertRaises(DimensionError):
            self.data.inputs_for(2)

    def test_split_keeps_record_order(self):
        train, test = self.data.split(0.8)
        self.assertEqual(8, train.n)
        self.assertEqual(2, test.n)
        np.testing.assert_array_equal(self.data.targets[8:], test.targets)

    def test_split_rejects_empty_part(self):
        with self.assertRaises(DimensionError):
            self.data.split(1.0)

    def test_csv_keeps_values_exactly(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "data.csv")
            self.data.to_csv(path)
            loaded = Dataset.from_csv(path)
        np.testing.assert_array_equal(self.data.targets, loaded.targets)
        np.testing.assert_array_equal(self.data.inputs_for(0), loaded.inputs_for(0))

    def test_csv_keeps_many_random_values_exactly(self):
        rng = np.random.default_rng(17)
        data = Dataset([rng.normal(size=(500, 3)) * 1e3], rng.standard_cauchy(size=500))
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "data.csv")
            data.to_csv(path)
            loaded = Dataset.from_csv(path)
        np.testing.assert_array_equal(data.targets, loaded.targets)
        np.testing.assert_array_equal(data.inputs_for(0), loaded.inputs_for(0))

    def test_empty_csv_raises_config_error(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "empty.csv")
            open(path, "w").close()
            with self.assertRaises(ConfigError):
                Dataset.from_csv(path)

    def test_from_frame_orders_features_by_index(self):
        frame = pd.DataFrame({"c0_1": [2.0], "c0_0": [1.0], "target": [0.0]})
        data = Dataset.from_frame(frame)
        np.testing.assert_array_equal([[1.0, 2.0]], data.inputs_for(0))

    def test_from_frame_rejects_slot_gaps(self):
        frame = pd.DataFrame({"c0_0": [1.0], "c2_0": [2.0], "target": [0.0]})
        with self.assertRaises(DimensionError):
            Dataset.from_frame(frame)

    def test_from_frame_requires_target(self):
        with self.assertRaises(DimensionError):
            Dataset.from_frame(pd.DataFrame({"c0_0": [1.0]}))


if __name__ == '__main__':
    unittest.main()
