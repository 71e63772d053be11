import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

import numpy as np
import pandas as pd

from compnet.cli import EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, main
from compnet.components.affine import Affine
from compnet.components.component_io import save_components
from compnet.components.table import TableComponent
from compnet.core.dataset import Dataset
from compnet.core.loss import total_loss
from compnet.experiment.report import parse_report
from compnet.growth.composite_graph import CompositeGraph
from compnet.growth.glue_node import GlueNode
from compnet.growth.graph_io import load_graph, save_graph
from compnet.tracker.run_tracker import global_data


@patch('os.environ', {})
class TestCli(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = self.directory.name
        rng = np.random.default_rng(61)
        self.data = Dataset([rng.normal(size=(30, 2))], rng.normal(size=30))
        self.data_path = os.path.join(self.path, "data.csv")
        self.data.to_csv(self.data_path)
        self.components = [Affine("a", [0.5, -0.5], slot=0, frozen=True),
                           TableComponent("t", self.data.targets + rng.normal(size=30))]
        self.components_path = os.path.join(self.path, "components.json")
        save_components(self.components, self.components_path)

    def tearDown(self):
        self.directory.cleanup()

    def output(self, name: str) -> str:
        return os.path.join(self.path, name)

    def test_stack_writes_solution(self):
        code = main(["stack", "--data", self.data_path, "--components", self.components_path,
                     "--out", self.output("stack.json")])
        self.assertEqual(EXIT_OK, code)
        with open(self.output("stack.json"), "r", encoding="utf-8") as file:
            solution = json.load(file)
        self.assertEqual(3, len(solution["theta"]))
        self.assertAlmostEqual(np.sqrt(solution["sse"] / 30), solution["rmse"])

    def test_grow_writes_graph_and_trace(self):
        code = main(["grow", "--data", self.data_path, "--components", self.components_path, "--layers", "2",
                     "--activation", "tanh", "--out", self.output("grow.json"),
                     "--save-graph", self.output("graph.json")])
        self.assertEqual(EXIT_OK, code)
        with open(self.output("grow.json"), "r", encoding="utf-8") as file:
            document = json.load(file)
        self.assertEqual(2, len(document["trace"]["stages"]))
        self.assertTrue(os.path.exists(self.output("graph.json")))

    def test_train_writes_trace_csv(self):
        graph = CompositeGraph([Affine("o", [0.1, 0.1], slot=0)], [GlueNode("g", ["o"], [0.0, 1.0])], "g")
        save_graph(graph, self.output("graph.json"))
        code = main(["train", "--data", self.data_path, "--graph", self.output("graph.json"), "--epochs", "3",
                     "--batch-size", "10", "--learning-rate", "0.001", "--out", self.output("trace.csv"),
                     "--save-graph", self.output("trained.json")])
        self.assertEqual(EXIT_OK, code)
        frame = pd.read_csv(self.output("trace.csv"))
        self.assertEqual([1, 2, 3], frame["epoch"].tolist())
        self.assertTrue(os.path.exists(self.output("trained.json")))

    def frozen_affine_graph(self, theta) -> str:
        graph = CompositeGraph([self.components[0]], [GlueNode("g", ["a"], theta)], "g")
        save_graph(graph, self.output("graph.json"))
        return self.output("graph.json")

    def test_train_starts_at_the_best_child(self):
        path = self.frozen_affine_graph([0.3, 0.7])
        code = main(["train", "--data", self.data_path, "--graph", path, "--epochs", "1", "--batch-size", "10",
                     "--learning-rate", "0", "--init-best-child", "--format", "json", "--out", self.output("trace.json"),
                     "--save-graph", self.output("trained.json")])
        self.assertEqual(EXIT_OK, code)
        losses = [total_loss(np.ones(30), self.data.targets),
                  total_loss(self.components[0].evaluate_rows(self.data), self.data.targets)]
        expected = np.zeros(2)
        expected[int(np.argmin(losses))] = 1.0
        with open(self.output("trace.json"), "r", encoding="utf-8") as file:
            trace = json.load(file)
        np.testing.assert_array_equal(expected, trace["initial_parameters"]["glue:g:theta"])
        trained = load_graph(self.output("trained.json"))
        np.testing.assert_array_equal(expected, trained.glue_nodes["g"].theta)

    def test_train_without_init_keeps_the_given_weights(self):
        path = self.frozen_affine_graph([0.3, 0.7])
        code = main(["train", "--data", self.data_path, "--graph", path, "--epochs", "1", "--batch-size", "10",
                     "--learning-rate", "0", "--format", "json", "--out", self.output("trace.json")])
        self.assertEqual(EXIT_OK, code)
        with open(self.output("trace.json"), "r", encoding="utf-8") as file:
            np.testing.assert_array_equal([0.3, 0.7], json.load(file)["initial_parameters"]["glue:g:theta"])

    def test_train_prints_csv_when_asked(self):
        path = self.frozen_affine_graph([0.0, 1.0])
        with patch('sys.stdout', new_callable=io.StringIO) as stdout:
            code = main(["train", "--data", self.data_path, "--graph", path, "--epochs", "2", "--batch-size", "10",
                         "--learning-rate", "0.001", "--format", "csv"])
        self.assertEqual(EXIT_OK, code)
        frame = pd.read_csv(io.StringIO(stdout.getvalue()))
        self.assertEqual([1, 2], frame["epoch"].tolist())

    def test_train_observes_epochs(self):
        path = self.frozen_affine_graph([0.0, 1.0])
        code = main(["train", "--data", self.data_path, "--graph", path, "--epochs", "3", "--batch-size", "10",
                     "--learning-rate", "0.001", "--observe", "--out", self.output("trace.csv")])
        self.assertEqual(EXIT_OK, code)
        self.assertEqual([1, 2, 3], [epoch for epoch, _ in global_data["observer"].epoch_losses])
        global_data["observer"].reset()

    def test_grow_reports_observed_stages(self):
        code = main(["grow", "--data", self.data_path, "--components", self.components_path, "--layers", "3",
                     "--observe", "--out", self.output("grow.json")])
        self.assertEqual(EXIT_OK, code)
        with open(self.output("grow.json"), "r", encoding="utf-8") as file:
            document = json.load(file)
        self.assertEqual(3, len(document["observed"]["stages"]))
        self.assertEqual([stage["loss"] for stage in document["trace"]["stages"]],
                         [stage["loss"] for stage in document["observed"]["stages"]])
        global_data["observer"].reset()

    def test_broken_components_file_is_config_error(self):
        with open(self.output("broken.json"), "w", encoding="utf-8") as file:
            file.write("[{\"id\": ")
        self.assertEqual(EXIT_CONFIG, main(["stack", "--data", self.data_path, "--components",
                                            self.output("broken.json")]))

    def test_empty_dataset_file_is_config_error(self):
        open(self.output("empty.csv"), "w").close()
        self.assertEqual(EXIT_CONFIG, main(["stack", "--data", self.output("empty.csv"),
                                            "--components", self.components_path]))

    def test_verify_passes(self):
        code = main(["verify", "no-worse", "--n", "400", "--k", "1", "--trials", "50", "--seed", "3",
                     "--out", self.output("bound.json")])
        self.assertEqual(EXIT_OK, code)
        with open(self.output("bound.json"), "r", encoding="utf-8") as file:
            self.assertTrue(json.load(file)["pass"])

    def test_verify_width_violation_is_config_error(self):
        self.assertEqual(EXIT_CONFIG, main(["verify", "no-worse", "--n", "9", "--k", "5", "--trials", "5"]))

    def test_missing_dataset_is_config_error(self):
        self.assertEqual(EXIT_CONFIG, main(["stack", "--data", self.output("missing.csv"),
                                            "--components", self.components_path]))

    def test_dependent_components_are_numerical_failure(self):
        save_components([self.components[0], Affine("b", [1.0, -1.0], slot=0, frozen=True)],
                        self.output("dependent.json"))
        code = main(["stack", "--data", self.data_path, "--components", self.output("dependent.json")])
        self.assertEqual(EXIT_FAILURE, code)

    def test_gen_data_writes_both_splits(self):
        code = main(["gen-data", "--n-train", "30", "--n-test", "10", "--features", "2,2",
                     "--out", self.output("synthetic")])
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(30, Dataset.from_csv(os.path.join(self.output("synthetic"), "train.csv")).n)
        self.assertEqual(10, Dataset.from_csv(os.path.join(self.output("synthetic"), "test.csv")).n)

    def test_experiment_from_config_file(self):
        config = {
            "dataset": {"synthetic": {"n_train": 60, "n_test": 20, "feature_counts": [2, 2]}},
            "roster": [{"id": "A", "kind": "affine", "slot": 0, "params": {"weights": [0.0, 0.0]}},
                       {"id": "B", "kind": "affine", "slot": 1, "params": {"weights": [0.0, 0.0]}}],
            "gluings": ["identity"],
            "parts": 2,
            "train": {"learning_rate": 0.0001, "epochs": 2, "batch_size": 20},
            "properties": {"COMPNET_LOG_LEVEL": "ERROR"},
        }
        with open(self.output("experiment.json"), "w", encoding="utf-8") as file:
            json.dump(config, file)
        code = main(["experiment", "--config", self.output("experiment.json"), "--out", self.output("report.csv")])
        self.assertEqual(EXIT_OK, code)
        report = parse_report(self.output("report.csv"))
        self.assertEqual(4 + 4, len(report))


if __name__ == '__main__':
    unittest.main()
