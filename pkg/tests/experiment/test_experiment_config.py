import json
import os
import tempfile
import unittest

from compnet.core.errors import ConfigError
from compnet.experiment.experiment_config import ExperimentConfig, RosterEntry, default_experiment_config
from compnet.experiment.synthetic import SyntheticSpec


def config_document() -> dict:
    return {
        "dataset": {"synthetic": {"n_train": 60, "n_test": 20, "feature_counts": [2, 2]}},
        "roster": [
            {"id": "A", "kind": "affine", "slot": 0, "params": {"weights": [0.0, 0.0]}},
            {"id": "B", "kind": "one-hidden-layer", "slot": 1, "params": {"inner_weights": [0.0, 0.0]},
             "modes": ["o"]},
        ],
        "gluings": ["identity", "tanh"],
        "parts": 2,
        "train": {"learning_rate": 0.001, "epochs": 5, "batch_size": 20},
        "seed": 3,
        "output": {"report": "report.json", "format": "json"},
        "properties": {"COMPNET_LOG_LEVEL": "INFO"},
    }


class TestExperimentConfig(unittest.TestCase):

    def test_from_dict_reads_every_setting(self):
        cfg = ExperimentConfig.from_dict(config_document())
        self.assertEqual(["A", "B"], [entry.id for entry in cfg.roster])
        self.assertEqual(["x", "o"], cfg.roster[0].modes)
        self.assertEqual(["o"], cfg.roster[1].modes)
        self.assertEqual(5, cfg.train.epochs)
        self.assertEqual("json", cfg.report_format)
        self.assertEqual(cfg.to_dict(), ExperimentConfig.from_dict(cfg.to_dict()).to_dict())

    def test_unknown_setting_raises(self):
        document = config_document()
        document["optimizer"] = "adam"
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_dict(document)

    def test_table_defaults_to_frozen_and_cannot_train(self):
        document = config_document()
        document["roster"].append({"id": "T", "kind": "table", "params": {"values": [0.0] * 80}})
        self.assertEqual(["x"], ExperimentConfig.from_dict(document).roster[2].modes)
        document["roster"][2]["modes"] = ["x", "o"]
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_dict(document)

    def test_invalid_settings_raise(self):
        roster = [RosterEntry({"id": "A", "kind": "affine", "params": {"weights": [0.0]}})]
        synthetic = SyntheticSpec()
        for settings in ({"roster": []}, {"synthetic": None}, {"csv_path": "data.csv"}, {"train_fraction": 1.0},
                         {"gluings": ["relu"]}, {"parts": 0}, {"workers": 0}, {"report_format": "xml"}):
            arguments = {"roster": roster, "synthetic": synthetic, **settings}
            with self.assertRaises(ConfigError):
                ExperimentConfig(**arguments)
        with self.assertRaises(ConfigError):
            ExperimentConfig(roster=roster + roster, synthetic=synthetic)
        with self.assertRaises(ConfigError):
            ExperimentConfig(roster=[RosterEntry(roster[0].document, modes=["z"])], synthetic=synthetic)

    def test_csv_path_is_relative_to_config_file(self):
        document = config_document()
        document["dataset"] = {"csv": "data.csv", "train_fraction": 0.75}
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "experiment.json")
            with open(path, "w", encoding="utf-8") as file:
                json.dump(document, file)
            cfg = ExperimentConfig.from_json_file(path)
        self.assertEqual(os.path.join(directory, "data.csv"), cfg.csv_path)
        self.assertEqual(0.75, cfg.train_fraction)

    def test_invalid_json_raises_config_error(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "broken.json")
            with open(path, "w", encoding="utf-8") as file:
                file.write("{roster: ")
            with self.assertRaises(ConfigError):
                ExperimentConfig.from_json_file(path)

    def test_default_config_is_valid(self):
        cfg = default_experiment_config(seed=2)
        self.assertEqual(["A", "B", "C"], [entry.id for entry in cfg.roster])
        self.assertEqual(2, cfg.synthetic.seed)


if __name__ == '__main__':
    unittest.main()
