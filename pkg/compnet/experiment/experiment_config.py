import json
import os
from typing import List, Optional

from compnet.activation import ACTIVATIONS, IDENTITY, SCALED_LOGISTIC
from compnet.components import TABLE
from compnet.core.errors import ConfigError
from compnet.experiment import FROZEN, TRAINABLE
from compnet.experiment.synthetic import SyntheticSpec
from compnet.training.train_config import TrainConfig


class RosterEntry:
    """
    A component of the experiment: its declarative definition, the modes it takes part in (x frozen, o trainable)
    and whether its frozen version is first fitted to the training data.
    """

    def __init__(self, document: dict, modes: List[str] = None, pretrain: bool = True):
        self.document = document
        self.modes = list(modes) if modes is not None else [FROZEN, TRAINABLE]
        self.pretrain = pretrain

    @property
    def id(self) -> str:
        return self.document["id"]

    def to_dict(self) -> dict:
        return {**self.document, "modes": list(self.modes), "pretrain": self.pretrain}


class ExperimentConfig:
    """
    Everything an experiment run needs: the dataset (synthetic or CSV), the roster of components, the gluing
    activations to try, the number of parts, the training settings and where the report goes.
    """

    def __init__(self, roster: List[RosterEntry], synthetic: Optional[SyntheticSpec] = None,
                 csv_path: Optional[str] = None, train_fraction: float = 0.8, gluings: List[str] = None,
                 parts: int = 3, train: TrainConfig = None, fine_tune: bool = True, seed: int = 0,
                 workers: int = 1, report_path: Optional[str] = None, report_format: str = "csv"):
        self.roster = roster
        self.synthetic = synthetic
        self.csv_path = csv_path
        self.train_fraction = train_fraction
        self.gluings = list(gluings) if gluings is not None else [IDENTITY, SCALED_LOGISTIC]
        self.parts = parts
        self.train = train if train is not None else TrainConfig(learning_rate=1e-4, epochs=200, batch_size=32)
        self.fine_tune = fine_tune
        self.seed = seed
        self.workers = workers
        self.report_path = report_path
        self.report_format = report_format
        self.validate()

    def validate(self):
        if not self.roster:
            raise ConfigError("The roster needs at least one component")
        ids = [entry.id for entry in self.roster]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"Roster ids must be unique, got {ids}")
        for entry in self.roster:
            unknown = set(entry.modes) - {FROZEN, TRAINABLE}
            if unknown or not entry.modes:
                raise ConfigError(f"Modes of component {entry.id} must be a non-empty subset of "
                                  f"['{FROZEN}', '{TRAINABLE}'], got {entry.modes}")
            if entry.document.get("kind") == TABLE and TRAINABLE in entry.modes:
                raise ConfigError(f"Table component {entry.id} can only be used frozen")
        if (self.synthetic is None) == (self.csv_path is None):
            raise ConfigError("Configure exactly one dataset: 'synthetic' or 'csv'")
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction must lie in (0, 1), the test fraction is the rest; "
                              f"got {self.train_fraction}")
        if not self.gluings or any(gluing not in ACTIVATIONS for gluing in self.gluings):
            raise ConfigError(f"Gluings must be activations from {ACTIVATIONS}, got {self.gluings}")
        if self.parts < 1:
            raise ConfigError(f"parts must be at least 1, got {self.parts}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.report_format not in ("csv", "json"):
            raise ConfigError(f"Report format must be csv or json, got {self.report_format}")

    @classmethod
    def from_dict(cls, document: dict, base_path: str = None) -> "ExperimentConfig":
        known = {"dataset", "roster", "gluings", "parts", "train", "fine_tune", "seed", "workers", "output",
                 "properties"}
        unknown = set(document) - known
        if unknown:
            raise ConfigError(f"Unknown experiment settings: {sorted(unknown)}")
        if "roster" not in document or "dataset" not in document:
            raise ConfigError("Experiment config needs 'dataset' and 'roster'")

        dataset = document["dataset"]
        synthetic = SyntheticSpec.from_dict(dataset["synthetic"]) if "synthetic" in dataset else None
        csv_path = dataset.get("csv")
        if csv_path is not None and base_path is not None and not os.path.isabs(csv_path):
            csv_path = os.path.join(base_path, csv_path)

        roster = []
        for item in document["roster"]:
            if "id" not in item or "kind" not in item:
                raise ConfigError(f"Roster entry misses 'id' or 'kind': {item}")
            component = {key: value for key, value in item.items() if key not in ("modes", "pretrain")}
            default_modes = [FROZEN] if item["kind"] == TABLE else None
            roster.append(RosterEntry(component, item.get("modes", default_modes), bool(item.get("pretrain", True))))

        output = document.get("output", {})
        try:
            return cls(roster=roster,
                       synthetic=synthetic,
                       csv_path=csv_path,
                       train_fraction=float(dataset.get("train_fraction", 0.8)),
                       gluings=document.get("gluings"),
                       parts=int(document.get("parts", 3)),
                       train=TrainConfig.from_dict(document["train"]) if "train" in document else None,
                       fine_tune=bool(document.get("fine_tune", True)),
                       seed=int(document.get("seed", 0)),
                       workers=int(document.get("workers", 1)),
                       report_path=output.get("report"),
                       report_format=output.get("format", "csv"))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid experiment settings: {e}") from e

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as file:
                document = json.load(file)
        except IOError as e:
            raise IOError(f"Could not read experiment config from {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"Experiment config {path} is not valid JSON: {e}") from e
        return cls.from_dict(document, base_path=os.path.dirname(os.path.abspath(path)))

    def to_dict(self) -> dict:
        dataset = {"synthetic": self.synthetic.to_dict()} if self.synthetic is not None else \
            {"csv": self.csv_path, "train_fraction": self.train_fraction}
        return {
            "dataset": dataset,
            "roster": [entry.to_dict() for entry in self.roster],
            "gluings": list(self.gluings),
            "parts": self.parts,
            "train": self.train.to_dict(),
            "fine_tune": self.fine_tune,
            "seed": self.seed,
            "workers": self.workers,
            "output": {"report": self.report_path, "format": self.report_format},
        }


def default_experiment_config(seed: int = 0) -> ExperimentConfig:
    """
    The grid on the synthetic autoregressive series: a logistic network on the lagged targets, an affine model on
    the first exogenous series and a tanh network on the second, every one frozen and trainable.
    """
    roster = [
        RosterEntry({"id": "A", "kind": "one-hidden-layer", "slot": 0,
                     "params": {"inner_weights": [0.0] * 4, "activation": "logistic"}}),
        RosterEntry({"id": "B", "kind": "affine", "slot": 1, "params": {"weights": [0.0] * 3}}),
        RosterEntry({"id": "C", "kind": "one-hidden-layer", "slot": 2,
                     "params": {"inner_weights": [0.0] * 3, "activation": "tanh"}}),
    ]
    return ExperimentConfig(roster=roster,
                            synthetic=SyntheticSpec(n_train=400, n_test=100, feature_counts=[4, 3, 3], seed=seed),
                            seed=seed)
