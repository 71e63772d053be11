import logging
from typing import List

import numpy as np

from compnet.core.dataset import Dataset
from compnet.core.errors import ConfigError
from compnet.experiment import AUTOREGRESSIVE_RULE, LINEAR_RULE, NONLINEAR_MIXTURE_RULE, RULES

logger = logging.getLogger(__name__)

# Records generated and dropped before the autoregressive series is used, so it starts close to stationary.
BURN_IN = 100

# Mean level of the autoregressive series.
LEVEL = 10.0


class SyntheticSpec:
    """
    How to generate a dataset: records for train and test, the number of features of every component slot, the rule
    that turns features into targets, the standard deviation of the Gaussian noise and the seed.
    """
    n_train: int
    n_test: int
    feature_counts: List[int]
    rule: str
    noise: float
    seed: int

    def __init__(self, n_train: int = 400, n_test: int = 100, feature_counts: List[int] = None,
                 rule: str = AUTOREGRESSIVE_RULE, noise: float = 1.0, seed: int = 0):
        self.n_train = n_train
        self.n_test = n_test
        self.feature_counts = list(feature_counts) if feature_counts is not None else [4, 3, 3]
        self.rule = rule
        self.noise = noise
        self.seed = seed
        self.validate()

    def validate(self):
        if self.n_train < 1 or self.n_test < 1:
            raise ConfigError(f"Record counts must be positive, got {self.n_train} and {self.n_test}")
        if not self.feature_counts or any(count < 1 for count in self.feature_counts):
            raise ConfigError(f"Feature counts must be positive, got {self.feature_counts}")
        if self.noise < 0.0:
            raise ConfigError(f"Noise must not be negative, got {self.noise}")
        if self.rule not in RULES:
            raise ConfigError(f"Unsupported rule {self.rule}, choose from {RULES}")

    def to_dict(self) -> dict:
        return {
            "n_train": self.n_train,
            "n_test": self.n_test,
            "feature_counts": list(self.feature_counts),
            "rule": self.rule,
            "noise": self.noise,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, document: dict) -> "SyntheticSpec":
        known = {"n_train", "n_test", "feature_counts", "rule", "noise", "seed"}
        unknown = set(document) - known
        if unknown:
            raise ConfigError(f"Unknown synthetic dataset settings: {sorted(unknown)}")
        try:
            return cls(n_train=int(document.get("n_train", 400)),
                       n_test=int(document.get("n_test", 100)),
                       feature_counts=[int(count) for count in document.get("feature_counts", [4, 3, 3])],
                       rule=document.get("rule", AUTOREGRESSIVE_RULE),
                       noise=float(document.get("noise", 1.0)),
                       seed=int(document.get("seed", 0)))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid synthetic dataset settings: {e}") from e


def _linear(spec: SyntheticSpec, rng: np.random.Generator, n: int) -> (List[np.ndarray], np.ndarray):
    inputs = [rng.standard_normal((n, count)) for count in spec.feature_counts]
    coefficients = [rng.standard_normal(count) for count in spec.feature_counts]
    targets = 0.5 + sum(matrix @ beta for matrix, beta in zip(inputs, coefficients))
    return inputs, targets


def _nonlinear_mixture(spec: SyntheticSpec, rng: np.random.Generator, n: int) -> (List[np.ndarray], np.ndarray):
    inputs = [rng.standard_normal((n, count)) for count in spec.feature_counts]
    targets = np.full(n, 0.5)
    for matrix in inputs:
        beta = rng.standard_normal(matrix.shape[1])
        gamma = rng.standard_normal(matrix.shape[1])
        targets += 2.0 * np.tanh(matrix @ beta) + 0.5 * (matrix @ gamma) ** 2 / matrix.shape[1]
    return inputs, targets


def _autoregressive(spec: SyntheticSpec, rng: np.random.Generator, n: int) -> (List[np.ndarray], np.ndarray):
    """
    y_t = level + 0.5 (y_{t-1} - level) - 0.2 (y_{t-2} - level) + sum_j (b_j x_{j,t} + 0.5 tanh(2 x_{j,t-1})) + d_t,
    with exogenous AR(1) series x_j and a hidden AR(1) driver d that no slot sees. Slot 0 holds the lagged targets,
    slot j > 0 the current and lagged values of exogenous series j. The noise is added to the observed targets.
    """
    lags = max(spec.feature_counts + [2])
    length = n + BURN_IN + lags
    exogenous_count = len(spec.feature_counts) - 1

    exogenous = np.zeros((exogenous_count, length))
    hidden = np.zeros(length)
    series = np.full(length, LEVEL)
    weights = 1.0 / np.arange(1, exogenous_count + 1)
    for t in range(1, length):
        exogenous[:, t] = 0.5 * exogenous[:, t - 1] + rng.standard_normal(exogenous_count)
        hidden[t] = 0.8 * hidden[t - 1] + rng.standard_normal()
        previous = series[t - 1] - LEVEL
        before = series[t - 2] - LEVEL if t >= 2 else 0.0
        drive = float(weights @ exogenous[:, t] + np.sum(0.5 * np.tanh(2.0 * exogenous[:, t - 1])))
        series[t] = LEVEL + 0.5 * previous - 0.2 * before + drive + hidden[t]
    observed = series + spec.noise * rng.standard_normal(length)

    rows = np.arange(length - n, length)
    inputs = [np.column_stack([observed[rows - lag] for lag in range(1, spec.feature_counts[0] + 1)])]
    for j in range(exogenous_count):
        inputs.append(np.column_stack([exogenous[j, rows - lag] for lag in range(spec.feature_counts[j + 1])]))
    return inputs, observed[rows]


def generate_synthetic(spec: SyntheticSpec) -> (Dataset, Dataset):
    """
    Generates a train and a test dataset from the same rule. The records of the autoregressive rule form one series,
    the train records come first and the test records follow them.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.n_train + spec.n_test
    if spec.rule == LINEAR_RULE:
        inputs, targets = _linear(spec, rng, n)
    elif spec.rule == NONLINEAR_MIXTURE_RULE:
        inputs, targets = _nonlinear_mixture(spec, rng, n)
    else:
        return _split(*_autoregressive(spec, rng, n), spec.n_train)

    targets = targets + spec.noise * rng.standard_normal(n)
    return _split(inputs, targets, spec.n_train)


def _split(inputs: List[np.ndarray], targets: np.ndarray, n_train: int) -> (Dataset, Dataset):
    data = Dataset(inputs, targets)
    logger.info(f"Generated {data.n} records with slots {data.dimensions()}")
    return data.subset(np.arange(n_train)), data.subset(np.arange(n_train, data.n))
