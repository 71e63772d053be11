import logging
import re
from typing import List

import numpy as np
import pandas as pd

from compnet.core.errors import ConfigError, DimensionError

logger = logging.getLogger(__name__)

TARGET_COLUMN = "target"
_COLUMN_PATTERN = re.compile(r"^c(\d+)_(\d+)$")


class Dataset:
    """
    The labelled data: one input matrix per component slot, flattened to one row per record, and the shared targets.
    Slot j holds the inputs that component j receives; a component without inputs (the constant one or a table of
    precomputed outputs) does not need a slot.
    """
    inputs_per_component: List[np.ndarray]
    targets: np.ndarray
    n: int

    def __init__(self, inputs_per_component: List[np.ndarray], targets):
        targets = np.array(targets, dtype=float).reshape(-1)
        n = len(targets)
        if n < 1:
            raise DimensionError("A dataset needs at least one record")

        matrices = []
        for slot, inputs in enumerate(inputs_per_component):
            matrix = np.array(inputs, dtype=float)
            if matrix.ndim == 1:
                matrix = matrix.reshape(-1, 1)
            elif matrix.ndim > 2:
                # Inputs with a 2-D structure per record are flattened row-major
                matrix = matrix.reshape(matrix.shape[0], -1)
            if matrix.shape[0] != n:
                raise DimensionError(f"Inputs for slot {slot} have {matrix.shape[0]} rows, expected {n}")
            matrix.setflags(write=False)
            matrices.append(matrix)

        targets.setflags(write=False)
        self.inputs_per_component = matrices
        self.targets = targets
        self.n = n

    def __repr__(self):
        return f"Dataset(n={self.n}, slots={self.dimensions()})"

    def slots(self) -> int:
        return len(self.inputs_per_component)

    def dimensions(self) -> List[int]:
        return [matrix.shape[1] for matrix in self.inputs_per_component]

    def inputs_for(self, slot: int) -> np.ndarray:
        if slot is None or slot < 0 or slot >= len(self.inputs_per_component):
            raise DimensionError(f"Slot {slot} does not exist, the dataset has {self.slots()} slots")
        return self.inputs_per_component[slot]

    def subset(self, indices) -> "Dataset":
        """Returns the records at the given indices, in that order."""
        indices = np.asarray(indices, dtype=int)
        return Dataset([matrix[indices] for matrix in self.inputs_per_component], self.targets[indices])

    def split(self, train_fraction: float) -> ("Dataset", "Dataset"):
        """Splits the records in a leading train part and a trailing test part, keeping the record order."""
        n_train = int(round(self.n * train_fraction))
        if n_train < 1 or n_train >= self.n:
            raise DimensionError(f"Train fraction {train_fraction} leaves an empty split for {self.n} records")
        return self.subset(np.arange(n_train)), self.subset(np.arange(n_train, self.n))

    def to_frame(self) -> pd.DataFrame:
        columns = {}
        for slot, matrix in enumerate(self.inputs_per_component):
            for feature in range(matrix.shape[1]):
                columns[f"c{slot}_{feature}"] = matrix[:, feature]
        columns[TARGET_COLUMN] = self.targets
        return pd.DataFrame(columns)

    def to_csv(self, path: str):
        try:
            self.to_frame().to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
        except IOError as e:
            raise IOError(f"Could not write dataset to {path}: {e}") from e

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "Dataset":
        if TARGET_COLUMN not in frame.columns:
            raise DimensionError(f"Dataset has no '{TARGET_COLUMN}' column")

        groups = {}
        for column in frame.columns:
            match = _COLUMN_PATTERN.match(str(column))
            if match:
                groups.setdefault(int(match.group(1)), []).append((int(match.group(2)), column))
            elif column != TARGET_COLUMN:
                logger.warning(f"Ignoring column {column}, it does not belong to a component slot")

        if groups and sorted(groups) != list(range(len(groups))):
            raise DimensionError(f"Component slots must be numbered from 0 without gaps, found {sorted(groups)}")

        inputs = []
        for slot in sorted(groups):
            ordered = [column for _, column in sorted(groups[slot])]
            inputs.append(frame[ordered].to_numpy(dtype=float))
        return cls(inputs, frame[TARGET_COLUMN].to_numpy(dtype=float))

    @classmethod
    def from_csv(cls, path: str) -> "Dataset":
        """
        Loads a dataset from a CSV file with a header row. Columns c<j>_<k> hold feature k of component slot j, the
        column target holds the labels.
        """
        try:
            frame = pd.read_csv(path, encoding="utf-8", float_precision="round_trip")
        except IOError as e:
            raise IOError(f"Could not read dataset from {path}: {e}") from e
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ConfigError(f"Dataset {path} is not a valid CSV file: {e}") from e
        return cls.from_frame(frame)
