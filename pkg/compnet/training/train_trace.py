import json
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

TRACE_COLUMNS = ["epoch", "train_sse", "train_rmse", "val_rmse"]


class EpochRecord:
    def __init__(self, epoch: int, train_sse: float, train_rmse: float, val_rmse: Optional[float] = None):
        self.epoch = epoch
        self.train_sse = train_sse
        self.train_rmse = train_rmse
        self.val_rmse = val_rmse

    def to_dict(self) -> dict:
        return {"epoch": self.epoch, "train_sse": self.train_sse, "train_rmse": self.train_rmse,
                "val_rmse": self.val_rmse}


class TrainTrace:
    """
    What a training run did: the loss before training and after every epoch, the trainable parameters at the start
    and at the end, and the checksum of the frozen parameters before and after. The checksums are equal for every
    correct run.
    """
    initial_sse: float
    records: List[EpochRecord]
    initial_parameters: Dict[str, np.ndarray]
    final_parameters: Dict[str, np.ndarray]
    frozen_checksum_before: str
    frozen_checksum_after: str

    def __init__(self, initial_sse: float, initial_parameters: Dict[str, np.ndarray], frozen_checksum_before: str):
        self.initial_sse = initial_sse
        self.initial_parameters = initial_parameters
        self.frozen_checksum_before = frozen_checksum_before
        self.frozen_checksum_after = None
        self.final_parameters = {}
        self.records = []
        self.snapshot_reports = []

    def add(self, record: EpochRecord):
        self.records.append(record)

    def finish(self, final_parameters: Dict[str, np.ndarray], frozen_checksum_after: str):
        self.final_parameters = final_parameters
        self.frozen_checksum_after = frozen_checksum_after

    def frozen_unchanged(self) -> bool:
        return self.frozen_checksum_before == self.frozen_checksum_after

    def sse_values(self) -> List[float]:
        return [record.train_sse for record in self.records]

    def final_sse(self) -> float:
        return self.records[-1].train_sse if self.records else self.initial_sse

    def __len__(self):
        return len(self.records)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([record.to_dict() for record in self.records], columns=TRACE_COLUMNS)

    def to_csv(self, path: str = None) -> Optional[str]:
        """Writes the epoch records to the path, or returns them as CSV text when no path is given."""
        if path is None:
            return self.to_frame().to_csv(index=False, float_format="%.17g")
        try:
            self.to_frame().to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
        except IOError as e:
            raise IOError(f"Could not write train trace to {path}: {e}") from e

    def to_dict(self) -> dict:
        return {
            "initial_sse": self.initial_sse,
            "epochs": [record.to_dict() for record in self.records],
            "initial_parameters": {key: np.asarray(value).tolist() for key, value in self.initial_parameters.items()},
            "final_parameters": {key: np.asarray(value).tolist() for key, value in self.final_parameters.items()},
            "frozen_checksum_before": self.frozen_checksum_before,
            "frozen_checksum_after": self.frozen_checksum_after,
            "snapshot_reports": [{"epoch": epoch, **report.to_dict()} for epoch, report in self.snapshot_reports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
