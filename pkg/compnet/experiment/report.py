import json
from typing import List, Optional

import pandas as pd

from compnet.core.errors import ConfigError
from compnet.core.loss import rmse

REPORT_COLUMNS = ["part", "model", "gluing", "flags", "train_rmse", "test_rmse", "trainable_params", "train_sse",
                  "test_sse", "n_train", "n_test", "best", "parents", "notes"]

CSV = "csv"
JSON = "json"


class ReportRow:
    """
    One model of the experiment grid. The errors are kept as sums of squares, the RMSE columns are derived from
    them. Parents are the keys of the rows this model was built from.
    """

    def __init__(self, part: int, model: str, gluing: str, flags: str, train_sse: float, test_sse: float,
                 n_train: int, n_test: int, trainable_params: int, parents: List[str] = None, notes: str = "",
                 best: bool = False):
        self.part = part
        self.model = model
        self.gluing = gluing
        self.flags = flags
        self.train_sse = train_sse
        self.test_sse = test_sse
        self.n_train = n_train
        self.n_test = n_test
        self.trainable_params = trainable_params
        self.parents = list(parents) if parents else []
        self.notes = notes
        self.best = best

    @property
    def key(self) -> str:
        return f"{self.part}:{self.model}:{self.gluing}"

    @property
    def train_rmse(self) -> float:
        return rmse(self.train_sse, self.n_train)

    @property
    def test_rmse(self) -> float:
        return rmse(self.test_sse, self.n_test)

    def to_dict(self) -> dict:
        return {
            "part": self.part,
            "model": self.model,
            "gluing": self.gluing,
            "flags": self.flags,
            "train_rmse": self.train_rmse,
            "test_rmse": self.test_rmse,
            "trainable_params": self.trainable_params,
            "train_sse": self.train_sse,
            "test_sse": self.test_sse,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "best": self.best,
            "parents": ";".join(self.parents),
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, document: dict) -> "ReportRow":
        parents = document.get("parents") or ""
        return cls(part=int(document["part"]),
                   model=str(document["model"]),
                   gluing=str(document["gluing"]),
                   flags=str(document["flags"]),
                   train_sse=float(document["train_sse"]),
                   test_sse=float(document["test_sse"]),
                   n_train=int(document["n_train"]),
                   n_test=int(document["n_test"]),
                   trainable_params=int(document["trainable_params"]),
                   parents=[parent for parent in str(parents).split(";") if parent],
                   notes=str(document.get("notes") or ""),
                   best=_as_bool(document.get("best", False)))

    def __eq__(self, other):
        if not isinstance(other, ReportRow):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"ReportRow({self.key}, train_rmse={self.train_rmse:.6g}, test_rmse={self.test_rmse:.6g})"


def _as_bool(value) -> bool:
    if isinstance(value, str):
        return value.strip().lower() == "true"
    return bool(value)


class ExperimentReport:
    rows: List[ReportRow]

    def __init__(self, rows: List[ReportRow] = None):
        self.rows = list(rows) if rows else []

    def add(self, row: ReportRow):
        self.rows.append(row)

    def part(self, part: int) -> List[ReportRow]:
        return [row for row in self.rows if row.part == part]

    def parts(self) -> List[int]:
        return sorted({row.part for row in self.rows})

    def row(self, key: str) -> Optional[ReportRow]:
        return next((row for row in self.rows if row.key == key), None)

    def best_of_part(self, part: int) -> Optional[ReportRow]:
        """Lowest test RMSE, the earlier row on ties."""
        rows = self.part(part)
        if not rows:
            return None
        return min(enumerate(rows), key=lambda item: (item[1].test_rmse, item[0]))[1]

    def mark_best(self):
        for row in self.rows:
            row.best = False
        for part in self.parts():
            self.best_of_part(part).best = True

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.to_dict() for row in self.rows], columns=REPORT_COLUMNS)

    def to_dict(self) -> dict:
        return {"columns": list(REPORT_COLUMNS), "rows": [row.to_dict() for row in self.rows]}

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, ExperimentReport):
            return NotImplemented
        return self.rows == other.rows


def emit_report(report: ExperimentReport, path: str, report_format: str = CSV):
    """
    Writes the report with a fixed column order. Floats are written with 17 significant digits, so the file holds
    the exact values and identical reports give identical bytes.
    """
    try:
        if report_format == CSV:
            report.to_frame().to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
        elif report_format == JSON:
            with open(path, "w", encoding="utf-8") as file:
                json.dump(report.to_dict(), file, indent=2)
        else:
            raise ConfigError(f"Unsupported report format: {report_format}")
    except IOError as e:
        raise IOError(f"Could not write report to {path}: {e}") from e


def parse_report(path: str, report_format: str = CSV) -> ExperimentReport:
    try:
        if report_format == CSV:
            frame = pd.read_csv(path, encoding="utf-8", keep_default_na=False, float_precision="round_trip",
                                dtype={"model": str, "gluing": str, "flags": str, "parents": str, "notes": str})
            documents = frame.to_dict(orient="records")
        elif report_format == JSON:
            with open(path, "r", encoding="utf-8") as file:
                documents = json.load(file)["rows"]
        else:
            raise ConfigError(f"Unsupported report format: {report_format}")
    except IOError as e:
        raise IOError(f"Could not read report from {path}: {e}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError, json.JSONDecodeError, KeyError) as e:
        raise ConfigError(f"Report {path} could not be parsed: {e}") from e
    return ExperimentReport([ReportRow.from_dict(document) for document in documents])

