import json
from typing import List

import numpy as np
import pandas as pd

from compnet.components import AFFINE, CONSTANT_ONE, ONE_HIDDEN_LAYER, TABLE
from compnet.components.affine import Affine
from compnet.components.component import Component
from compnet.components.constant_one import ConstantOne
from compnet.components.one_hidden_layer import OneHiddenLayer
from compnet.components.table import TableComponent
from compnet.core.errors import ConfigError


def component_to_dict(component: Component) -> dict:
    """Declarative form of a component: {id, kind, frozen, slot, params}."""
    params = {name: np.asarray(value).tolist() for name, value in component.parameters().items()}
    if isinstance(component, OneHiddenLayer):
        params["activation"] = component.activation_id
    if isinstance(component, TableComponent) and component.source is not None:
        params = dict(component.source)

    return {
        "id": component.id,
        "kind": component.kind(),
        "frozen": component.frozen,
        "slot": component.slot,
        "params": params,
    }


def component_from_dict(document: dict, base_path: str = None) -> Component:
    try:
        component_id = document["id"]
        kind = document["kind"]
    except KeyError as e:
        raise ConfigError(f"Component definition misses key {e}") from e

    frozen = bool(document.get("frozen", False))
    slot = document.get("slot")
    params = document.get("params", {})

    try:
        if kind == CONSTANT_ONE:
            return ConstantOne(component_id)
        elif kind == AFFINE:
            return Affine(component_id, params["weights"], params.get("bias", 0.0), frozen=frozen, slot=slot)
        elif kind == ONE_HIDDEN_LAYER:
            return OneHiddenLayer(component_id,
                                  inner_weights=params["inner_weights"],
                                  inner_bias=params.get("inner_bias", 0.0),
                                  outer_weight=params.get("outer_weight", 1.0),
                                  outer_bias=params.get("outer_bias", 0.0),
                                  activation=params.get("activation", "logistic"),
                                  frozen=frozen,
                                  slot=slot)
        elif kind == TABLE:
            if "values" in params:
                return TableComponent(component_id, params["values"])
            return TableComponent(component_id,
                                  _read_table_column(params["csv"], params["column"], base_path),
                                  source={"csv": params["csv"], "column": params["column"]})
    except KeyError as e:
        raise ConfigError(f"Component {component_id} of kind {kind} misses parameter {e}") from e

    raise ConfigError(f"Unsupported component kind: {kind}")


def _read_table_column(csv_path: str, column: str, base_path: str = None) -> np.ndarray:
    path = csv_path if base_path is None else f"{base_path}/{csv_path}"
    try:
        frame = pd.read_csv(path, encoding="utf-8", float_precision="round_trip")
    except IOError as e:
        raise IOError(f"Could not read table outputs from {path}: {e}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ConfigError(f"Table outputs {path} are not a valid CSV file: {e}") from e
    if column not in frame.columns:
        raise ConfigError(f"Column {column} not found in {path}")
    return frame[column].to_numpy(dtype=float)


def save_components(components: List[Component], path: str):
    try:
        with open(path, "w", encoding="utf-8") as file:
            json.dump([component_to_dict(component) for component in components], file, indent=2)
    except IOError as e:
        raise IOError(f"Could not write components to {path}: {e}") from e


def load_components(path: str, base_path: str = None) -> List[Component]:
    try:
        with open(path, "r", encoding="utf-8") as file:
            documents = json.load(file)
    except IOError as e:
        raise IOError(f"Could not read components from {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Components {path} are not valid JSON: {e}") from e
    if not isinstance(documents, list):
        raise ConfigError(f"Components {path} must hold a list of component documents")
    return [component_from_dict(document, base_path) for document in documents]
