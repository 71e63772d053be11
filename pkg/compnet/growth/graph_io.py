import json

from compnet.components.component_io import component_from_dict, component_to_dict
from compnet.core.errors import ConfigError
from compnet.growth import GLUE
from compnet.growth.composite_graph import CompositeGraph
from compnet.growth.glue_node import GlueNode


def glue_to_dict(node: GlueNode) -> dict:
    return {
        "type": GLUE,
        "id": node.id,
        "children": list(node.children),
        "theta": [float(value) for value in node.theta],
        "activation": node.activation_id,
        "z0": node.z0,
        "out_scale": node.out_scale,
        "out_offset": node.out_offset,
        "frozen": node.frozen,
    }


def glue_from_dict(document: dict) -> GlueNode:
    try:
        return GlueNode(document["id"],
                        document["children"],
                        document["theta"],
                        activation=document.get("activation", "identity"),
                        z0=document.get("z0", 0.0),
                        out_scale=document.get("out_scale", 1.0),
                        out_offset=document.get("out_offset"),
                        frozen=bool(document.get("frozen", False)))
    except KeyError as e:
        raise ConfigError(f"Glue node definition misses key {e}") from e


def graph_to_dict(graph: CompositeGraph) -> dict:
    return {
        "root": graph.root,
        "components": [component_to_dict(component) for component in graph.components.values()],
        "glue": [glue_to_dict(node) for node in graph.glue_nodes.values()],
    }


def graph_from_dict(document: dict, base_path: str = None) -> CompositeGraph:
    if "root" not in document:
        raise ConfigError("Graph definition misses key 'root'")
    components = [component_from_dict(item, base_path) for item in document.get("components", [])]
    glue_nodes = [glue_from_dict(item) for item in document.get("glue", [])]
    return CompositeGraph(components, glue_nodes, document["root"])


def save_graph(graph: CompositeGraph, path: str):
    try:
        with open(path, "w", encoding="utf-8") as file:
            json.dump(graph_to_dict(graph), file, indent=2)
    except IOError as e:
        raise IOError(f"Could not write graph to {path}: {e}") from e


def load_graph(path: str, base_path: str = None) -> CompositeGraph:
    try:
        with open(path, "r", encoding="utf-8") as file:
            document = json.load(file)
    except IOError as e:
        raise IOError(f"Could not read graph from {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Graph {path} is not valid JSON: {e}") from e
    return graph_from_dict(document, base_path)
