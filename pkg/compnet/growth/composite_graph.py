import copy
import hashlib
import logging
from typing import Dict, List, Optional

import numpy as np

from compnet.components.component import Component
from compnet.core.errors import GraphError
from compnet.core.output_vector import OutputVector
from compnet.growth.glue_node import GlueNode

logger = logging.getLogger(__name__)

COMPONENT_PREFIX = "component"
GLUE_PREFIX = "glue"


class CompositeGraph:
    """
    A rooted directed acyclic graph of components and gluing nodes. The leaves are components, every gluing node
    combines the outputs of its children and the root is the output of the network. Node ids are unique over
    components and gluing nodes together.
    """

    def __init__(self, components: List[Component], glue_nodes: List[GlueNode], root: str):
        self.components: Dict[str, Component] = {}
        self.glue_nodes: Dict[str, GlueNode] = {}
        for component in components:
            if component.id in self.components:
                raise GraphError(f"Duplicate node id {component.id}")
            self.components[component.id] = component
        for node in glue_nodes:
            if node.id in self.components or node.id in self.glue_nodes:
                raise GraphError(f"Duplicate node id {node.id}")
            self.glue_nodes[node.id] = node
        if root not in self.components and root not in self.glue_nodes:
            raise GraphError(f"Root {root} is not a node of the graph")
        self.root = root
        self._order = self._topological_order()

    def __repr__(self):
        return (f"CompositeGraph(root={self.root}, components={list(self.components)}, "
                f"glue={list(self.glue_nodes)})")

    def node_ids(self) -> List[str]:
        return list(self.components) + list(self.glue_nodes)

    def has_node(self, node_id: str) -> bool:
        return node_id in self.components or node_id in self.glue_nodes

    def root_node(self):
        return self.glue_nodes.get(self.root) or self.components[self.root]

    def order(self) -> List[str]:
        """Node ids reachable from the root, every node after its children."""
        return list(self._order)

    def _topological_order(self) -> List[str]:
        order = []
        state = {}
        # Iterative depth first search, state 1 = on the stack, 2 = done
        stack = [(self.root, False)]
        while stack:
            node_id, expanded = stack.pop()
            if expanded:
                state[node_id] = 2
                order.append(node_id)
                continue
            if state.get(node_id) == 2:
                continue
            if state.get(node_id) == 1:
                raise GraphError(f"Cycle detected at node {node_id}")
            if node_id in self.components:
                state[node_id] = 2
                order.append(node_id)
                continue
            if node_id not in self.glue_nodes:
                raise GraphError(f"Reference to unknown node {node_id}")
            state[node_id] = 1
            stack.append((node_id, True))
            for child in reversed(self.glue_nodes[node_id].children):
                if state.get(child) == 1:
                    raise GraphError(f"Cycle detected: {node_id} refers to {child}")
                if state.get(child) != 2:
                    stack.append((child, False))
        return order

    def evaluate_all(self, data, indices=None) -> Dict[str, np.ndarray]:
        """Values of every node reachable from the root for the given records, keyed by node id."""
        values = {}
        for node_id in self._order:
            if node_id in self.components:
                values[node_id] = self.components[node_id].evaluate_rows(data, indices)
            else:
                node = self.glue_nodes[node_id]
                values[node_id] = node.evaluate(self.child_matrix(node, values))
        return values

    @staticmethod
    def child_matrix(node: GlueNode, values: Dict[str, np.ndarray]) -> np.ndarray:
        if not node.children:
            return np.zeros((0, 0))
        return np.column_stack([values[child] for child in node.children])

    def output(self, data, indices=None) -> np.ndarray:
        return self.evaluate_all(data, indices)[self.root]

    def depth(self) -> int:
        """Number of gluing nodes on the longest path from the root to a leaf."""
        depths = {}
        for node_id in self._order:
            if node_id in self.components:
                depths[node_id] = 0
            else:
                children = self.glue_nodes[node_id].children
                depths[node_id] = 1 + max((depths[child] for child in children), default=0)
        return depths[self.root]

    def relabel(self, mapping: Dict[str, str]) -> "CompositeGraph":
        """Returns a copy with node ids renamed, ids missing from the mapping stay as they are."""
        components = []
        for component in self.components.values():
            renamed = copy.deepcopy(component)
            renamed.id = mapping.get(component.id, component.id)
            components.append(renamed)
        glue_nodes = [node.relabeled(mapping) for node in self.glue_nodes.values()]
        return CompositeGraph(components, glue_nodes, mapping.get(self.root, self.root))

    def trainable_parameters(self) -> Dict[str, np.ndarray]:
        """
        Every trainable parameter of the reachable nodes, keyed component:<id>:<name> or glue:<id>:theta. Frozen
        components and frozen gluing nodes contribute nothing.
        """
        parameters = {}
        for node_id in self._order:
            if node_id in self.components:
                component = self.components[node_id]
                if component.frozen:
                    continue
                for name, value in component.parameters().items():
                    parameters[f"{COMPONENT_PREFIX}:{node_id}:{name}"] = value
            else:
                node = self.glue_nodes[node_id]
                if not node.frozen:
                    parameters[f"{GLUE_PREFIX}:{node_id}:theta"] = node.theta
        return parameters

    def trainable_parameter_count(self) -> int:
        return int(sum(value.size for value in self.trainable_parameters().values()))

    def set_parameter(self, key: str, value):
        prefix, node_id, name = key.split(":", 2)
        if prefix == COMPONENT_PREFIX and node_id in self.components:
            self.components[node_id].set_parameter(name, value)
        elif prefix == GLUE_PREFIX and node_id in self.glue_nodes and name == "theta":
            self.glue_nodes[node_id].set_theta(value)
        else:
            raise GraphError(f"Unknown parameter {key}")

    def frozen_checksum(self) -> str:
        """Checksum over the parameters of every frozen component and frozen gluing node."""
        digest = hashlib.sha256()
        for node_id in sorted(self.components):
            component = self.components[node_id]
            if component.frozen:
                digest.update(node_id.encode("utf-8"))
                digest.update(component.checksum().encode("utf-8"))
        for node_id in sorted(self.glue_nodes):
            node = self.glue_nodes[node_id]
            if node.frozen:
                node.checksum_update(digest)
        return digest.hexdigest()

    def frozen(self) -> "CompositeGraph":
        """A copy in which every component and gluing node is frozen, the form in which a graph is reused."""
        return CompositeGraph([component.freeze() for component in self.components.values()],
                              [node.freeze() for node in self.glue_nodes.values()],
                              self.root)

    def copy(self) -> "CompositeGraph":
        return copy.deepcopy(self)

    def next_glue_id(self) -> str:
        index = len(self.glue_nodes) + 1
        while self.has_node(f"glue{index}"):
            index += 1
        return f"glue{index}"

    def with_node(self, node: GlueNode, component: Optional[Component] = None,
                  replaces: Optional[str] = None) -> "CompositeGraph":
        """
        Returns a graph with the gluing node added as the new root. A node with the id in replaces is dropped first,
        the component is added when it is not a node yet.
        """
        components = list(self.components.values())
        if component is not None and component.id not in self.components:
            components.append(component)
        glue_nodes = [existing for existing in self.glue_nodes.values() if existing.id != replaces]
        glue_nodes.append(node)
        return CompositeGraph(components, glue_nodes, node.id)


def evaluate_graph(graph: CompositeGraph, data) -> OutputVector:
    """Evaluates the graph for every record of the dataset, children before parents."""
    return OutputVector(graph.output(data))


def single_component_graph(component: Component) -> CompositeGraph:
    return CompositeGraph([component], [], component.id)
