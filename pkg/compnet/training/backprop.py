from typing import Dict

import numpy as np

from compnet.growth.composite_graph import COMPONENT_PREFIX, GLUE_PREFIX, CompositeGraph


def backprop_gradients(graph: CompositeGraph, data, batch=None) -> Dict[str, np.ndarray]:
    """
    Reverse-mode gradients of the batch SSE, sum over the batch of (g(x) - y)^2, with respect to every trainable
    parameter of the graph. The keys are those of CompositeGraph.trainable_parameters(); frozen parameters get no
    entry, a graph without trainable parameters gives an empty map.

    :param graph: the composite network
    :param data: the dataset
    :param batch: indices of the records in the batch, all records when None
    :return: gradient per trainable parameter
    """
    indices = None if batch is None else np.asarray(batch, dtype=int)
    values = graph.evaluate_all(data, indices)
    targets = data.targets if indices is None else data.targets[indices]

    upstream = {graph.root: 2.0 * (values[graph.root] - targets)}
    gradients = {}
    for node_id in reversed(graph.order()):
        if node_id not in upstream:
            continue
        delta = upstream[node_id]

        if node_id in graph.components:
            component = graph.components[node_id]
            if component.frozen:
                continue
            inputs = component.inputs_from(data, indices)
            for name, gradient in component.parameter_gradients(inputs, delta).items():
                gradients[f"{COMPONENT_PREFIX}:{node_id}:{name}"] = np.asarray(gradient, dtype=float)
            continue

        node = graph.glue_nodes[node_id]
        children = CompositeGraph.child_matrix(node, values)
        d_pre = delta * node.local_derivative(children)
        if not node.frozen:
            gradients[f"{GLUE_PREFIX}:{node_id}:theta"] = np.concatenate(([np.sum(d_pre)], children.T @ d_pre))
        for position, child in enumerate(node.children):
            contribution = d_pre * node.theta[position + 1]
            upstream[child] = upstream[child] + contribution if child in upstream else contribution

    return gradients
