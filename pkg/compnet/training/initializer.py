import math

import numpy as np

from compnet.components.component import Component
from compnet.core.loss import total_loss
from compnet.growth.composite_graph import CompositeGraph


def _fan_in(component: Component, name: str) -> int:
    if name in ("inner_weights", "inner_bias", "weights", "bias"):
        return max(1, component.input_dimension() or 1)
    return 1


def reinitialized(component: Component, rng: np.random.Generator) -> Component:
    """
    A trainable copy of the component with every parameter drawn uniformly from [-r, r], r = 1 / sqrt(fan-in). This
    is what happens to a component whose original weights are deleted. Components without parameters come back as
    they are.
    """
    if component.parameter_count() == 0:
        return component
    fresh = component.thawed()
    for name, value in component.parameters().items():
        bound = 1.0 / math.sqrt(_fan_in(component, name))
        fresh.set_parameter(name, rng.uniform(-bound, bound, size=np.shape(value)))
    return fresh


def initialize_glue(graph: CompositeGraph, rng: np.random.Generator, data=None, at_best_child: bool = False):
    """
    Sets the weights of every trainable gluing node. By default they are drawn uniformly from [-r, r] with
    r = 1 / sqrt(number of children + 1). With at_best_child the weights become the unit vector of the child with the
    lowest loss, the constant included, which needs the data.
    """
    values = graph.evaluate_all(data) if at_best_child else None
    for node in graph.glue_nodes.values():
        if node.frozen:
            continue
        if at_best_child:
            losses = [total_loss(np.ones(data.n), data.targets)]
            losses += [total_loss(values[child], data.targets) for child in node.children]
            theta = np.zeros(len(node.theta))
            theta[int(np.argmin(losses))] = 1.0
        else:
            bound = 1.0 / math.sqrt(len(node.theta))
            theta = rng.uniform(-bound, bound, size=len(node.theta))
        node.set_theta(theta)
