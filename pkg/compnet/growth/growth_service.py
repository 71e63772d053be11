import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from compnet.activation import IDENTITY
from compnet.components.component import Component
from compnet.core.assumptions import check_assumptions
from compnet.core.errors import AssumptionViolation, ConfigError, GraphError, InvalidProfileError, \
    NoImprovementError, ScaledPlanError
from compnet.core.loss import total_loss
from compnet.core.output_vector import OutputVector
from compnet.growth.composite_graph import CompositeGraph, single_component_graph
from compnet.growth.glue_node import GlueNode
from compnet.growth.growth_trace import GrowthStage, GrowthTrace
from compnet.scaled.activation_profile import profile_for
from compnet.scaled.scaled_plan import ScaledPlan
from compnet.scaled.scaled_service import budget_for, build_scaled_plan
from compnet.stacking.stack_solution import StackSolution
from compnet.stacking.stacker import stack
from compnet.tracker.run_tracker import global_data

logger = logging.getLogger(__name__)

WIDTH = "width"
DEPTH = "depth"
LAYER = "layer"
START = "start"


class WidthExtension:
    """The pair (alpha0, alpha1) and the bias that combine the previous network and the new component."""

    def __init__(self, alpha0: float, alpha1: float, bias: float = 0.0):
        self.alpha0 = alpha0
        self.alpha1 = alpha1
        self.bias = bias

    @classmethod
    def from_solution(cls, solution: StackSolution) -> "WidthExtension":
        return cls(alpha0=float(solution.theta[1]), alpha1=float(solution.theta[2]), bias=float(solution.theta[0]))

    def combine(self, previous, new) -> np.ndarray:
        return self.bias + self.alpha0 * np.asarray(previous, dtype=float) + self.alpha1 * np.asarray(new, dtype=float)

    def __repr__(self):
        return f"WidthExtension(alpha0={self.alpha0:.6g}, alpha1={self.alpha1:.6g}, bias={self.bias:.6g})"


class Extension:
    """Outcome of one growth step: the new graph, the linear stack it is built from and the loss it reaches."""

    def __init__(self, graph: CompositeGraph, solution: StackSolution, loss: float, component_id: str,
                 plan: Optional[ScaledPlan] = None, fallback: bool = False):
        self.graph = graph
        self.solution = solution
        # Set for the pair steps of extend, the first layer stacks more than two outputs
        self.width = None
        self.loss = loss
        self.component_id = component_id
        self.plan = plan
        self.fallback = fallback

    @property
    def wrapped(self) -> bool:
        return self.plan is not None and not self.fallback


def _check_pair(outputs, targets, n: int):
    report = check_assumptions(outputs, targets, n)
    if not report.a2_no_perfect_component:
        logger.warning(f"Outputs {report.perfect_components()} fit the targets perfectly, no strict improvement "
                       f"is possible")
    return report


def _glued(graph_for, solution: StackSolution, outputs, data, node_id: str, children: List[str],
           activation: str) -> (CompositeGraph, float, Optional[ScaledPlan], bool):
    """
    Builds the gluing node for a solved stack. A non-linear activation goes through the scaled construction; when
    that construction has no budget, or does not beat the best unit vector, the node passes the best output through.
    """
    if activation == IDENTITY:
        graph = graph_for(GlueNode(node_id, children, solution.theta, IDENTITY))
        return graph, total_loss(graph.output(data), data.targets), None, False

    try:
        budget = budget_for(solution, outputs, data.targets)
        plan = build_scaled_plan(solution, outputs, profile_for(activation), budget.epsilon)
        graph = graph_for(GlueNode(node_id, children, plan.l0_theta, activation, z0=plan.z0,
                                   out_scale=plan.l1_scale, out_offset=0.0))
        loss = total_loss(graph.output(data), data.targets)
        if loss < solution.best_unit_loss:
            return graph, loss, plan, False
        logger.warning(f"Scaled node {node_id} reaches {loss:.6g}, not below the best output {solution.best_unit_loss:.6g}")
    except (NoImprovementError, ScaledPlanError, InvalidProfileError) as e:
        logger.info(f"Node {node_id} passes its best output through: {e}")

    unit = np.zeros(len(solution.theta))
    unit[solution.best_unit_index] = 1.0
    graph = graph_for(GlueNode(node_id, children, unit, IDENTITY))
    return graph, total_loss(graph.output(data), data.targets), None, True


def extend(g_prev: CompositeGraph, f_new: Component, data, activation: str = IDENTITY,
           nest: bool = True) -> Extension:
    """
    Combines the previous network and a new component with the optimal stack over {1, g_prev, f_new}. With
    nest = False and an identity activation the combination is folded into a linear root node, otherwise a new root
    node is placed on top of the previous one.

    :raises AssumptionViolation: when f_new is collinear with g_prev and the constant
    """
    if g_prev.has_node(f_new.id) and f_new.id not in g_prev.components:
        raise GraphError(f"Component id {f_new.id} is already used by a gluing node")
    existing = g_prev.components.get(f_new.id)
    if existing is not None and existing is not f_new and (
            existing.kind() != f_new.kind() or existing.slot != f_new.slot or existing.checksum() != f_new.checksum()):
        raise GraphError(f"Component id {f_new.id} is already used by a different component")

    n = data.n
    previous = g_prev.output(data)
    new = f_new.evaluate_rows(data)
    outputs = [OutputVector.ones(n), OutputVector(previous), OutputVector(new)]
    _check_pair(outputs, data.targets, n)
    solution = stack(outputs, data.targets)
    width = WidthExtension.from_solution(solution)
    logger.debug(f"Extending with {f_new.id}: {width}")

    component = None if g_prev.has_node(f_new.id) else f_new
    root = g_prev.root_node()
    if not nest and activation == IDENTITY and isinstance(root, GlueNode) and root.is_linear() and not root.frozen:
        scale = root.out_scale
        coefficients = dict(zip(root.children, width.alpha0 * scale * root.theta[1:]))
        coefficients[f_new.id] = coefficients.get(f_new.id, 0.0) + width.alpha1
        bias = width.bias + width.alpha0 * (scale * root.theta[0] + root.out_offset)
        children = list(coefficients)
        node = GlueNode(root.id, children, [bias] + [coefficients[child] for child in children], IDENTITY)
        graph = g_prev.with_node(node, component, replaces=root.id)
        extension = Extension(graph, solution, total_loss(graph.output(data), data.targets), f_new.id)
    else:
        graph, loss, plan, fallback = _glued(lambda node: g_prev.with_node(node, component), solution, outputs,
                                             data, g_prev.next_glue_id(), [g_prev.root, f_new.id], activation)
        extension = Extension(graph, solution, loss, f_new.id, plan, fallback)
    extension.width = width
    return extension


def add_width(g_prev: CompositeGraph, f_new: Component, data, activation: str = IDENTITY) -> (CompositeGraph,
                                                                                              StackSolution):
    """
    Adds a component next to the previous network: g = bias + alpha0 * g_prev + alpha1 * f_new, solved in closed
    form. The new loss is never above the previous one.
    """
    extension = extend(g_prev, f_new, data, activation, nest=False)
    return extension.graph, extension.solution


def add_depth(g_prev: CompositeGraph, f_new: Component, data, activation: str = IDENTITY) -> (CompositeGraph,
                                                                                              StackSolution):
    """Adds a gluing layer on top of the previous network and the new component, the depth grows by one."""
    extension = extend(g_prev, f_new, data, activation, nest=True)
    return extension.graph, extension.solution


def stack_layer(components: List[Component], data, activation: str = IDENTITY, node_id: str = "glue1") -> Extension:
    """The first layer: one gluing node over all components."""
    outputs = [OutputVector.ones(data.n)] + [OutputVector(component.evaluate_rows(data)) for component in components]
    report = check_assumptions(outputs, data.targets, data.n)
    if not report.a5_width_bound:
        logger.warning(f"{report.k} components for {report.n} records violate the width bound")
    if not report.a2_no_perfect_component:
        logger.warning(f"Outputs {report.perfect_components()} fit the targets perfectly")
    solution = stack(outputs, data.targets)

    graph, loss, plan, fallback = _glued(lambda node: CompositeGraph(components, [node], node.id), solution, outputs,
                                         data, node_id, [component.id for component in components], activation)
    return Extension(graph, solution, loss, ",".join(component.id for component in components), plan, fallback)


def _passthrough(graph: CompositeGraph, data) -> Extension:
    """A gluing layer that copies the previous network, used when no component can be added."""
    node = GlueNode(graph.next_glue_id(), [graph.root], [0.0, 1.0], IDENTITY)
    extended = graph.with_node(node)
    loss = total_loss(extended.output(data), data.targets)
    return Extension(extended, None, loss, graph.root, fallback=True)


def _component_losses(components: List[Component], data) -> (dict, float):
    losses = {component.id: total_loss(component.evaluate_rows(data), data.targets) for component in components}
    constant_loss = total_loss(np.ones(data.n), data.targets)
    return losses, min(min(losses.values()), constant_loss)


def _record(trace: GrowthTrace, extension: Extension, operation: str, previous_loss: float, observe: bool):
    stage = GrowthStage(index=len(trace.stages) + 1,
                        operation=operation,
                        component_id=extension.component_id,
                        loss=extension.loss,
                        previous_loss=previous_loss,
                        depth=extension.graph.depth(),
                        wrapped=extension.wrapped,
                        fallback=extension.fallback)
    trace.add(stage)
    logger.info(f"Stage {stage.index} ({operation}, {stage.component_id}): loss {stage.loss:.6g}")
    if observe:
        global_data["observer"].add_stage(stage.component_id, stage.loss)


def grow_greedy(components: List[Component], h: int, data, activation: str = IDENTITY, workers: int = 1,
                observe: bool = False) -> (CompositeGraph, GrowthTrace):
    """
    Builds an h layer composite network. The first layer stacks all components, every next layer adds depth with
    the component that gives the lowest loss, components may be used again. Ties go to the lowest component id. A
    layer in which every component is collinear with the network passes the previous network through.

    :param components: the components, all evaluable on the data
    :param h: number of gluing layers, at least 1
    :param data: the training data
    :param activation: activation of every gluing layer
    :param workers: number of threads evaluating the candidates of a stage
    :param observe: record the stage losses in the run observer
    :return: the graph and the trace of stage losses
    """
    if h < 1:
        raise ConfigError(f"Number of layers must be at least 1, got {h}")
    if not components:
        raise ConfigError("At least one component is required")

    component_losses, baseline = _component_losses(components, data)
    trace = GrowthTrace(baseline, component_losses)

    extension = stack_layer(components, data, activation)
    _record(trace, extension, LAYER, baseline, observe)
    graph = extension.graph

    for stage in range(2, h + 1):
        def attempt(candidate: Component) -> Optional[Extension]:
            try:
                return extend(graph, candidate, data, activation, nest=True)
            except AssumptionViolation as e:
                logger.debug(f"Stage {stage} skips component {candidate.id}: {e}")
                return None

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                attempts = list(executor.map(attempt, components))
        else:
            attempts = [attempt(candidate) for candidate in components]

        candidates = [attempt for attempt in attempts if attempt is not None]
        if candidates:
            best = min(candidates, key=lambda candidate: (candidate.loss, candidate.component_id))
        else:
            logger.warning(f"Every component is collinear with the network at stage {stage}, passing it through")
            best = _passthrough(graph, data)
        _record(trace, best, DEPTH, trace.final_loss(), observe)
        graph = best.graph

    return graph, trace


def grow_width(components: List[Component], data, activation: str = IDENTITY,
               observe: bool = False) -> (CompositeGraph, GrowthTrace):
    """
    Starts from the first component and adds the others one at a time with add_width. Every step solves only the
    pair (alpha0, alpha1) and a bias, so the loss never goes up.
    """
    if not components:
        raise ConfigError("At least one component is required")

    component_losses, baseline = _component_losses(components, data)
    trace = GrowthTrace(baseline, component_losses)
    first = components[0]
    graph = single_component_graph(first)
    trace.add(GrowthStage(1, START, first.id, component_losses[first.id], None, 0))

    for component in components[1:]:
        extension = extend(graph, component, data, activation, nest=False)
        _record(trace, extension, WIDTH, trace.final_loss(), observe)
        graph = extension.graph

    return graph, trace
