from compnet.components.component import Component
from compnet.components.table import TableComponent
from compnet.core.assumptions import AssumptionReport, check_assumptions
from compnet.core.output_vector import OutputVector
from compnet.growth.composite_graph import CompositeGraph


def snapshot_component(component: Component, data, component_id: str = None) -> TableComponent:
    """
    The current state of a component seen as a pre-trained component: a frozen table of its outputs on the data.
    """
    return TableComponent(component_id or component.id, component.evaluate_rows(data))


def check_snapshot_assumptions(graph: CompositeGraph, data) -> AssumptionReport:
    """
    Checks linear independence and the absence of perfect components on the current outputs of every component in
    the graph, which is what the guarantees for frozen components need at this point of training.
    """
    outputs = [OutputVector.ones(data.n)]
    for node_id in graph.order():
        if node_id in graph.components:
            outputs.append(OutputVector(snapshot_component(graph.components[node_id], data).values()))
    return check_assumptions(outputs, data.targets, data.n)
