from compnet.components.component import Component
from compnet.core.dataset import Dataset
from compnet.core.output_vector import OutputVector


def evaluate_component(component: Component, data: Dataset, slot: int = None) -> OutputVector:
    """
    Evaluates the component at every record of the dataset.
    :param component: the component to evaluate
    :param data: dataset providing the inputs
    :param slot: which inputs of the dataset to use, defaults to the slot of the component
    :return: the output vector of length N
    """
    return OutputVector(component.evaluate_rows(data, slot=slot))


def freeze_component(component: Component) -> Component:
    return component.freeze()
