import numpy as np

from compnet.components import CONSTANT_ONE
from compnet.components.component import Component


class ConstantOne(Component):
    """The constant component f0 = 1. Its coefficient in a gluing layer is the bias."""

    def __init__(self, component_id: str = "f0"):
        super().__init__(component_id, frozen=True)

    @staticmethod
    def kind() -> str:
        return CONSTANT_ONE

    def evaluate_inputs(self, inputs, n: int) -> np.ndarray:
        return np.ones(n)

    def parameter_gradients(self, inputs, upstream):
        return {}

    def thawed(self):
        return self
