import numpy as np

from compnet.components import AFFINE
from compnet.components.component import Component
from compnet.core.errors import DimensionError


class Affine(Component):
    """f(x) = w . x + b"""

    def __init__(self, component_id: str, weights, bias: float = 0.0, frozen: bool = False, slot: int = None):
        super().__init__(component_id, frozen=frozen, slot=slot)
        weights = np.asarray(weights, dtype=float).reshape(-1)
        self._init_parameter("weights", weights)
        self._init_parameter("bias", bias, shape=())

    @staticmethod
    def kind() -> str:
        return AFFINE

    def input_dimension(self) -> int:
        return self._parameters["weights"].size

    def evaluate_inputs(self, inputs, n: int) -> np.ndarray:
        self._check_inputs(inputs, n)
        return inputs @ self._parameters["weights"] + float(self._parameters["bias"])

    def parameter_gradients(self, inputs, upstream):
        return {
            "weights": inputs.T @ upstream,
            "bias": np.asarray(np.sum(upstream)),
        }

    def _check_inputs(self, inputs, n: int):
        if inputs is None or inputs.shape != (n, self.input_dimension()):
            shape = None if inputs is None else inputs.shape
            raise DimensionError(f"Component {self.id} expects inputs of shape ({n}, {self.input_dimension()}), "
                                 f"got {shape}")
