import numpy as np

from compnet.activation import LOGISTIC
from compnet.activation.activation_factory import activation_for
from compnet.components import ONE_HIDDEN_LAYER
from compnet.components.component import Component
from compnet.core.errors import DimensionError


class OneHiddenLayer(Component):
    """
    The typical one hidden layer network f(x) = w11 * sigma(w0 . x + w00) + w10. The outer weight and bias map the
    hidden unit to the output, the inner weights and bias map the input to the hidden unit.
    """

    def __init__(self, component_id: str, inner_weights, inner_bias: float = 0.0, outer_weight: float = 1.0,
                 outer_bias: float = 0.0, activation: str = LOGISTIC, frozen: bool = False, slot: int = None):
        super().__init__(component_id, frozen=frozen, slot=slot)
        self.activation_id = activation
        self.activation = activation_for(activation)
        self._init_parameter("inner_weights", np.asarray(inner_weights, dtype=float).reshape(-1))
        self._init_parameter("inner_bias", inner_bias, shape=())
        self._init_parameter("outer_weight", outer_weight, shape=())
        self._init_parameter("outer_bias", outer_bias, shape=())

    @staticmethod
    def kind() -> str:
        return ONE_HIDDEN_LAYER

    def input_dimension(self) -> int:
        return self._parameters["inner_weights"].size

    def hidden(self, inputs) -> np.ndarray:
        return inputs @ self._parameters["inner_weights"] + float(self._parameters["inner_bias"])

    def evaluate_inputs(self, inputs, n: int) -> np.ndarray:
        if inputs is None or inputs.shape != (n, self.input_dimension()):
            shape = None if inputs is None else inputs.shape
            raise DimensionError(f"Component {self.id} expects inputs of shape ({n}, {self.input_dimension()}), "
                                 f"got {shape}")
        hidden = self.activation.forward(self.hidden(inputs))
        return float(self._parameters["outer_weight"]) * hidden + float(self._parameters["outer_bias"])

    def parameter_gradients(self, inputs, upstream):
        pre_activation = self.hidden(inputs)
        hidden = self.activation.forward(pre_activation)
        d_hidden = upstream * float(self._parameters["outer_weight"]) * self.activation.derivative(pre_activation)
        return {
            "inner_weights": inputs.T @ d_hidden,
            "inner_bias": np.asarray(np.sum(d_hidden)),
            "outer_weight": np.asarray(np.sum(upstream * hidden)),
            "outer_bias": np.asarray(np.sum(upstream)),
        }
