from abc import ABC, abstractmethod

import numpy as np


class Activation(ABC):
    """
    Abstract class for an activation function sigma together with its local inverse tau. The inverse and its
    derivatives are evaluated on values of sigma, the forward function and its derivative on pre-activations.
    """

    @staticmethod
    @abstractmethod
    def identifier() -> str:
        pass

    @abstractmethod
    def forward(self, z: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def derivative(self, z: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def inverse(self, y: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def inverse_derivative(self, y: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def inverse_second_derivative(self, y: np.ndarray) -> np.ndarray:
        pass

    def increment(self, z0: float, delta: np.ndarray) -> np.ndarray:
        """
        sigma(z0 + delta) - sigma(z0). Implementations override this when the plain difference loses precision for
        small delta, which is exactly where the scaled construction operates.
        """
        delta = np.asarray(delta, dtype=float)
        return self.forward(z0 + delta) - self.forward(np.asarray(z0, dtype=float))

    def is_linear(self) -> bool:
        return False

    def __repr__(self):
        return f"{type(self).__name__}()"
