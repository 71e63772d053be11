import numpy as np

from compnet.activation import IDENTITY
from compnet.activation.activation import Activation


class IdentityActivation(Activation):

    @staticmethod
    def identifier() -> str:
        return IDENTITY

    def forward(self, z):
        return np.asarray(z, dtype=float)

    def derivative(self, z):
        return np.ones_like(np.asarray(z, dtype=float))

    def inverse(self, y):
        return np.asarray(y, dtype=float)

    def inverse_derivative(self, y):
        return np.ones_like(np.asarray(y, dtype=float))

    def inverse_second_derivative(self, y):
        return np.zeros_like(np.asarray(y, dtype=float))

    def increment(self, z0, delta):
        return np.asarray(delta, dtype=float)

    def is_linear(self) -> bool:
        return True
