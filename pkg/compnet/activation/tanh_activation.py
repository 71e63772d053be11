import numpy as np

from compnet.activation import TANH
from compnet.activation.activation import Activation


class TanhActivation(Activation):

    @staticmethod
    def identifier() -> str:
        return TANH

    def forward(self, z):
        return np.tanh(z)

    def derivative(self, z):
        t = np.tanh(z)
        return 1.0 - t * t

    def inverse(self, y):
        return np.arctanh(y)

    def inverse_derivative(self, y):
        y = np.asarray(y, dtype=float)
        return 1.0 / (1.0 - y * y)

    def inverse_second_derivative(self, y):
        y = np.asarray(y, dtype=float)
        return 2.0 * y / (1.0 - y * y) ** 2

    def increment(self, z0, delta):
        delta = np.asarray(delta, dtype=float)
        return np.sinh(delta) / (np.cosh(z0 + delta) * np.cosh(z0))
