import numpy as np
from scipy.special import expit, logit

from compnet.activation import LOGISTIC
from compnet.activation.activation import Activation


class LogisticActivation(Activation):
    """The logistic function 1 / (1 + exp(-z)), its inverse is the logit."""

    @staticmethod
    def identifier() -> str:
        return LOGISTIC

    def forward(self, z):
        return expit(z)

    def derivative(self, z):
        s = expit(z)
        return s * (1.0 - s)

    def inverse(self, y):
        return logit(y)

    def inverse_derivative(self, y):
        y = np.asarray(y, dtype=float)
        return 1.0 / (y * (1.0 - y))

    def inverse_second_derivative(self, y):
        y = np.asarray(y, dtype=float)
        return (2.0 * y - 1.0) / (y * y * (1.0 - y) ** 2)

    def increment(self, z0, delta):
        # expit(z) = (1 + tanh(z / 2)) / 2 and tanh(a) - tanh(b) = sinh(a - b) / (cosh(a) cosh(b))
        delta = np.asarray(delta, dtype=float)
        return 0.5 * np.sinh(delta / 2.0) / (np.cosh((z0 + delta) / 2.0) * np.cosh(z0 / 2.0))
