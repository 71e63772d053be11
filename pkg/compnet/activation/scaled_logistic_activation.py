import numpy as np

from compnet.activation import SCALED_LOGISTIC
from compnet.activation.activation import Activation


class ScaledLogisticActivation(Activation):
    """
    The scaled logistic S(z) = 2 * amplitude / (1 + exp(-z / (amplitude / 2))) - amplitude, used as gluing activation
    in the air quality experiments with amplitude 1000. The function equals amplitude * tanh(z / amplitude), which is
    the form used here because it keeps full precision around zero.
    """

    def __init__(self, amplitude: float = 1000.0):
        self.amplitude = amplitude

    @staticmethod
    def identifier() -> str:
        return SCALED_LOGISTIC

    def forward(self, z):
        return self.amplitude * np.tanh(np.asarray(z, dtype=float) / self.amplitude)

    def derivative(self, z):
        t = np.tanh(np.asarray(z, dtype=float) / self.amplitude)
        return 1.0 - t * t

    def inverse(self, y):
        return self.amplitude * np.arctanh(np.asarray(y, dtype=float) / self.amplitude)

    def inverse_derivative(self, y):
        u = np.asarray(y, dtype=float) / self.amplitude
        return 1.0 / (1.0 - u * u)

    def inverse_second_derivative(self, y):
        u = np.asarray(y, dtype=float) / self.amplitude
        return 2.0 * u / (self.amplitude * (1.0 - u * u) ** 2)

    def increment(self, z0, delta):
        delta = np.asarray(delta, dtype=float)
        a = self.amplitude
        return a * np.sinh(delta / a) / (np.cosh((z0 + delta) / a) * np.cosh(z0 / a))
