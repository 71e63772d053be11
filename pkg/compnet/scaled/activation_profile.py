import numpy as np

from compnet.activation.activation import Activation
from compnet.activation.activation_factory import activation_for
from compnet.core.errors import InvalidProfileError
from compnet.scaled import GRID_POINTS, MAX_HALVINGS


class ActivationProfile:
    """
    An activation sigma together with an anchor z0 where sigma'(z0) != 0 and a half width gamma0. On the interval
    U = (z0 - gamma0, z0 + gamma0) sigma is strictly monotone, so it has the local inverse tau on sigma(U).
    """
    activation_id: str
    activation: Activation
    z0: float
    y0: float
    slope: float
    gamma0: float

    def __init__(self, activation_id: str, z0: float = 0.0, gamma0: float = 1.0):
        activation = activation_for(activation_id)
        slope = float(activation.derivative(np.asarray(z0, dtype=float)))
        if not np.isfinite(slope) or slope == 0.0:
            raise InvalidProfileError(f"Activation {activation_id} has derivative {slope} at z0 = {z0}")
        if gamma0 <= 0.0:
            raise InvalidProfileError(f"Half width gamma0 must be positive, got {gamma0}")

        for _ in range(MAX_HALVINGS):
            derivatives = activation.derivative(z0 + gamma0 * np.linspace(-1.0, 1.0, GRID_POINTS))
            if np.all(np.isfinite(derivatives)) and np.all(np.sign(derivatives) == np.sign(slope)):
                break
            gamma0 /= 2.0
        else:
            raise InvalidProfileError(f"No interval around z0 = {z0} on which {activation_id} is monotone")

        self.activation_id = activation_id
        self.activation = activation
        self.z0 = float(z0)
        self.y0 = float(activation.forward(np.asarray(z0, dtype=float)))
        self.slope = slope
        self.gamma0 = gamma0

    def grid(self, points: int = GRID_POINTS) -> np.ndarray:
        """Equally spaced points over the closed interval [z0 - gamma0, z0 + gamma0]."""
        return self.z0 + self.gamma0 * np.linspace(-1.0, 1.0, points)

    def tau(self, y) -> np.ndarray:
        return self.activation.inverse(y)

    def tau_prime(self, y) -> np.ndarray:
        return self.activation.inverse_derivative(y)

    def tau_second(self, y) -> np.ndarray:
        return self.activation.inverse_second_derivative(y)

    def __repr__(self):
        return f"ActivationProfile({self.activation_id}, z0={self.z0}, gamma0={self.gamma0})"


def profile_for(activation_id: str, z0: float = 0.0) -> ActivationProfile:
    return ActivationProfile(activation_id, z0=z0)
