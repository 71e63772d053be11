import json
from typing import List

import numpy as np

from compnet.core.loss import rmse


class StackSolution:
    """
    Optimal gluing weights theta (theta[0] multiplies the constant component f0) with the loss they reach, the losses
    of the unit vectors e_j and the gradient of the loss at the best unit vector e_{j*}.
    """
    theta: np.ndarray
    loss: float
    n: int
    unit_losses: List[float]
    best_unit_index: int
    is_unit_vector: bool
    gradient_at_best_unit: np.ndarray

    def __init__(self, theta: np.ndarray, loss: float, n: int, unit_losses: List[float], best_unit_index: int,
                 is_unit_vector: bool, gradient_at_best_unit: np.ndarray):
        self.theta = theta
        self.loss = loss
        self.n = n
        self.unit_losses = unit_losses
        self.best_unit_index = best_unit_index
        self.is_unit_vector = is_unit_vector
        self.gradient_at_best_unit = gradient_at_best_unit

    @property
    def best_unit_loss(self) -> float:
        return self.unit_losses[self.best_unit_index]

    @property
    def rmse(self) -> float:
        return rmse(self.loss, self.n)

    def improvement(self) -> float:
        """How much the stack beats the best single output, never negative up to rounding."""
        return self.best_unit_loss - self.loss

    def to_dict(self) -> dict:
        return {
            "theta": [float(value) for value in self.theta],
            "sse": self.loss,
            "rmse": self.rmse,
            "is_unit_vector": self.is_unit_vector,
            "gradient_at_best_unit": [float(value) for value in self.gradient_at_best_unit],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def __str__(self):
        return (f"StackSolution(theta={np.array2string(self.theta, precision=6)}, sse={self.loss:.6g}, "
                f"best_unit=e_{self.best_unit_index}, is_unit_vector={self.is_unit_vector})")
