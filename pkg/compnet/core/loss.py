import math

import numpy as np

from compnet.core.errors import DimensionError
from compnet.core.output_vector import as_array


def total_loss(outputs, targets) -> float:
    """
    The total squared error of a network on the dataset, the sum over all records of (g(x) - y)^2. Solvers work with
    this sum; reports convert it to the RMSE with rmse().
    """
    g = as_array(outputs)
    y = as_array(targets)
    if len(g) != len(y):
        raise DimensionError(f"Outputs have length {len(g)}, targets have length {len(y)}")
    residuals = g - y
    return float(np.dot(residuals, residuals))


def rmse(sse: float, n: int) -> float:
    if n < 1:
        raise DimensionError("RMSE needs at least one record")
    return math.sqrt(sse / n)
