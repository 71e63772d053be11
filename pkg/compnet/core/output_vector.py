import numpy as np

from compnet.core.errors import DimensionError


class OutputVector:
    """
    A component, or a complete composite network, evaluated at every record of a dataset. The values are stored as a
    read-only float array, so an output vector can be shared between threads and trials without copying.
    """
    values: np.ndarray

    def __init__(self, values):
        array = np.array(values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(array)):
            raise DimensionError("Output vector contains values that are not finite")
        array.setflags(write=False)
        self.values = array

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, OutputVector):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"OutputVector(n={len(self.values)})"

    @classmethod
    def ones(cls, n: int) -> "OutputVector":
        """The constant component f0, one for every record."""
        return cls(np.ones(n))


def as_array(vector) -> np.ndarray:
    if isinstance(vector, OutputVector):
        return vector.values
    return np.asarray(vector, dtype=float).reshape(-1)


def stack_outputs(outputs) -> np.ndarray:
    """
    Places the output vectors next to each other as columns of an N x (K+1) matrix.
    :param outputs: list of OutputVector or array-likes, all of the same length
    :return: the output matrix
    """
    columns = [as_array(output) for output in outputs]
    if not columns:
        raise DimensionError("At least one output vector is required")
    lengths = {len(column) for column in columns}
    if len(lengths) != 1:
        raise DimensionError(f"Output vectors have different lengths: {sorted(lengths)}")
    return np.column_stack(columns)
