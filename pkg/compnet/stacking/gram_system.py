import numpy as np


class GramSystem:
    """
    The normal equations of the linear stack: gram[s][t] = <f_s, f_t> and rhs[s] = <f_s, y> over the outputs
    f_0, ..., f_K. The matrix is symmetric by construction and positive definite exactly when the outputs are
    linearly independent.
    """
    gram: np.ndarray
    rhs: np.ndarray
    k: int

    def __init__(self, gram: np.ndarray, rhs: np.ndarray):
        self.gram = gram
        self.rhs = rhs
        self.k = gram.shape[0] - 1

    def trace(self) -> float:
        return float(np.trace(self.gram))

    def norm(self) -> float:
        return float(np.linalg.norm(self.gram, ord=2))

    def __repr__(self):
        return f"GramSystem(k={self.k})"
