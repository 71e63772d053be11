import math
from typing import List

import numpy as np

from compnet.core import A1_TOLERANCE
from compnet.core.output_vector import as_array, stack_outputs


class AssumptionReport:
    """
    Outcome of checking the default assumptions on a set of component outputs. Violations are reported, they are
    never raised: a1 requires linearly independent outputs, a2 requires that no component is perfect, a5 requires
    that the number of components stays below 2*sqrt(N) - 1.
    """
    a1_linear_independence: bool
    smallest_singular_value: float
    a2_no_perfect_component: bool
    residual_sums: List[float]
    a5_width_bound: bool
    k: int
    n: int

    def __init__(self, a1_linear_independence: bool, smallest_singular_value: float, a2_no_perfect_component: bool,
                 residual_sums: List[float], a5_width_bound: bool, k: int, n: int):
        self.a1_linear_independence = a1_linear_independence
        self.smallest_singular_value = smallest_singular_value
        self.a2_no_perfect_component = a2_no_perfect_component
        self.residual_sums = residual_sums
        self.a5_width_bound = a5_width_bound
        self.k = k
        self.n = n

    def all_hold(self) -> bool:
        return self.a1_linear_independence and self.a2_no_perfect_component and self.a5_width_bound

    def perfect_components(self) -> List[int]:
        return [index for index, residual in enumerate(self.residual_sums) if residual <= 0.0]

    def to_dict(self) -> dict:
        return {
            "a1_linear_independence": self.a1_linear_independence,
            "smallest_singular_value": self.smallest_singular_value,
            "a2_no_perfect_component": self.a2_no_perfect_component,
            "residual_sums": list(self.residual_sums),
            "a5_width_bound": self.a5_width_bound,
            "k": self.k,
            "n": self.n,
        }

    def __str__(self):
        return (f"AssumptionReport(a1={self.a1_linear_independence}, a2={self.a2_no_perfect_component}, "
                f"a5={self.a5_width_bound}, k={self.k}, n={self.n})")


def singular_values(outputs) -> np.ndarray:
    return np.linalg.svd(stack_outputs(outputs), compute_uv=False)


def is_linearly_independent(values: np.ndarray) -> bool:
    """Scale free rank test: the smallest singular value must exceed A1_TOLERANCE times the largest one."""
    if len(values) == 0 or values[0] <= 0.0:
        return False
    return bool(values[-1] > A1_TOLERANCE * values[0])


def first_dependent_index(outputs) -> int:
    """
    Finds the first output vector that lies in the span of the vectors before it. Returns -1 when all outputs are
    linearly independent.
    """
    matrix = stack_outputs(outputs)
    scale = np.linalg.norm(matrix, ord=2)
    for index in range(matrix.shape[1]):
        if scale <= 0.0:
            return index
        values = np.linalg.svd(matrix[:, :index + 1], compute_uv=False)
        if index + 1 > matrix.shape[0] or values[-1] <= A1_TOLERANCE * scale:
            return index
    return -1


def width_bound_holds(k: int, n: int) -> bool:
    return k < 2.0 * math.sqrt(n) - 1.0


def check_assumptions(outputs, targets, n: int) -> AssumptionReport:
    """
    Checks the linear independence, no perfect component and width bound assumptions.

    :param outputs: the output vectors of the components, the constant component f0 first
    :param targets: the target vector
    :param n: number of records
    :return: the report, violations included
    """
    y = as_array(targets)
    values = singular_values(outputs)
    # A wide matrix (more vectors than records) is rank deficient whatever the singular values say
    k_plus_one = len(outputs)
    a1 = is_linearly_independent(values) and k_plus_one <= n
    smallest = float(values[-1]) if k_plus_one <= n else 0.0

    residual_sums = [float(np.sum(np.abs(as_array(output) - y))) for output in outputs]
    a2 = all(residual > 0.0 for residual in residual_sums)

    k = k_plus_one - 1
    return AssumptionReport(a1_linear_independence=a1,
                            smallest_singular_value=smallest,
                            a2_no_perfect_component=a2,
                            residual_sums=residual_sums,
                            a5_width_bound=width_bound_holds(k, n),
                            k=k,
                            n=n)
