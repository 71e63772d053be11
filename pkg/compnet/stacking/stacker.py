import logging

import numpy as np
from scipy import linalg

from compnet.core.assumptions import first_dependent_index, is_linearly_independent
from compnet.core.errors import AssumptionViolation, DimensionError
from compnet.core.loss import total_loss
from compnet.core.output_vector import as_array, stack_outputs
from compnet.stacking import JITTER, UNIT_VECTOR_TOLERANCE
from compnet.stacking.gram_system import GramSystem
from compnet.stacking.stack_solution import StackSolution

logger = logging.getLogger(__name__)


def _output_matrix(outputs, targets) -> (np.ndarray, np.ndarray):
    matrix = stack_outputs(outputs)
    y = as_array(targets)
    if matrix.shape[0] != len(y):
        raise DimensionError(f"Outputs have length {matrix.shape[0]}, targets have length {len(y)}")
    return matrix, y


def build_gram_system(outputs, targets) -> GramSystem:
    """
    Assembles the normal equations of the linear stack over the outputs, f0 first.
    :param outputs: list of K+1 output vectors
    :param targets: the target vector
    :return: the Gram system
    """
    matrix, y = _output_matrix(outputs, targets)
    gram = matrix.T @ matrix
    # Mirror the upper triangle so the matrix is exactly symmetric
    gram = np.triu(gram) + np.triu(gram, 1).T
    return GramSystem(gram, matrix.T @ y)


def loss_gradient(theta, outputs, targets) -> np.ndarray:
    """
    Gradient of the total loss with respect to the gluing weights, 2 * (sum_j theta_j <f_s, f_j> - <f_s, y>) for
    every s.
    """
    matrix, y = _output_matrix(outputs, targets)
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if len(theta) != matrix.shape[1]:
        raise DimensionError(f"Theta has length {len(theta)}, there are {matrix.shape[1]} outputs")
    return 2.0 * (matrix.T @ (matrix @ theta - y))


def _factorize(gram: np.ndarray):
    try:
        return linalg.cho_factor(gram, lower=False, check_finite=True)
    except linalg.LinAlgError:
        jitter = JITTER * float(np.trace(gram))
        logger.debug(f"Cholesky failed, retrying with jitter {jitter:.3g} on the diagonal")
        try:
            return linalg.cho_factor(gram + jitter * np.eye(gram.shape[0]), lower=False, check_finite=True)
        except linalg.LinAlgError:
            return None


def solve_optimal_theta(system: GramSystem, outputs, targets) -> StackSolution:
    """
    Solves the Gram system for the optimal gluing weights and collects the diagnostics around the unit vectors.

    :param system: Gram system built from the same outputs and targets
    :param outputs: list of K+1 output vectors, f0 first
    :param targets: the target vector
    :return: the solution
    :raises AssumptionViolation: when the outputs are linearly dependent
    """
    matrix, y = _output_matrix(outputs, targets)
    if matrix.shape[1] != system.k + 1:
        raise DimensionError(f"Gram system is built for {system.k + 1} outputs, got {matrix.shape[1]}")

    independent = matrix.shape[1] <= matrix.shape[0] and \
        is_linearly_independent(np.linalg.svd(matrix, compute_uv=False))
    factor = _factorize(system.gram) if independent else None
    if factor is None:
        index = first_dependent_index(outputs)
        raise AssumptionViolation(f"Outputs are linearly dependent, output {index} lies in the span of the "
                                  f"outputs before it", component_index=index)

    theta = linalg.cho_solve(factor, system.rhs)
    # One step of iterative refinement with the residual taken from the outputs, not from the Gram matrix
    theta = theta + linalg.cho_solve(factor, matrix.T @ (y - matrix @ theta))

    loss = total_loss(matrix @ theta, y)
    unit_losses = [total_loss(matrix[:, j], y) for j in range(matrix.shape[1])]
    # np.argmin returns the lowest index on ties
    best = int(np.argmin(unit_losses))

    is_unit = False
    for j in range(matrix.shape[1]):
        unit = np.zeros(matrix.shape[1])
        unit[j] = 1.0
        if np.max(np.abs(theta - unit)) < UNIT_VECTOR_TOLERANCE:
            is_unit = True
            break

    best_unit = np.zeros(matrix.shape[1])
    best_unit[best] = 1.0
    return StackSolution(theta=theta,
                         loss=loss,
                         n=len(y),
                         unit_losses=unit_losses,
                         best_unit_index=best,
                         is_unit_vector=is_unit,
                         gradient_at_best_unit=2.0 * (matrix.T @ (matrix[:, best] - y)))


def stack(outputs, targets) -> StackSolution:
    """Builds and solves the Gram system in one go."""
    return solve_optimal_theta(build_gram_system(outputs, targets), outputs, targets)
