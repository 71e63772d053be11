import logging
import math

import numpy as np

from compnet.activation.activation_factory import activation_for
from compnet.core.errors import DimensionError, NoImprovementError, ScaledPlanError
from compnet.core.loss import total_loss
from compnet.core.output_vector import OutputVector, as_array, stack_outputs
from compnet.scaled import SAFETY_FACTOR, TARGET_TOLERANCE
from compnet.scaled.activation_profile import ActivationProfile, profile_for
from compnet.scaled.epsilon_budget import EpsilonBudget
from compnet.scaled.scaled_plan import ScaledPlan
from compnet.stacking.stack_solution import StackSolution
from compnet.stacking.stacker import stack

logger = logging.getLogger(__name__)


def sigma_bound(profile: ActivationProfile) -> float:
    """max(1, sup over U of 2 * ((sigma(z) - sigma(z0)) / (z - z0))^2), the supremum taken on the grid."""
    delta = profile.grid() - profile.z0
    delta = delta[delta != 0.0]
    quotients = profile.activation.increment(profile.z0, delta) / delta
    supremum = max(float(np.max(quotients * quotients)), profile.slope * profile.slope)
    return max(1.0, SAFETY_FACTOR * 2.0 * supremum)


def tau_bound(profile: ActivationProfile) -> float:
    """max(1, sup over sigma(U) of |tau''|), the supremum taken on the image of the grid."""
    image = profile.activation.forward(profile.grid())
    supremum = float(np.max(np.abs(profile.tau_second(image))))
    return max(1.0, SAFETY_FACTOR * supremum)


def evaluate_scaled(plan: ScaledPlan, outputs) -> OutputVector:
    """
    Evaluates l1(sigma(l0(x))) for every record.
    :raises ScaledPlanError: when l0 leaves the interval (z0 - gamma, z0 + gamma) for some record
    """
    matrix = stack_outputs(outputs)
    if matrix.shape[1] != len(plan.l0_theta):
        raise DimensionError(f"Plan is built for {len(plan.l0_theta)} outputs, got {matrix.shape[1]}")

    delta = matrix @ plan.l0_theta
    if np.any(np.abs(delta) >= plan.gamma):
        raise ScaledPlanError(f"l0 leaves the operating interval: max |l0 - z0| = {np.max(np.abs(delta)):.3g}, "
                              f"gamma = {plan.gamma:.3g}")
    activation = activation_for(plan.activation_id)
    return OutputVector(plan.l1_scale * activation.increment(plan.z0, delta))


def build_scaled_plan(g0: StackSolution, outputs, profile: ActivationProfile, epsilon: float) -> ScaledPlan:
    """
    Builds the scaled network that stays within epsilon of the optimal linear stack g0 on every record.

    :param g0: the optimal linear stack over the outputs
    :param outputs: the outputs the stack was solved for, f0 first
    :param profile: activation with its anchor and operating interval
    :param epsilon: tolerance in (0, 1]
    :return: the plan, its measured deviation filled in
    :raises ScaledPlanError: for an epsilon outside (0, 1] or when the measured deviation is not below epsilon
    """
    if not 0.0 < epsilon <= 1.0:
        raise ScaledPlanError(f"Epsilon must lie in (0, 1], got {epsilon}")

    matrix = stack_outputs(outputs)
    if matrix.shape[1] != len(g0.theta):
        raise DimensionError(f"Stack has {len(g0.theta)} coefficients, got {matrix.shape[1]} outputs")
    g0_values = matrix @ g0.theta

    m_g = max(1.0, 2.0 * float(np.max(np.abs(g0_values))))
    m_sigma = sigma_bound(profile)
    m_tau = tau_bound(profile)
    m_gamma = int(math.ceil(math.log2(m_g * m_sigma * m_tau / epsilon))) + 1
    gamma = min(profile.gamma0, 2.0 ** -m_gamma)
    m0 = m_g / gamma
    m1 = m_sigma * m_tau
    l1_scale = m0 * float(profile.tau_prime(profile.y0))

    plan = ScaledPlan(activation_id=profile.activation_id,
                      z0=profile.z0,
                      y0=profile.y0,
                      m_g=m_g,
                      m_sigma=m_sigma,
                      m_tau=m_tau,
                      m_gamma=m_gamma,
                      gamma0=profile.gamma0,
                      gamma=gamma,
                      m0=m0,
                      m1=m1,
                      epsilon=epsilon,
                      theta=g0.theta,
                      l1_scale=l1_scale)
    logger.debug(f"Scaled plan constants: m_g={m_g:.6g}, m_sigma={m_sigma:.6g}, m_tau={m_tau:.6g}, "
                 f"m_gamma={m_gamma}, gamma={gamma:.6g}")

    if not plan.deviation_bound() < epsilon:
        raise ScaledPlanError(f"Deviation bound {plan.deviation_bound():.3g} is not below epsilon {epsilon:.3g}")

    deviation = float(np.max(np.abs(evaluate_scaled(plan, outputs).values - g0_values)))
    if not deviation < epsilon:
        raise ScaledPlanError(f"Scaled network deviates {deviation:.3g} from the linear stack, "
                              f"epsilon is {epsilon:.3g}")
    plan.measured_deviation = deviation
    return plan


def select_epsilon(g0_loss: float, best_component_loss: float, g0_residual_max: float, n: int) -> EpsilonBudget:
    """
    Chooses epsilon so that a scaled network within epsilon of g0 still beats the best single component.
    :raises NoImprovementError: when g0 does not beat the best component
    """
    gap = best_component_loss - g0_loss
    if not gap > 0.0:
        raise NoImprovementError(f"The linear stack has loss {g0_loss:.6g}, the best component {best_component_loss:.6g}, "
                                 f"there is nothing to keep")

    epsilon = gap / (4.0 * n * (2.0 * g0_residual_max + 1.0))
    clipped = epsilon > 1.0
    return EpsilonBudget(m2=g0_residual_max,
                         epsilon=min(epsilon, 1.0),
                         target_loss_bound=(best_component_loss + 2.0 * g0_loss) / 3.0,
                         g0_loss=g0_loss,
                         best_component_loss=best_component_loss,
                         n=n,
                         clipped=clipped)


def budget_for(g0: StackSolution, outputs, targets) -> EpsilonBudget:
    """select_epsilon with every argument taken from a solved stack."""
    residuals = stack_outputs(outputs) @ g0.theta - as_array(targets)
    return select_epsilon(g0.loss, g0.best_unit_loss, float(np.max(np.abs(residuals))), g0.n)


def scaled_stack(outputs, targets, activation_id: str, z0: float = 0.0) -> (StackSolution, EpsilonBudget, ScaledPlan):
    """
    Solves the linear stack, selects the epsilon budget and builds the scaled plan, the complete construction of a
    non-linear gluing layer that strictly beats the best component.

    :raises NoImprovementError: when the stack does not beat the best component, or the scaled network misses the
        target loss of the budget
    """
    solution = stack(outputs, targets)
    budget = budget_for(solution, outputs, targets)
    plan = build_scaled_plan(solution, outputs, profile_for(activation_id, z0), budget.epsilon)
    loss = plan_loss(plan, outputs, targets)
    if loss > budget.target_loss_bound + TARGET_TOLERANCE:
        raise NoImprovementError(f"Scaled network reaches {loss:.6g}, the target is {budget.target_loss_bound:.6g}")
    return solution, budget, plan


def plan_loss(plan: ScaledPlan, outputs, targets) -> float:
    return total_loss(evaluate_scaled(plan, outputs), targets)
