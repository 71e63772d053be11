import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

import numpy as np

from compnet.components.table import TableComponent
from compnet.core.assumptions import check_assumptions
from compnet.core.dataset import Dataset
from compnet.core.errors import AssumptionViolation, DimensionError
from compnet.core.output_vector import OutputVector
from compnet.growth.growth_service import grow_greedy
from compnet.stacking.stacker import stack
from compnet.verification import MAX_RESAMPLES, STRICT_TOLERANCE
from compnet.verification.bound_report import BoundReport
from compnet.verification.samplers.sampler import Sampler
from compnet.verification.samplers.sampler_factory import sampler_for
from compnet.verification.trial_config import TrialConfig

logger = logging.getLogger(__name__)


def angle_between(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    cosine = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
    return math.acos(min(1.0, max(-1.0, cosine)))


def uniform_angle_probability(eta: float) -> float:
    """Probability that a uniformly random direction in the plane lies within eta of perpendicular to a fixed one."""
    return min(1.0, max(0.0, 2.0 * eta / math.pi))


def _trial_generators(cfg: TrialConfig) -> List[np.random.Generator]:
    # One independent stream per trial, so results do not depend on the order trials run in
    return [np.random.default_rng(sequence) for sequence in np.random.SeedSequence(cfg.seed).spawn(cfg.trials)]


def _run_trials(cfg: TrialConfig, trial: Callable[[np.random.Generator], tuple]) -> list:
    generators = _trial_generators(cfg)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            return list(executor.map(trial, generators))
    return [trial(rng) for rng in generators]


def _sampler(cfg: TrialConfig, sampler: Optional[Sampler]) -> Sampler:
    return sampler if sampler is not None else sampler_for(cfg.distribution, cfg.noise_scale)


def _valid_sample(rng, sampler: Sampler, n: int, k: int, with_constant: bool = True) -> (list, np.ndarray, int):
    """
    Draws until the outputs are linearly independent and none of them is perfect. Returns the outputs, the targets
    and the number of rejected draws.
    """
    for attempt in range(MAX_RESAMPLES):
        outputs, targets = sampler.sample(rng, n, k)
        vectors = ([OutputVector.ones(n)] if with_constant else []) + [OutputVector(output) for output in outputs]
        report = check_assumptions(vectors, targets, n)
        if report.a1_linear_independence and report.a2_no_perfect_component:
            return vectors, targets, attempt
    raise AssumptionViolation(f"Sampler {sampler.identifier()} did not produce valid outputs in {MAX_RESAMPLES} draws")


def angle_concentration(cfg: TrialConfig, u=None,
                        direction_sampler: Callable[[np.random.Generator, int], np.ndarray] = None) -> BoundReport:
    """
    Frequency with which a random unit vector v is within eta of perpendicular to a fixed vector u, compared to
    1 - 1/sqrt(n). Directions are standard normal vectors unless a direction sampler is given.

    :raises DimensionError: for n < 2, where the angle can only be 0 or pi
    """
    if cfg.n < 2:
        raise DimensionError(f"Angles need at least two dimensions, got n = {cfg.n}")
    if u is None:
        u = np.zeros(cfg.n)
        u[0] = 1.0
    sample = direction_sampler or (lambda rng, n: rng.standard_normal(n))
    eta = cfg.eta

    def trial(rng):
        angle = angle_between(u, sample(rng, cfg.n))
        return abs(angle - math.pi / 2.0) <= eta,

    results = _run_trials(cfg, trial)
    successes = sum(1 for (inside,) in results if inside)
    extras = {"eta": eta}
    if cfg.n == 2:
        extras["uniform_angle_probability"] = uniform_angle_probability(eta)
    return BoundReport("angle_concentration", successes, cfg.trials, 1.0 - 1.0 / math.sqrt(cfg.n), extras=extras)


def no_worse_frequency(cfg: TrialConfig, sampler: Sampler = None) -> BoundReport:
    """
    Frequency with which the optimal linear stack of k random components and the constant beats every single one of
    them strictly, compared to 1 - (k + 1)/sqrt(n). Draws that violate linear independence or contain a perfect
    component are replaced and counted.
    """
    cfg.require_width_bound()
    sampler = _sampler(cfg, sampler)

    def trial(rng):
        outputs, targets, rejected = _valid_sample(rng, sampler, cfg.n, cfg.k)
        solution = stack(outputs, targets)
        return solution.loss < min(solution.unit_losses) - STRICT_TOLERANCE, rejected, solution.is_unit_vector

    results = _run_trials(cfg, trial)
    successes = sum(1 for strict, _, _ in results if strict)
    extras = {"unit_vector_solutions": sum(1 for _, _, unit in results if unit)}
    return BoundReport("no_worse", successes, cfg.trials, 1.0 - (cfg.k + 1) / math.sqrt(cfg.n),
                       resampled=sum(rejected for _, rejected, _ in results), extras=extras)


def two_model_frequency(cfg: TrialConfig, sampler: Sampler = None) -> BoundReport:
    """
    Two models f0 and f1 without a constant: frequency with which some alpha0 * f0 + alpha1 * f1 has a loss strictly
    below that of f1, compared to 1 - 2/sqrt(n).
    """
    sampler = _sampler(cfg, sampler)

    def trial(rng):
        outputs, targets, rejected = _valid_sample(rng, sampler, cfg.n, 2, with_constant=False)
        solution = stack(outputs, targets)
        return solution.loss < solution.unit_losses[1] - STRICT_TOLERANCE, rejected

    results = _run_trials(cfg, trial)
    successes = sum(1 for strict, _ in results if strict)
    return BoundReport("two_model", successes, cfg.trials, 1.0 - 2.0 / math.sqrt(cfg.n),
                       resampled=sum(rejected for _, rejected in results))


def multilayer_bound(cfg: TrialConfig, sampler: Sampler = None) -> BoundReport:
    """
    Frequency with which a greedily grown h layer network beats the best single component strictly after every
    stage, compared to (1 - (k + 1)/sqrt(n))^h. The frequency with which every stage also beats the stage before it
    is reported as an extra.
    """
    cfg.require_width_bound()
    sampler = _sampler(cfg, sampler)

    def trial(rng):
        outputs, targets, rejected = _valid_sample(rng, sampler, cfg.n, cfg.k)
        components = [TableComponent(f"f{j}", output) for j, output in enumerate(outputs[1:], start=1)]
        data = Dataset([], targets)
        _, trace = grow_greedy(components, cfg.h, data, activation=cfg.activation)
        return trace.all_below_baseline(), rejected, trace.chain_strict(), trace.final_loss()

    results = _run_trials(cfg, trial)
    successes = sum(1 for below, _, _, _ in results if below)
    extras = {
        "chain_strict_frequency": sum(1 for _, _, chain, _ in results if chain) / cfg.trials,
        "mean_final_loss": float(np.mean([loss for _, _, _, loss in results])),
    }
    bound = (1.0 - (cfg.k + 1) / math.sqrt(cfg.n)) ** cfg.h
    return BoundReport("multilayer", successes, cfg.trials, bound,
                       resampled=sum(rejected for _, rejected, _, _ in results), extras=extras)

