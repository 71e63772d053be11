import json
import math
from typing import Optional

from scipy.stats import norm

from compnet.verification import CONFIDENCE


def binomial_halfwidth(frequency: float, trials: int) -> float:
    """Half width of the normal approximation confidence interval of a binomial frequency."""
    z = norm.ppf(0.5 + CONFIDENCE / 2.0)
    return float(z * math.sqrt(frequency * (1.0 - frequency) / trials))


class BoundReport:
    """
    An empirical frequency next to the theoretical lower bound it should respect. The check passes when the
    frequency plus the confidence half width reaches the bound.
    """
    name: str
    successes: int
    trials: int
    theoretical_bound: float
    resampled: int

    def __init__(self, name: str, successes: int, trials: int, theoretical_bound: float, resampled: int = 0,
                 extras: Optional[dict] = None):
        self.name = name
        self.successes = successes
        self.trials = trials
        self.theoretical_bound = theoretical_bound
        self.resampled = resampled
        self.extras = extras or {}

    @property
    def empirical_frequency(self) -> float:
        return self.successes / self.trials

    @property
    def ci_halfwidth(self) -> float:
        return binomial_halfwidth(self.empirical_frequency, self.trials)

    @property
    def margin(self) -> float:
        return self.empirical_frequency - self.theoretical_bound

    @property
    def passed(self) -> bool:
        return self.empirical_frequency + self.ci_halfwidth >= self.theoretical_bound

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "empirical_frequency": self.empirical_frequency,
            "theoretical_bound": self.theoretical_bound,
            "margin": self.margin,
            "pass": self.passed,
            "trials": self.trials,
            "successes": self.successes,
            "ci_halfwidth": self.ci_halfwidth,
            "resampled": self.resampled,
            "extras": self.extras,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict} {self.name}: frequency {self.empirical_frequency:.4f} "
                f"(+/- {self.ci_halfwidth:.4f}, {self.successes}/{self.trials}) vs bound {self.theoretical_bound:.4f}")

    def __str__(self):
        return self.summary()
