import math

from compnet.activation import ACTIVATIONS, IDENTITY
from compnet.core.assumptions import width_bound_holds
from compnet.core.errors import ConfigError
from compnet.verification.samplers import GAUSSIAN, SAMPLERS


class TrialConfig:
    """
    Settings of a Monte Carlo run. The angle tolerance eta = arccos(c / sqrt(n)) follows from the dimension and the
    constant c.
    """
    n: int
    k: int
    h: int
    trials: int
    seed: int
    distribution: str
    c: float

    def __init__(self, n: int, k: int = 1, h: int = 1, trials: int = 1000, seed: int = 0,
                 distribution: str = GAUSSIAN, c: float = 1.0, activation: str = IDENTITY, noise_scale: float = 1.0,
                 workers: int = 1):
        self.n = n
        self.k = k
        self.h = h
        self.trials = trials
        self.seed = seed
        self.distribution = distribution
        self.c = c
        self.activation = activation
        self.noise_scale = noise_scale
        self.workers = workers
        self.validate()

    @property
    def eta(self) -> float:
        return math.acos(min(1.0, self.c / math.sqrt(self.n)))

    def validate(self):
        if self.n < 1:
            raise ConfigError(f"n must be at least 1, got {self.n}")
        if self.k < 1:
            raise ConfigError(f"k must be at least 1, got {self.k}")
        if self.h < 1:
            raise ConfigError(f"h must be at least 1, got {self.h}")
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if self.seed < 0:
            raise ConfigError(f"seed must not be negative, got {self.seed}")
        if self.c <= 0.0:
            raise ConfigError(f"c must be positive, got {self.c}")
        if self.distribution not in SAMPLERS:
            raise ConfigError(f"Unsupported sampler {self.distribution}, choose from {SAMPLERS}")
        if self.activation not in ACTIVATIONS:
            raise ConfigError(f"Unsupported activation {self.activation}, choose from {ACTIVATIONS}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")

    def require_width_bound(self):
        if not width_bound_holds(self.k, self.n):
            raise ConfigError(f"k = {self.k} components violate the width bound k < 2 sqrt(n) - 1 for n = {self.n}")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "h": self.h,
            "trials": self.trials,
            "seed": self.seed,
            "distribution": self.distribution,
            "c": self.c,
            "eta": self.eta,
            "activation": self.activation,
            "noise_scale": self.noise_scale,
        }

    def __repr__(self):
        return f"TrialConfig(n={self.n}, k={self.k}, h={self.h}, trials={self.trials}, seed={self.seed})"
