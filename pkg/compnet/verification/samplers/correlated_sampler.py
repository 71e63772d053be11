from compnet.verification.samplers import CORRELATED
from compnet.verification.samplers.sampler import Sampler


class CorrelatedSampler(Sampler):
    """Components that have learned something: f_j = y + noise_scale * N(0, 1) per coordinate."""

    def __init__(self, noise_scale: float = 1.0):
        self.noise_scale = noise_scale

    @staticmethod
    def identifier() -> str:
        return CORRELATED

    def sample(self, rng, n, k):
        targets = rng.standard_normal(n)
        outputs = [targets + self.noise_scale * rng.standard_normal(n) for _ in range(k)]
        return outputs, targets
