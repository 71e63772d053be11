import numpy as np

from compnet.verification.samplers import GAUSSIAN
from compnet.verification.samplers.sampler import Sampler


class GaussianSampler(Sampler):
    """Every coordinate of every output and of the target is i.i.d. standard normal, so all directions are equally likely."""

    @staticmethod
    def identifier() -> str:
        return GAUSSIAN

    def sample(self, rng, n, k):
        targets = rng.standard_normal(n)
        outputs = [rng.standard_normal(n) for _ in range(k)]
        return outputs, targets
