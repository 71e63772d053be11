from compnet.core.errors import ConfigError
from compnet.verification.samplers import CORRELATED, GAUSSIAN
from compnet.verification.samplers.correlated_sampler import CorrelatedSampler
from compnet.verification.samplers.gaussian_sampler import GaussianSampler
from compnet.verification.samplers.sampler import Sampler


def sampler_for(identifier: str, noise_scale: float = 1.0) -> Sampler:
    if identifier == GAUSSIAN:
        return GaussianSampler()
    elif identifier == CORRELATED:
        return CorrelatedSampler(noise_scale)

    raise ConfigError(f"Unsupported sampler: {identifier}")
