from abc import ABC, abstractmethod
from typing import List

import numpy as np


class Sampler(ABC):
    """Draws the output vectors of K random components and a random target vector for one trial."""

    @staticmethod
    @abstractmethod
    def identifier() -> str:
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator, n: int, k: int) -> (List[np.ndarray], np.ndarray):
        """
        :param rng: the generator of the trial
        :param n: number of records
        :param k: number of components
        :return: the k output vectors and the target vector, all of length n
        """
        pass
