class EpsilonBudget:
    """
    The approximation budget that keeps a strict improvement when the linear stack g0 is replaced by its scaled
    version: epsilon = (E(f_best) - E(g0)) / (4N(2 * m2 + 1)) with m2 the largest absolute residual of g0. A scaled
    network within epsilon of g0 has a loss of at most target_loss_bound = (E(f_best) + 2 E(g0)) / 3.
    """
    m2: float
    epsilon: float
    target_loss_bound: float
    g0_loss: float
    best_component_loss: float
    n: int
    clipped: bool

    def __init__(self, m2: float, epsilon: float, target_loss_bound: float, g0_loss: float,
                 best_component_loss: float, n: int, clipped: bool = False):
        self.m2 = m2
        self.epsilon = epsilon
        self.target_loss_bound = target_loss_bound
        self.g0_loss = g0_loss
        self.best_component_loss = best_component_loss
        self.n = n
        self.clipped = clipped

    def to_dict(self) -> dict:
        return {
            "m2": self.m2,
            "epsilon": self.epsilon,
            "target_loss_bound": self.target_loss_bound,
            "g0_loss": self.g0_loss,
            "best_component_loss": self.best_component_loss,
            "n": self.n,
            "clipped": self.clipped,
        }

    def __repr__(self):
        return f"EpsilonBudget(epsilon={self.epsilon:.6g}, target_loss_bound={self.target_loss_bound:.6g})"
