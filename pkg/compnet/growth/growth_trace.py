from typing import Dict, List, Optional

from compnet.growth import STRICT_TOLERANCE


class GrowthStage:
    """One stage of a growth run: the component added, the loss reached and how the gluing node was built."""

    def __init__(self, index: int, operation: str, component_id: str, loss: float, previous_loss: Optional[float],
                 depth: int, wrapped: bool = False, fallback: bool = False):
        self.index = index
        self.operation = operation
        self.component_id = component_id
        self.loss = loss
        self.previous_loss = previous_loss
        self.depth = depth
        self.wrapped = wrapped
        self.fallback = fallback

    @property
    def strict(self) -> bool:
        """True when the stage improved on the previous stage by more than the strictness tolerance."""
        return self.previous_loss is not None and self.loss < self.previous_loss - STRICT_TOLERANCE

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "operation": self.operation,
            "component": self.component_id,
            "loss": self.loss,
            "previous_loss": self.previous_loss,
            "depth": self.depth,
            "strict": self.strict,
            "wrapped": self.wrapped,
            "fallback": self.fallback,
        }


class GrowthTrace:
    """
    The losses of a growth run stage by stage, with the baseline min_j E(f_j) over the components and the constant
    component f0.
    """
    baseline: float
    component_losses: Dict[str, float]
    stages: List[GrowthStage]

    def __init__(self, baseline: float, component_losses: Dict[str, float]):
        self.baseline = baseline
        self.component_losses = component_losses
        self.stages = []

    def add(self, stage: GrowthStage):
        self.stages.append(stage)

    def losses(self) -> List[float]:
        return [stage.loss for stage in self.stages]

    def final_loss(self) -> float:
        return self.stages[-1].loss

    def is_non_increasing(self, tolerance: float = 1e-9) -> bool:
        losses = self.losses()
        return all(later <= earlier + tolerance * max(1.0, abs(earlier)) for earlier, later in zip(losses, losses[1:]))

    def all_below_baseline(self) -> bool:
        """Every stage beats the best single component strictly."""
        return all(stage.loss < self.baseline - STRICT_TOLERANCE for stage in self.stages)

    def chain_strict(self) -> bool:
        """The first stage beats the baseline and every later stage beats the stage before it, all strictly."""
        return self.all_below_baseline() and all(stage.strict for stage in self.stages[1:])

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline,
            "component_losses": dict(self.component_losses),
            "stages": [stage.to_dict() for stage in self.stages],
        }
