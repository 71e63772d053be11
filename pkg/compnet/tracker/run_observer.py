class RunObserver:
    """Collects what happens during a growth or training run, for inspection after the run."""
    stage_losses: list
    epoch_losses: list

    def __init__(self):
        self.stage_losses = []
        self.stage_components = []
        self.epoch_losses = []
        self.snapshot_reports = []

    def add_stage(self, component_id: str, loss: float):
        """Add the loss after a growth stage. The component id is the component added in that stage."""
        self.stage_components.append(component_id)
        self.stage_losses.append(loss)

    def add_epoch(self, epoch: int, train_sse: float):
        self.epoch_losses.append((epoch, train_sse))

    def add_snapshot_report(self, epoch: int, report):
        self.snapshot_reports.append((epoch, report))

    def reset(self):
        """Reset the observer."""
        self.stage_losses = []
        self.stage_components = []
        self.epoch_losses = []
        self.snapshot_reports = []

    def to_dict(self) -> dict:
        return {
            "stages": [{"component_id": component_id, "loss": loss}
                       for component_id, loss in zip(self.stage_components, self.stage_losses)],
            "epochs": [{"epoch": epoch, "train_sse": train_sse} for epoch, train_sse in self.epoch_losses],
            "snapshot_reports": [{"epoch": epoch, **report.to_dict()} for epoch, report in self.snapshot_reports],
        }
