from compnet.core.errors import ConfigError


class TrainConfig:
    learning_rate: float
    epochs: int
    batch_size: int
    seed: int
    shuffle: bool
    check_snapshots: bool
    init_best_child: bool

    def __init__(self, learning_rate: float = 0.01, epochs: int = 100, batch_size: int = 32, seed: int = 0,
                 shuffle: bool = True, check_snapshots: bool = False, init_best_child: bool = False):
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.batch_size = batch_size
        self.seed = seed
        self.shuffle = shuffle
        self.check_snapshots = check_snapshots
        self.init_best_child = init_best_child

    def validate(self, n: int):
        """
        Checks the settings against a dataset of n records. A learning rate of zero is accepted, it leaves every
        parameter where it is.
        """
        if self.learning_rate < 0.0:
            raise ConfigError(f"learning_rate must not be negative, got {self.learning_rate}")
        if self.epochs < 1:
            raise ConfigError(f"epochs must be at least 1, got {self.epochs}")
        if self.batch_size < 1 or self.batch_size > n:
            raise ConfigError(f"batch_size must lie in [1, {n}], got {self.batch_size}")
        if self.seed < 0:
            raise ConfigError(f"seed must not be negative, got {self.seed}")

    def to_dict(self) -> dict:
        return {
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "seed": self.seed,
            "shuffle": self.shuffle,
            "check_snapshots": self.check_snapshots,
            "init_best_child": self.init_best_child,
        }

    @classmethod
    def from_dict(cls, document: dict) -> "TrainConfig":
        known = {"learning_rate", "epochs", "batch_size", "seed", "shuffle", "check_snapshots", "init_best_child"}
        unknown = set(document) - known
        if unknown:
            raise ConfigError(f"Unknown training settings: {sorted(unknown)}")
        try:
            return cls(learning_rate=float(document.get("learning_rate", 0.01)),
                       epochs=int(document.get("epochs", 100)),
                       batch_size=int(document.get("batch_size", 32)),
                       seed=int(document.get("seed", 0)),
                       shuffle=bool(document.get("shuffle", True)),
                       check_snapshots=bool(document.get("check_snapshots", False)),
                       init_best_child=bool(document.get("init_best_child", False)))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid training settings: {e}") from e

    def __repr__(self):
        return (f"TrainConfig(learning_rate={self.learning_rate}, epochs={self.epochs}, "
                f"batch_size={self.batch_size}, seed={self.seed}, shuffle={self.shuffle}, "
                f"init_best_child={self.init_best_child})")
