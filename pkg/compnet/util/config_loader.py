import json
import logging
import os

from compnet.core.errors import ConfigError

SEED = "COMPNET_SEED"
OUT_DIR = "COMPNET_OUT_DIR"
LOG_LEVEL = "COMPNET_LOG_LEVEL"
WORKERS = "COMPNET_WORKERS"


class ConfigLoader:
    """
    Looks up settings in the environment first and in the properties of a JSON config document second. Load the
    .env file with dotenv before creating the loader to make its values part of the environment.
    """

    def __init__(self, config_path: str = None):
        self.config_path = config_path
        self._properties = None

    def get_seed(self) -> int:
        return self._as_int(SEED, self.get_property(SEED, default="0"))

    def get_out_dir(self) -> str:
        return self.get_property(OUT_DIR, default=".")

    def get_log_level(self) -> int:
        name = self.get_property(LOG_LEVEL, default="WARNING").upper()
        level = logging.getLevelName(name)
        if not isinstance(level, int):
            raise ConfigError(f"Unknown log level {name}")
        return level

    def get_workers(self) -> int:
        workers = self._as_int(WORKERS, self.get_property(WORKERS, default="1"))
        if workers < 1:
            raise ConfigError(f"{WORKERS} must be at least 1, got {workers}")
        return workers

    def get_property(self, key: str, default: str = None) -> str:
        value = os.environ.get(key)
        if not value and self.config_path:
            value = self.load_properties_from_file(self.config_path).get(key)
        if not value:
            value = default

        if value is None:
            raise ConfigError(f"Could not find property {key}")

        return str(value)

    def load_properties_from_file(self, path: str) -> dict:
        """
        Reads the 'properties' object of a JSON config document, the other keys of the document belong to the
        experiment. The properties are read once and kept.
        """
        if self._properties is None:
            try:
                with open(path, "r", encoding="utf-8") as file:
                    document = json.load(file)
            except IOError as e:
                raise IOError(f"Could not read config from {path}: {e}") from e
            except json.JSONDecodeError as e:
                raise ConfigError(f"Config {path} is not valid JSON: {e}") from e
            self._properties = document.get("properties", {}) if isinstance(document, dict) else {}
        return self._properties

    @staticmethod
    def _as_int(key: str, value: str) -> int:
        try:
            return int(value)
        except ValueError as e:
            raise ConfigError(f"{key} must be an integer, got {value}") from e
