# --- eiscong_lib/config.py ---
import configparser
import logging
import os

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import DomainError

log = logging.getLogger("eiscong.config")

DEFAULT_CONFIG_PATH = os.path.join(os.path.expanduser("~"), ".eiscong", "eiscong.cfg")
THREADS_ENV = "EISCONG_THREADS"


class OracleConfig(BaseModel):
    """Truncation and tolerance settings for the floating-point oracles."""

    model_config = ConfigDict(frozen=True)

    cutoff: int = Field(100_000, ge=10)
    lattice_cutoff: int = Field(300, ge=10)
    im_z: float = Field(8.0, ge=1.0)
    tolerance: float = Field(1e-6, gt=0.0)

    @classmethod
    def build(cls, **values) -> "OracleConfig":
        """Validates values, reporting failures as invalid-config."""
        try:
            return cls(**values)
        except ValidationError as e:
            raise DomainError("invalid-config", str(e).splitlines()[0]) from e


class ConfigService:
    """Manages reading from and writing to the eiscong.cfg file."""

    def __init__(self, config_path: str | None = None):
        self.config_path = config_path or DEFAULT_CONFIG_PATH
        self.defaults = {
            "Oracle": {
                "cutoff": "100000",
                "lattice_cutoff": "300",
                "im_z": "8.0",
                "tolerance": "1e-6",
            },
            "Eisenstein": {"precision": "100"},
            "Runtime": {"threads": "1"},
        }

    def get_settings(self) -> dict:
        """Reads settings from the config file, applying defaults if missing."""
        config = configparser.ConfigParser()
        for section, values in self.defaults.items():
            config[section] = values

        try:
            found = config.read(self.config_path)
        except configparser.Error as e:
            raise DomainError("invalid-config", f"{self.config_path}: {e}") from e
        if not found:
            log.debug("Config file not found at %s. Using defaults.", self.config_path)
        return self._config_to_dict(config)

    def save_settings(self, settings: dict):
        """Saves a dictionary of settings to the config file."""
        config = configparser.ConfigParser()
        for section, values in settings.items():
            config[section] = {k: str(v) for k, v in values.items()}

        try:
            os.makedirs(os.path.dirname(self.config_path) or ".", exist_ok=True)
            with open(self.config_path, "w") as configfile:
                config.write(configfile)
            log.info("Settings successfully saved to %s", self.config_path)
        except IOError as e:
            log.error("Failed to write settings to %s: %s", self.config_path, e)

    def get_oracle_config(self) -> OracleConfig:
        oracle = self.get_settings()["Oracle"]
        try:
            values = {
                "cutoff": int(oracle["cutoff"]),
                "lattice_cutoff": int(oracle["lattice_cutoff"]),
                "im_z": float(oracle["im_z"]),
                "tolerance": float(oracle["tolerance"]),
            }
        except (KeyError, ValueError) as e:
            raise DomainError("invalid-config", f"[Oracle] {e}") from e
        return OracleConfig.build(**values)

    def get_precision(self) -> int:
        return self._positive_int("Eisenstein", "precision")

    def get_threads(self) -> int:
        """Worker count; EISCONG_THREADS takes precedence over [Runtime] threads."""
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                threads = int(env)
            except ValueError as e:
                raise DomainError("invalid-config", f"{THREADS_ENV}={env!r}") from e
            if threads < 1:
                raise DomainError("invalid-config", f"{THREADS_ENV} must be positive")
            return threads
        return self._positive_int("Runtime", "threads")

    def _positive_int(self, section: str, key: str) -> int:
        raw = self.get_settings()[section][key]
        try:
            value = int(raw)
        except ValueError as e:
            raise DomainError("invalid-config", f"[{section}] {key}={raw!r}") from e
        if value < 1:
            raise DomainError("invalid-config", f"[{section}] {key} must be positive")
        return value

    def _config_to_dict(self, config: configparser.ConfigParser) -> dict:
        """Converts a ConfigParser object to a nested dictionary."""
        return {s: dict(config.items(s)) for s in config.sections()}
