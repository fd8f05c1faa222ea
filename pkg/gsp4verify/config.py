"""
gsp4verify Configuration Management

Handles the ~/.gsp4verify/ directory and the settings file that seeds
every command-line run.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError
from .log import get_logger

log = get_logger("config")


DEFAULT_SETTINGS: Dict[str, Any] = {
    "primes": [2, 3],
    "seed": 0,
    "truncation": 200,
    "max_weight": 10,
    "recursion_bound": 3,
    "branching_degree_budget": 8,
    "random_specializations": 20,
    "moduli_samples": 10,
    "max_valuation": 64,
    "output_format": "json",
}

OUTPUT_FORMATS = ("json", "csv", "markdown")


class VerifyConfig:
    """Manages gsp4verify configuration and settings loading."""

    def __init__(self, config_dir: Optional[Path] = None):
        """Initialize configuration paths."""
        home = os.getenv("GSP4VERIFY_HOME")
        if config_dir is not None:
            self.config_dir = Path(config_dir)
        elif home:
            self.config_dir = Path(home)
        else:
            self.config_dir = Path.home() / ".gsp4verify"
        self.settings_file = self.config_dir / "settings.json"

    def ensure_config_exists(self):
        """Create the config directory and a default settings file if missing."""
        self.config_dir.mkdir(exist_ok=True, parents=True)
        if not self.settings_file.exists():
            self._create_default_settings()

    def load_settings(self, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Load settings, layering:
        1. built-in defaults
        2. ~/.gsp4verify/settings.json (if present)
        3. explicit overrides (e.g. from command-line flags), ignoring None values

        Raises:
            ConfigError: on unknown keys or values of the wrong type
        """
        settings = dict(DEFAULT_SETTINGS)

        stored = self._load_file()
        if stored:
            settings.update(self._validated(stored, source=str(self.settings_file)))

        if overrides:
            present = {k: v for k, v in overrides.items() if v is not None}
            settings.update(self._validated(present, source="overrides"))

        return settings

    def _load_file(self) -> Optional[Dict[str, Any]]:
        """Read settings.json; a malformed file is a configuration error."""
        if not self.settings_file.exists():
            return None
        try:
            data = json.loads(self.settings_file.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"Could not parse {self.settings_file}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{self.settings_file} must contain a JSON object")
        return data

    def _validated(self, values: Dict[str, Any], source: str) -> Dict[str, Any]:
        """Check keys and types against the defaults."""
        for key, value in values.items():
            if key not in DEFAULT_SETTINGS:
                raise ConfigError(f"Unknown setting '{key}' in {source}")
            expected = type(DEFAULT_SETTINGS[key])
            if expected is list:
                if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
                    raise ConfigError(f"Setting '{key}' in {source} must be a list of integers")
            elif not isinstance(value, expected) or isinstance(value, bool):
                raise ConfigError(
                    f"Setting '{key}' in {source} must be {expected.__name__}, "
                    f"got {type(value).__name__}"
                )
        if values.get("output_format", "json") not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}")
        return values

    def _create_default_settings(self):
        """Write the defaults so users have a file to edit."""
        self.settings_file.write_text(
            json.dumps(DEFAULT_SETTINGS, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        log.debug("Wrote default settings", path=str(self.settings_file))
