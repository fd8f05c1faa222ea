#!/usr/bin/env python3
"""
Test the settings layering of VerifyConfig.
"""

import json

import pytest

from gsp4verify.config import DEFAULT_SETTINGS, VerifyConfig
from gsp4verify.errors import ConfigError


@pytest.fixture
def config(tmp_path):
    return VerifyConfig(config_dir=tmp_path / "home")


def write_settings(config, data):
    config.config_dir.mkdir(parents=True, exist_ok=True)
    config.settings_file.write_text(json.dumps(data))


def test_defaults_without_file(config):
    assert config.load_settings() == DEFAULT_SETTINGS


def test_ensure_config_exists_writes_defaults(config):
    config.ensure_config_exists()
    assert config.settings_file.exists()
    assert json.loads(config.settings_file.read_text()) == DEFAULT_SETTINGS
    # A second call leaves the edited file alone
    write_settings(config, {"seed": 5})
    config.ensure_config_exists()
    assert config.load_settings()["seed"] == 5


def test_environment_home(tmp_path, monkeypatch):
    monkeypatch.setenv("GSP4VERIFY_HOME", str(tmp_path))
    assert VerifyConfig().settings_file == tmp_path / "settings.json"


def test_layering(config):
    """File values override defaults; explicit overrides win; None is ignored."""
    write_settings(config, {"truncation": 50, "primes": [5]})
    settings = config.load_settings({"truncation": 80, "seed": None})
    assert settings["truncation"] == 80
    assert settings["primes"] == [5]
    assert settings["seed"] == DEFAULT_SETTINGS["seed"]


@pytest.mark.parametrize(
    "data",
    [
        {"colour": "blue"},
        {"truncation": "200"},
        {"seed": True},
        {"primes": [2, "3"]},
        {"output_format": "yaml"},
    ],
)
def test_invalid_file_values(config, data):
    write_settings(config, data)
    with pytest.raises(ConfigError):
        config.load_settings()


def test_invalid_override(config):
    with pytest.raises(ConfigError):
        config.load_settings({"max_weight": 2.5})


def test_malformed_file(config):
    config.config_dir.mkdir(parents=True)
    config.settings_file.write_text("{not json")
    with pytest.raises(ConfigError):
        config.load_settings()
    config.settings_file.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        config.load_settings()
