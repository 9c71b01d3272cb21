"""Tests for run configuration resolution."""

import tempfile
from pathlib import Path

import pytest


def _write(directory, name, text):
    path = Path(directory) / name
    path.write_text(text)
    return path


class TestLoadConfig:
    """Tests for configuration precedence."""

    def test_defaults(self):
        """Without sources the documented defaults apply."""
        from gridcarbon.io import load_config

        config = load_config(env={})
        assert config.loss_rate == pytest.approx(0.05911)
        assert config.months == list(range(1, 13))
        assert config.charging_kv == 200.0
        assert config.workers == 1

    def test_precedence(self):
        """Bundle file < user file < environment < command line."""
        from gridcarbon.io import load_config

        with tempfile.TemporaryDirectory() as tmpdir:
            bundle = _write(tmpdir, "bundle.yaml", "loss_rate: 0.1\npenetration: 0.1\nseed: 1\nday_set: seasons\n")
            user = _write(tmpdir, "user.yaml", "loss_rate: 0.2\npenetration: 0.2\nseed: 2\n")
            env = {"GRIDCARBON_LOSS_RATE": "0.3", "GRIDCARBON_PENETRATION": "0.3"}

            config = load_config(bundle, user, env=env, overrides={"loss_rate": 0.4})

        assert config.loss_rate == 0.4
        assert config.penetration == 0.3
        assert config.seed == 2
        assert config.day_set == "seasons"

    def test_missing_sources_are_skipped(self):
        """None entries stand for absent files."""
        from gridcarbon.io import load_config

        assert load_config(None, env={}).out_dir == "out"

    def test_overrides_skip_none(self):
        """Unset command-line values leave lower layers alone."""
        from gridcarbon.io import load_config

        config = load_config(env={"GRIDCARBON_WORKERS": "4"}, overrides={"workers": None})
        assert config.workers == 4

    def test_list_values(self):
        """List keys accept scalars and YAML lists."""
        from gridcarbon.io import load_config

        config = load_config(env={"GRIDCARBON_MONTHS": "[1, 7]", "GRIDCARBON_SLACK_BUSES": "B1"})
        assert config.months == [1, 7]
        assert config.slack_buses == ["B1"]

    def test_fleet_factors(self):
        """The configuration yields matching fleet assumptions."""
        from gridcarbon.io import load_config

        fleet = load_config(env={}, overrides={"penetration": 0.25}).fleet()
        assert fleet.penetration == 0.25
        assert fleet.kwh_per_gallon_ev == 8.9


class TestConfigErrors:
    """Tests for malformed configuration."""

    def test_unknown_key(self):
        """Unknown keys are refused with their source."""
        from gridcarbon.errors import ConfigError
        from gridcarbon.io import load_config

        with tempfile.TemporaryDirectory() as tmpdir:
            path = _write(tmpdir, "c.yaml", "loss: 0.1\n")
            with pytest.raises(ConfigError, match="loss"):
                load_config(path, env={})

    def test_nested_mapping(self):
        """The format is flat."""
        from gridcarbon.errors import ConfigError
        from gridcarbon.io import read_config_file

        with tempfile.TemporaryDirectory() as tmpdir:
            path = _write(tmpdir, "c.yaml", "fleet:\n  penetration: 0.1\n")
            with pytest.raises(ConfigError, match="flat"):
                read_config_file(path)

    def test_bad_boolean(self):
        """Booleans must be YAML booleans."""
        from gridcarbon.errors import ConfigError
        from gridcarbon.io import load_config

        with pytest.raises(ConfigError):
            load_config(env={"GRIDCARBON_RELAXED": "maybe"})

    def test_bad_penetration(self):
        """Fleet factors are checked once the configuration is resolved."""
        from gridcarbon.errors import ConfigError
        from gridcarbon.io import load_config

        with pytest.raises(ConfigError):
            load_config(env={}, overrides={"penetration": 2.0})

    def test_empty_file(self):
        """An empty file changes nothing."""
        from gridcarbon.io import read_config_file

        with tempfile.TemporaryDirectory() as tmpdir:
            assert read_config_file(_write(tmpdir, "c.yaml", "")) == {}
