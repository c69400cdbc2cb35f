"""Tests for AnalysisConfig loading and saving."""
from fractions import Fraction

import pytest

from cantor_normality.config import DESK_SCALE_CONFIG, AnalysisConfig


def test_defaults():
    config = AnalysisConfig()
    assert config.fraction("tolerance") == Fraction(1, 20)
    assert config.eps_fractions() == [Fraction(1, 10), Fraction(1, 5)]
    assert config.mass_threshold == 10


def test_yaml_round_trip(tmp_path):
    config = AnalysisConfig(name="yaml-run", tolerance="1/7", k_values=[1, 3], seed=42)
    path = str(tmp_path / "config.yaml")
    config.to_yaml(path)
    loaded = AnalysisConfig.load(path)
    assert loaded == config
    assert loaded.fraction("tolerance") == Fraction(1, 7)


def test_json_round_trip(tmp_path):
    config = AnalysisConfig(eps_values=["0", "1/3"], verbose=False)
    path = str(tmp_path / "config.json")
    config.to_json(path)
    loaded = AnalysisConfig.load(path)
    assert loaded == config
    assert loaded.eps_fractions() == [Fraction(0), Fraction(1, 3)]


def test_unknown_extension():
    with pytest.raises(ValueError):
        AnalysisConfig.load("settings.toml")


def test_from_dict_ignores_unknown_keys():
    config = AnalysisConfig.from_dict({"seed": 5, "colour": "blue"})
    assert config.seed == 5
    assert not hasattr(config, "colour")


def test_empty_yaml_gives_defaults(tmp_path):
    path = tmp_path / "empty.yml"
    path.write_text("")
    assert AnalysisConfig.load(str(path)) == AnalysisConfig()


def test_desk_scale_config_is_quiet():
    assert not DESK_SCALE_CONFIG.verbose
    assert DESK_SCALE_CONFIG.name == "desk-scale"
