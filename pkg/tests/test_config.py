import json
from fractions import Fraction

import pytest

from config import CliConfig, load_config, with_overrides


def test_defaults():
    config = CliConfig()
    assert config.verification.seed == 20240101
    assert config.verification.depth == 64
    assert config.verification.sample_count == 1000
    assert config.limits.universe_cap == 24
    assert config.probe.tolerance_value == Fraction(1, 1000000)


def test_load(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"verification": {"seed": 7, "workers": 2}, "probe": {"tolerance": "1/8"}}))
    config = load_config(str(path))
    assert config.verification.seed == 7
    assert config.verification.workers == 2
    assert config.verification.depth == 64
    assert config.probe.tolerance_value == Fraction(1, 8)


@pytest.mark.parametrize(
    "content, message",
    [
        ("{not json", "Invalid JSON"),
        ('{"verification": {"depth": 0}}', "validation failed"),
        ('{"probe": {"tolerance": "-1/2"}}', "validation failed"),
        ('{"probe": {"tolerance": "1/0"}}', "validation failed"),
    ],
)
def test_bad_files(tmp_path, content, message):
    path = tmp_path / "config.json"
    path.write_text(content)
    with pytest.raises(ValueError, match=message):
        load_config(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(ValueError, match="not found"):
        load_config(str(tmp_path / "absent.json"))


def test_overrides():
    config = CliConfig()
    assert with_overrides(config) is config
    changed = with_overrides(config, seed=3, depth=8, samples=10)
    assert (changed.verification.seed, changed.verification.depth, changed.verification.sample_count) == (3, 8, 10)
    assert config.verification.seed == 20240101
    with pytest.raises(ValueError):
        with_overrides(config, depth=0)
