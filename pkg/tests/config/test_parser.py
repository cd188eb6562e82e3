"""Tests for the config-file parser."""

import pytest

from codet.config.parser import load_config_file, parse_config, parse_override
from codet.errors import ConfigParseError


class TestParseConfig:
    def test_scalars(self):
        values = parse_config(
            'loss = "curcon"\n'
            "mode = hard_match\n"
            "steps = 500\n"
            "learning_rate = 0.1\n"
            "rel_tol = 1e-5\n"
            "seed = -3\n"
            "update_curriculum = false\n"
        )
        assert values == {
            "loss": "curcon",
            "mode": "hard_match",
            "steps": 500,
            "learning_rate": 0.1,
            "rel_tol": 1e-5,
            "seed": -3,
            "update_curriculum": False,
        }
        assert isinstance(values["steps"], int)
        assert isinstance(values["rel_tol"], float)

    def test_arrays(self):
        assert parse_config("iou_thresholds = [0.5, 0.6, 0.7]") == {
            "iou_thresholds": [0.5, 0.6, 0.7]
        }
        assert parse_config("empty = []") == {"empty": []}

    def test_comments_and_blank_lines(self):
        source = "# training\n\nsteps = 10  # short run\n\n# done\n"
        assert parse_config(source) == {"steps": 10}

    def test_empty(self):
        assert parse_config("") == {}
        assert parse_config("\n# nothing here\n") == {}

    def test_no_trailing_newline(self):
        assert parse_config("seed = 7") == {"seed": 7}

    def test_duplicate_key(self):
        with pytest.raises(ConfigParseError, match="duplicate key 'seed'") as info:
            parse_config("seed = 1\nseed = 2\n")
        assert info.value.line == 2

    def test_syntax_error_location(self):
        with pytest.raises(ConfigParseError) as info:
            parse_config("steps = 10\nlr 0.1\n")
        assert info.value.line == 2

    def test_missing_value(self):
        with pytest.raises(ConfigParseError):
            parse_config("steps =\n")


class TestParseOverride:
    def test_key_value(self):
        assert parse_override("loss=supcon") == ("loss", "supcon")
        assert parse_override("iou_thresholds=[0.5]") == ("iou_thresholds", [0.5])

    def test_requires_equals(self):
        with pytest.raises(ConfigParseError, match="key=value"):
            parse_override("loss")

    def test_single_key(self):
        with pytest.raises(ConfigParseError, match="exactly one key"):
            parse_override("a=1\nb=2")


class TestLoadConfigFile:
    def test_reads_file(self, tmp_path):
        path = tmp_path / "train.cfg"
        path.write_text("steps = 20\nloss = arcface\n")
        assert load_config_file(path) == {"steps": 20, "loss": "arcface"}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigParseError, match="cannot read"):
            load_config_file(tmp_path / "absent.cfg")
