"""
Tests for shared run configuration
"""

import json

import pytest

from src.shared.config.run_config import (
    RunConfig,
    build_run_config,
    load_config_file,
    parse_df_bound,
)
from src.shared.errors.errors import ParameterError


def test_defaults_are_valid_and_seeded():
    config = build_run_config(environ={})
    assert config == RunConfig()
    assert config.seed == 0


def test_layering_order(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"seed": 5, "top_n": 7, "tau": 0.3}))
    config = build_run_config(load_config_file(path), {"top_n": 3, "tau": None},
                              environ={"LEXIGRAPH_SEED": "9"})
    assert config.seed == 5
    assert config.top_n == 3
    assert config.tau == 0.3


def test_environment_seed_used_without_file():
    assert build_run_config(environ={"LEXIGRAPH_SEED": "42"}).seed == 42


def test_unknown_config_key_rejected(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"sede": 1}))
    with pytest.raises(ParameterError, match="sede"):
        load_config_file(path)


@pytest.mark.parametrize("flags", [
    {"tau": 0.0}, {"tau": 1.5}, {"top_n": 0}, {"min_count": 0}, {"tol": 0.0},
    {"max_iter": 0}, {"min_df": 5, "max_df": 2}, {"max_df": "1.5"}, {"cut_k": 0},
])
def test_out_of_range_parameters_rejected(flags):
    with pytest.raises(ParameterError):
        build_run_config(flag_values=flags, environ={})


def test_parse_df_bound_int_and_fraction():
    assert parse_df_bound("3") == 3 and isinstance(parse_df_bound("3"), int)
    assert parse_df_bound("0.25") == 0.25
    with pytest.raises(ParameterError):
        parse_df_bound("many")
