"""Testing the clustering configurations."""

import os
from tempfile import TemporaryDirectory
from unittest import TestCase

import pytest
from pydantic import ValidationError

from borgia.affinity.affinity_spec import AffinitySpec
from borgia.clustering.configuration import (
    ClassicConfig,
    EngineConfig,
    load_classic_config,
    load_engine_config,
    save_classic_config,
    save_engine_config,
)


def test_engine_config_init():
    """Tests the defaults of the engine configuration."""
    config = EngineConfig()

    # ASSERTS

    assert config.alpha == 0.7
    assert config.p == 3.0
    assert config.c == 0.0
    assert config.tnorm == "product"
    assert config.delta == 0.1
    assert config.delta_mode == "dynamic-first"
    assert config.policy == "early-roman"
    assert config.target_k is None
    assert config.affinity is None


@pytest.mark.parametrize(
    "parameters",
    [
        {"alpha": 1.5},
        {"alpha": -0.1},
        {"p": -1},
        {"delta": 0},
        {"delta_mode": "adaptive"},
        {"target_k": 0},
        {"max_stall_iterations": 0},
        {"tnorm": "minimum-ish"},
        {"policy": "imperial"},
    ],
)
def test_engine_config_validation(parameters):
    """Tests that invalid engine parameters are rejected."""
    with pytest.raises(ValidationError):
        EngineConfig(**parameters)


def test_engine_config_save_load():
    """Tests the saving and loading of an engine configuration."""
    config = EngineConfig(
        alpha=0.4, target_k=3, affinity=AffinitySpec(kind="sn", base=AffinitySpec(kind="bcf"))
    )
    with TemporaryDirectory() as temp_dir:
        file_path = save_engine_config(config, temp_dir)
        loaded = load_engine_config(temp_dir)

        # ASSERTS

        assert os.path.isfile(file_path)
        assert loaded == config
        TestCase().assertDictEqual(config.dict(), load_engine_config(file_path).dict())


def test_classic_config():
    """Tests the classic configuration defaults, validation and persistence."""
    config = ClassicConfig(epsilon=0.01)

    # ASSERTS

    assert config.G == 1.0
    assert config.delta is None
    assert config.feature_source == "adjacency-rows"
    assert config.affinity.kind == "combined"
    for parameters in ({"G": 0}, {"epsilon": -1.0}, {"max_iterations": 0}):
        with pytest.raises(ValidationError):
            ClassicConfig(**parameters)
    with TemporaryDirectory() as temp_dir:
        save_classic_config(config, temp_dir)
        assert load_classic_config(temp_dir) == config
