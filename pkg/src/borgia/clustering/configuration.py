"""Configuration of the clustering simulations."""

from __future__ import annotations

import json
import os
from typing import Any, Literal, Optional

from pydantic import BaseModel, root_validator, validator

from ..affinity.affinity_spec import AffinitySpec
from .policies import available_policies
from .tnorms import available_tnorms

ENGINE_CONFIG_FILE = "engine_config.json"
CLASSIC_CONFIG_FILE = "classic_config.json"


class EngineConfig(BaseModel):
    """Contains the parameters of a Borgia clustering run.

    Attributes:
        alpha: weight of the best friend affinity in the combined affinity. Defaults to 0.7.
        p: greedy expanse penalization exponent. Defaults to 3.
        c: exponent of the mass product in the attraction. Defaults to 0.
        tnorm: t-norm aggregating the mass and affinity terms. Defaults to "product".
        delta: maximum displacement per iteration. Defaults to 0.1.
        delta_mode: "static" or "dynamic-first" (the first iteration uses the
            smallest collision gap as displacement). Defaults to "dynamic-first".
        policy: growth policy. Defaults to "early-roman".
        target_k: number of communities to cut the dendrogram at, None for the
            score-based cut. Defaults to None.
        max_stall_iterations: iterations without fusions before giving up. Defaults to 1e6.
        weighted_degree: whether the social values are weighted degrees. Defaults to False.
        affinity: affinity replacing the combined one, None to use alpha. Defaults to None.
    """

    alpha: float = 0.7
    p: float = 3.0
    c: float = 0.0
    tnorm: str = "product"
    delta: float = 0.1
    delta_mode: Literal["static", "dynamic-first"] = "dynamic-first"
    policy: str = "early-roman"
    target_k: Optional[int] = None
    max_stall_iterations: int = 1_000_000
    weighted_degree: bool = False
    affinity: Optional[AffinitySpec] = None

    @validator("alpha")
    def check_alpha(cls, alpha: float) -> float:
        """Validates the affinity mix."""
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], obtained {alpha}.")
        return alpha

    @validator("p")
    def check_p(cls, p: float) -> float:
        """Validates the penalization exponent."""
        if p < 0:
            raise ValueError(f"p must be non-negative, obtained {p}.")
        return p

    @validator("delta")
    def check_delta(cls, delta: float) -> float:
        """Validates the maximum displacement."""
        if not delta > 0:
            raise ValueError(f"delta must be positive, obtained {delta}.")
        return delta

    @validator("target_k")
    def check_target_k(cls, target_k: Optional[int]) -> Optional[int]:
        """Validates the requested number of communities."""
        if target_k is not None and target_k < 1:
            raise ValueError(f"target_k must be positive, obtained {target_k}.")
        return target_k

    @validator("max_stall_iterations")
    def check_max_stall_iterations(cls, max_stall_iterations: int) -> int:
        """Validates the stall guard."""
        if max_stall_iterations < 1:
            raise ValueError("max_stall_iterations must be positive.")
        return max_stall_iterations

    @validator("tnorm")
    def check_tnorm(cls, tnorm: str) -> str:
        """Validates the t-norm name."""
        if tnorm not in available_tnorms():
            raise ValueError(f"Unknown t-norm '{tnorm}', available: {available_tnorms()}.")
        return tnorm

    @validator("policy")
    def check_policy(cls, policy: str) -> str:
        """Validates the policy name."""
        if policy not in available_policies():
            raise ValueError(f"Unknown policy '{policy}', available: {available_policies()}.")
        return policy


class ClassicConfig(BaseModel):
    """Contains the parameters of a classic gravitational clustering run.

    Attributes:
        G: gravitational constant. Defaults to 1.
        epsilon: collision distance, None for 1e-3 of the initial largest
            pairwise distance. Defaults to None.
        delta: displacement of the fastest particle per iteration, None for
            1e-2 of the initial largest pairwise distance. Defaults to None.
        max_iterations: iterations before giving up. Defaults to 100000.
        feature_source: "adjacency-rows" or "affinity-rows". Defaults to "adjacency-rows".
        affinity: affinity used with "affinity-rows". Defaults to the combined affinity.
    """

    G: float = 1.0
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    max_iterations: int = 100_000
    feature_source: Literal["adjacency-rows", "affinity-rows"] = "adjacency-rows"
    affinity: AffinitySpec = AffinitySpec(kind="combined", alpha=0.7)

    @root_validator(skip_on_failure=True)
    def check_positive_parameters(cls, values: Any) -> Any:
        """Validates the physical parameters.

        Args:
            values: values of the configuration.

        Raises:
            ValueError: non-positive G, epsilon, delta or max_iterations.

        Returns:
            values of the configuration.
        """
        for name in ("G", "epsilon", "delta", "max_iterations"):
            value = values.get(name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, obtained {value}.")
        return values


def save_engine_config(config: EngineConfig, save_path: str) -> str:
    """Saves an engine configuration in a json file.

    Args:
        config: engine configuration.
        save_path: path of the saving directory.

    Returns:
        path of the written file.
    """
    file_path = os.path.join(save_path, ENGINE_CONFIG_FILE)
    with open(file_path, "w") as outfile:
        json.dump(json.loads(config.json()), outfile, indent=4)
    return file_path


def load_engine_config(file_path: str) -> EngineConfig:
    """Loads an engine configuration from a json file.

    Args:
        file_path: path of the file, or of the directory holding ENGINE_CONFIG_FILE.

    Returns:
        the engine configuration.
    """
    if os.path.isdir(file_path):
        file_path = os.path.join(file_path, ENGINE_CONFIG_FILE)
    return EngineConfig.parse_file(file_path)


def save_classic_config(config: ClassicConfig, save_path: str) -> str:
    """Saves a classic gravitational clustering configuration in a json file.

    Args:
        config: classic configuration.
        save_path: path of the saving directory.

    Returns:
        path of the written file.
    """
    file_path = os.path.join(save_path, CLASSIC_CONFIG_FILE)
    with open(file_path, "w") as outfile:
        json.dump(json.loads(config.json()), outfile, indent=4)
    return file_path


def load_classic_config(file_path: str) -> ClassicConfig:
    """Loads a classic gravitational clustering configuration from a json file.

    Args:
        file_path: path of the file, or of the directory holding CLASSIC_CONFIG_FILE.

    Returns:
        the classic configuration.
    """
    if os.path.isdir(file_path):
        file_path = os.path.join(file_path, CLASSIC_CONFIG_FILE)
    return ClassicConfig.parse_file(file_path)
