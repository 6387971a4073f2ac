"""Growth policies penalizing the attraction of large communities."""

import logging
from typing import Dict, List, Type

import torch
from torch import Tensor

from ..errors import ConfigurationError

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class Policy:
    """Divides the attraction felt by a community according to its mass.

    Attributes:
        policy_type: name to identify the policy.
    """

    policy_type: str

    def penalty(self, masses: Tensor, p: float) -> Tensor:
        """Computes the divisor applied to the attraction of every community.

        Args:
            masses: social values of the live communities.
            p: greedy expanse penalization exponent.

        Raises:
            NotImplementedError: this method must be defined in the child classes.

        Returns:
            positive divisor per community.
        """
        raise NotImplementedError(f"Inherit Policy to implement the '{self.policy_type}' policy.")


class NaivePolicy(Policy):
    """Every community attracts with its full strength, whatever its size."""

    policy_type = "naive"

    def penalty(self, masses: Tensor, p: float) -> Tensor:
        return torch.ones_like(masses)


class EarlyRomanPolicy(Policy):
    """Large communities are slowed down by m^p."""

    policy_type = "early-roman"

    def penalty(self, masses: Tensor, p: float) -> Tensor:
        if p == 0:
            return torch.ones_like(masses)
        # massless communities have no attraction to penalize
        return torch.where(masses > 0, masses.pow(p), torch.ones_like(masses))


def available_policies() -> List[str]:
    """Lists the names of the registered policies."""
    return [policy.policy_type for policy in Policy.__subclasses__()]


def get_policy(policy_type: str) -> Policy:
    """Instantiates a policy by name.

    Args:
        policy_type: name of the policy.

    Raises:
        ConfigurationError: unknown policy.

    Returns:
        the policy.
    """
    registry: Dict[str, Type[Policy]] = {
        policy.policy_type: policy for policy in Policy.__subclasses__()
    }
    if policy_type not in registry:
        raise ConfigurationError(
            f"Unknown policy '{policy_type}', available: {', '.join(registry)}."
        )
    return registry[policy_type]()
