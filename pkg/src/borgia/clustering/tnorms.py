"""Triangular norms aggregating mass and affinity terms."""

import logging
from typing import Dict, List, Type

import torch
from torch import Tensor

from ..errors import ConfigurationError

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class TNorm:
    """Commutative, associative and monotone aggregation with identity 1.

    Every t-norm is bounded above by the minimum, so a zero argument always
    yields zero.

    Attributes:
        tnorm_type: name to identify the t-norm.
    """

    tnorm_type: str

    def __call__(self, x: Tensor, y: Tensor) -> Tensor:
        """Aggregates two tensors elementwise.

        Args:
            x: first argument.
            y: second argument.

        Raises:
            NotImplementedError: this method must be defined in the child classes.

        Returns:
            the aggregated values.
        """
        raise NotImplementedError(f"Inherit TNorm to implement the '{self.tnorm_type}' t-norm.")


class ProductTNorm(TNorm):
    """T(x, y) = x * y."""

    tnorm_type = "product"

    def __call__(self, x: Tensor, y: Tensor) -> Tensor:
        return x * y


class MinimumTNorm(TNorm):
    """T(x, y) = min(x, y)."""

    tnorm_type = "minimum"

    def __call__(self, x: Tensor, y: Tensor) -> Tensor:
        return torch.minimum(x, y)


def available_tnorms() -> List[str]:
    """Lists the names of the registered t-norms."""
    return [tnorm.tnorm_type for tnorm in TNorm.__subclasses__()]


def get_tnorm(tnorm_type: str) -> TNorm:
    """Instantiates a t-norm by name.

    Args:
        tnorm_type: name of the t-norm.

    Raises:
        ConfigurationError: unknown t-norm.

    Returns:
        the t-norm.
    """
    registry: Dict[str, Type[TNorm]] = {
        tnorm.tnorm_type: tnorm for tnorm in TNorm.__subclasses__()
    }
    if tnorm_type not in registry:
        raise ConfigurationError(
            f"Unknown t-norm '{tnorm_type}', available: {', '.join(registry)}."
        )
    return registry[tnorm_type]()
