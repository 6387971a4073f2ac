"""Social networking affinity: what x's friends think of y."""

from typing import Any, Optional

import torch

from ...errors import DimensionMismatchError
from ...graph.core import Graph, TemporalGraph
from ..core import AffinityFunction, AffinityMatrix
from .best_friend import best_friend


def social_networking(
    graph: Graph, base: Optional[AffinityMatrix] = None
) -> AffinityMatrix:
    """Computes the social networking affinity.

    A(x, y) is the unweighted mean of B(x', y) over the actors x' with
    B(x, x') > 0, where B is the base affinity (best friend by default).
    Actors without such x' get an all-zero row.

    Args:
        graph: graph of the actors.
        base: affinity defining the friends of each actor. Defaults to None.

    Raises:
        DimensionMismatchError: the base affinity does not cover the graph's actors.

    Returns:
        the social networking affinity matrix.
    """
    if base is None:
        base = best_friend(graph)
    elif base.n != graph.n:
        raise DimensionMismatchError(
            f"Base affinity has {base.n} actors, the graph has {graph.n}."
        )
    friends = (base.values > 0).to(base.values.dtype)
    counts = friends.sum(dim=1, keepdim=True)
    opinions = friends @ base.values
    values = torch.where(
        counts > 0,
        opinions / torch.where(counts > 0, counts, torch.ones_like(counts)),
        torch.zeros_like(opinions),
    )
    return AffinityMatrix(graph.labels, values, kind=f"SN({base.kind})")


class SocialNetworkingAffinity(AffinityFunction):
    """Social networking affinity function over a base affinity."""

    kind = "social_networking"
    tag = "SN"
    personal = False
    accepts_base = True

    def compute(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        base: Optional[AffinityMatrix] = None,
        **kwargs: Any,
    ) -> AffinityMatrix:
        """Computes the social networking affinity of the graph.

        Args:
            graph: graph of the actors. Defaults to None.
            temporal: unused. Defaults to None.
            base: affinity defining the friends of each actor. Defaults to None.

        Raises:
            ValueError: the graph is missing.

        Returns:
            the social networking affinity matrix.
        """
        if graph is None:
            raise ValueError("The social networking affinity requires a graph.")
        return social_networking(graph, base=base)
