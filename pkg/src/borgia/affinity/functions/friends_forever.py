"""Friends forever affinity: best friend averaged over time."""

from typing import Any, Optional

import torch

from ...graph.core import DTYPE, Graph, TemporalGraph
from ..core import AffinityFunction, AffinityMatrix, row_normalize


def friends_forever(temporal: TemporalGraph) -> AffinityMatrix:
    """Computes the friends forever affinity.

    Each slice contributes its best friend affinity; slices where x has no
    outgoing edge contribute 0. The result is the plain average over slices.

    Args:
        temporal: temporal graph of the actors.

    Returns:
        the friends forever affinity matrix.
    """
    total = torch.zeros((temporal.n, temporal.n), dtype=DTYPE)
    for graph_slice in temporal:
        total += row_normalize(graph_slice.weights)
    return AffinityMatrix(temporal.labels, total / len(temporal), kind="FF")


class FriendsForeverAffinity(AffinityFunction):
    """Friends forever affinity function."""

    kind = "friends_forever"
    tag = "FF"
    personal = True
    requires_temporal = True

    def compute(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        base: Optional[AffinityMatrix] = None,
        **kwargs: Any,
    ) -> AffinityMatrix:
        """Computes the friends forever affinity of the temporal graph.

        Args:
            graph: unused. Defaults to None.
            temporal: temporal graph of the actors. Defaults to None.
            base: unused. Defaults to None.

        Raises:
            ValueError: the temporal graph is missing.

        Returns:
            the friends forever affinity matrix.
        """
        if temporal is None:
            raise ValueError(
                "The friends forever affinity requires temporal slices of the graph."
            )
        return friends_forever(temporal)
