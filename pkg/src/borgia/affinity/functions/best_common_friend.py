"""Best common friend affinity: strongest shared third party."""

from typing import Any, Optional

import torch

from ...errors import DimensionMismatchError
from ...graph.core import Graph, TemporalGraph
from ..core import AffinityFunction, AffinityMatrix


def best_common_friend(
    graph: Graph, base: Optional[AffinityMatrix] = None
) -> AffinityMatrix:
    """Computes the best common friend affinity.

    With M the adjacency weights (or the base affinity when given),
    A(x, y) = max_z min(M(x, z), M(y, z)) / sum_a M(x, a), where z ranges over
    every actor other than x and y.

    Args:
        graph: graph of the actors.
        base: previously computed affinity used in place of the weights. Defaults to None.

    Raises:
        DimensionMismatchError: the base affinity does not cover the graph's actors.

    Returns:
        the best common friend affinity matrix.
    """
    if base is None:
        matrix = graph.weights
        tag = "BCF"
    else:
        if base.n != graph.n:
            raise DimensionMismatchError(
                f"Base affinity has {base.n} actors, the graph has {graph.n}."
            )
        matrix = base.values
        tag = f"BCF({base.kind})"

    n = matrix.shape[0]
    common = torch.zeros_like(matrix)
    # one row at a time keeps memory quadratic
    for x in range(n):
        # shared[y, z] = min(M(x, z), M(y, z))
        shared = torch.minimum(matrix[x].unsqueeze(0), matrix)
        # z == x and z == y are not third parties; weights are non-negative so 0 drops them
        shared[:, x] = 0.0
        shared.fill_diagonal_(0.0)
        common[x] = shared.max(dim=1).values

    totals = matrix.sum(dim=1, keepdim=True)
    values = torch.where(
        totals > 0,
        common / torch.where(totals > 0, totals, torch.ones_like(totals)),
        torch.zeros_like(common),
    )
    # shares never exceed the row total, the clamp only absorbs rounding
    return AffinityMatrix(graph.labels, values.clamp(0.0, 1.0), kind=tag)


class BestCommonFriendAffinity(AffinityFunction):
    """Best common friend affinity function, optionally chained on a base affinity."""

    kind = "best_common_friend"
    tag = "BCF"
    personal = True
    accepts_base = True

    def compute(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        base: Optional[AffinityMatrix] = None,
        **kwargs: Any,
    ) -> AffinityMatrix:
        """Computes the best common friend affinity of the graph.

        Args:
            graph: graph of the actors. Defaults to None.
            temporal: unused. Defaults to None.
            base: affinity to build upon. Defaults to None.

        Raises:
            ValueError: the graph is missing.

        Returns:
            the best common friend affinity matrix.
        """
        if graph is None:
            raise ValueError("The best common friend affinity requires a graph.")
        return best_common_friend(graph, base=base)
