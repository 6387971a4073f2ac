"""Best friend affinity: share of the actor's own connectivity."""

from typing import Any, Optional

from ...graph.core import Graph, TemporalGraph
from ..core import AffinityFunction, AffinityMatrix, row_normalize


def best_friend(graph: Graph) -> AffinityMatrix:
    """Computes the best friend affinity.

    A(x, y) is the weight of the edge x -> y divided by the total outgoing
    weight of x. Actors without outgoing edges get an all-zero row.

    Args:
        graph: graph of the actors.

    Returns:
        the best friend affinity matrix.
    """
    return AffinityMatrix(graph.labels, row_normalize(graph.weights), kind="BF")


class BestFriendAffinity(AffinityFunction):
    """Best friend affinity function."""

    kind = "best_friend"
    tag = "BF"
    personal = True

    def compute(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        base: Optional[AffinityMatrix] = None,
        **kwargs: Any,
    ) -> AffinityMatrix:
        """Computes the best friend affinity of the graph.

        Args:
            graph: graph of the actors. Defaults to None.
            temporal: unused. Defaults to None.
            base: unused. Defaults to None.

        Raises:
            ValueError: the graph is missing.

        Returns:
            the best friend affinity matrix.
        """
        if graph is None:
            raise ValueError("The best friend affinity requires a graph.")
        return best_friend(graph)
