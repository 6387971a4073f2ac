"""Convex combination of the best friend and best common friend affinities."""

from typing import Any, Optional

from ...errors import ConfigurationError
from ...graph.core import Graph, TemporalGraph
from ..core import AffinityFunction, AffinityMatrix
from .best_common_friend import best_common_friend
from .best_friend import best_friend


def combine(graph: Graph, alpha: float) -> AffinityMatrix:
    """Mixes best friend and best common friend affinities.

    Args:
        graph: graph of the actors.
        alpha: weight of the best friend affinity, in [0, 1].

    Raises:
        ConfigurationError: alpha outside [0, 1].

    Returns:
        alpha * BF + (1 - alpha) * BCF.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ConfigurationError(f"alpha must lie in [0, 1], obtained {alpha}.")
    friend = best_friend(graph).values
    common = best_common_friend(graph).values
    values = alpha * friend + (1.0 - alpha) * common
    return AffinityMatrix(
        graph.labels, values.clamp(0.0, 1.0), kind=f"Combined({alpha:g})"
    )


class CombinedAffinity(AffinityFunction):
    """Combined BF/BCF affinity function.

    Parameters:
        alpha: weight of the best friend affinity.
    """

    kind = "combined"
    tag = "Combined"
    personal = True

    def compute(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        base: Optional[AffinityMatrix] = None,
        **kwargs: Any,
    ) -> AffinityMatrix:
        """Computes the combined affinity of the graph.

        Args:
            graph: graph of the actors. Defaults to None.
            temporal: unused. Defaults to None.
            base: unused. Defaults to None.

        Raises:
            ValueError: the graph is missing.

        Returns:
            the combined affinity matrix.
        """
        if graph is None:
            raise ValueError("The combined affinity requires a graph.")
        return combine(graph, alpha=float(self.parameters.get("alpha", 0.7)))
