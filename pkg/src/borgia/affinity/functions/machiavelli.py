"""Machiavelli affinity: similarity of neighbourhood influence."""

from typing import Any, Optional

import torch

from ...graph.core import Graph, TemporalGraph, degrees
from ..core import AffinityFunction, AffinityMatrix


def influence(graph: Graph) -> torch.Tensor:
    """Sums the unweighted total degree of each actor's out-neighbours.

    Args:
        graph: graph of the actors.

    Returns:
        vector with the influence of every actor.
    """
    neighbours = (graph.weights > 0).to(graph.weights.dtype)
    return neighbours @ degrees(graph, mode="total", weighted=False)


def machiavelli(graph: Graph) -> AffinityMatrix:
    """Computes the Machiavelli affinity.

    A(x, y) = 1 - |I(x) - I(y)| / max(I(x), I(y)), with I the influence of the
    actors; pairs where both influences are 0 get 0. The matrix is symmetric.

    Args:
        graph: graph of the actors.

    Returns:
        the Machiavelli affinity matrix.
    """
    scores = influence(graph)
    gap = (scores.unsqueeze(1) - scores.unsqueeze(0)).abs()
    peak = torch.maximum(scores.unsqueeze(1), scores.unsqueeze(0))
    values = torch.where(
        peak > 0,
        1.0 - gap / torch.where(peak > 0, peak, torch.ones_like(peak)),
        torch.zeros_like(peak),
    )
    return AffinityMatrix(graph.labels, values, kind="MA")


class MachiavelliAffinity(AffinityFunction):
    """Machiavelli affinity function."""

    kind = "machiavelli"
    tag = "MA"
    personal = False

    def compute(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        base: Optional[AffinityMatrix] = None,
        **kwargs: Any,
    ) -> AffinityMatrix:
        """Computes the Machiavelli affinity of the graph.

        Args:
            graph: graph of the actors. Defaults to None.
            temporal: unused. Defaults to None.
            base: unused. Defaults to None.

        Raises:
            ValueError: the graph is missing.

        Returns:
            the Machiavelli affinity matrix.
        """
        if graph is None:
            raise ValueError("The Machiavelli affinity requires a graph.")
        return machiavelli(graph)
