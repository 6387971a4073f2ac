"""Partition quality measures."""

import logging
from typing import List, Set

import networkx as nx
from sklearn.metrics import adjusted_rand_score, normalized_mutual_info_score

from ..errors import ActorMismatchError, InvalidGraphError
from ..graph.core import Graph, symmetrize
from .partition import Partition

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


def _check_covers(graph: Graph, partition: Partition) -> Partition:
    """Aligns a partition with the actors of a graph."""
    if len(partition.labels) != graph.n or set(partition.labels) != set(graph.labels):
        raise ActorMismatchError("The partition does not cover the actors of the graph.")
    return Partition(labels=list(graph.labels), assignment=[0] * graph.n).aligned_with(partition)


def _label_sets(partition: Partition) -> List[Set[str]]:
    return [{partition.labels[index] for index in members} for members in partition.communities()]


def modularity(graph: Graph, partition: Partition) -> float:
    """Newman modularity on the undirected, weighted reading of the graph.

    Args:
        graph: graph of the actors; directed graphs are symmetrized by max.
        partition: partition of the actors.

    Raises:
        InvalidGraphError: graph without edges.
        ActorMismatchError: the partition does not cover the graph.

    Returns:
        modularity in [-1/2, 1], exactly 0 for a single community.
    """
    partition = _check_covers(graph, partition)
    if graph.number_of_edges() == 0:
        raise InvalidGraphError("Modularity is undefined on a graph without edges.")
    if partition.k == 1:
        return 0.0
    undirected = symmetrize(graph).to_networkx(weight="weight")
    return float(nx.community.modularity(undirected, _label_sets(partition), weight="weight"))


def modularity_density(graph: Graph, partition: Partition) -> float:
    """Modularity density: sum over communities of (2 internal - boundary edges) / size.

    Edges are counted unweighted on the undirected reading of the graph.

    Args:
        graph: graph of the actors.
        partition: partition of the actors.

    Raises:
        ActorMismatchError: the partition does not cover the graph.
        InvalidGraphError: empty community.

    Returns:
        the modularity density.
    """
    partition = _check_covers(graph, partition)
    undirected = symmetrize(graph).to_networkx(weight="weight")
    density = 0.0
    for community in _label_sets(partition):
        if not community:
            raise InvalidGraphError("Communities cannot be empty.")
        internal = undirected.subgraph(community).number_of_edges()
        boundary = nx.cut_size(undirected, community, weight=None)
        density += (2 * internal - boundary) / len(community)
    return density


def _identical(first: Partition, second: Partition) -> bool:
    """Whether two aligned partitions agree up to community renaming."""
    return Partition.from_labels(first.labels, first.assignment) == Partition.from_labels(
        second.labels, second.assignment
    )


def nmi(first: Partition, second: Partition) -> float:
    """Normalized mutual information, normalized by the arithmetic mean of the entropies.

    Args:
        first: partition of the actors.
        second: partition of the same actors.

    Raises:
        ActorMismatchError: different actors.

    Returns:
        value in [0, 1], exactly 1 for identical partitions.
    """
    second = first.aligned_with(second)
    if _identical(first, second):
        return 1.0
    value = normalized_mutual_info_score(
        first.assignment, second.assignment, average_method="arithmetic"
    )
    return min(1.0, max(0.0, float(value)))


def ari(first: Partition, second: Partition) -> float:
    """Adjusted Rand index.

    Args:
        first: partition of the actors.
        second: partition of the same actors.

    Raises:
        ActorMismatchError: different actors.

    Returns:
        value in [-1, 1], exactly 1 for identical partitions.
    """
    second = first.aligned_with(second)
    if _identical(first, second):
        return 1.0
    return float(adjusted_rand_score(first.assignment, second.assignment))
