"""Graph representation and basic statistics."""

from typing import Iterator, Literal, Optional, Sequence, Tuple

import networkx as nx
import torch
from torch import Tensor

from ..errors import DimensionMismatchError, InvalidGraphError

DegreeMode = Literal["in", "out", "total"]

DTYPE = torch.float64


class Graph:
    """Directed or undirected weighted graph over labelled actors.

    Graphs are immutable after construction: the weight matrix must not be
    modified in place by callers.

    Attributes:
        labels: actor names, unique and non-empty.
        weights: n x n matrix where entry (i, j) is the weight of the edge i -> j.
        directed: whether the graph is directed. Undirected graphs are stored
            symmetrically.
    """

    __slots__ = ("_labels", "_weights", "_directed", "_index")

    def __init__(
        self,
        labels: Sequence[str],
        weights: Tensor,
        directed: bool = True,
    ) -> None:
        """Initializes the graph, validating its invariants.

        Args:
            labels: actor names.
            weights: square matrix of non-negative weights with a zero diagonal.
            directed: whether the graph is directed. Defaults to True.

        Raises:
            InvalidGraphError: duplicate or empty labels, negative weights,
                self-loops or an asymmetric matrix for an undirected graph.
            DimensionMismatchError: the matrix is not square or does not match
                the number of labels.
        """
        labels = tuple(str(label) for label in labels)
        weights = torch.as_tensor(weights, dtype=DTYPE).clone()

        if weights.dim() != 2 or weights.shape[0] != weights.shape[1]:
            raise DimensionMismatchError(
                f"Expected a square weight matrix, obtained shape {tuple(weights.shape)}."
            )
        if weights.shape[0] != len(labels):
            raise DimensionMismatchError(
                f"{len(labels)} labels given for a {weights.shape[0]}x{weights.shape[0]} matrix."
            )
        if any(label == "" for label in labels):
            raise InvalidGraphError("Actor labels must be non-empty.")
        if len(set(labels)) != len(labels):
            duplicated = sorted({label for label in labels if labels.count(label) > 1})
            raise InvalidGraphError(f"Duplicate actor labels: {duplicated}.")
        if bool((weights < 0).any()):
            raise InvalidGraphError("Edge weights must be non-negative.")
        if not bool(torch.isfinite(weights).all()):
            raise InvalidGraphError("Edge weights must be finite.")
        if bool((torch.diagonal(weights) != 0).any()):
            raise InvalidGraphError("Self-loops are not supported.")
        if not directed and not torch.equal(weights, weights.T):
            raise InvalidGraphError("The weight matrix of an undirected graph must be symmetric.")

        self._labels = labels
        self._weights = weights
        self._directed = bool(directed)
        self._index = {label: idx for idx, label in enumerate(labels)}

    @property
    def n(self) -> int:
        """Number of actors."""
        return len(self._labels)

    @property
    def labels(self) -> Tuple[str, ...]:
        """Actor names."""
        return self._labels

    @property
    def weights(self) -> Tensor:
        """Weight matrix (read-only by convention)."""
        return self._weights

    @property
    def directed(self) -> bool:
        """Whether the graph is directed."""
        return self._directed

    def index_of(self, label: str) -> int:
        """Gets the index of an actor.

        Args:
            label: actor name.

        Raises:
            KeyError: unknown actor.

        Returns:
            index of the actor.
        """
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"Unknown actor '{label}'.") from None

    def edges(self) -> Iterator[Tuple[int, int, float]]:
        """Iterates over the edges with non-zero weight.

        Undirected edges are reported once, with i < j.

        Yields:
            (source index, target index, weight) triples in row-major order.
        """
        for i, j in torch.nonzero(self._weights, as_tuple=False).tolist():
            if not self._directed and j < i:
                continue
            yield i, j, float(self._weights[i, j])

    def number_of_edges(self) -> int:
        """Counts the edges with non-zero weight."""
        count = int(torch.count_nonzero(self._weights))
        return count if self._directed else count // 2

    def adjacency(self) -> Tensor:
        """Unweighted adjacency matrix (1 where an edge exists)."""
        return (self._weights > 0).to(DTYPE)

    def to_networkx(self, weight: str = "weight") -> nx.Graph:
        """Converts the graph into a networkx graph whose nodes are the actor labels.

        Args:
            weight: edge attribute receiving the weights. Defaults to "weight".

        Returns:
            networkx graph (a DiGraph for directed graphs).
        """
        graph = nx.DiGraph() if self._directed else nx.Graph()
        graph.add_nodes_from(self._labels)
        graph.add_weighted_edges_from(
            ((self._labels[i], self._labels[j], w) for i, j, w in self.edges()),
            weight=weight,
        )
        return graph

    @classmethod
    def from_networkx(
        cls,
        graph: nx.Graph,
        weight: Optional[str] = "weight",
        default_weight: float = 1.0,
    ) -> "Graph":
        """Builds a graph from a networkx graph.

        Args:
            graph: networkx graph; node names become labels.
            weight: edge attribute holding the weight, None to read every edge
                as `default_weight`. Defaults to "weight".
            default_weight: weight of edges without the attribute. Defaults to 1.0.

        Returns:
            the converted graph.
        """
        labels = [str(node) for node in graph.nodes]
        index = {node: idx for idx, node in enumerate(graph.nodes)}
        weights = torch.zeros((len(labels), len(labels)), dtype=DTYPE)
        directed = graph.is_directed()
        for u, v, data in graph.edges(data=True):
            value = default_weight if weight is None else data.get(weight, default_weight)
            weights[index[u], index[v]] = float(value)
            if not directed:
                weights[index[v], index[u]] = float(value)
        return cls(labels, weights, directed=directed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._directed == other._directed
            and torch.equal(self._weights, other._weights)
        )

    def __hash__(self) -> int:
        return hash((self._labels, self._directed))

    def __repr__(self) -> str:
        kind = "directed" if self._directed else "undirected"
        return f"Graph(n={self.n}, edges={self.number_of_edges()}, {kind})"


class TemporalGraph:
    """Ordered sequence of graph slices over the same actors.

    Attributes:
        slices: the graphs, one per time unit.
    """

    __slots__ = ("_slices",)

    def __init__(self, slices: Sequence[Graph]) -> None:
        """Initializes the temporal graph.

        Args:
            slices: graphs sharing the same labels in the same order.

        Raises:
            InvalidGraphError: no slices given.
            DimensionMismatchError: slices over different actors.
        """
        slices = tuple(slices)
        if len(slices) == 0:
            raise InvalidGraphError("A temporal graph needs at least one slice.")
        reference = slices[0].labels
        for position, graph in enumerate(slices):
            if graph.labels != reference:
                raise DimensionMismatchError(
                    f"Slice {position} does not share the labels of slice 0."
                )
        self._slices = slices

    @property
    def slices(self) -> Tuple[Graph, ...]:
        """The graph slices."""
        return self._slices

    @property
    def labels(self) -> Tuple[str, ...]:
        """Actor names shared by all the slices."""
        return self._slices[0].labels

    @property
    def n(self) -> int:
        """Number of actors."""
        return self._slices[0].n

    def __len__(self) -> int:
        return len(self._slices)

    def __iter__(self) -> Iterator[Graph]:
        return iter(self._slices)

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n}, slices={len(self)})"


def degrees(g: Graph, mode: DegreeMode = "total", weighted: bool = True) -> Tensor:
    """Computes the degree of every actor.

    For undirected graphs every mode returns the same values.

    Args:
        g: graph.
        mode: "in", "out" or "total" (in + out). Defaults to "total".
        weighted: sum of weights when True, count of edges otherwise. Defaults to True.

    Returns:
        vector of n degrees.
    """
    matrix = g.weights if weighted else g.adjacency()
    if not g.directed:
        return matrix.sum(dim=1)
    if mode == "out":
        return matrix.sum(dim=1)
    if mode == "in":
        return matrix.sum(dim=0)
    if mode == "total":
        return matrix.sum(dim=1) + matrix.sum(dim=0)
    raise ValueError(f"Unknown degree mode '{mode}'.")


def degree(g: Graph, i: int, mode: DegreeMode = "total", weighted: bool = True) -> float:
    """Computes the degree of one actor.

    Args:
        g: graph.
        i: actor index.
        mode: "in", "out" or "total". Defaults to "total".
        weighted: sum of weights when True, count of edges otherwise. Defaults to True.

    Raises:
        IndexError: index out of range.

    Returns:
        the degree.
    """
    if not 0 <= i < g.n:
        raise IndexError(f"Actor index {i} out of range for a graph of {g.n} actors.")
    return float(degrees(g, mode=mode, weighted=weighted)[i])


def density(g: Graph) -> float:
    """Fraction of the possible edges that are present.

    Args:
        g: graph with at least two actors.

    Raises:
        InvalidGraphError: fewer than two actors.

    Returns:
        density in [0, 1].
    """
    if g.n < 2:
        raise InvalidGraphError("Density needs at least 2 actors.")
    possible = g.n * (g.n - 1)
    if not g.directed:
        possible //= 2
    return g.number_of_edges() / possible


def symmetrize(g: Graph) -> Graph:
    """Undirected reading of a graph, keeping the max weight of the two directions.

    Args:
        g: graph.

    Returns:
        undirected graph (g itself when already undirected).
    """
    if not g.directed:
        return g
    return Graph(g.labels, torch.maximum(g.weights, g.weights.T), directed=False)
