"""Property checks of the affinity functions over random graphs."""

import pytest
import torch

from borgia.affinity import (
    best_common_friend,
    best_friend,
    combine,
    friends_forever,
    machiavelli,
    social_networking,
)
from borgia.graph import Graph, TemporalGraph

NUMBER_OF_GRAPHS = 1000


def random_graph(generator: torch.Generator, directed: bool, max_n: int = 12) -> Graph:
    """Samples a random weighted graph.

    Args:
        generator: seeded random generator.
        directed: whether the graph is directed.
        max_n: maximum number of actors.

    Returns:
        the sampled graph.
    """
    n = int(torch.randint(2, max_n + 1, (1,), generator=generator))
    edge_probability = float(torch.rand(1, generator=generator))
    mask = torch.rand(n, n, generator=generator) < edge_probability
    weights = torch.rand(n, n, generator=generator, dtype=torch.float64) * 10 * mask
    weights.fill_diagonal_(0.0)
    if not directed:
        weights = torch.triu(weights, diagonal=1)
        weights = weights + weights.T
    return Graph([f"v{i}" for i in range(n)], weights, directed=directed)


def random_graphs(seed: int):
    """Yields NUMBER_OF_GRAPHS random graphs, alternating directed and undirected ones."""
    generator = torch.Generator().manual_seed(seed)
    for index in range(NUMBER_OF_GRAPHS):
        yield random_graph(generator, directed=index % 2 == 0)


def test_affinity_range():
    """Tests that every affinity lies in [0, 1] with a zero diagonal."""
    for graph in random_graphs(seed=42):
        temporal = TemporalGraph([graph, Graph(graph.labels, graph.weights.T, directed=graph.directed)])
        matrices = [
            best_friend(graph),
            best_common_friend(graph),
            best_common_friend(graph, base=best_friend(graph)),
            friends_forever(temporal),
            social_networking(graph),
            machiavelli(graph),
            combine(graph, 0.3),
        ]

        # ASSERTS

        for matrix in matrices:
            assert float(matrix.values.min()) >= 0.0, matrix.kind
            assert float(matrix.values.max()) <= 1.0, matrix.kind
            assert torch.equal(torch.diagonal(matrix.values), torch.zeros(graph.n, dtype=torch.float64))


def test_best_friend_row_sums():
    """Tests that best friend rows of actors with outgoing edges sum to 1."""
    for graph in random_graphs(seed=7):
        affinity = best_friend(graph)
        has_out_edges = graph.weights.sum(dim=1) > 0

        # ASSERTS

        row_sums = affinity.values.sum(dim=1)
        assert torch.all((row_sums[has_out_edges] - 1.0).abs() <= 1e-12)
        assert torch.all(row_sums[~has_out_edges] == 0.0)


def test_best_friend_zero_sum():
    """Tests that a new outgoing edge lowers the share of every existing partner."""
    generator = torch.Generator().manual_seed(3)
    checked = 0
    for graph in random_graphs(seed=11):
        weights = graph.weights.clone()
        candidates = [
            (x, z)
            for x in range(graph.n)
            for z in range(graph.n)
            if x != z and weights[x, z] == 0 and weights[x].sum() > 0
        ]
        if not candidates or not graph.directed:
            continue
        x, z = candidates[int(torch.randint(len(candidates), (1,), generator=generator))]
        before = best_friend(graph).values[x]
        weights[x, z] = 1.0 + float(torch.rand(1, generator=generator))
        after = best_friend(Graph(graph.labels, weights, directed=True)).values[x]
        existing = graph.weights[x] > 0
        checked += 1

        # ASSERTS

        assert torch.all(after[existing] < before[existing])

    assert checked > 0


def test_machiavelli_symmetry():
    """Tests that the Machiavelli affinity is exactly symmetric."""
    for graph in random_graphs(seed=5):
        affinity = machiavelli(graph)

        # ASSERTS

        assert torch.equal(affinity.values, affinity.values.T)


def test_best_common_friend_densification():
    """Tests that best common friends outnumber edges on sparse graphs with a hub."""
    generator = torch.Generator().manual_seed(13)
    for _ in range(NUMBER_OF_GRAPHS):
        n = int(torch.randint(6, 26, (1,), generator=generator))
        weights = torch.zeros(n, n, dtype=torch.float64)
        # actor 0 is the hub
        weights[0, 1:] = 1.0
        weights[1:, 0] = 1.0
        for _ in range(int(torch.randint(0, n, (1,), generator=generator))):
            x, y = torch.randint(1, n, (2,), generator=generator).tolist()
            if x != y:
                weights[x, y] = weights[y, x] = 1.0
        graph = Graph([f"v{i}" for i in range(n)], weights, directed=False)

        # ASSERTS

        assert best_common_friend(graph).nonzero_count() >= int(torch.count_nonzero(graph.weights))


@pytest.mark.parametrize("alpha_low,alpha_high", [(0.0, 0.5), (0.2, 0.9), (0.5, 1.0)])
def test_combine_monotonicity(alpha_low, alpha_high):
    """Tests that raising alpha moves the combination towards best friend."""
    for graph in random_graphs(seed=17):
        friend = best_friend(graph).values
        common = best_common_friend(graph).values
        low = combine(graph, alpha_low).values
        high = combine(graph, alpha_high).values
        towards_friend = friend > common

        # ASSERTS

        assert torch.all(high[towards_friend] >= low[towards_friend] - 1e-12)
        assert torch.all(high[~towards_friend] <= low[~towards_friend] + 1e-12)


def test_combine_endpoints():
    """Tests that the combination endpoints are the pure affinities."""
    for graph in random_graphs(seed=23):

        # ASSERTS

        assert torch.equal(combine(graph, 1.0).values, best_friend(graph).values)
        assert torch.equal(combine(graph, 0.0).values, best_common_friend(graph).values)
