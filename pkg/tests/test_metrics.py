"""Testing partitions, the quality metrics and the metric reports."""

import math
import os
from itertools import combinations
from tempfile import TemporaryDirectory

import pytest
import torch

from borgia.errors import ActorMismatchError, GraphFormatError, InvalidGraphError
from borgia.evaluation import (
    MetricReport,
    Partition,
    ari,
    evaluate_partition,
    load_partition,
    modularity,
    modularity_density,
    nmi,
    save_partition,
)
from borgia.evaluation.partition import parse_partition_csv
from borgia.evaluation.report import load_metric_report, save_metric_report
from borgia.graph import Graph

NUMBER_OF_CASES = 200
TOLERANCE = 1e-10


def two_pairs() -> Graph:
    """Builds two disjoint unit-weight edges."""
    weights = torch.zeros(4, 4, dtype=torch.float64)
    weights[0, 1] = weights[1, 0] = 1.0
    weights[2, 3] = weights[3, 2] = 1.0
    return Graph(["a", "b", "c", "d"], weights, directed=False)


def random_case(generator: torch.Generator):
    """Samples a graph with at least one edge and two partitions of its actors."""
    n = int(torch.randint(2, 51, (1,), generator=generator))
    directed = bool(torch.rand(1, generator=generator) < 0.5)
    mask = torch.rand(n, n, generator=generator) < float(torch.rand(1, generator=generator))
    weights = torch.rand(n, n, generator=generator, dtype=torch.float64) * 5 * mask
    weights[0, 1] = 1.0
    weights.fill_diagonal_(0.0)
    if not directed:
        weights = torch.triu(weights, diagonal=1)
        weights = weights + weights.T
    labels = [f"v{i}" for i in range(n)]
    graph = Graph(labels, weights, directed=directed)
    partitions = []
    for _ in range(2):
        k = int(torch.randint(1, n + 1, (1,), generator=generator))
        assignment = torch.randint(0, k, (n,), generator=generator).tolist()
        partitions.append(Partition.from_labels(labels, assignment))
    return graph, partitions[0], partitions[1]


def brute_force_modularity(graph: Graph, partition: Partition) -> float:
    """Newman modularity summed over every ordered pair of actors."""
    weights = torch.maximum(graph.weights, graph.weights.T).tolist()
    strengths = [sum(row) for row in weights]
    total = sum(strengths)
    value = 0.0
    for i in range(graph.n):
        for j in range(graph.n):
            if partition.assignment[i] == partition.assignment[j]:
                value += weights[i][j] - strengths[i] * strengths[j] / total
    return value / total


def brute_force_modularity_density(graph: Graph, partition: Partition) -> float:
    """Modularity density counting every unordered pair of actors."""
    adjacent = ((graph.weights + graph.weights.T) > 0).tolist()
    internal = [0] * partition.k
    boundary = [0] * partition.k
    for i, j in combinations(range(graph.n), 2):
        if not adjacent[i][j]:
            continue
        first, second = partition.assignment[i], partition.assignment[j]
        if first == second:
            internal[first] += 1
        else:
            boundary[first] += 1
            boundary[second] += 1
    sizes = [len(members) for members in partition.communities()]
    return sum((2 * internal[c] - boundary[c]) / sizes[c] for c in range(partition.k))


def contingency(first: Partition, second: Partition):
    """Counts the actors of every pair of communities."""
    table = [[0] * second.k for _ in range(first.k)]
    for a, b in zip(first.assignment, second.assignment):
        table[a][b] += 1
    return table


def brute_force_nmi(first: Partition, second: Partition) -> float:
    """Mutual information over the arithmetic mean of the entropies."""
    n = first.n
    table = contingency(first, second)
    rows = [sum(row) for row in table]
    cols = [sum(column) for column in zip(*table)]
    mutual = sum(
        (count / n) * math.log(n * count / (rows[a] * cols[b]))
        for a, row in enumerate(table)
        for b, count in enumerate(row)
        if count > 0
    )
    entropy_first = -sum((size / n) * math.log(size / n) for size in rows)
    entropy_second = -sum((size / n) * math.log(size / n) for size in cols)
    mean = (entropy_first + entropy_second) / 2
    if mean == 0:
        return 1.0
    return mutual / mean


def brute_force_ari(first: Partition, second: Partition) -> float:
    """Adjusted Rand index from the pair counts."""
    same_both = same_first = same_second = 0
    for i, j in combinations(range(first.n), 2):
        in_first = first.assignment[i] == first.assignment[j]
        in_second = second.assignment[i] == second.assignment[j]
        same_first += in_first
        same_second += in_second
        same_both += in_first and in_second
    pairs = first.n * (first.n - 1) / 2
    expected = same_first * same_second / pairs
    maximum = (same_first + same_second) / 2
    if maximum == expected:
        return 1.0
    return (same_both - expected) / (maximum - expected)


def test_partition_validation():
    """Tests the partition invariants."""
    # ASSERTS

    with pytest.raises(ValueError):
        Partition(labels=["a", "b"], assignment=[0])
    with pytest.raises(ValueError):
        Partition(labels=["a", "b"], assignment=[0, 2])
    with pytest.raises(ValueError):
        Partition(labels=["a", "a"], assignment=[0, 1])


def test_partition_constructors():
    """Tests the partition constructors and accessors."""
    partition = Partition.from_labels(["a", "b", "c", "d"], ["x", "y", "x", "z"])
    from_members = Partition.from_communities(["a", "b", "c", "d"], [[1], [0, 2], [3]])

    # ASSERTS

    assert partition.assignment == [0, 1, 0, 2]
    assert partition.k == 3
    assert partition.communities() == [[0, 2], [1], [3]]
    assert from_members == partition
    with pytest.raises(ValueError):
        Partition.from_communities(["a", "b"], [[0], [0, 1]])


def test_partition_alignment():
    """Tests the reordering of a partition over the same actors."""
    partition = Partition.from_labels(["a", "b", "c"], [0, 0, 1])
    shuffled = Partition.from_labels(["c", "a", "b"], [5, 7, 7])

    # ASSERTS

    assert partition.aligned_with(shuffled).assignment == [0, 0, 1]
    with pytest.raises(ActorMismatchError):
        partition.aligned_with(Partition.from_labels(["a", "b", "z"], [0, 0, 1]))


def test_partition_csv():
    """Tests the partition csv reader and writer."""
    partition = parse_partition_csv("actor_label,community_id\na,red\nb,blue\n\nc,red\n")
    headerless = parse_partition_csv("a,1\nb,2\n")

    # ASSERTS

    assert partition.labels == ["a", "b", "c"]
    assert partition.assignment == [0, 1, 0]
    assert headerless.assignment == [0, 1]
    with TemporaryDirectory() as tmp_dir:
        path = os.path.join(tmp_dir, "partition.csv")
        save_partition(partition, path)
        assert load_partition(path) == partition


@pytest.mark.parametrize(
    "text, line",
    [
        ("a,0\nb\n", 2),
        ("a,0\na,1\n", 2),
        ("a,0\n,1\n", 2),
        ("a,\n", 1),
    ],
)
def test_partition_csv_errors(text, line):
    """Tests that malformed partitions are located by line."""
    with pytest.raises(GraphFormatError) as error:
        parse_partition_csv(text)

    # ASSERTS

    assert error.value.line == line


def test_modularity_examples():
    """Tests modularity on two disjoint edges."""
    graph = two_pairs()
    by_component = Partition.from_labels(graph.labels, [0, 0, 1, 1])
    single = Partition.from_labels(graph.labels, [0] * 4)

    # ASSERTS

    assert modularity(graph, by_component) == pytest.approx(0.5)
    assert modularity(graph, single) == 0.0
    with pytest.raises(InvalidGraphError):
        modularity(Graph(["a", "b"], torch.zeros(2, 2)), Partition.from_labels(["a", "b"], [0, 1]))


def test_modularity_density_examples():
    """Tests modularity density on two disjoint edges, split and crossed."""
    graph = two_pairs()
    by_component = Partition.from_labels(graph.labels, [0, 0, 1, 1])
    crossing = Partition.from_labels(graph.labels, [0, 1, 0, 1])

    # ASSERTS

    assert modularity_density(graph, by_component) == pytest.approx(2.0)
    assert modularity_density(graph, crossing) == pytest.approx(-2.0)


def test_agreement_examples():
    """Tests NMI and ARI on identical, renamed and opposite partitions."""
    labels = ["a", "b", "c", "d", "e"]
    partition = Partition.from_labels(labels, [0, 0, 1, 1, 2])
    renamed = Partition.from_labels(labels[::-1], [9, 4, 4, 7, 7])
    single = Partition.from_labels(labels, [0] * 5)
    singletons = Partition.from_labels(labels, list(range(5)))

    # ASSERTS

    assert nmi(partition, renamed) == 1.0
    assert ari(partition, renamed) == 1.0
    assert nmi(single, singletons) == 0.0
    assert nmi(partition, single) == nmi(single, partition)
    with pytest.raises(ActorMismatchError):
        nmi(partition, Partition.from_labels(["a", "b"], [0, 1]))


def test_ari_random_labelings():
    """Tests that independent random labelings of 200 actors have ARI close to 0."""
    generator = torch.Generator().manual_seed(3)
    labels = [f"v{i}" for i in range(200)]
    values = []
    for _ in range(100):
        first = torch.randint(0, 4, (200,), generator=generator).tolist()
        second = torch.randint(0, 4, (200,), generator=generator).tolist()
        values.append(ari(Partition.from_labels(labels, first), Partition.from_labels(labels, second)))

    # ASSERTS

    assert abs(sum(values) / len(values)) < 0.05


def test_metrics_against_brute_force():
    """Tests every metric against a quadratic brute-force evaluation."""
    generator = torch.Generator().manual_seed(2023)
    for _ in range(NUMBER_OF_CASES):
        graph, first, second = random_case(generator)
        single = Partition.from_labels(graph.labels, [0] * graph.n)

        # ASSERTS

        assert modularity(graph, first) == pytest.approx(
            brute_force_modularity(graph, first), abs=TOLERANCE
        )
        assert modularity(graph, single) == 0.0
        assert modularity_density(graph, first) == pytest.approx(
            brute_force_modularity_density(graph, first), abs=TOLERANCE
        )
        assert nmi(first, second) == pytest.approx(brute_force_nmi(first, second), abs=TOLERANCE)
        assert ari(first, second) == pytest.approx(brute_force_ari(first, second), abs=TOLERANCE)
        assert nmi(first, second) == pytest.approx(nmi(second, first), abs=TOLERANCE)
        assert ari(first, second) == pytest.approx(ari(second, first), abs=TOLERANCE)


def test_evaluate_partition():
    """Tests the metric report and its persistence."""
    graph = two_pairs()
    partition = Partition.from_labels(graph.labels, [0, 0, 1, 1])
    report = evaluate_partition(graph, partition, truth=partition)
    without_truth = evaluate_partition(graph, partition)

    # ASSERTS

    assert report.k == 2
    assert report.modularity == pytest.approx(0.5)
    assert report.nmi == 1.0 and report.ari == 1.0
    assert report.truth_k == 2
    assert without_truth.nmi is None
    with TemporaryDirectory() as tmp_dir:
        save_metric_report(report, tmp_dir)
        assert load_metric_report(tmp_dir) == report
    assert isinstance(report, MetricReport)
