"""Testing the affinity functions and the affinity controller."""

import io
import os
from tempfile import TemporaryDirectory

import pytest
import torch
from pydantic import ValidationError

from borgia.affinity import (
    AffinityController,
    AffinityMatrix,
    AffinitySpec,
    best_common_friend,
    best_friend,
    combine,
    friends_forever,
    machiavelli,
    social_networking,
    top_affinities,
)
from borgia.affinity.export import (
    format_long_form_csv,
    format_top_affinity_table,
    save_long_form_csv,
    save_matrix_csv,
)
from borgia.errors import ConfigurationError, DimensionMismatchError
from borgia.graph import Graph, TemporalGraph, load_graph

FIG1_MATRIX = [[0, 5, 0, 0], [0, 0, 3, 0], [0, 0, 0, 0], [0, 1, 7, 0]]


def fig1() -> Graph:
    """Builds the small directed example graph."""
    return Graph(["a", "b", "c", "d"], torch.tensor(FIG1_MATRIX, dtype=torch.float64))


def unit_triangle() -> Graph:
    """Builds the undirected triangle with unit weights."""
    return Graph(["a", "b", "c"], torch.ones(3, 3) - torch.eye(3), directed=False)


def unit_path(n: int) -> Graph:
    """Builds an undirected path with unit weights."""
    weights = torch.zeros(n, n, dtype=torch.float64)
    for i in range(n - 1):
        weights[i, i + 1] = weights[i + 1, i] = 1.0
    return Graph([chr(ord("a") + i) for i in range(n)], weights, directed=False)


def mutual_pair(weight: float = 2.0) -> Graph:
    """Builds two actors joined by a single mutual edge."""
    return Graph(["x", "y"], torch.tensor([[0.0, weight], [weight, 0.0]]), directed=False)


def test_best_friend():
    """Tests the best friend affinity on the directed example."""
    affinity = best_friend(fig1())

    # ASSERTS

    assert affinity.kind == "BF"
    assert affinity.values[3, 1] == pytest.approx(0.125)
    assert affinity.values[3, 2] == pytest.approx(0.875)
    assert affinity.values[0, 1] == 1.0
    # c has no outgoing edge
    assert torch.equal(affinity.values[2], torch.zeros(4, dtype=torch.float64))


def test_best_friend_mutual_pair():
    """Tests the best friend affinity of a single mutual edge."""
    affinity = best_friend(mutual_pair())

    # ASSERTS

    assert affinity.values[0, 1] == 1.0
    assert affinity.values[1, 0] == 1.0


def test_best_common_friend():
    """Tests the best common friend affinity."""
    triangle = best_common_friend(unit_triangle())
    pair = best_common_friend(mutual_pair())

    # ASSERTS

    expected = (torch.ones(3, 3) - torch.eye(3)).double() * 0.5
    assert torch.allclose(triangle.values, expected, atol=1e-15)
    assert torch.equal(pair.values, torch.zeros(2, 2, dtype=torch.float64))


def test_best_common_friend_excludes_endpoints():
    """Tests that a direct edge does not count as a common friend."""
    # a - b only, plus c linked to a: the only third party of (a, b) is c
    weights = torch.tensor([[0.0, 1.0, 1.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    affinity = best_common_friend(Graph(["a", "b", "c"], weights, directed=False))

    # ASSERTS

    # b and c share a
    assert affinity.values[1, 2] == 1.0
    # a and b share nobody
    assert affinity.values[0, 1] == 0.0


def test_best_common_friend_over_base():
    """Tests the best common friend affinity chained over a base affinity."""
    graph = unit_triangle()
    base = best_friend(graph)
    affinity = best_common_friend(graph, base=base)

    # ASSERTS

    assert affinity.kind == "BCF(BF)"
    # min(0.5, 0.5) / (0.5 + 0.5)
    assert affinity.values[0, 1] == pytest.approx(0.5)
    with pytest.raises(DimensionMismatchError):
        best_common_friend(graph, base=best_friend(mutual_pair()))


def test_friends_forever():
    """Tests the friends forever affinity."""
    labels = ["x", "y", "z"]
    to_y = Graph(labels, torch.tensor([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]))
    to_z = Graph(labels, torch.tensor([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]))
    alternating = friends_forever(TemporalGraph([to_y, to_z]))
    identical = friends_forever(TemporalGraph([mutual_pair(), mutual_pair()]))
    single = friends_forever(TemporalGraph([fig1()]))

    # ASSERTS

    assert alternating.values[0, 1] == pytest.approx(0.5)
    assert alternating.values[0, 2] == pytest.approx(0.5)
    assert identical.values[0, 1] == 1.0
    assert torch.equal(single.values, best_friend(fig1()).values)


def test_social_networking():
    """Tests the social networking affinity over the best friend affinity."""
    path = social_networking(unit_path(3))
    pair = social_networking(mutual_pair())
    isolated = social_networking(Graph(["a", "b", "c"], torch.zeros(3, 3), directed=False))

    # ASSERTS

    assert path.kind == "SN(BF)"
    assert path.values[0, 2] == pytest.approx(0.5)
    assert pair.values[0, 1] == 0.0
    assert torch.equal(isolated.values, torch.zeros(3, 3, dtype=torch.float64))


def test_machiavelli():
    """Tests the Machiavelli affinity."""
    triangle = machiavelli(unit_triangle())
    path = machiavelli(unit_path(4))
    weights = torch.zeros(3, 3)
    weights[0, 1] = weights[1, 0] = 1.0
    with_isolated = machiavelli(Graph(["a", "b", "c"], weights, directed=False))

    # ASSERTS

    assert torch.equal(triangle.values, (torch.ones(3, 3) - torch.eye(3)).double())
    assert path.values[0, 1] == pytest.approx(1 - 1 / 3)
    assert torch.equal(path.values, path.values.T)
    assert with_isolated.values[0, 2] == 0.0
    assert with_isolated.values[2, 0] == 0.0


def test_combine():
    """Tests the convex combination of best friend and best common friend."""
    graph = fig1()

    # ASSERTS

    assert torch.equal(combine(graph, 1.0).values, best_friend(graph).values)
    assert torch.equal(combine(graph, 0.0).values, best_common_friend(graph).values)
    triangle = combine(unit_triangle(), 0.5)
    assert triangle.kind == "Combined(0.5)"
    assert torch.allclose(triangle.values, (torch.ones(3, 3) - torch.eye(3)).double() * 0.5)
    for alpha in (-0.1, 1.5):
        with pytest.raises(ConfigurationError):
            combine(graph, alpha)


def test_affinity_matrix_validation():
    """Tests the validation of affinity matrices."""

    # ASSERTS

    with pytest.raises(ValueError):
        AffinityMatrix(["a", "b"], torch.tensor([[0.0, 2.0], [0.0, 0.0]]), kind="BF")
    with pytest.raises(DimensionMismatchError):
        AffinityMatrix(["a"], torch.zeros(2, 2), kind="BF")
    matrix = AffinityMatrix(["a", "b"], torch.ones(2, 2), kind="MA")
    assert torch.equal(torch.diagonal(matrix.values), torch.zeros(2, dtype=torch.float64))


@pytest.mark.parametrize(
    "kind,expected_kind",
    [
        ("bf", "BF"),
        ("best_friend", "BF"),
        ("BCF", "BCF"),
        ("sn", "SN(BF)"),
        ("ma", "MA"),
        ("combined", "Combined(0.7)"),
    ],
)
def test_controller_aliases(kind, expected_kind):
    """Tests the resolution of affinity aliases by the controller."""
    controller = AffinityController(graph=fig1())
    affinity = controller.compute(kind)

    # ASSERTS

    assert isinstance(affinity, AffinityMatrix)
    assert affinity.kind == expected_kind


def test_controller_chained_spec():
    """Tests the computation of chained affinity specifications."""
    graph = unit_path(4)
    controller = AffinityController(graph=graph)
    spec = AffinitySpec(kind="sn", base=AffinitySpec(kind="bcf", base=AffinitySpec(kind="bf")))
    affinity = controller.compute(spec)
    expected = social_networking(graph, base=best_common_friend(graph, base=best_friend(graph)))

    # ASSERTS

    assert affinity.kind == "SN(BCF(BF))"
    assert torch.equal(affinity.values, expected.values)
    assert controller.compute(AffinitySpec(kind="combined", alpha=0.25)).kind == "Combined(0.25)"


def test_controller_errors():
    """Tests the errors raised by the controller."""
    controller = AffinityController(graph=fig1())

    # ASSERTS

    with pytest.raises(ConfigurationError):
        controller.compute("unknown")
    with pytest.raises(ConfigurationError) as error:
        controller.compute("ff")
    assert "temporal" in str(error.value)
    with pytest.raises(ConfigurationError):
        controller.compute(AffinitySpec(kind="ma", base=AffinitySpec(kind="bf")))
    with pytest.raises(ConfigurationError):
        controller.compute(AffinitySpec(kind="sn", base=AffinitySpec(kind="ff")))
    assert "friends_forever" not in controller.available_kinds()


def test_controller_temporal():
    """Tests the controller over temporal slices."""
    temporal = TemporalGraph([fig1(), fig1()])
    controller = AffinityController(graph=fig1(), temporal=temporal)

    # ASSERTS

    assert torch.equal(controller.compute("ff").values, best_friend(fig1()).values)
    assert set(controller.compute_all()) == {
        "best_friend",
        "best_common_friend",
        "friends_forever",
        "social_networking",
        "machiavelli",
        "combined",
    }


def test_affinity_spec_validation():
    """Tests the validation of affinity specifications."""

    # ASSERTS

    with pytest.raises(ValidationError):
        AffinitySpec(kind="combined", alpha=1.2)
    with pytest.raises(ValidationError):
        AffinitySpec(
            kind="sn",
            base=AffinitySpec(kind="sn", base=AffinitySpec(kind="bcf", base=AffinitySpec(kind="bf"))),
        )
    assert AffinitySpec(kind="sn", base=AffinitySpec(kind="bcf", base=AffinitySpec(kind="bf"))).depth() == 2


def test_export_matrix_csv():
    """Tests that exported affinity matrices read back as matrix CSV graphs."""
    affinity = best_friend(fig1())

    with TemporaryDirectory() as temp_dir:
        path = os.path.join(temp_dir, "bf.csv")
        save_matrix_csv(affinity, path)
        loaded = load_graph(path, format="matrix-csv", directed=True)

        # ASSERTS

        assert loaded.labels == affinity.labels
        assert torch.equal(loaded.weights, affinity.values)


def test_export_long_form_csv():
    """Tests the heatmap-ready long-form export."""
    affinity = best_friend(fig1())
    buffer = io.StringIO()
    save_long_form_csv(affinity, buffer)
    lines = buffer.getvalue().splitlines()

    # ASSERTS

    assert lines[0] == "row,col,value"
    assert len(lines) == 1 + 16
    assert "d,c,0.875" in lines
    assert format_long_form_csv(affinity) == buffer.getvalue()


def test_top_affinities():
    """Tests the ranking of the strongest partners of an actor."""
    affinity = best_friend(fig1())
    outgoing, incoming = top_affinities(affinity, "d", k=5)
    _, incoming_b = top_affinities(affinity, "b", k=1)

    # ASSERTS

    assert [partner.label for partner in outgoing] == ["c", "b"]
    assert incoming == []
    # a gives all of its connectivity to b
    assert incoming_b[0].label == "a"
    assert incoming_b[0].value == 1.0
    with pytest.raises(KeyError):
        top_affinities(affinity, "unknown", k=1)


def test_top_affinity_table():
    """Tests the side by side table of the top partners."""
    graph = fig1()
    table = format_top_affinity_table(
        {"BF": best_friend(graph), "MA": machiavelli(graph)}, actor="d", k=2
    )
    lines = table.splitlines()

    # ASSERTS

    assert lines[0] == "direction,rank,BF,MA"
    assert len(lines) == 1 + 2 * 2
    assert lines[1].startswith("outgoing,1,c,")
