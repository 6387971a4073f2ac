"""Testing the Borgia engine steps, the dendrogram and the configuration selection."""

import math
import os
from tempfile import TemporaryDirectory

import networkx as nx
import pytest
import torch

from borgia.clustering import (
    BorgiaClustering,
    Community,
    Dendrogram,
    EngineConfig,
    Fusion,
    SimulationState,
    apply_movement,
    attraction_step,
    compute_dt,
    detect_collisions,
    first_iteration_delta,
    fuse,
    initialize,
    load_dendrogram,
    run,
    save_dendrogram,
    select_configuration,
)
from borgia.clustering.configuration import load_engine_config, save_engine_config
from borgia.errors import ConfigurationError, InvalidGraphError, SimulationStallError
from borgia.graph import Graph

FIG1_MATRIX = [[0, 5, 0, 0], [0, 0, 3, 0], [0, 0, 0, 0], [0, 1, 7, 0]]


def state_from(S, A, masses) -> SimulationState:
    """Builds a simulation state from plain lists."""
    live = [
        Community(id=index, members=frozenset([index]), mass=float(mass))
        for index, mass in enumerate(masses)
    ]
    return SimulationState(
        live=live,
        S=torch.tensor(S, dtype=torch.float64),
        A=torch.tensor(A, dtype=torch.float64),
        next_id=len(masses),
    )


def two_body_state() -> SimulationState:
    """Two unit masses with affinity 0.5 at s_1 = (1, 0.5) and s_2 = (0.5, 1)."""
    return state_from([[1.0, 0.5], [0.5, 1.0]], [[0.0, 0.5], [0.5, 0.0]], [1, 1])


def mutual_pair() -> Graph:
    """Builds two actors joined by a single mutual edge."""
    return Graph(["x", "y"], torch.tensor([[0.0, 1.0], [1.0, 0.0]]), directed=False)


def sample_dendrogram() -> Dendrogram:
    """Five leaves whose 4- and 2-community configurations live 5 and 7 time units."""
    fusions = [
        Fusion(t=1.0, left=0, right=1, new=5, mass=2.0),
        Fusion(t=6.0, left=2, right=3, new=6, mass=2.0),
        Fusion(t=6.5, left=5, right=6, new=7, mass=4.0),
        Fusion(t=13.5, left=7, right=4, new=8, mass=5.0),
    ]
    return Dendrogram(labels=list("abcde"), fusions=fusions, total_time=20.0)


def test_initialize():
    """Tests the initial state on the directed example with alpha = 1."""
    graph = Graph(["a", "b", "c", "d"], torch.tensor(FIG1_MATRIX, dtype=torch.float64))
    state = initialize(graph, EngineConfig(alpha=1.0))

    # ASSERTS

    assert [community.id for community in state.live] == [0, 1, 2, 3]
    assert state.t == 0.0
    assert state.next_id == 4
    assert torch.allclose(
        state.S[3], torch.tensor([0.0, 0.125, 0.875, 1.0], dtype=torch.float64)
    )
    assert torch.equal(torch.diagonal(state.S), torch.ones(4, dtype=torch.float64))
    assert float(torch.diagonal(state.A).abs().sum()) == 0.0


def test_initialize_karate_mass():
    """Tests that the social values of the karate club sum to twice its 78 edges."""
    graph = Graph.from_networkx(nx.karate_club_graph(), weight=None)
    state = initialize(graph, EngineConfig())

    # ASSERTS

    assert state.total_mass() == 156.0


def test_initialize_mutual_pair():
    """Tests that a fully affine pair starts with an all-ones influence matrix."""
    state = initialize(mutual_pair(), EngineConfig(alpha=1.0))

    # ASSERTS

    assert torch.equal(state.S, torch.ones(2, 2, dtype=torch.float64))


def test_initialize_errors():
    """Tests the preconditions of the initialization."""
    single = Graph(["a"], torch.zeros(1, 1))

    # ASSERTS

    with pytest.raises(InvalidGraphError):
        initialize(single, EngineConfig())
    with pytest.raises(ConfigurationError):
        initialize(mutual_pair(), EngineConfig(target_k=3))


def test_attraction_step():
    """Tests the displacement of two unit masses."""
    state = two_body_state()
    config = EngineConfig(p=0.0, c=0.0, tnorm="product")
    displacements = attraction_step(state, config, dt=0.1)

    # ASSERTS

    assert displacements[0].tolist() == pytest.approx([-0.0707107, 0.0707107], abs=1e-6)
    assert displacements[1].tolist() == pytest.approx([0.0707107, -0.0707107], abs=1e-6)


def test_attraction_skips_zero_affinity():
    """Tests that pairs without affinity exert no force."""
    state = state_from(
        [[1.0, 0.2, 0.0], [0.3, 1.0, 0.0], [0.0, 0.0, 1.0]],
        [[0.0, 0.5, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.0]],
        [1, 1, 1],
    )
    displacements = attraction_step(state, EngineConfig(p=0.0), dt=1.0)

    # ASSERTS

    assert torch.equal(displacements[2], torch.zeros(3, dtype=torch.float64))
    assert float(displacements[0].norm()) > 0


def test_compute_dt():
    """Tests the time step of the two-body example."""
    state = two_body_state()
    config = EngineConfig(p=0.0, c=0.0, delta=0.1)
    dt, fastest = compute_dt(state, config)
    doubled, _ = compute_dt(state, config, delta=0.2)

    # ASSERTS

    assert dt == pytest.approx(0.1)
    assert fastest in (0, 1)
    assert doubled == pytest.approx(2 * dt)


def test_compute_dt_without_attraction():
    """Tests that a state without attraction cannot advance."""
    state = state_from([[1.0, 0.0], [0.0, 1.0]], [[0.0, 0.0], [0.0, 0.0]], [1, 1])

    # ASSERTS

    with pytest.raises(SimulationStallError):
        compute_dt(state, EngineConfig())


def test_apply_movement():
    """Tests the movement of the two-body example."""
    state = two_body_state()
    config = EngineConfig(p=0.0, c=0.0, delta=0.1)
    dt, _ = compute_dt(state, config)
    apply_movement(state, attraction_step(state, config, dt), dt)

    # ASSERTS

    assert state.S[0].tolist() == pytest.approx([0.9293, 0.5707], abs=1e-4)
    assert state.t == pytest.approx(0.1)
    assert state.iteration == 1


def test_apply_movement_mass():
    """Tests that heavy communities move less and zero displacements move nothing."""
    light, heavy = two_body_state(), state_from(
        [[1.0, 0.5], [0.5, 1.0]], [[0.0, 0.5], [0.5, 0.0]], [10, 1]
    )
    displacements = torch.tensor([[-0.1, 0.1], [0.0, 0.0]], dtype=torch.float64)
    apply_movement(light, displacements, 0.1)
    apply_movement(heavy, displacements, 0.1)

    # ASSERTS

    assert (light.S[0] - torch.tensor([1.0, 0.5], dtype=torch.float64)).tolist() == pytest.approx([-0.1, 0.1])
    assert (heavy.S[0] - torch.tensor([1.0, 0.5], dtype=torch.float64)).tolist() == pytest.approx([-0.01, 0.01])
    assert light.S[1].tolist() == [0.5, 1.0]


@pytest.mark.parametrize(
    "S, expected",
    [
        ([[0.5, 0.2], [0.6, 0.55]], [(0, 1)]),
        ([[1.0, 1.0], [1.0, 1.0]], [(0, 1)]),
        ([[1.0, 0.2, 0.1], [0.3, 0.9, 0.2], [0.1, 0.4, 0.8]], []),
    ],
)
def test_detect_collisions(S, expected):
    """Tests the collision condition s_ij >= s_jj."""
    size = len(S)
    state = state_from(S, [[0.0] * size] * size, [1] * size)

    # ASSERTS

    assert detect_collisions(state) == expected


def test_fuse_affinity_rows():
    """Tests that the merged affinities are the mass-weighted means of the fused rows."""
    state = state_from(
        torch.eye(4).tolist(),
        [
            [0.0, 0.1, 0.2, 0.4],
            [0.3, 0.0, 0.6, 0.0],
            [0.5, 0.5, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ],
        [1, 1, 1, 1],
    )
    fusion = fuse(state, (0, 1))

    # ASSERTS

    assert fusion == Fusion(t=0.0, left=0, right=1, new=4, mass=2.0)
    assert [community.id for community in state.live] == [2, 3, 4]
    assert state.A[-1, :-1].tolist() == pytest.approx([0.4, 0.2])
    assert state.A[:-1, -1].tolist() == pytest.approx([0.5, 0.5])
    assert state.A[-1, -1] == 0.0
    assert state.total_mass() == 4.0


def test_fuse_centre_of_mass():
    """Tests that the fused influences sit at the centre of masses."""
    state = state_from(
        [[1.0, 0.0, 1.0], [0.0, 0.5, 0.0], [0.0, 0.0, 1.0]],
        [[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]],
        [2, 1, 3],
    )
    fuse(state, (1, 2))

    # ASSERTS

    assert state.S.shape == (2, 2)
    assert state.S[-1, 0] == pytest.approx(0.0)
    assert state.S[0, -1] == pytest.approx(0.75)
    assert state.S[-1, -1] == pytest.approx(0.875)
    assert state.live[-1].members == frozenset([1, 2])
    assert state.live[-1].mass == 4.0


def test_fuse_errors():
    """Tests that only two distinct live positions can be fused."""
    state = two_body_state()

    # ASSERTS

    with pytest.raises(ValueError):
        fuse(state, (0, 0))
    with pytest.raises(ValueError):
        fuse(state, (0, 2))


def test_first_iteration_delta():
    """Tests that the first displacement is the smallest collision gap."""
    state = state_from(
        [[1.0, 0.6, 0.0], [0.0, 1.0, 0.45], [0.1, 0.0, 1.0]],
        [[0.0, 0.3, 0.0], [0.0, 0.0, 0.3], [0.3, 0.0, 0.0]],
        [1, 1, 1],
    )
    closed = state_from([[1.0, 1.0], [0.2, 1.0]], [[0.0, 0.5], [0.5, 0.0]], [1, 1])

    # ASSERTS

    assert first_iteration_delta(state, EngineConfig()) == pytest.approx(0.4)
    assert first_iteration_delta(closed, EngineConfig()) == pytest.approx(1e-9)


def test_run_mutual_pair():
    """Tests that a fully affine pair fuses at once."""
    dendrogram = run(mutual_pair(), EngineConfig(alpha=1.0))

    # ASSERTS

    assert len(dendrogram.fusions) == 1
    assert dendrogram.fusions[0].t == 0.0
    assert dendrogram.fusions[0].mass == 2.0
    assert not dendrogram.fusions[0].forced


def test_run_mutual_pair_default_alpha():
    """Tests that with the default mix the pair needs one movement to fuse."""
    runner = BorgiaClustering()
    dendrogram = runner.run(mutual_pair())

    # ASSERTS

    assert len(dendrogram.fusions) == 1
    assert dendrogram.fusions[0].t > 0.0
    assert runner.iterations == 1
    assert runner.trace[0].fusions == 1


def test_run_forces_isolated_actors():
    """Tests that actors without any affinity are merged at the end of the run."""
    weights = torch.zeros(4, 4, dtype=torch.float64)
    weights[0, 1] = weights[1, 0] = 1.0
    weights[0, 2] = weights[2, 0] = 1.0
    weights[1, 2] = weights[2, 1] = 1.0
    graph = Graph(["a", "b", "c", "lonely"], weights, directed=False)
    dendrogram = run(graph)

    # ASSERTS

    assert len(dendrogram.fusions) == 3
    assert [fusion.forced for fusion in dendrogram.fusions] == [False, False, True]
    assert 3 in (dendrogram.fusions[-1].left, dendrogram.fusions[-1].right)
    assert dendrogram.total_time >= dendrogram.fusions[-1].t


def test_run_stall():
    """Tests that the stall guard stops runs without fusions."""
    weights = torch.zeros(3, 3, dtype=torch.float64)
    weights[0, 1] = weights[1, 0] = 1.0
    weights[1, 2] = weights[2, 1] = 1.0
    graph = Graph(["a", "b", "c"], weights, directed=False)
    config = EngineConfig(delta=1e-6, delta_mode="static", max_stall_iterations=1)

    # ASSERTS

    with pytest.raises(SimulationStallError) as error:
        run(graph, config)
    assert error.value.code == "E_STALL"
    assert error.value.details["iteration"] == 1


def test_select_configuration():
    """Tests the score, lifespan and fixed-k selections."""
    dendrogram = sample_dendrogram()
    scores = {score.k: score for score in dendrogram.configurations()}

    # ASSERTS

    assert scores[4].lifespan == 5.0
    assert scores[2].lifespan == 7.0
    assert scores[4].score == pytest.approx(5 * math.log(4))
    assert scores[1].score == 0.0
    assert select_configuration(dendrogram).k == 4
    assert select_configuration(dendrogram, mode="lifespan").k == 2
    assert select_configuration(dendrogram, mode="fixed-k", k=5).k == 5
    assert select_configuration(dendrogram, mode="fixed-k", k=1).k == 1
    assert select_configuration(dendrogram, mode="fixed-k", k=3).assignment == [0, 0, 1, 1, 2]


@pytest.mark.parametrize("k", [None, 0, 6])
def test_select_configuration_errors(k):
    """Tests that fixed-k cuts need k in [1, n]."""
    with pytest.raises(ConfigurationError):
        select_configuration(sample_dendrogram(), mode="fixed-k", k=k)


def test_select_configuration_fallback():
    """Tests that without a positive lifespan the single community is returned."""
    fusions = [
        Fusion(t=0.0, left=0, right=1, new=3, mass=2.0),
        Fusion(t=0.0, left=3, right=2, new=4, mass=3.0),
    ]
    dendrogram = Dendrogram(labels=["a", "b", "c"], fusions=fusions, total_time=0.0)

    # ASSERTS

    assert select_configuration(dendrogram).k == 1


def test_dendrogram_validation():
    """Tests that dendrograms must be binary merge trees."""
    fusion = Fusion(t=1.0, left=0, right=1, new=3, mass=2.0)

    # ASSERTS

    with pytest.raises(ValueError):
        Dendrogram(labels=["a", "b", "c"], fusions=[fusion], total_time=1.0)
    with pytest.raises(ValueError):
        Dendrogram(
            labels=["a", "b", "c"],
            fusions=[fusion, Fusion(t=0.5, left=3, right=2, new=4, mass=3.0)],
            total_time=1.0,
        )
    with pytest.raises(ValueError):
        Dendrogram(
            labels=["a", "b", "c"],
            fusions=[fusion, Fusion(t=2.0, left=0, right=2, new=4, mass=3.0)],
            total_time=2.0,
        )


def test_dendrogram_linkage():
    """Tests the linkage export."""
    linkage = sample_dendrogram().to_linkage()

    # ASSERTS

    assert linkage[0] == [0.0, 1.0, 1.0, 2.0]
    assert linkage[-1] == [7.0, 4.0, 13.5, 5.0]


def test_save_load_dendrogram_and_config():
    """Tests the json persistence of dendrograms and engine configurations."""
    dendrogram = sample_dendrogram()
    config = EngineConfig(alpha=1.0, p=0.0, target_k=3)
    with TemporaryDirectory() as tmp_dir:
        dendrogram_path = save_dendrogram(dendrogram, tmp_dir)
        config_path = save_engine_config(config, tmp_dir)

        # ASSERTS

        assert os.path.basename(dendrogram_path) == "dendrogram.json"
        assert load_dendrogram(tmp_dir) == dendrogram
        assert load_engine_config(config_path) == config
