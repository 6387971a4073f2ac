"""Classic gravitational clustering over real coordinates.

Observations are unit-mass particles attracting each other; particles closer
than epsilon merge at their centre of masses. The configuration lasting the
longest is the clustering.
"""

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

import torch
from torch import Tensor

from ..affinity.controller import AffinityController
from ..errors import ConfigurationError, InvalidGraphError, SimulationStallError
from ..graph.core import DTYPE, Graph
from .configuration import ClassicConfig
from .dendrogram import Dendrogram, Fusion

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

# default collision distance and displacement, relative to the initial spread
EPSILON_SCALE = 1e-3
DELTA_SCALE = 1e-2


@dataclass
class ParticleSystem:
    """Particles of a classic gravitational simulation.

    Attributes:
        positions: one row per live particle.
        masses: masses of the live particles.
        ids: dendrogram ids of the live particles.
        t: simulated time.
        next_id: id of the next particle created by a merge.
    """

    positions: Tensor
    masses: Tensor
    ids: List[int]
    t: float = 0.0
    next_id: int = 0

    @classmethod
    def from_points(cls, points: Tensor) -> "ParticleSystem":
        """Creates one unit-mass particle per row.

        Args:
            points: coordinates, one row per observation.

        Returns:
            the particle system.
        """
        points = torch.as_tensor(points, dtype=DTYPE).clone()
        n = points.shape[0]
        return cls(
            positions=points,
            masses=torch.ones(n, dtype=DTYPE),
            ids=list(range(n)),
            next_id=n,
        )

    def __len__(self) -> int:
        return len(self.ids)


def max_pairwise_distance(points: Tensor) -> float:
    """Largest Euclidean distance between two rows."""
    if points.shape[0] < 2:
        return 0.0
    return float(torch.cdist(points, points).max())


def classic_accelerations(system: ParticleSystem, G: float) -> Tensor:
    """Displacement of every particle per squared unit of time.

    Row i is 1/2 G sum_j m_j (s_j - s_i) / |s_j - s_i|^3; coincident particles
    exert no force.

    Args:
        system: particle system.
        G: gravitational constant.

    Returns:
        one displacement row per particle.
    """
    differences = system.positions.unsqueeze(0) - system.positions.unsqueeze(1)
    distances = differences.norm(dim=2)
    safe = torch.where(distances > 0, distances, torch.ones_like(distances))
    weights = torch.where(
        distances > 0,
        system.masses.unsqueeze(0) / safe.pow(3),
        torch.zeros_like(distances),
    )
    return 0.5 * G * (weights.unsqueeze(2) * differences).sum(dim=1)


def _closest_approach(start: Tensor, moves: Tensor) -> Tensor:
    """Smallest distance of every pair while moving linearly from start by moves."""
    relative = start.unsqueeze(0) - start.unsqueeze(1)
    velocity = moves.unsqueeze(0) - moves.unsqueeze(1)
    speed = (velocity * velocity).sum(dim=2)
    safe = torch.where(speed > 0, speed, torch.ones_like(speed))
    tau = torch.where(
        speed > 0,
        (-(relative * velocity).sum(dim=2) / safe).clamp(0.0, 1.0),
        torch.zeros_like(speed),
    )
    return (relative + tau.unsqueeze(2) * velocity).norm(dim=2)


def _merge_close(
    system: ParticleSystem, close: Tensor, epsilon: float, fusions: List[Fusion]
) -> None:
    """Merges flagged pairs one at a time, smallest positions first."""
    while len(system) > 1:
        candidates = torch.triu(close, diagonal=1).nonzero().tolist()
        if not candidates:
            return
        a, b = candidates[0]
        mass = float(system.masses[a] + system.masses[b])
        centre = (system.masses[a] * system.positions[a] + system.masses[b] * system.positions[b]) / mass
        rest = [index for index in range(len(system)) if index not in (a, b)]

        fusions.append(
            Fusion(t=system.t, left=system.ids[a], right=system.ids[b], new=system.next_id, mass=mass)
        )
        positions = torch.cat([system.positions[rest], centre.unsqueeze(0)])
        masses = torch.cat([system.masses[rest], torch.tensor([mass], dtype=DTYPE)])
        # the merged particle inherits the collisions of its parts
        inherited = close[a, rest] | close[b, rest]
        inherited = inherited | ((positions[:-1] - centre).norm(dim=1) < epsilon)
        merged_close = torch.zeros((len(rest) + 1, len(rest) + 1), dtype=torch.bool)
        merged_close[:-1, :-1] = close[rest][:, rest]
        merged_close[-1, :-1] = inherited
        merged_close[:-1, -1] = inherited

        system.positions, system.masses, close = positions, masses, merged_close
        system.ids = [system.ids[index] for index in rest] + [system.next_id]
        system.next_id += 1


def classic_step(
    system: ParticleSystem, config: ClassicConfig, fusions: Optional[List[Fusion]] = None
) -> ParticleSystem:
    """Moves the particles once and merges the ones coming closer than epsilon.

    The time step is chosen so the fastest particle moves exactly delta. Pairs
    are tested on their closest approach during the move.

    Args:
        system: particle system, updated in place.
        config: configuration with epsilon and delta set.
        fusions: list collecting the merges. Defaults to None.

    Raises:
        ConfigurationError: epsilon or delta not set.

    Returns:
        the updated system.
    """
    if config.epsilon is None or config.delta is None:
        raise ConfigurationError("classic_step needs epsilon and delta to be set.")
    fusions = [] if fusions is None else fusions
    if len(system) < 2:
        return system

    accelerations = classic_accelerations(system, config.G)
    fastest = float(accelerations.norm(dim=1).max())
    if fastest == 0:
        # only coincident particles are left
        close = torch.cdist(system.positions, system.positions) < config.epsilon
        _merge_close(system, close, config.epsilon, fusions)
        return system
    dt_squared = config.delta / fastest
    moves = accelerations * dt_squared
    close = _closest_approach(system.positions, moves) < config.epsilon
    system.positions = system.positions + moves
    system.t += dt_squared**0.5
    _merge_close(system, close, config.epsilon, fusions)
    return system


def resolve_scales(config: ClassicConfig, points: Tensor) -> ClassicConfig:
    """Fills in the default epsilon and delta from the spread of the points.

    Args:
        config: classic configuration.
        points: initial coordinates.

    Returns:
        configuration with epsilon and delta set.
    """
    spread = max_pairwise_distance(points)
    if spread == 0:
        spread = 1.0
    update = {}
    if config.epsilon is None:
        update["epsilon"] = EPSILON_SCALE * spread
    if config.delta is None:
        update["delta"] = DELTA_SCALE * spread
    return config.copy(update=update)


class ClassicGravitationalClustering:
    """Runs classic gravitational clustering on the rows of a graph matrix.

    Attributes:
        config: classic configuration.
        iterations: iterations of the last run.
        runtime: wall clock duration of the last run in seconds.
    """

    def __init__(self, config: Optional[ClassicConfig] = None) -> None:
        """Initializes the ClassicGravitationalClustering.

        Args:
            config: classic configuration. Defaults to ClassicConfig().
        """
        self.config = ClassicConfig() if config is None else config
        self.iterations = 0
        self.runtime = 0.0

    def features(self, graph: Graph) -> Tensor:
        """Coordinates of the actors.

        Args:
            graph: graph of the actors.

        Returns:
            adjacency or affinity rows.
        """
        if self.config.feature_source == "affinity-rows":
            return AffinityController(graph=graph).compute(self.config.affinity).values.clone()
        return graph.weights.clone()

    def run_points(self, points: Tensor, labels: List[str]) -> Tuple[Dendrogram, ClassicConfig]:
        """Clusters arbitrary points.

        Args:
            points: coordinates, one row per observation.
            labels: observation names.

        Raises:
            SimulationStallError: more than max_iterations iterations.

        Returns:
            the dendrogram and the configuration with its resolved scales.
        """
        start = time.perf_counter()
        config = resolve_scales(self.config, points)
        system = ParticleSystem.from_points(points)
        fusions: List[Fusion] = []
        close = torch.cdist(system.positions, system.positions) < config.epsilon
        _merge_close(system, close, float(config.epsilon), fusions)

        self.iterations = 0
        while len(system) > 1:
            if self.iterations >= config.max_iterations:
                raise SimulationStallError(
                    f"{len(system)} particles left after {self.iterations} iterations.",
                    iteration=self.iterations,
                    live=list(system.ids),
                )
            classic_step(system, config, fusions)
            self.iterations += 1
        self.runtime = time.perf_counter() - start
        logger.info(f"classic clustering of {len(labels)} points in {self.iterations} iterations")
        return Dendrogram(labels=list(labels), fusions=fusions, total_time=system.t), config

    def run(self, graph: Graph) -> Dendrogram:
        """Clusters the actors of a graph.

        Args:
            graph: graph of the actors.

        Raises:
            InvalidGraphError: fewer than two actors.

        Returns:
            the dendrogram of the merges.
        """
        if graph.n < 2:
            raise InvalidGraphError("Clustering needs at least 2 actors.")
        dendrogram, _ = self.run_points(self.features(graph), list(graph.labels))
        return dendrogram


def classic_run(graph: Graph, config: Optional[ClassicConfig] = None) -> Dendrogram:
    """Runs classic gravitational clustering on the rows of the graph.

    Args:
        graph: graph of the actors.
        config: classic configuration. Defaults to ClassicConfig().

    Returns:
        the dendrogram of the merges.
    """
    return ClassicGravitationalClustering(config).run(graph)
