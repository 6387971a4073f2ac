"""Borgia clustering: gravitational dynamics in the space of influences.

Every actor starts as a community whose social value is its degree and whose
position is its row of the influence matrix S, initialized with the affinity
matrix and a unit self-influence. Communities attract each other through their
affinities; two communities collide when one exerts on the other at least the
influence the other exerts on itself, and they fuse at their centre of masses.
"""

import logging
import time
from dataclasses import dataclass
from typing import FrozenSet, List, NamedTuple, Optional, Tuple

import torch
from torch import Tensor

from ..affinity.controller import AffinityController
from ..affinity.core import AffinityMatrix
from ..affinity.functions import combine
from ..errors import ConfigurationError, InvalidGraphError, SimulationStallError
from ..graph.core import DTYPE, Graph, degrees
from .configuration import EngineConfig
from .dendrogram import Dendrogram, Fusion
from .policies import get_policy
from .tnorms import get_tnorm

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

# smallest collision gap used by the dynamic first delta
GAP_EPSILON = 1e-9


@dataclass
class Community:
    """A group of actors moving as one body.

    Attributes:
        id: stable identifier, leaves use their actor index.
        members: original actor indices.
        mass: social value, the sum of the members' degrees.
    """

    id: int
    members: FrozenSet[int]
    mass: float


@dataclass
class SimulationState:
    """Mutable state of a Borgia simulation.

    Attributes:
        live: live communities, sorted by id.
        S: influence matrix, S[i, j] being the influence of j over i.
        A: affinity matrix between the live communities.
        t: simulated time.
        iteration: number of movement iterations performed.
        next_id: id of the next community created by a fusion.
    """

    live: List[Community]
    S: Tensor
    A: Tensor
    t: float = 0.0
    iteration: int = 0
    next_id: int = 0

    @property
    def masses(self) -> Tensor:
        """Social values of the live communities."""
        return torch.tensor([community.mass for community in self.live], dtype=DTYPE)

    def total_mass(self) -> float:
        """Sum of the social values of the live communities."""
        return sum(community.mass for community in self.live)


class ForceTerms(NamedTuple):
    """Attraction felt by every live community, per unit of time.

    Attributes:
        forces: row i holds the attraction on community i, penalized by its policy.
        magnitudes: sum over the pairs of community i of the force term norms.
        visited_pairs: number of pairs whose force was evaluated.
        nonzero_pairs: number of ordered pairs with positive affinity.
    """

    forces: Tensor
    magnitudes: Tensor
    visited_pairs: int
    nonzero_pairs: int


class TraceRecord(NamedTuple):
    """Summary of one movement iteration."""

    iteration: int
    t: float
    dt: float
    live: int
    visited_pairs: int
    nonzero_pairs: int
    fusions: int


def initialize(
    graph: Graph, config: EngineConfig, affinity: Optional[AffinityMatrix] = None
) -> SimulationState:
    """Builds the initial state of a simulation.

    Args:
        graph: graph of the actors.
        config: engine configuration.
        affinity: affinity matrix overriding the configured one. Defaults to None.

    Raises:
        InvalidGraphError: fewer than two actors.
        ConfigurationError: target_k above the number of actors, affinity over other actors.

    Returns:
        one community per actor, S = affinity with a unit diagonal, t = 0.
    """
    if graph.n < 2:
        raise InvalidGraphError("Clustering needs at least 2 actors.")
    if config.target_k is not None and config.target_k > graph.n:
        raise ConfigurationError(
            f"target_k={config.target_k} exceeds the {graph.n} actors of the graph."
        )
    if affinity is None:
        if config.affinity is None:
            affinity = combine(graph, config.alpha)
        else:
            affinity = AffinityController(graph=graph).compute(config.affinity)
    if affinity.labels != graph.labels:
        raise ConfigurationError("The affinity matrix must cover the actors of the graph.")

    masses = degrees(graph, mode="total", weighted=config.weighted_degree).tolist()
    live = [
        Community(id=index, members=frozenset([index]), mass=float(mass))
        for index, mass in enumerate(masses)
    ]
    A = affinity.values.clone()
    S = A.clone()
    S.fill_diagonal_(1.0)

    unreachable = ((A.sum(dim=1) == 0) & (A.sum(dim=0) == 0)).nonzero().flatten().tolist()
    if unreachable:
        logger.warning(
            f"{len(unreachable)} actors have no affinity with anybody and will be merged "
            f"at the end of the run: {[graph.labels[index] for index in unreachable][:10]}"
        )
    return SimulationState(live=live, S=S, A=A, next_id=graph.n)


def force_terms(state: SimulationState, config: EngineConfig) -> ForceTerms:
    """Evaluates the attraction between the communities with positive affinity.

    Pairs with zero affinity are never visited, nor are pairs sharing the same
    position, which collide instead.

    Args:
        state: simulation state.
        config: engine configuration.

    Returns:
        the force terms per unit of time.
    """
    k = len(state.live)
    A = state.A.clone()
    A.fill_diagonal_(0.0)
    rows, cols = (A > 0).nonzero(as_tuple=True)
    nonzero_pairs = int(rows.numel())

    directions = state.S[cols] - state.S[rows]
    distances = directions.norm(dim=1)
    moving = distances > 0
    rows, cols, directions, distances = (
        rows[moving],
        cols[moving],
        directions[moving],
        distances[moving],
    )

    masses = state.masses
    if config.c == 0:
        # 0^0 is taken as 1
        mass_terms = torch.ones(rows.numel(), dtype=DTYPE)
    else:
        mass_terms = (masses[rows] * masses[cols]).pow(config.c)
    strengths = get_tnorm(config.tnorm)(mass_terms, A[rows, cols])

    pair_forces = (strengths / distances.pow(3)).unsqueeze(1) * directions
    forces = torch.zeros((k, k), dtype=DTYPE).index_add_(0, rows, pair_forces)
    magnitudes = torch.zeros(k, dtype=DTYPE).index_add_(0, rows, strengths / distances.pow(2))

    penalties = get_policy(config.policy).penalty(masses, config.p)
    forces = forces / penalties.unsqueeze(1)
    return ForceTerms(forces, magnitudes, int(rows.numel()), nonzero_pairs)


def compute_dt(
    state: SimulationState,
    config: EngineConfig,
    delta: Optional[float] = None,
    terms: Optional[ForceTerms] = None,
) -> Tuple[float, int]:
    """Chooses the time step moving the fastest community by at most delta.

    Args:
        state: simulation state.
        config: engine configuration.
        delta: maximum displacement, config.delta when None. Defaults to None.
        terms: force terms of the state, computed when None. Defaults to None.

    Raises:
        SimulationStallError: no attraction left between the communities.

    Returns:
        the time step and the position of the fastest community.
    """
    if terms is None:
        terms = force_terms(state, config)
    if terms.visited_pairs == 0:
        raise SimulationStallError(
            "No attraction left between the live communities.",
            live=[community.id for community in state.live],
        )
    delta = config.delta if delta is None else delta
    norms = terms.forces.norm(dim=1)
    if float(norms.max()) > 0:
        fastest = int(norms.argmax())
    else:
        # balanced pulls: fall back on the community with the strongest terms
        fastest = int(terms.magnitudes.argmax())
    penalty = float(get_policy(config.policy).penalty(state.masses, config.p)[fastest])
    dt = delta * penalty / float(terms.magnitudes[fastest])
    return dt, fastest


def attraction_step(
    state: SimulationState,
    config: EngineConfig,
    dt: float,
    terms: Optional[ForceTerms] = None,
) -> Tensor:
    """Computes the displacement of every community over a time step.

    Args:
        state: simulation state.
        config: engine configuration.
        dt: time step.
        terms: force terms of the state, computed when None. Defaults to None.

    Returns:
        matrix whose row i is the displacement vector g_i.
    """
    if terms is None:
        terms = force_terms(state, config)
    return terms.forces * dt


def apply_movement(state: SimulationState, displacements: Tensor, dt: float) -> SimulationState:
    """Moves every community by its displacement divided by its mass.

    Args:
        state: simulation state, updated in place.
        displacements: displacement vectors g_i.
        dt: time step.

    Returns:
        the updated state.
    """
    masses = state.masses
    moving = masses > 0
    state.S[moving] += displacements[moving] / masses[moving].unsqueeze(1)
    state.t += dt
    state.iteration += 1
    return state


def detect_collisions(state: SimulationState) -> List[Tuple[int, int]]:
    """Finds the colliding pairs of communities.

    Communities i and j collide when S[i, j] >= S[j, j] or S[j, i] >= S[i, i].

    Args:
        state: simulation state.

    Returns:
        unordered position pairs (i, j), i < j, in ascending order.
    """
    colliding = state.S >= torch.diagonal(state.S).unsqueeze(0)
    colliding = torch.triu(colliding | colliding.T, diagonal=1)
    return [(int(i), int(j)) for i, j in colliding.nonzero().tolist()]


def _merge(matrix: Tensor, a: int, b: int, weight_a: float, weight_b: float) -> Tensor:
    """Replaces rows and columns a and b by their weighted mean, appended last."""
    k = matrix.shape[0]
    rest = [index for index in range(k) if index not in (a, b)]
    merged = torch.zeros((k - 1, k - 1), dtype=matrix.dtype)
    merged[:-1, :-1] = matrix[rest][:, rest]
    merged[-1, :-1] = weight_a * matrix[a, rest] + weight_b * matrix[b, rest]
    merged[:-1, -1] = weight_a * matrix[rest, a] + weight_b * matrix[rest, b]
    merged[-1, -1] = weight_a * matrix[a, a] + weight_b * matrix[b, b]
    return merged


def fuse(state: SimulationState, pair: Tuple[int, int], forced: bool = False) -> Fusion:
    """Fuses two live communities at their centre of masses.

    Args:
        state: simulation state, updated in place.
        pair: positions of the communities in the live list.
        forced: whether the fusion is forced. Defaults to False.

    Raises:
        ValueError: the pair does not designate two live communities.

    Returns:
        the fusion record.
    """
    a, b = sorted(pair)
    if a == b or a < 0 or b >= len(state.live):
        raise ValueError(f"Cannot fuse positions {pair} of {len(state.live)} live communities.")
    left, right = state.live[a], state.live[b]
    mass = left.mass + right.mass
    if mass > 0:
        weight_a, weight_b = left.mass / mass, right.mass / mass
    else:
        weight_a = weight_b = 0.5

    state.S = _merge(state.S, a, b, weight_a, weight_b)
    state.A = _merge(state.A, a, b, weight_a, weight_b)
    state.A[-1, -1] = 0.0

    community = Community(id=state.next_id, members=left.members | right.members, mass=mass)
    state.live = [item for position, item in enumerate(state.live) if position not in (a, b)]
    state.live.append(community)
    state.next_id += 1
    return Fusion(t=state.t, left=left.id, right=right.id, new=community.id, mass=mass, forced=forced)


def first_iteration_delta(state: SimulationState, config: EngineConfig) -> float:
    """Smallest collision gap among the pairs with positive affinity.

    Args:
        state: simulation state.
        config: engine configuration.

    Raises:
        SimulationStallError: no pair with positive affinity.

    Returns:
        min over A[i, j] > 0 of max(GAP_EPSILON, S[j, j] - S[i, j]).
    """
    A = state.A.clone()
    A.fill_diagonal_(0.0)
    rows, cols = (A > 0).nonzero(as_tuple=True)
    if rows.numel() == 0:
        raise SimulationStallError(
            "No pair of communities with positive affinity.",
            live=[community.id for community in state.live],
        )
    gaps = torch.diagonal(state.S)[cols] - state.S[rows, cols]
    return float(gaps.clamp(min=GAP_EPSILON).min())


class BorgiaClustering:
    """Runs Borgia simulations, keeping counters of the last run.

    Attributes:
        config: engine configuration.
        iterations: movement iterations of the last run.
        trace: per iteration records of the last run.
        runtime: wall clock duration of the last run in seconds.
    """

    def __init__(self, config: Optional[EngineConfig] = None, trace: bool = False) -> None:
        """Initializes the BorgiaClustering.

        Args:
            config: engine configuration. Defaults to EngineConfig().
            trace: whether to log every iteration. Defaults to False.
        """
        self.config = EngineConfig() if config is None else config
        self.log_iterations = trace
        self.iterations = 0
        self.trace: List[TraceRecord] = []
        self.runtime = 0.0

    def _cascade(self, state: SimulationState, fusions: List[Fusion]) -> int:
        """Fuses colliding pairs one at a time until none is left."""
        count = 0
        while len(state.live) > 1:
            collisions = detect_collisions(state)
            if not collisions:
                break
            fusion = fuse(state, collisions[0])
            logger.debug(f"fusion {fusion}")
            fusions.append(fusion)
            count += 1
        return count

    def _force_remaining(
        self, state: SimulationState, graph: Graph, fusions: List[Fusion]
    ) -> None:
        """Merges the communities left without attraction, lightest first.

        Each one joins the community it shares the most edge weight with; ties go
        to the heavier community, then to the smaller id.
        """
        if len(state.live) < 2:
            return
        logger.warning(
            f"{len(state.live)} communities have no attraction left, forcing their fusion."
        )
        symmetric = graph.weights + graph.weights.T
        # the configuration left lives as long as the simulation did so far
        state.t = 2.0 * state.t
        while len(state.live) > 1:
            orphan = min(range(len(state.live)), key=lambda pos: (state.live[pos].mass, state.live[pos].id))
            members = sorted(state.live[orphan].members)

            def preference(position: int) -> Tuple[float, float, int]:
                community = state.live[position]
                shared = float(symmetric[members][:, sorted(community.members)].sum())
                return (-shared, -community.mass, community.id)

            partner = min((pos for pos in range(len(state.live)) if pos != orphan), key=preference)
            fusion = fuse(state, (orphan, partner), forced=True)
            logger.warning(f"forced fusion of {fusion.left} and {fusion.right}")
            fusions.append(fusion)

    def run(self, graph: Graph, affinity: Optional[AffinityMatrix] = None) -> Dendrogram:
        """Runs the simulation until a single community is left.

        Args:
            graph: graph of the actors.
            affinity: affinity matrix overriding the configured one. Defaults to None.

        Raises:
            SimulationStallError: no fusion within max_stall_iterations iterations.

        Returns:
            the dendrogram of the fusions.
        """
        start = time.perf_counter()
        config = self.config
        state = initialize(graph, config, affinity=affinity)
        self.iterations = 0
        self.trace = []
        fusions: List[Fusion] = []
        self._cascade(state, fusions)

        stall = 0
        while len(state.live) > 1:
            terms = force_terms(state, config)
            if terms.visited_pairs == 0:
                break
            delta = config.delta
            if config.delta_mode == "dynamic-first" and state.iteration == 0:
                delta = first_iteration_delta(state, config)
            dt, _ = compute_dt(state, config, delta=delta, terms=terms)
            apply_movement(state, attraction_step(state, config, dt, terms=terms), dt)
            fused = self._cascade(state, fusions)

            record = TraceRecord(
                iteration=state.iteration,
                t=state.t,
                dt=dt,
                live=len(state.live),
                visited_pairs=terms.visited_pairs,
                nonzero_pairs=terms.nonzero_pairs,
                fusions=fused,
            )
            self.trace.append(record)
            if self.log_iterations:
                logger.debug(f"iteration {record.iteration}: t={record.t} dt={record.dt} live={record.live}")

            stall = 0 if fused else stall + 1
            if stall >= config.max_stall_iterations:
                isolated = [
                    community.id
                    for position, community in enumerate(state.live)
                    if float(state.A[position].sum() + state.A[:, position].sum()) == 0
                ]
                raise SimulationStallError(
                    f"No fusion in {stall} iterations with {len(state.live)} live communities "
                    f"(isolated communities: {isolated}).",
                    iteration=state.iteration,
                    live=[community.id for community in state.live],
                    isolated=isolated,
                )

        self._force_remaining(state, graph, fusions)
        self.iterations = state.iteration
        self.runtime = time.perf_counter() - start
        logger.info(
            f"clustered {graph.n} actors in {self.iterations} iterations, "
            f"simulated time {state.t:.6g}"
        )
        return Dendrogram(labels=list(graph.labels), fusions=fusions, total_time=state.t)


def run(graph: Graph, config: Optional[EngineConfig] = None) -> Dendrogram:
    """Runs a Borgia simulation.

    Args:
        graph: graph of the actors.
        config: engine configuration. Defaults to EngineConfig().

    Returns:
        the dendrogram of the fusions.
    """
    return BorgiaClustering(config).run(graph)
