"""Parameter sweeps over the engine configuration, and the scaling study."""

from __future__ import annotations

import json
import logging
import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import torch
from pydantic import BaseModel, ValidationError

from ..clustering.borgia import BorgiaClustering
from ..clustering.configuration import EngineConfig
from ..clustering.dendrogram import select_configuration
from ..errors import INTERNAL_ERROR_CODE, BorgiaError, ConfigurationError
from ..evaluation.partition import Partition
from ..evaluation.report import evaluate_partition
from ..graph.core import DTYPE, Graph

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

SWEEP_GRID_FILE = "sweep_grid.json"


class SweepGrid(BaseModel):
    """Contains the grid of a parameter sweep.

    Every combination of alpha, p and c is run, the other parameters being
    taken from base.

    Attributes:
        alphas: affinity mixes.
        ps: greedy expanse penalization exponents.
        cs: mass exponents.
        base: configuration shared by every run.
    """

    alphas: List[float] = [0.7]
    ps: List[float] = [3.0]
    cs: List[float] = [0.0]
    base: EngineConfig = EngineConfig()

    def combinations(self) -> List[Tuple[float, float, float]]:
        """Lists the (alpha, p, c) combinations in grid order.

        Raises:
            ConfigurationError: one of the axes is empty.

        Returns:
            combinations, alpha varying slowest.
        """
        empty = [name for name in ("alphas", "ps", "cs") if not getattr(self, name)]
        if empty:
            raise ConfigurationError(f"Empty sweep grid axes: {', '.join(empty)}.")
        return list(product(self.alphas, self.ps, self.cs))


class SweepRow(BaseModel):
    """Outcome of one sweep run. Failed runs carry the error code and message."""

    alpha: float
    p: float
    c: float
    k: Optional[int] = None
    modularity: Optional[float] = None
    modularity_density: Optional[float] = None
    nmi: Optional[float] = None
    ari: Optional[float] = None
    iterations: Optional[int] = None
    runtime: Optional[float] = None
    error: Optional[str] = None
    message: Optional[str] = None


SWEEP_FIELDS = tuple(SweepRow.__fields__)


def load_sweep_grid(file_path: str) -> SweepGrid:
    """Loads a sweep grid.

    Args:
        file_path: path of the file, or of the directory holding SWEEP_GRID_FILE.

    Returns:
        the sweep grid.
    """
    if os.path.isdir(file_path):
        file_path = os.path.join(file_path, SWEEP_GRID_FILE)
    return SweepGrid.parse_file(file_path)


def save_sweep_grid(grid: SweepGrid, save_path: str) -> str:
    """Saves a sweep grid in a json file.

    Args:
        grid: sweep grid.
        save_path: path of the saving directory.

    Returns:
        path of the written file.
    """
    file_path = os.path.join(save_path, SWEEP_GRID_FILE)
    with open(file_path, "w") as outfile:
        json.dump(json.loads(grid.json()), outfile, indent=4)
    return file_path


def _sweep_run(
    graph: Graph,
    base: EngineConfig,
    alpha: float,
    p: float,
    c: float,
    truth: Optional[Partition],
) -> SweepRow:
    row = SweepRow(alpha=alpha, p=p, c=c)
    try:
        config = EngineConfig(**{**base.dict(), "alpha": alpha, "p": p, "c": c})
        runner = BorgiaClustering(config)
        dendrogram = runner.run(graph)
        mode = "fixed-k" if config.target_k is not None else "score"
        partition = select_configuration(dendrogram, mode, config.target_k)
        report = evaluate_partition(graph, partition, truth)
    except BorgiaError as error:
        logger.warning(f"sweep run alpha={alpha} p={p} c={c} failed: {error.one_line()}")
        row.error, row.message = error.code, error.message
        return row
    except ValidationError as error:
        row.error, row.message = ConfigurationError.code, " ".join(str(error).split())
        return row
    except Exception as error:
        logger.warning(f"sweep run alpha={alpha} p={p} c={c} crashed", exc_info=True)
        row.error, row.message = INTERNAL_ERROR_CODE, f"{type(error).__name__}: {error}"
        return row
    row.k = report.k
    row.modularity = report.modularity
    row.modularity_density = report.modularity_density
    row.nmi = report.nmi
    row.ari = report.ari
    row.iterations = runner.iterations
    row.runtime = runner.runtime
    return row


def run_sweep(
    graph: Graph,
    grid: SweepGrid,
    max_workers: Optional[int] = None,
    truth: Optional[Partition] = None,
) -> List[SweepRow]:
    """Runs the engine on every grid combination.

    Runs may execute concurrently; a failing run is recorded in its row and
    the sweep goes on.

    Args:
        graph: graph of the actors.
        grid: sweep grid.
        max_workers: worker threads, None for the executor default. Defaults to None.
        truth: ground truth adding NMI and ARI to the rows. Defaults to None.

    Raises:
        ConfigurationError: empty grid.

    Returns:
        one row per combination, in grid order.
    """
    combinations = grid.combinations()
    logger.info(f"sweeping {len(combinations)} configurations")
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return list(
            executor.map(
                lambda combination: _sweep_run(graph, grid.base, *combination, truth),
                combinations,
            )
        )


class ScalingRow(BaseModel):
    """Outcome of one run of the scaling study."""

    fraction: float
    edges: int
    repeat: int
    runtime: Optional[float] = None
    iterations: Optional[int] = None
    k: Optional[int] = None
    error: Optional[str] = None


SCALING_FIELDS = tuple(ScalingRow.__fields__)


def sample_edges(graph: Graph, fraction: float, generator: torch.Generator) -> Graph:
    """Keeps a uniformly sampled share of a graph's edges.

    Args:
        graph: graph to sample.
        fraction: share of edges to keep, in (0, 1].
        generator: random generator.

    Raises:
        ConfigurationError: fraction outside of (0, 1].

    Returns:
        graph over the same actors with round(fraction * |E|) edges, at least one.
    """
    if not 0.0 < fraction <= 1.0:
        raise ConfigurationError(f"Edge fractions must lie in (0, 1], obtained {fraction}.")
    edges = list(graph.edges())
    size = min(len(edges), max(1, round(fraction * len(edges))))
    chosen = torch.randperm(len(edges), generator=generator)[:size].tolist()
    weights = torch.zeros((graph.n, graph.n), dtype=DTYPE)
    for position in sorted(chosen):
        i, j, weight = edges[position]
        weights[i, j] = weight
        if not graph.directed:
            weights[j, i] = weight
    return Graph(graph.labels, weights, directed=graph.directed)


def run_scaling_sweep(
    graph: Graph,
    fractions: Sequence[float],
    repeats: int = 3,
    seed: int = 0,
    config: Optional[EngineConfig] = None,
) -> List[ScalingRow]:
    """Measures the engine runtime on growing edge samples.

    Args:
        graph: full graph.
        fractions: shares of edges to sample.
        repeats: samples per fraction. Defaults to 3.
        seed: seed of the edge sampling. Defaults to 0.
        config: engine configuration. Defaults to EngineConfig().

    Raises:
        ConfigurationError: no fractions, non positive repeats or invalid fractions.

    Returns:
        one row per (fraction, repeat), fractions in the given order.
    """
    if not fractions or repeats < 1:
        raise ConfigurationError("The scaling study needs fractions and at least one repeat.")
    generator = torch.Generator().manual_seed(seed)
    runner = BorgiaClustering(EngineConfig() if config is None else config)
    rows = []
    for fraction in fractions:
        for repeat in range(repeats):
            sample = sample_edges(graph, fraction, generator)
            row = ScalingRow(fraction=fraction, edges=sample.number_of_edges(), repeat=repeat)
            start = time.perf_counter()
            try:
                dendrogram = runner.run(sample)
            except BorgiaError as error:
                row.error = error.code
            except Exception:
                logger.warning(f"scaling run fraction={fraction} repeat={repeat} crashed", exc_info=True)
                row.error = INTERNAL_ERROR_CODE
            else:
                row.runtime = time.perf_counter() - start
                row.iterations = runner.iterations
                row.k = select_configuration(dendrogram).k
            rows.append(row)
            logger.debug(f"scaling {row}")
    return rows


def median_runtimes(rows: Sequence[ScalingRow]) -> Dict[float, float]:
    """Median runtime of the successful runs of every fraction."""
    runtimes: Dict[float, List[float]] = {}
    for row in rows:
        if row.runtime is not None:
            runtimes.setdefault(row.fraction, []).append(row.runtime)
    return {fraction: statistics.median(values) for fraction, values in runtimes.items()}
