"""Fusion dendrograms and the selection of a configuration."""

from __future__ import annotations

import json
import math
import os
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, root_validator

from ..errors import ConfigurationError
from ..evaluation.partition import Partition

DENDROGRAM_FILE = "dendrogram.json"

SelectionMode = Literal["score", "fixed-k", "lifespan"]


class Fusion(BaseModel):
    """A fusion of two communities.

    Attributes:
        t: simulated time of the fusion.
        left: id of the first fused community.
        right: id of the second fused community.
        new: id of the resulting community.
        mass: social value of the resulting community.
        forced: whether the fusion was forced because no attraction was left.
    """

    t: float
    left: int
    right: int
    new: int
    mass: float
    forced: bool = False


class ConfigurationScore(BaseModel):
    """A configuration between two consecutive fusions.

    Attributes:
        fusions: number of fusions applied before the configuration.
        k: number of communities.
        start: simulated time the configuration appears.
        end: simulated time the configuration disappears.
        lifespan: end - start.
        score: lifespan * ln(k).
    """

    fusions: int
    k: int
    start: float
    end: float
    lifespan: float
    score: float


class Dendrogram(BaseModel):
    """Ordered fusions turning n singletons into one community.

    Leaves carry the ids 0..n-1 and the i-th fusion creates the id n + i.

    Attributes:
        labels: actor names of the leaves.
        fusions: the n - 1 fusions in chronological order.
        total_time: simulated duration of the whole run.
    """

    labels: List[str]
    fusions: List[Fusion]
    total_time: float

    @root_validator(skip_on_failure=True)
    def check_merge_tree(cls, values: Any) -> Any:
        """Validates that the fusions form a binary merge tree over the leaves.

        Args:
            values: values of the dendrogram.

        Raises:
            ValueError: wrong number of fusions, decreasing timestamps or invalid ids.

        Returns:
            values of the dendrogram.
        """
        labels, fusions, total_time = (
            values.get("labels"),
            values.get("fusions"),
            values.get("total_time"),
        )
        n = len(labels)
        if n < 1:
            raise ValueError("A dendrogram needs at least one leaf.")
        if len(fusions) != n - 1:
            raise ValueError(f"A dendrogram over {n} leaves needs {n - 1} fusions, found {len(fusions)}.")
        live = set(range(n))
        previous = 0.0
        for position, fusion in enumerate(fusions):
            if fusion.t < previous:
                raise ValueError(f"Fusion {position} happens before the previous one.")
            previous = fusion.t
            if fusion.left == fusion.right or fusion.left not in live or fusion.right not in live:
                raise ValueError(f"Fusion {position} does not merge two live communities.")
            if fusion.new != n + position:
                raise ValueError(f"Fusion {position} must create the id {n + position}.")
            live -= {fusion.left, fusion.right}
            live.add(fusion.new)
        if total_time < previous:
            raise ValueError("The total time cannot precede the last fusion.")
        return values

    @property
    def n(self) -> int:
        """Number of leaves."""
        return len(self.labels)

    def partition_after(self, num_fusions: int) -> Partition:
        """Builds the partition left after the first fusions.

        Args:
            num_fusions: number of fusions to apply, in [0, n - 1].

        Raises:
            ConfigurationError: num_fusions out of range.

        Returns:
            the partition, community ids assigned by first appearance.
        """
        if not 0 <= num_fusions <= self.n - 1:
            raise ConfigurationError(
                f"num_fusions must lie in [0, {self.n - 1}], obtained {num_fusions}."
            )
        parent: Dict[int, int] = {}
        for fusion in self.fusions[:num_fusions]:
            parent[fusion.left] = fusion.new
            parent[fusion.right] = fusion.new

        def root(node: int) -> int:
            while node in parent:
                node = parent[node]
            return node

        return Partition.from_labels(self.labels, [root(leaf) for leaf in range(self.n)])

    def configurations(self) -> List[ConfigurationScore]:
        """Enumerates every configuration, from the singletons to the single community.

        Returns:
            n configurations, the i-th one following i fusions.
        """
        times = [fusion.t for fusion in self.fusions]
        starts = [0.0] + times
        ends = times + [self.total_time]
        scores = []
        for position, (start, end) in enumerate(zip(starts, ends)):
            k = self.n - position
            lifespan = end - start
            scores.append(
                ConfigurationScore(
                    fusions=position,
                    k=k,
                    start=start,
                    end=end,
                    lifespan=lifespan,
                    score=lifespan * math.log(k),
                )
            )
        return scores

    def to_linkage(self) -> List[List[float]]:
        """Exports the fusions as a linkage table.

        Returns:
            one row [left, right, t, size] per fusion, size being the number of leaves merged.
        """
        sizes = {leaf: 1 for leaf in range(self.n)}
        rows = []
        for fusion in self.fusions:
            sizes[fusion.new] = sizes[fusion.left] + sizes[fusion.right]
            rows.append(
                [float(fusion.left), float(fusion.right), fusion.t, float(sizes[fusion.new])]
            )
        return rows


def candidate_configurations(dendrogram: Dendrogram) -> List[ConfigurationScore]:
    """Configurations eligible for selection.

    The singletons and the single community are excluded.

    Args:
        dendrogram: the dendrogram.

    Returns:
        configurations with 2 <= k <= n - 1.
    """
    return [
        configuration
        for configuration in dendrogram.configurations()
        if 1 < configuration.k < dendrogram.n
    ]


def select_configuration(
    dendrogram: Dendrogram, mode: SelectionMode = "score", k: Optional[int] = None
) -> Partition:
    """Selects a partition from a dendrogram.

    The "score" mode maximizes lifespan * ln(k), "lifespan" maximizes the
    lifespan alone and "fixed-k" cuts where k communities existed. Ties keep
    the earliest configuration; without any configuration of positive value
    the single community is returned.

    Args:
        dendrogram: the dendrogram.
        mode: "score", "lifespan" or "fixed-k". Defaults to "score".
        k: number of communities for "fixed-k". Defaults to None.

    Raises:
        ConfigurationError: missing or out of range k, unknown mode.

    Returns:
        the selected partition.
    """
    if mode == "fixed-k":
        if k is None or not 1 <= k <= dendrogram.n:
            raise ConfigurationError(
                f"fixed-k selection needs k in [1, {dendrogram.n}], obtained {k}."
            )
        return dendrogram.partition_after(dendrogram.n - k)
    if mode not in ("score", "lifespan"):
        raise ConfigurationError(f"Unknown selection mode '{mode}'.")

    best: Optional[ConfigurationScore] = None
    for configuration in candidate_configurations(dendrogram):
        value = configuration.score if mode == "score" else configuration.lifespan
        if value > 0 and (
            best is None
            or value > (best.score if mode == "score" else best.lifespan)
        ):
            best = configuration
    if best is None:
        return dendrogram.partition_after(dendrogram.n - 1)
    return dendrogram.partition_after(best.fusions)


def save_dendrogram(dendrogram: Dendrogram, save_path: str) -> str:
    """Saves a dendrogram in a json file.

    Args:
        dendrogram: the dendrogram.
        save_path: path of the saving directory.

    Returns:
        path of the written file.
    """
    file_path = os.path.join(save_path, DENDROGRAM_FILE)
    with open(file_path, "w") as outfile:
        json.dump(json.loads(dendrogram.json()), outfile, indent=4)
    return file_path


def load_dendrogram(file_path: str) -> Dendrogram:
    """Loads a dendrogram from a json file.

    Args:
        file_path: path of the file, or of the directory holding DENDROGRAM_FILE.

    Returns:
        the dendrogram.
    """
    if os.path.isdir(file_path):
        file_path = os.path.join(file_path, DENDROGRAM_FILE)
    return Dendrogram.parse_file(file_path)
