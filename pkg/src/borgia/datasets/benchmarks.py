"""Benchmark networks with ground truth communities."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import List, Literal, Optional

import importlib_resources
import networkx as nx
from pydantic import BaseModel, conlist

from ..errors import BorgiaError, DatasetNotFoundError
from ..evaluation.partition import Partition, load_partition
from ..graph.core import Graph
from ..graph.io import parse_gml_document, parse_gml_subset, read_text

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

DATASETS_DIR = str(importlib_resources.files("borgia") / "resources" / "datasets")
BENCHMARKS_FILE = os.path.join(DATASETS_DIR, "benchmarks.json")
DATA_DIR_VARIABLE = "BORGIA_DATA_DIR"


class BenchmarkInfo(BaseModel):
    """Contains the description of a benchmark network.

    Attributes:
        name: identifier of the benchmark.
        source: "networkx" for graphs built by networkx, "file" for GML files.
        graph_file: name of the GML file.
        labels_file: name of the ground truth CSV file.
        truth_attribute: node attribute holding the ground truth community.
        n: expected number of actors.
        communities: expected number of ground truth communities.
        provenance: origin of the data.
    """

    name: str
    source: Literal["networkx", "file"]
    graph_file: Optional[str] = None
    labels_file: Optional[str] = None
    truth_attribute: Optional[str] = None
    n: int
    communities: int
    provenance: str


class Benchmarks(BaseModel):
    """Contains the registry of the benchmark networks.

    Attributes:
        benchmarks: description of every benchmark.
    """

    benchmarks: conlist(item_type=BenchmarkInfo, min_items=1)  # type: ignore

    def get(self, name: str) -> BenchmarkInfo:
        """Gets the description of a benchmark.

        Args:
            name: identifier of the benchmark.

        Raises:
            DatasetNotFoundError: unknown benchmark.

        Returns:
            the benchmark description.
        """
        for info in self.benchmarks:
            if info.name == name:
                return info
        raise DatasetNotFoundError(
            f"Unknown dataset '{name}', available: {', '.join(self.names())}."
        )

    def names(self) -> List[str]:
        """Lists the benchmark identifiers."""
        return [info.name for info in self.benchmarks]


@dataclass
class LabeledDataset:
    """A graph together with its ground truth.

    Attributes:
        name: identifier of the dataset.
        graph: graph of the actors.
        ground_truth: ground truth partition over the graph's actors, if known.
        provenance: origin of the data.
    """

    name: str
    graph: Graph
    ground_truth: Optional[Partition]
    provenance: str

    def __post_init__(self) -> None:
        if self.ground_truth is not None and set(self.ground_truth.labels) != set(self.graph.labels):
            raise DatasetNotFoundError(
                f"The ground truth of '{self.name}' does not cover the actors of its graph."
            )
        if self.ground_truth is not None:
            reference = Partition(labels=list(self.graph.labels), assignment=[0] * self.graph.n)
            self.ground_truth = reference.aligned_with(self.ground_truth)


def load_benchmarks_registry(file_path: str = BENCHMARKS_FILE) -> Benchmarks:
    """Loads the benchmark registry.

    Args:
        file_path: path of the registry. Defaults to BENCHMARKS_FILE.

    Returns:
        the registry.
    """
    return Benchmarks.parse_file(file_path)


def data_directories(data_dir: Optional[str] = None) -> List[str]:
    """Directories searched for benchmark files, in lookup order.

    Args:
        data_dir: explicit directory, searched first. Defaults to None.

    Returns:
        existing directories.
    """
    candidates = [data_dir, os.environ.get(DATA_DIR_VARIABLE), DATASETS_DIR]
    return [directory for directory in candidates if directory and os.path.isdir(directory)]


def _find(file_name: str, data_dir: Optional[str]) -> Optional[str]:
    for directory in data_directories(data_dir):
        path = os.path.join(directory, file_name)
        if os.path.isfile(path):
            return path
    return None


def is_available(name: str, data_dir: Optional[str] = None) -> bool:
    """Checks whether the files of a benchmark can be found.

    Args:
        name: identifier of the benchmark.
        data_dir: explicit data directory. Defaults to None.

    Returns:
        whether the benchmark can be loaded.
    """
    info = load_benchmarks_registry().get(name)
    return info.source == "networkx" or _find(str(info.graph_file), data_dir) is not None


def _load_karate(info: BenchmarkInfo) -> LabeledDataset:
    karate = nx.karate_club_graph()
    graph = Graph.from_networkx(karate, weight=None)
    truth = Partition.from_labels(
        graph.labels, [karate.nodes[node][info.truth_attribute] for node in karate.nodes]
    )
    return LabeledDataset(info.name, graph, truth, info.provenance)


def _load_file(info: BenchmarkInfo, data_dir: Optional[str]) -> LabeledDataset:
    graph_path = _find(str(info.graph_file), data_dir)
    if graph_path is None:
        raise DatasetNotFoundError(
            f"Data file '{info.graph_file}' of '{info.name}' not found; place it in one of "
            f"{data_directories(data_dir) or [DATASETS_DIR]} or set {DATA_DIR_VARIABLE}.",
            dataset=info.name,
        )
    text = read_text(graph_path)
    try:
        graph = parse_gml_subset(text, merge_duplicates=True)
    except BorgiaError as error:
        raise DatasetNotFoundError(
            f"Corrupt data file {graph_path}: {error.message}", dataset=info.name
        ) from error

    labels_path = os.path.join(
        os.path.dirname(graph_path), info.labels_file or f"{info.name}_labels.csv"
    )
    truth: Optional[Partition] = None
    if os.path.isfile(labels_path):
        truth = load_partition(labels_path)
    elif info.truth_attribute is not None:
        parsed = parse_gml_document(text, merge_duplicates=True)
        values = [parsed.nodes[node].get(info.truth_attribute) for node in parsed.nodes]
        if any(value is None for value in values):
            raise DatasetNotFoundError(
                f"Corrupt data file {graph_path}: missing node attribute '{info.truth_attribute}'.",
                dataset=info.name,
            )
        truth = Partition.from_labels(graph.labels, values)
    else:
        logger.warning(f"no ground truth found for '{info.name}'")
    return LabeledDataset(info.name, graph, truth, info.provenance)


def load_benchmark(name: str, data_dir: Optional[str] = None) -> LabeledDataset:
    """Loads a benchmark network with its ground truth.

    Args:
        name: "karate", "dolphins", "football" or "polbooks".
        data_dir: directory searched first for the data files. Defaults to None.

    Raises:
        DatasetNotFoundError: unknown benchmark, missing or corrupt data files.

    Returns:
        the labelled dataset.
    """
    info = load_benchmarks_registry().get(name)
    dataset = _load_karate(info) if info.source == "networkx" else _load_file(info, data_dir)

    if dataset.graph.n != info.n:
        raise DatasetNotFoundError(
            f"Corrupt dataset '{name}': expected {info.n} actors, found {dataset.graph.n}.",
            dataset=name,
        )
    if dataset.ground_truth is not None and dataset.ground_truth.k != info.communities:
        raise DatasetNotFoundError(
            f"Corrupt dataset '{name}': expected {info.communities} ground truth communities, "
            f"found {dataset.ground_truth.k}.",
            dataset=name,
        )
    logger.info(f"loaded {name}: {dataset.graph}")
    return dataset
