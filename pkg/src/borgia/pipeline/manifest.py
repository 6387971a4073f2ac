"""Run manifests: everything needed to reproduce a clustering run."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, root_validator

from .. import __version__
from ..clustering.configuration import ClassicConfig, EngineConfig
from ..clustering.dendrogram import SelectionMode
from ..datasets.benchmarks import load_benchmark
from ..errors import ConfigurationError
from ..graph.core import Graph
from ..graph.io import GraphFormat, load_graph
from .runner import AnyConfig, ClusteringResult, cluster_graph, write_clustering_outputs
from .tables import TableFormat

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

MANIFEST_FILE = "manifest.json"


def sha256_text(text: str) -> str:
    """Hex digest of the UTF-8 encoding of a text."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(file_path: str) -> str:
    """Hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(file_path, "rb") as fp:
        for chunk in iter(lambda: fp.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def graph_checksum(graph: Graph) -> str:
    """Checksum of a graph's canonical form.

    The form is the compact json of the labels, the directed flag and the
    weighted edges in row-major order.
    """
    canonical = {
        "labels": list(graph.labels),
        "directed": graph.directed,
        "edges": [[i, j, weight] for i, j, weight in graph.edges()],
    }
    return sha256_text(json.dumps(canonical, separators=(",", ":"), ensure_ascii=False))


class InputDescriptor(BaseModel):
    """Contains the description of the graph a run was computed on.

    Attributes:
        source: "file" for a graph file, "dataset" for a benchmark.
        path: absolute path of the graph file.
        format: format of the graph file.
        directed: directedness forced at load time, None to let the file decide.
        merge_duplicates: whether duplicated gml edges were collapsed.
        dataset: name of the benchmark.
        data_dir: directory the benchmark files were searched in first.
        sha256: checksum of the loaded graph's canonical form.
    """

    source: Literal["file", "dataset"]
    path: Optional[str] = None
    format: GraphFormat = "edge-list"
    directed: Optional[bool] = None
    merge_duplicates: bool = False
    dataset: Optional[str] = None
    data_dir: Optional[str] = None
    sha256: Optional[str] = None

    @root_validator(skip_on_failure=True)
    def check_reference(cls, values: Any) -> Any:
        """Validates that the input can be located.

        Args:
            values: values of the descriptor.

        Raises:
            ValueError: missing path for a file, missing name for a dataset.

        Returns:
            values of the descriptor.
        """
        if values.get("source") == "file" and not values.get("path"):
            raise ValueError("File inputs need a path.")
        if values.get("source") == "dataset" and not values.get("dataset"):
            raise ValueError("Dataset inputs need a dataset name.")
        return values

    def load(self) -> Graph:
        """Loads the described graph.

        Raises:
            ConfigurationError: the graph changed since the checksum was taken.

        Returns:
            the graph.
        """
        if self.source == "file":
            graph = load_graph(
                str(self.path),
                format=self.format,
                directed=self.directed,
                merge_duplicates=self.merge_duplicates,
            )
        else:
            graph = load_benchmark(str(self.dataset), data_dir=self.data_dir).graph
        if self.sha256 is not None and graph_checksum(graph) != self.sha256:
            raise ConfigurationError(
                f"Input {self.path or self.dataset} changed since the manifest was written."
            )
        return graph


class RunManifest(BaseModel):
    """Contains the record of a clustering run.

    Attributes:
        version: toolkit version.
        input: description of the input graph.
        engine: "borgia" or "classic".
        engine_config: Borgia configuration, for Borgia runs.
        classic_config: baseline configuration, for classic runs.
        selection: selection mode of the partition.
        communities: number of communities of the selected partition.
        k: requested number of communities.
        trace: whether the trace was written.
        format: format of the tables.
        iterations: simulation iterations.
        duration: wall clock duration of the run in seconds.
        outputs: written files, relative to the run directory, keyed by output name.
        checksums: sha256 of every written file, keyed by output name.
        notes: free text remarks, e.g. deviations from reference results.
    """

    version: str
    input: InputDescriptor
    engine: Literal["borgia", "classic"]
    engine_config: Optional[EngineConfig] = None
    classic_config: Optional[ClassicConfig] = None
    selection: SelectionMode
    communities: int
    k: Optional[int] = None
    trace: bool = False
    format: TableFormat = "csv"
    iterations: int = 0
    duration: float = 0.0
    outputs: Dict[str, str] = {}
    checksums: Dict[str, str] = {}
    notes: List[str] = []

    @root_validator(skip_on_failure=True)
    def check_config(cls, values: Any) -> Any:
        """Validates that the configuration matches the engine.

        Args:
            values: values of the manifest.

        Raises:
            ValueError: missing configuration for the engine.

        Returns:
            values of the manifest.
        """
        engine = values.get("engine")
        if engine == "borgia" and values.get("engine_config") is None:
            raise ValueError("Borgia runs need an engine_config.")
        if engine == "classic" and values.get("classic_config") is None:
            raise ValueError("Classic runs need a classic_config.")
        return values

    @classmethod
    def build(
        cls,
        input: InputDescriptor,
        config: AnyConfig,
        result: ClusteringResult,
        out_dir: str,
        outputs: Dict[str, str],
        k: Optional[int] = None,
        trace: bool = False,
        format: TableFormat = "csv",
        duration: Optional[float] = None,
    ) -> RunManifest:
        """Builds the manifest of a finished run, checksumming its files.

        Args:
            input: description of the input graph.
            config: configuration of the run.
            result: clustering result.
            out_dir: run directory.
            outputs: written files, relative to out_dir.
            k: requested number of communities. Defaults to None.
            trace: whether the trace was written. Defaults to False.
            format: format of the tables. Defaults to "csv".
            duration: wall clock duration, None for the engine runtime. Defaults to None.

        Returns:
            the manifest.
        """
        classic = isinstance(config, ClassicConfig)
        return cls(
            version=__version__,
            input=input,
            engine="classic" if classic else "borgia",
            engine_config=None if classic else config,
            classic_config=config if classic else None,
            selection=result.selection,
            communities=result.partition.k,
            k=k,
            trace=trace,
            format=format,
            iterations=result.iterations,
            duration=result.runtime if duration is None else duration,
            outputs=dict(outputs),
            checksums={
                name: sha256_file(os.path.join(out_dir, file_name))
                for name, file_name in outputs.items()
            },
        )

    def config(self) -> AnyConfig:
        """Configuration of the run."""
        if self.engine == "classic":
            return self.classic_config  # type: ignore
        return self.engine_config  # type: ignore


def save_manifest(manifest: RunManifest, save_path: str) -> str:
    """Saves a run manifest in a json file.

    Args:
        manifest: run manifest.
        save_path: path of the run directory.

    Returns:
        path of the written file.
    """
    file_path = os.path.join(save_path, MANIFEST_FILE)
    with open(file_path, "w") as outfile:
        json.dump(json.loads(manifest.json()), outfile, indent=4)
    return file_path


def load_manifest(file_path: str) -> RunManifest:
    """Loads a run manifest.

    Args:
        file_path: path of the file, or of the run directory holding MANIFEST_FILE.

    Returns:
        the run manifest.
    """
    if os.path.isdir(file_path):
        file_path = os.path.join(file_path, MANIFEST_FILE)
    return RunManifest.parse_file(file_path)


def execute_run(
    graph: Graph,
    input: InputDescriptor,
    config: AnyConfig,
    out_dir: str,
    selection: Optional[SelectionMode] = None,
    k: Optional[int] = None,
    trace: bool = False,
    format: TableFormat = "csv",
    notes: Optional[List[str]] = None,
) -> RunManifest:
    """Clusters a graph, writes every output and the manifest describing them.

    Args:
        graph: graph of the actors.
        input: description of where the graph came from.
        config: EngineConfig or ClassicConfig.
        out_dir: run directory.
        selection: selection mode. Defaults to None.
        k: number of communities to cut at. Defaults to None.
        trace: whether the iteration trace is written. Defaults to False.
        format: format of the tables. Defaults to "csv".
        notes: remarks stored in the manifest. Defaults to None.

    Returns:
        the saved manifest.
    """
    start = time.perf_counter()
    if input.sha256 is None:
        input = input.copy(update={"sha256": graph_checksum(graph)})
    result = cluster_graph(graph, config, selection=selection, k=k, trace=trace)
    outputs = write_clustering_outputs(result, config, out_dir, format=format, trace=trace)
    manifest = RunManifest.build(
        input,
        config,
        result,
        out_dir,
        outputs,
        k=k,
        trace=trace,
        format=format,
        duration=time.perf_counter() - start,
    )
    manifest.notes = list(notes or [])
    save_manifest(manifest, out_dir)
    return manifest


def rerun_from_manifest(manifest: RunManifest, out_dir: str) -> RunManifest:
    """Reproduces a run from its manifest.

    Args:
        manifest: manifest of the original run.
        out_dir: directory of the new run.

    Returns:
        the manifest of the new run; its checksums match the original ones
        when the outputs are bit-identical.
    """
    graph = manifest.input.load()
    rerun = execute_run(
        graph,
        manifest.input,
        manifest.config(),
        out_dir,
        selection=manifest.selection,
        k=manifest.k,
        trace=manifest.trace,
        format=manifest.format,
        notes=manifest.notes,
    )
    if rerun.checksums != manifest.checksums:
        differing = sorted(
            name
            for name in set(rerun.checksums) | set(manifest.checksums)
            if rerun.checksums.get(name) != manifest.checksums.get(name)
        )
        logger.warning(f"re-run outputs differ from the manifest: {differing}")
    return rerun
