"""Clustering runs and the files they write."""

import logging
import os
from typing import Dict, List, NamedTuple, Optional, Union

from ..clustering.borgia import BorgiaClustering, TraceRecord
from ..clustering.classic import ClassicGravitationalClustering
from ..clustering.configuration import (
    ClassicConfig,
    EngineConfig,
    save_classic_config,
    save_engine_config,
)
from ..clustering.dendrogram import (
    Dendrogram,
    SelectionMode,
    save_dendrogram,
    select_configuration,
)
from ..evaluation.partition import Partition, save_partition
from ..graph.core import Graph
from ..graph.io import write_text
from .tables import TableFormat, format_records, table_file_name

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

PARTITION_FILE = "partition.csv"
TRACE_STEM = "trace"
CONFIGURATIONS_STEM = "configurations"
LINKAGE_STEM = "linkage"
LINKAGE_FIELDS = ("left", "right", "t", "size")

AnyConfig = Union[EngineConfig, ClassicConfig]


class ClusteringResult(NamedTuple):
    """Outcome of a clustering run.

    Attributes:
        dendrogram: fusions of the run.
        partition: selected configuration.
        selection: selection mode that produced the partition.
        iterations: simulation iterations.
        runtime: wall clock duration in seconds.
        trace: per iteration records, empty for the classic baseline.
    """

    dendrogram: Dendrogram
    partition: Partition
    selection: str
    iterations: int
    runtime: float
    trace: List[TraceRecord]


def cluster_graph(
    graph: Graph,
    config: AnyConfig,
    selection: Optional[SelectionMode] = None,
    k: Optional[int] = None,
    trace: bool = False,
) -> ClusteringResult:
    """Runs the Borgia engine or the classic baseline and selects a partition.

    A requested k (or the engine's target_k) always cuts with "fixed-k";
    otherwise Borgia defaults to "score" and the baseline to "lifespan".

    Args:
        graph: graph of the actors.
        config: EngineConfig for Borgia, ClassicConfig for the baseline.
        selection: selection mode. Defaults to None.
        k: number of communities to cut at. Defaults to None.
        trace: whether every iteration is logged. Defaults to False.

    Returns:
        the clustering result.
    """
    records: List[TraceRecord] = []
    runner: Union[BorgiaClustering, ClassicGravitationalClustering]
    if isinstance(config, ClassicConfig):
        runner = ClassicGravitationalClustering(config)
        dendrogram = runner.run(graph)
        default: SelectionMode = "lifespan"
    else:
        runner = BorgiaClustering(config, trace=trace)
        dendrogram = runner.run(graph)
        records = list(runner.trace)
        default = "score"
        k = config.target_k if k is None else k

    mode: SelectionMode = "fixed-k" if k is not None else (selection or default)
    partition = select_configuration(dendrogram, mode, k)
    logger.info(f"selected {partition.k} communities with the '{mode}' criterion")
    return ClusteringResult(
        dendrogram=dendrogram,
        partition=partition,
        selection=mode,
        iterations=runner.iterations,
        runtime=runner.runtime,
        trace=records,
    )


def write_clustering_outputs(
    result: ClusteringResult,
    config: AnyConfig,
    out_dir: str,
    format: TableFormat = "csv",
    trace: bool = False,
) -> Dict[str, str]:
    """Writes the files of a clustering run.

    Args:
        result: clustering result.
        config: configuration of the run.
        out_dir: output directory, created when missing.
        format: format of the tables. Defaults to "csv".
        trace: whether the iteration trace is written. Defaults to False.

    Returns:
        written file names, relative to out_dir, keyed by output name.
    """
    os.makedirs(out_dir, exist_ok=True)
    outputs: Dict[str, str] = {}
    if isinstance(config, ClassicConfig):
        outputs["config"] = os.path.basename(save_classic_config(config, out_dir))
    else:
        outputs["config"] = os.path.basename(save_engine_config(config, out_dir))
    outputs["dendrogram"] = os.path.basename(save_dendrogram(result.dendrogram, out_dir))

    save_partition(result.partition, os.path.join(out_dir, PARTITION_FILE))
    outputs["partition"] = PARTITION_FILE

    configurations = [
        configuration.dict() for configuration in result.dendrogram.configurations()
    ]
    outputs["configurations"] = table_file_name(CONFIGURATIONS_STEM, format)
    write_text(
        format_records(
            configurations,
            ["fusions", "k", "start", "end", "lifespan", "score"],
            format,
        ),
        os.path.join(out_dir, outputs["configurations"]),
    )

    linkage = [dict(zip(LINKAGE_FIELDS, row)) for row in result.dendrogram.to_linkage()]
    outputs["linkage"] = table_file_name(LINKAGE_STEM, format)
    write_text(
        format_records(linkage, LINKAGE_FIELDS, format),
        os.path.join(out_dir, outputs["linkage"]),
    )

    if trace:
        outputs["trace"] = table_file_name(TRACE_STEM, format)
        write_text(
            format_records(
                [record._asdict() for record in result.trace], TraceRecord._fields, format
            ),
            os.path.join(out_dir, outputs["trace"]),
        )
    logger.info(f"wrote {sorted(outputs.values())} to {out_dir}")
    return outputs
