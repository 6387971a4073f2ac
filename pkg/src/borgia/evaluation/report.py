"""Metric reports of a partition."""

from __future__ import annotations

import json
import os
from typing import Optional

from pydantic import BaseModel

from ..graph.core import Graph
from .metrics import ari, modularity, modularity_density, nmi
from .partition import Partition

METRICS_FILE = "metrics.json"


class MetricReport(BaseModel):
    """Quality of a partition, optionally against a ground truth.

    Attributes:
        k: number of communities.
        modularity: Newman modularity.
        modularity_density: modularity density.
        nmi: normalized mutual information with the ground truth.
        ari: adjusted Rand index with the ground truth.
        truth_k: number of ground truth communities.
    """

    k: int
    modularity: float
    modularity_density: float
    nmi: Optional[float] = None
    ari: Optional[float] = None
    truth_k: Optional[int] = None


def evaluate_partition(
    graph: Graph, partition: Partition, truth: Optional[Partition] = None
) -> MetricReport:
    """Computes every metric of a partition.

    Args:
        graph: graph of the actors.
        partition: partition to evaluate.
        truth: ground truth partition. Defaults to None.

    Returns:
        the metric report.
    """
    report = MetricReport(
        k=partition.k,
        modularity=modularity(graph, partition),
        modularity_density=modularity_density(graph, partition),
    )
    if truth is not None:
        report.nmi = nmi(partition, truth)
        report.ari = ari(partition, truth)
        report.truth_k = truth.k
    return report


def save_metric_report(report: MetricReport, save_path: str) -> str:
    """Saves a metric report in a json file.

    Args:
        report: metric report.
        save_path: path of the saving directory.

    Returns:
        path of the written file.
    """
    file_path = os.path.join(save_path, METRICS_FILE)
    with open(file_path, "w") as outfile:
        json.dump(json.loads(report.json()), outfile, indent=4)
    return file_path


def load_metric_report(file_path: str) -> MetricReport:
    """Loads a metric report from a json file.

    Args:
        file_path: path of the file, or of the directory holding METRICS_FILE.

    Returns:
        the metric report.
    """
    if os.path.isdir(file_path):
        file_path = os.path.join(file_path, METRICS_FILE)
    return MetricReport.parse_file(file_path)
