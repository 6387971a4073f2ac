"""Export of affinity matrices and per-actor rankings."""

import csv
import io
import logging
from typing import Dict, List, NamedTuple, Tuple

import torch

from ..graph.io import Sink, format_matrix_csv, write_text
from .core import AffinityMatrix

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class RankedPartner(NamedTuple):
    """An actor together with its affinity value."""

    label: str
    value: float


def format_long_form_csv(matrix: AffinityMatrix) -> str:
    """Formats an affinity matrix as heatmap-ready `row,col,value` records.

    Args:
        matrix: affinity matrix.

    Returns:
        CSV text with one record per ordered actor pair, header included.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["row", "col", "value"])
    values = matrix.values.tolist()
    for i, row_label in enumerate(matrix.labels):
        for j, col_label in enumerate(matrix.labels):
            writer.writerow([row_label, col_label, repr(values[i][j])])
    return buffer.getvalue()


def save_matrix_csv(matrix: AffinityMatrix, sink: Sink) -> None:
    """Writes an affinity matrix in the matrix-csv graph format.

    Args:
        matrix: affinity matrix.
        sink: path or text stream.
    """
    write_text(format_matrix_csv(matrix.labels, matrix.values), sink)


def save_long_form_csv(matrix: AffinityMatrix, sink: Sink) -> None:
    """Writes an affinity matrix as long-form `row,col,value` CSV.

    Args:
        matrix: affinity matrix.
        sink: path or text stream.
    """
    write_text(format_long_form_csv(matrix), sink)


def _rank(values: torch.Tensor, labels: Tuple[str, ...], k: int) -> List[RankedPartner]:
    # stable sort keeps actor order among ties
    order = torch.sort(values, descending=True, stable=True).indices.tolist()
    ranked = [RankedPartner(labels[j], float(values[j])) for j in order if values[j] > 0]
    return ranked[:k]


def top_affinities(
    matrix: AffinityMatrix, actor: str, k: int
) -> Tuple[List[RankedPartner], List[RankedPartner]]:
    """Ranks the strongest partners of an actor.

    Args:
        matrix: affinity matrix.
        actor: label of the actor.
        k: number of partners to keep per direction.

    Raises:
        KeyError: unknown actor.
        ValueError: k is not positive.

    Returns:
        the top-k outgoing partners (affinity of the actor towards them) and
        the top-k incoming partners (their affinity towards the actor).
    """
    if k < 1:
        raise ValueError(f"k must be positive, obtained {k}.")
    if actor not in matrix.labels:
        raise KeyError(f"Unknown actor '{actor}'.")
    index = matrix.labels.index(actor)
    outgoing = _rank(matrix.values[index], matrix.labels, k)
    incoming = _rank(matrix.values[:, index], matrix.labels, k)
    return outgoing, incoming


def format_top_affinity_table(
    matrices: Dict[str, AffinityMatrix], actor: str, k: int
) -> str:
    """Formats the top-k partners of an actor for several affinities side by side.

    Args:
        matrices: affinity matrices keyed by kind.
        actor: label of the actor.
        k: number of partners per direction.

    Returns:
        CSV text with columns `direction,rank` followed by one column per kind.
    """
    rankings = {kind: top_affinities(matrix, actor, k) for kind, matrix in matrices.items()}
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["direction", "rank", *rankings.keys()])
    for position, direction in enumerate(("outgoing", "incoming")):
        for rank in range(k):
            row = [direction, str(rank + 1)]
            for outgoing_incoming in rankings.values():
                ranked = outgoing_incoming[position]
                row.append(ranked[rank].label if rank < len(ranked) else "")
            writer.writerow(row)
    return buffer.getvalue()
