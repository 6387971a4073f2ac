"""Aggregated voting networks, such as Eurovision televotes."""

import csv
import io
import logging
from collections import defaultdict
from typing import DefaultDict, Optional, Tuple

import torch

from ..errors import GraphFormatError, InvalidGraphError
from ..graph.core import DTYPE, Graph
from ..graph.io import Source, read_text

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

VOTES_HEADER = ("year", "from", "to", "points")

YearRange = Tuple[int, int]


def parse_votes(text: str, years: Optional[YearRange] = None) -> Graph:
    """Aggregates vote rows into a directed graph.

    The weight of the edge from -> to is the sum of the points over the
    selected years. Actors are every country voting or voted in the selected
    rows, sorted alphabetically.

    Args:
        text: CSV document with header ``year,from,to,points``.
        years: inclusive (first, last) interval of years, None for every row.
            Defaults to None.

    Raises:
        GraphFormatError: missing header, malformed rows or self votes.
        InvalidGraphError: no row falls into the year interval.

    Returns:
        the voting graph.
    """
    if years is not None and years[0] > years[1]:
        raise InvalidGraphError(f"Empty year interval {years}: no rows selected.")

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(field.strip().lower() for field in header) != VOTES_HEADER:
        raise GraphFormatError(f"expected header {','.join(VOTES_HEADER)}", line=1)

    points: DefaultDict[Tuple[str, str], float] = defaultdict(float)
    selected = 0
    for row in reader:
        line = reader.line_num
        if not row or all(not field.strip() for field in row):
            continue
        if len(row) != len(VOTES_HEADER):
            raise GraphFormatError(f"expected 4 fields, found {len(row)}", line=line)
        year_field, source, target, value = (field.strip() for field in row)
        try:
            year = int(year_field)
        except ValueError:
            raise GraphFormatError(f"invalid year '{year_field}'", line=line, field="year") from None
        try:
            amount = float(value)
        except ValueError:
            raise GraphFormatError(f"invalid points '{value}'", line=line, field="points") from None
        if amount < 0:
            raise GraphFormatError(f"negative points {amount:g}", line=line, field="points")
        if not source or not target:
            raise GraphFormatError("empty country", line=line, field="from" if not source else "to")
        if source == target:
            raise GraphFormatError(f"self vote of '{source}'", line=line, field="to")
        if years is not None and not years[0] <= year <= years[1]:
            continue
        points[(source, target)] += amount
        selected += 1

    if selected == 0:
        raise InvalidGraphError("No rows selected for the requested years.")

    labels = sorted({country for pair in points for country in pair})
    index = {label: position for position, label in enumerate(labels)}
    weights = torch.zeros((len(labels), len(labels)), dtype=DTYPE)
    for (source, target), amount in sorted(points.items()):
        weights[index[source], index[target]] = amount
    logger.info(f"aggregated {selected} vote rows into {len(labels)} countries")
    return Graph(labels, weights, directed=True)


def load_votes(source: Source, years: Optional[YearRange] = None) -> Graph:
    """Loads a vote CSV from a path, bytes or stream (see parse_votes)."""
    return parse_votes(read_text(source), years=years)
