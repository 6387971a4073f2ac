"""Reading and writing graphs as edge lists, matrix CSV files and a GML subset."""

import csv
import io
import logging
import os
import re
import shlex
from typing import IO, Dict, List, Literal, Optional, Tuple, Union

import networkx as nx
import torch

from ..errors import GraphFormatError
from .core import DTYPE, Graph

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

GraphFormat = Literal["edge-list", "matrix-csv", "gml-subset"]
GRAPH_FORMATS: Tuple[str, ...] = ("edge-list", "matrix-csv", "gml-subset")

Source = Union[str, "os.PathLike[str]", bytes, IO[bytes], IO[str]]
Sink = Union[str, "os.PathLike[str]", IO[str]]

# comment directives understood by the edge-list reader
DIRECTED_DIRECTIVE = re.compile(r"^#\s*directed\s*[:=]\s*(\w+)\s*$", re.IGNORECASE)
ACTORS_DIRECTIVE = re.compile(r"^#\s*actors\s*:(.*)$", re.IGNORECASE)
GML_GRAPH_HEADER = re.compile(r"^\s*graph\s*\[", re.MULTILINE)


def read_text(source: Source) -> str:
    """Reads a whole text document from a path, raw bytes or a stream.

    Args:
        source: path, bytes or (binary or text) stream.

    Returns:
        the decoded UTF-8 text.
    """
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fp:
            return fp.read()
    content = source.read()
    if isinstance(content, bytes):
        return content.decode("utf-8")
    return content


def write_text(text: str, sink: Sink) -> None:
    """Writes a whole text document to a path or a text stream.

    Args:
        text: document to write.
        sink: path or text stream.
    """
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8") as fp:
            fp.write(text)
    else:
        sink.write(text)


def _parse_bool(value: str, line: int) -> bool:
    """Parses the value of a boolean directive."""
    lowered = value.lower()
    if lowered in {"1", "true", "yes"}:
        return True
    if lowered in {"0", "false", "no"}:
        return False
    raise GraphFormatError(f"invalid boolean '{value}'", line=line, field="directed")


def _parse_weight(value: str, line: Optional[int], field: str) -> float:
    """Parses a non-negative weight."""
    try:
        weight = float(value)
    except ValueError:
        raise GraphFormatError(f"invalid weight '{value}'", line=line, field=field) from None
    if weight != weight or weight in (float("inf"), float("-inf")):
        raise GraphFormatError(f"non-finite weight '{value}'", line=line, field=field)
    if weight < 0:
        raise GraphFormatError("negative weight", line=line, field=field)
    return weight


def _split_fields(text: str, line: int, comments: bool = True) -> List[str]:
    """Splits a line into shell-quoted fields, dropping trailing comments."""
    try:
        return shlex.split(text, comments=comments)
    except ValueError as error:
        raise GraphFormatError(f"unbalanced quotes ({error})", line=line) from None


def parse_edge_list(text: str, directed: Optional[bool] = None) -> Graph:
    """Parses an edge list.

    Each line holds ``source target [weight]`` separated by tabs or spaces, the
    weight defaulting to 1. Labels holding spaces or ``#`` are quoted as in a
    POSIX shell. Text after ``#`` is a comment; the comments
    ``# directed: <bool>`` and ``# actors: <labels>`` are read as directives.

    Args:
        text: edge list document.
        directed: whether the graph is directed. Defaults to None, meaning the
            ``directed`` directive or, when absent, undirected.

    Raises:
        GraphFormatError: malformed lines, negative weights, self-loops,
            duplicated edges or a document without edges.

    Returns:
        graph whose labels follow their first appearance.
    """
    labels: Dict[str, int] = {}
    edges: Dict[Tuple[int, int], float] = {}
    edge_lines: Dict[Tuple[int, int], int] = {}
    declared_directed: Optional[bool] = None
    records: List[Tuple[int, int, int, float]] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            match = DIRECTED_DIRECTIVE.match(stripped)
            if match is not None:
                declared_directed = _parse_bool(match.group(1), line_number)
            match = ACTORS_DIRECTIVE.match(stripped)
            if match is not None:
                for label in _split_fields(match.group(1), line_number, comments=False):
                    labels.setdefault(label, len(labels))
            continue
        fields = _split_fields(stripped, line_number)
        if len(fields) == 0:
            continue
        if len(fields) not in (2, 3):
            raise GraphFormatError(
                f"expected 'source target [weight]', found {len(fields)} fields",
                line=line_number,
            )
        weight = _parse_weight(fields[2], line_number, "weight") if len(fields) == 3 else 1.0
        source, target = fields[0], fields[1]
        if source == target:
            raise GraphFormatError(f"self-loop on '{source}'", line=line_number)
        i = labels.setdefault(source, len(labels))
        j = labels.setdefault(target, len(labels))
        records.append((line_number, i, j, weight))

    if len(records) == 0:
        raise GraphFormatError("graph must contain at least one edge")

    is_directed = declared_directed if directed is None else directed
    if is_directed is None:
        is_directed = False

    for line_number, i, j, weight in records:
        key = (i, j) if is_directed else (min(i, j), max(i, j))
        if key in edges:
            raise GraphFormatError(
                f"duplicate edge (first defined at line {edge_lines[key]})",
                line=line_number,
            )
        edges[key] = weight
        edge_lines[key] = line_number

    weights = torch.zeros((len(labels), len(labels)), dtype=DTYPE)
    for (i, j), weight in edges.items():
        weights[i, j] = weight
        if not is_directed:
            weights[j, i] = weight
    return Graph(list(labels), weights, directed=is_directed)


def parse_matrix_csv(text: str, directed: Optional[bool] = None) -> Graph:
    """Parses a matrix CSV document: a header row of labels then one row of weights per actor.

    Args:
        text: CSV document.
        directed: whether the graph is directed. Defaults to None, meaning
            undirected when the matrix is symmetric.

    Raises:
        GraphFormatError: malformed rows, duplicate labels, negative weights or
            non-zero diagonal entries.

    Returns:
        graph whose labels follow the header order.
    """
    rows = [row for row in csv.reader(io.StringIO(text))]
    if len(rows) == 0 or len(rows[0]) == 0:
        raise GraphFormatError("missing header row of labels", line=1)
    labels = [label.strip() for label in rows[0]]
    seen = set()
    for label in labels:
        if label == "":
            raise GraphFormatError("empty label", line=1)
        if label in seen:
            raise GraphFormatError(f"duplicate label '{label}'", line=1)
        seen.add(label)

    body = [(number, row) for number, row in enumerate(rows[1:], start=2) if any(cell.strip() for cell in row)]
    if len(body) != len(labels):
        raise GraphFormatError(
            f"expected {len(labels)} weight rows, found {len(body)}",
            line=len(rows),
        )

    weights = torch.zeros((len(labels), len(labels)), dtype=DTYPE)
    for i, (line_number, row) in enumerate(body):
        if len(row) != len(labels):
            raise GraphFormatError(
                f"expected {len(labels)} weights, found {len(row)}", line=line_number
            )
        for j, cell in enumerate(row):
            weight = _parse_weight(cell.strip(), line_number, labels[j])
            if i == j and weight != 0:
                raise GraphFormatError("self-loop (non-zero diagonal)", line=line_number, field=labels[j])
            weights[i, j] = weight

    if directed is None:
        directed = not torch.equal(weights, weights.T)
    return Graph(labels, weights, directed=directed)


def parse_gml_document(text: str, merge_duplicates: bool = False) -> nx.Graph:
    """Parses a GML document with networkx.

    Documents holding only ``node``/``edge`` records are wrapped in a ``graph``
    block.

    Args:
        text: GML document.
        merge_duplicates: whether parallel edges are tolerated (they are read as
            a multigraph). Defaults to False.

    Raises:
        GraphFormatError: malformed document.

    Returns:
        networkx graph keyed by the GML node ids.
    """
    if GML_GRAPH_HEADER.search(text) is None:
        text = f"graph [\n{text}\n]"
    if merge_duplicates:
        text = GML_GRAPH_HEADER.sub("graph [\n  multigraph 1", text, count=1)
    try:
        return nx.parse_gml(text, label=None)
    except (nx.NetworkXError, ValueError) as error:
        raise GraphFormatError(f"invalid gml document: {error}") from error


def parse_gml_subset(
    text: str, directed: Optional[bool] = None, merge_duplicates: bool = False
) -> Graph:
    """Parses the ``node [ id label ]`` and ``edge [ source target value ]`` records of a GML document.

    Args:
        text: GML document.
        directed: whether the graph is directed. Defaults to None, meaning the
            document's ``directed`` key.
        merge_duplicates: whether parallel edges are collapsed, keeping the
            largest value. Defaults to False.

    Raises:
        GraphFormatError: duplicate labels, invalid or negative values, self-loops.

    Returns:
        graph whose labels follow the node record order.
    """
    parsed = parse_gml_document(text, merge_duplicates=merge_duplicates)
    nodes = list(parsed.nodes)
    labels = [str(parsed.nodes[node].get("label", node)) for node in nodes]
    seen = set()
    for label in labels:
        if label in seen:
            raise GraphFormatError(f"duplicate label '{label}'", field="label")
        seen.add(label)

    index = {node: idx for idx, node in enumerate(nodes)}
    is_directed = parsed.is_directed() if directed is None else directed
    weights = torch.zeros((len(nodes), len(nodes)), dtype=DTYPE)
    for u, v, data in parsed.edges(data=True):
        value = data.get("value", 1.0)
        weight = _parse_weight(str(value), line=None, field="value")
        if u == v:
            raise GraphFormatError(f"self-loop on '{labels[index[u]]}'", field="source")
        i, j = index[u], index[v]
        weights[i, j] = max(weights[i, j].item(), weight)
        if not parsed.is_directed():
            weights[j, i] = weights[i, j]
    return Graph(labels, weights, directed=is_directed)


def load_graph(
    source: Source,
    format: GraphFormat = "edge-list",
    directed: Optional[bool] = None,
    merge_duplicates: bool = False,
) -> Graph:
    """Loads a graph.

    Args:
        source: path, bytes or stream holding the document.
        format: "edge-list", "matrix-csv" or "gml-subset". Defaults to "edge-list".
        directed: whether the graph is directed; None lets the document decide.
            Defaults to None.
        merge_duplicates: gml only, whether parallel edges are collapsed.
            Defaults to False.

    Raises:
        GraphFormatError: unknown format or malformed document.

    Returns:
        the loaded graph.
    """
    text = read_text(source)
    if format == "edge-list":
        return parse_edge_list(text, directed=directed)
    if format == "matrix-csv":
        return parse_matrix_csv(text, directed=directed)
    if format == "gml-subset":
        return parse_gml_subset(text, directed=directed, merge_duplicates=merge_duplicates)
    raise GraphFormatError(f"unknown graph format '{format}', expected one of {GRAPH_FORMATS}")


def format_edge_list(g: Graph) -> str:
    """Serializes a graph as an edge list with ``directed`` and ``actors`` directives.

    Labels that are not plain words are shell-quoted.

    Raises:
        GraphFormatError: a label spans several lines.
    """
    for label in g.labels:
        if re.search(r"[\r\n]", label):
            raise GraphFormatError(f"label {label!r} cannot be written in an edge list")
    quoted = [shlex.quote(label) for label in g.labels]
    lines = [
        f"# directed: {str(g.directed).lower()}",
        f"# actors: {' '.join(quoted)}",
    ]
    lines.extend(f"{quoted[i]}\t{quoted[j]}\t{weight!r}" for i, j, weight in g.edges())
    return "\n".join(lines) + "\n"


def format_matrix_csv(labels: Tuple[str, ...], matrix: torch.Tensor) -> str:
    """Serializes a labelled square matrix as a matrix CSV document."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(labels)
    for row in matrix.tolist():
        writer.writerow([repr(float(value)) for value in row])
    return buffer.getvalue()


def format_gml(g: Graph) -> str:
    """Serializes a graph as GML with ``label`` node and ``value`` edge attributes."""
    graph = g.to_networkx(weight="value")
    return "\n".join(nx.generate_gml(graph)) + "\n"


def save_graph(g: Graph, sink: Sink, format: GraphFormat = "edge-list") -> None:
    """Saves a graph.

    Args:
        g: graph to save.
        sink: path or text stream.
        format: "edge-list", "matrix-csv" or "gml-subset". Defaults to "edge-list".

    Raises:
        GraphFormatError: unknown format.
    """
    if format == "edge-list":
        text = format_edge_list(g)
    elif format == "matrix-csv":
        text = format_matrix_csv(g.labels, g.weights)
    elif format == "gml-subset":
        text = format_gml(g)
    else:
        raise GraphFormatError(f"unknown graph format '{format}', expected one of {GRAPH_FORMATS}")

    write_text(text, sink)
    logger.debug(f"Saved {g} as {format}.")
