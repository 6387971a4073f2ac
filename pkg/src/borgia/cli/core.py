"""Shared plumbing of the command line subcommands."""

import logging
import os
import re
from argparse import ArgumentParser, Namespace
from typing import Dict, NamedTuple, Optional, Type

from ..datasets.benchmarks import load_benchmark, load_benchmarks_registry
from ..errors import DatasetNotFoundError
from ..evaluation.partition import Partition
from ..graph.core import Graph
from ..graph.io import GraphFormat, load_graph
from ..pipeline.manifest import InputDescriptor, graph_checksum
from ..pipeline.tables import TABLE_FORMATS

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

EXTENSION_FORMATS: Dict[str, GraphFormat] = {
    ".gml": "gml-subset",
    ".csv": "matrix-csv",
}


class Command:
    """Base class of the subcommands.

    Attributes:
        command_name: name of the subcommand.
        command_help: one line description.
    """

    command_name = ""
    command_help = ""

    @staticmethod
    def add_command_specific_args(parent_parser: ArgumentParser) -> ArgumentParser:
        """Adds the arguments of the subcommand to the parser.

        Args:
            parent_parser: argument parser.

        Returns:
            updated parser.
        """
        return parent_parser

    def run(self, args: Namespace) -> int:
        """Executes the subcommand.

        Args:
            args: parsed arguments.

        Returns:
            exit status.
        """
        raise NotImplementedError

    @staticmethod
    def registered() -> Dict[str, Type["Command"]]:
        """Gathers the subcommands by name."""
        return {command.command_name: command for command in Command.__subclasses__()}


def add_common_args(parent_parser: ArgumentParser) -> ArgumentParser:
    """Adds the flags shared by every subcommand.

    Args:
        parent_parser: argument parser.

    Returns:
        updated parser.
    """
    parser = ArgumentParser(parents=[parent_parser], add_help=False)
    parser.add_argument("--out", type=str, default=".", help="output directory")
    parser.add_argument("--format", type=str, choices=TABLE_FORMATS, default="csv")
    parser.add_argument("--trace", action="store_true", help="log and export every iteration")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--data_dir", type=str, default=None, help="benchmark data directory")
    return parser


def add_input_args(parent_parser: ArgumentParser, required: bool = True) -> ArgumentParser:
    """Adds the arguments locating an input graph.

    Args:
        parent_parser: argument parser.
        required: whether the input is mandatory. Defaults to True.

    Returns:
        updated parser.
    """
    parser = ArgumentParser(parents=[parent_parser], add_help=False)
    parser.add_argument(
        "input", type=str, nargs=None if required else "?", help="graph file or benchmark name"
    )
    parser.add_argument(
        "--input_format",
        type=str,
        choices=("edge-list", "matrix-csv", "gml-subset"),
        default=None,
        help="defaults to the file extension (.gml, .csv), else edge-list",
    )
    parser.add_argument("--directed", type=str, choices=("true", "false"), default=None)
    parser.add_argument("--merge_duplicates", action="store_true")
    return parser


class LoadedInput(NamedTuple):
    """An input graph, its description and its ground truth when it is a benchmark."""

    graph: Graph
    descriptor: InputDescriptor
    ground_truth: Optional[Partition]


def graph_format_for(path: str) -> GraphFormat:
    """Guesses the graph format of a file from its extension."""
    return EXTENSION_FORMATS.get(os.path.splitext(path)[1].lower(), "edge-list")


def resolve_input(args: Namespace) -> LoadedInput:
    """Loads the input graph named on the command line.

    Existing files take precedence over benchmark names.

    Args:
        args: parsed arguments.

    Raises:
        DatasetNotFoundError: neither a file nor a benchmark.

    Returns:
        the loaded input.
    """
    reference = args.input
    directed = None if args.directed is None else args.directed == "true"
    if os.path.isfile(reference):
        graph_format = args.input_format or graph_format_for(reference)
        graph = load_graph(
            reference,
            format=graph_format,
            directed=directed,
            merge_duplicates=args.merge_duplicates,
        )
        descriptor = InputDescriptor(
            source="file",
            path=os.path.abspath(reference),
            format=graph_format,
            directed=directed,
            merge_duplicates=args.merge_duplicates,
            sha256=graph_checksum(graph),
        )
        return LoadedInput(graph, descriptor, None)

    names = load_benchmarks_registry().names()
    if reference not in names:
        raise DatasetNotFoundError(
            f"'{reference}' is neither a graph file nor a dataset ({', '.join(names)})."
        )
    dataset = load_benchmark(reference, data_dir=args.data_dir)
    descriptor = InputDescriptor(
        source="dataset",
        dataset=reference,
        data_dir=None if args.data_dir is None else os.path.abspath(args.data_dir),
        sha256=graph_checksum(dataset.graph),
    )
    return LoadedInput(dataset.graph, descriptor, dataset.ground_truth)


def file_stem(name: str) -> str:
    """Turns a kind such as ``SN(BF)`` into a file name stem such as ``SN_BF``."""
    return re.sub(r"[^A-Za-z0-9.]+", "_", name).strip("_")


def prepare_out_dir(args: Namespace) -> str:
    """Creates the output directory."""
    os.makedirs(args.out, exist_ok=True)
    return args.out
