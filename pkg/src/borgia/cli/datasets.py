"""The ``datasets`` subcommand: list and export the benchmarks."""

import os
from argparse import ArgumentParser, Namespace

from ..datasets.benchmarks import is_available, load_benchmark, load_benchmarks_registry
from ..errors import ConfigurationError
from ..evaluation.partition import save_partition
from ..graph.io import save_graph
from ..pipeline.tables import format_records
from .core import Command, file_stem, prepare_out_dir

GROUND_TRUTH_FILE = "ground_truth.csv"


class DatasetsCommand(Command):
    """Lists the benchmarks or exports one of them."""

    command_name = "datasets"
    command_help = "list or export the benchmark datasets"

    @staticmethod
    def add_command_specific_args(parent_parser: ArgumentParser) -> ArgumentParser:
        """Adds arguments for the dataset management to the parser.

        Args:
            parent_parser: argument parser.

        Returns:
            updated parser.
        """
        parser = ArgumentParser(parents=[parent_parser], add_help=False)
        parser.add_argument("action", type=str, choices=("list", "export"))
        parser.add_argument("name", type=str, nargs="?", default=None)
        return parser

    def run(self, args: Namespace) -> int:
        if args.action == "list":
            records = [
                {
                    "name": info.name,
                    "n": info.n,
                    "communities": info.communities,
                    "available": is_available(info.name, data_dir=args.data_dir),
                    "provenance": info.provenance,
                }
                for info in load_benchmarks_registry().benchmarks
            ]
            print(
                format_records(
                    records, ["name", "n", "communities", "available", "provenance"], args.format
                ),
                end="",
            )
            return 0

        if args.name is None:
            raise ConfigurationError("datasets export needs a dataset name.")
        dataset = load_benchmark(args.name, data_dir=args.data_dir)
        out_dir = prepare_out_dir(args)
        graph_path = os.path.join(out_dir, f"{file_stem(dataset.name)}.edges")
        save_graph(dataset.graph, graph_path)
        print(graph_path)
        if dataset.ground_truth is not None:
            truth_path = os.path.join(out_dir, GROUND_TRUTH_FILE)
            save_partition(dataset.ground_truth, truth_path)
            print(truth_path)
        return 0
