"""The ``evaluate`` subcommand: quality of a partition."""

import json
import os
from argparse import ArgumentParser, Namespace

from ..errors import ConfigurationError
from ..evaluation.partition import load_partition
from ..evaluation.report import evaluate_partition
from ..graph.io import write_text
from ..pipeline.tables import format_records, table_file_name
from .core import Command, add_input_args, prepare_out_dir, resolve_input

METRICS_STEM = "metrics"


class EvaluateCommand(Command):
    """Computes modularity, modularity density, NMI and ARI of a partition."""

    command_name = "evaluate"
    command_help = "evaluate a partition against its graph and a ground truth"

    @staticmethod
    def add_command_specific_args(parent_parser: ArgumentParser) -> ArgumentParser:
        """Adds arguments for the evaluation to the parser.

        Args:
            parent_parser: argument parser.

        Returns:
            updated parser.
        """
        parser = ArgumentParser(parents=[parent_parser], add_help=False)
        parser.add_argument("partition", type=str, help="partition csv or run directory")
        parser = add_input_args(parser)
        parser.add_argument(
            "--truth", type=str, default=None, help="ground truth csv, defaults to the dataset's"
        )
        return parser

    def run(self, args: Namespace) -> int:
        partition_path = args.partition
        if os.path.isdir(partition_path):
            partition_path = os.path.join(partition_path, "partition.csv")
        partition = load_partition(partition_path)
        loaded = resolve_input(args)
        truth = load_partition(args.truth) if args.truth else loaded.ground_truth
        if args.truth is None and truth is None and loaded.descriptor.source == "dataset":
            raise ConfigurationError(f"Dataset '{args.input}' has no ground truth.")

        report = evaluate_partition(loaded.graph, partition, truth)
        record = json.loads(report.json())
        table = format_records([record], list(record), args.format)
        out_dir = prepare_out_dir(args)
        write_text(table, os.path.join(out_dir, table_file_name(METRICS_STEM, args.format)))
        print(table, end="")
        return 0
