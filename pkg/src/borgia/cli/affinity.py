"""The ``affinity`` subcommand: affinity matrices of a graph."""

import logging
import os
from argparse import ArgumentParser, Namespace
from typing import Dict, Optional

from ..affinity.affinity_spec import AffinitySpec
from ..affinity.controller import AffinityController
from ..affinity.core import AffinityMatrix
from ..affinity.export import format_top_affinity_table, save_long_form_csv, save_matrix_csv
from ..errors import ConfigurationError
from ..graph.core import TemporalGraph
from ..graph.io import load_graph, write_text
from .core import Command, add_input_args, file_stem, graph_format_for, prepare_out_dir, resolve_input

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class AffinityCommand(Command):
    """Computes affinity matrices and, optionally, an actor's top partners."""

    command_name = "affinity"
    command_help = "compute affinity matrices of a graph"

    @staticmethod
    def add_command_specific_args(parent_parser: ArgumentParser) -> ArgumentParser:
        """Adds arguments for the affinity computation to the parser.

        Args:
            parent_parser: argument parser.

        Returns:
            updated parser.
        """
        parser = add_input_args(parent_parser)
        parser.add_argument(
            "--kind", type=str, default="combined", help="affinity alias, or 'all'"
        )
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--base", type=str, default=None, help="base affinity kind")
        parser.add_argument(
            "--slices", type=str, nargs="+", default=None, help="one graph file per time slice"
        )
        parser.add_argument("--top", type=int, default=None)
        parser.add_argument("--actor", type=str, default=None)
        return parser

    def run(self, args: Namespace) -> int:
        loaded = resolve_input(args)
        temporal: Optional[TemporalGraph] = None
        if args.slices:
            temporal = TemporalGraph(
                [load_graph(path, format=graph_format_for(path)) for path in args.slices]
            )
        controller = AffinityController(graph=loaded.graph, temporal=temporal)

        matrices: Dict[str, AffinityMatrix]
        if args.kind == "all":
            matrices = controller.compute_all()
        else:
            spec = AffinitySpec(
                kind=args.kind,
                alpha=args.alpha,
                base=None if args.base is None else AffinitySpec(kind=args.base),
            )
            matrix = controller.compute(spec)
            matrices = {matrix.kind: matrix}

        out_dir = prepare_out_dir(args)
        for matrix in matrices.values():
            stem = f"affinity_{file_stem(matrix.kind)}"
            save_matrix_csv(matrix, os.path.join(out_dir, f"{stem}.csv"))
            save_long_form_csv(matrix, os.path.join(out_dir, f"{stem}_long.csv"))
            print(os.path.join(out_dir, f"{stem}.csv"))

        if args.top is not None or args.actor is not None:
            if args.top is None or args.actor is None or args.top < 1:
                raise ConfigurationError("--top needs a positive k together with --actor.")
            if args.actor not in loaded.graph.labels:
                raise ConfigurationError(f"Unknown actor '{args.actor}'.")
            table_path = os.path.join(out_dir, f"top_{file_stem(args.actor)}.csv")
            write_text(
                format_top_affinity_table(
                    {matrix.kind: matrix for matrix in matrices.values()}, args.actor, args.top
                ),
                table_path,
            )
            print(table_path)
        return 0
