"""The ``sweep`` subcommand: parameter grids and the scaling study."""

import os
from argparse import ArgumentParser, Namespace

from ..graph.io import write_text
from ..pipeline.sweep import (
    SCALING_FIELDS,
    SWEEP_FIELDS,
    SweepGrid,
    load_sweep_grid,
    median_runtimes,
    run_scaling_sweep,
    run_sweep,
)
from ..pipeline.tables import format_records, table_file_name
from .core import Command, add_input_args, prepare_out_dir, resolve_input


class SweepCommand(Command):
    """Runs the engine over a grid of alpha, p and c values."""

    command_name = "sweep"
    command_help = "sweep the engine parameters or measure runtime scaling"

    @staticmethod
    def add_command_specific_args(parent_parser: ArgumentParser) -> ArgumentParser:
        """Adds arguments for the sweep to the parser.

        Args:
            parent_parser: argument parser.

        Returns:
            updated parser.
        """
        parser = add_input_args(parent_parser)
        parser.add_argument("--grid", type=str, default=None, help="sweep grid json file")
        parser.add_argument("--alphas", type=float, nargs="+", default=None)
        parser.add_argument("--ps", type=float, nargs="+", default=None)
        parser.add_argument("--cs", type=float, nargs="+", default=None)
        parser.add_argument("--max_workers", type=int, default=None)
        parser.add_argument("--scaling", action="store_true", help="runtime vs edge fraction")
        parser.add_argument(
            "--fractions", type=float, nargs="+", default=[0.2, 0.4, 0.6, 0.8, 1.0]
        )
        parser.add_argument("--repeats", type=int, default=3)
        parser.add_argument("--seed", type=int, default=0)
        return parser

    def run(self, args: Namespace) -> int:
        loaded = resolve_input(args)
        grid = load_sweep_grid(args.grid) if args.grid else SweepGrid()
        update = {
            axis: getattr(args, axis)
            for axis in ("alphas", "ps", "cs")
            if getattr(args, axis) is not None
        }
        grid = SweepGrid(**{**grid.dict(), **update})
        out_dir = prepare_out_dir(args)

        if args.scaling:
            rows = run_scaling_sweep(
                loaded.graph, args.fractions, repeats=args.repeats, seed=args.seed, config=grid.base
            )
            medians = [
                {"fraction": fraction, "median_runtime": runtime}
                for fraction, runtime in median_runtimes(rows).items()
            ]
            write_text(
                format_records([row.dict() for row in rows], SCALING_FIELDS, args.format),
                os.path.join(out_dir, table_file_name("scaling", args.format)),
            )
            table = format_records(medians, ["fraction", "median_runtime"], args.format)
            write_text(table, os.path.join(out_dir, table_file_name("scaling_medians", args.format)))
        else:
            rows = run_sweep(
                loaded.graph, grid, max_workers=args.max_workers, truth=loaded.ground_truth
            )
            table = format_records([row.dict() for row in rows], SWEEP_FIELDS, args.format)
            write_text(table, os.path.join(out_dir, table_file_name("sweep", args.format)))
        print(table, end="")
        return 0
