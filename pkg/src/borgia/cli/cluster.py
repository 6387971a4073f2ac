"""The ``cluster`` subcommand: Borgia clustering or the classic baseline."""

import logging
from argparse import ArgumentParser, Namespace
from typing import Any, Dict

from ..clustering.configuration import (
    ClassicConfig,
    EngineConfig,
    load_classic_config,
    load_engine_config,
)
from ..errors import ConfigurationError
from ..pipeline.manifest import execute_run, load_manifest, rerun_from_manifest
from ..pipeline.runner import AnyConfig
from .core import Command, add_input_args, prepare_out_dir, resolve_input

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

ENGINE_FLAGS = (
    "alpha",
    "p",
    "c",
    "tnorm",
    "delta",
    "delta_mode",
    "policy",
    "max_stall_iterations",
)
CLASSIC_FLAGS = {
    "G": "G",
    "epsilon": "epsilon",
    "classic_delta": "delta",
    "max_iterations": "max_iterations",
    "feature_source": "feature_source",
}


class ClusterCommand(Command):
    """Clusters a graph, writing the dendrogram, the partition and a manifest."""

    command_name = "cluster"
    command_help = "cluster a graph and select a partition"

    @staticmethod
    def add_command_specific_args(parent_parser: ArgumentParser) -> ArgumentParser:
        """Adds arguments for the clustering run to the parser.

        Args:
            parent_parser: argument parser.

        Returns:
            updated parser.
        """
        parser = ArgumentParser(parents=[parent_parser], add_help=False)
        parser.add_argument("--rerun", type=str, default=None, help="manifest to reproduce")
        parser = add_input_args(parser, required=False)
        parser.add_argument("--baseline", type=str, choices=("borgia", "classic"), default="borgia")
        parser.add_argument("--config", type=str, default=None, help="json configuration file")
        # unset flags keep the configuration defaults
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--p", type=float, default=None)
        parser.add_argument("--c", type=float, default=None)
        parser.add_argument("--tnorm", type=str, default=None)
        parser.add_argument("--delta", type=float, default=None)
        parser.add_argument("--delta_mode", type=str, choices=("static", "dynamic-first"), default=None)
        parser.add_argument("--policy", type=str, default=None)
        parser.add_argument("--max_stall_iterations", type=int, default=None)
        parser.add_argument("--weighted_degree", action="store_true")
        parser.add_argument("--k", type=int, default=None, help="cut at exactly k communities")
        parser.add_argument("--selection", type=str, choices=("score", "lifespan"), default=None)
        parser.add_argument("--G", type=float, default=None)
        parser.add_argument("--epsilon", type=float, default=None)
        parser.add_argument("--classic_delta", type=float, default=None)
        parser.add_argument("--max_iterations", type=int, default=None)
        parser.add_argument(
            "--feature_source", type=str, choices=("adjacency-rows", "affinity-rows"), default=None
        )
        return parser

    @staticmethod
    def build_config(args: Namespace) -> AnyConfig:
        """Builds the run configuration from a configuration file and the flags.

        Args:
            args: parsed arguments.

        Returns:
            EngineConfig, or ClassicConfig with ``--baseline classic``.
        """
        if args.baseline == "classic":
            base = load_classic_config(args.config) if args.config else ClassicConfig()
            update: Dict[str, Any] = {
                field: getattr(args, flag)
                for flag, field in CLASSIC_FLAGS.items()
                if getattr(args, flag) is not None
            }
            if args.alpha is not None:
                update["affinity"] = {"kind": "combined", "alpha": args.alpha}
            return ClassicConfig(**{**base.dict(), **update})

        engine = load_engine_config(args.config) if args.config else EngineConfig()
        update = {flag: getattr(args, flag) for flag in ENGINE_FLAGS if getattr(args, flag) is not None}
        if args.weighted_degree:
            update["weighted_degree"] = True
        return EngineConfig(**{**engine.dict(), **update})

    def run(self, args: Namespace) -> int:
        if args.rerun is None and args.input is None:
            raise ConfigurationError("cluster needs an input graph or --rerun MANIFEST.")
        out_dir = prepare_out_dir(args)
        if args.rerun is not None:
            manifest = rerun_from_manifest(load_manifest(args.rerun), out_dir)
        else:
            loaded = resolve_input(args)
            manifest = execute_run(
                loaded.graph,
                loaded.descriptor,
                self.build_config(args),
                out_dir,
                selection=args.selection,
                k=args.k,
                trace=args.trace,
                format=args.format,
            )
        print(f"{manifest.communities} communities, {manifest.iterations} iterations, outputs in {out_dir}")
        return 0

