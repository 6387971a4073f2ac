"""The ``ingest`` subcommand: graphs from raw corpora and vote records."""

import os
from argparse import ArgumentParser, Namespace

from ..datasets.corpus import build_cooccurrence, load_corpus_spec
from ..datasets.votes import load_votes
from ..graph.io import save_graph
from .core import Command, prepare_out_dir


class IngestCommand(Command):
    """Builds edge-list files from a text corpus or a vote CSV."""

    command_name = "ingest"
    command_help = "build graphs from a text corpus or vote records"

    @staticmethod
    def add_command_specific_args(parent_parser: ArgumentParser) -> ArgumentParser:
        """Adds arguments for the ingestion to the parser.

        Args:
            parent_parser: argument parser.

        Returns:
            updated parser.
        """
        parser = ArgumentParser(parents=[parent_parser], add_help=False)
        parser.add_argument("source", type=str, help="UTF-8 corpus or vote csv")
        parser.add_argument("--kind", type=str, choices=("corpus", "votes"), default="corpus")
        parser.add_argument("--top_n", type=int, default=130)
        parser.add_argument("--slicing", type=str, default=None, help="chapter byte offsets")
        parser.add_argument("--stopwords", type=str, default=None, help="stopword list file")
        parser.add_argument("--years", type=int, nargs=2, default=None, metavar=("FIRST", "LAST"))
        parser.add_argument("--name", type=str, default=None, help="stem of the output files")
        return parser

    def run(self, args: Namespace) -> int:
        out_dir = prepare_out_dir(args)
        name = args.name or os.path.splitext(os.path.basename(args.source))[0]
        written = []
        if args.kind == "votes":
            graph = load_votes(args.source, years=None if args.years is None else tuple(args.years))
            written.append(os.path.join(out_dir, f"{name}.edges"))
            save_graph(graph, written[-1])
        else:
            spec = load_corpus_spec(
                args.source, top_n=args.top_n, slicing=args.slicing, stopwords=args.stopwords
            )
            cooccurrence = build_cooccurrence(spec)
            written.append(os.path.join(out_dir, f"{name}.edges"))
            save_graph(cooccurrence.graph, written[-1])
            if cooccurrence.temporal is not None:
                for position, chapter in enumerate(cooccurrence.temporal, start=1):
                    written.append(os.path.join(out_dir, f"{name}_chapter_{position:02d}.edges"))
                    save_graph(chapter, written[-1])
        for path in written:
            print(path)
        return 0
