"""Entry point of the ``borgia`` command line tool."""

import logging
import sys
from argparse import ArgumentParser
from typing import List, Optional

from pydantic import ValidationError

from .. import __version__
from ..errors import INTERNAL_ERROR_CODE, BorgiaError, ConfigurationError
from .affinity import AffinityCommand  # noqa
from .cluster import ClusterCommand  # noqa
from .core import Command, add_common_args
from .datasets import DatasetsCommand  # noqa
from .evaluate import EvaluateCommand  # noqa
from .ingest import IngestCommand  # noqa
from .sweep import SweepCommand  # noqa

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

COMMAND_ORDER = ("affinity", "cluster", "evaluate", "sweep", "ingest", "datasets")


def build_parser() -> ArgumentParser:
    """Builds the parser of every subcommand.

    Returns:
        the parser.
    """
    parser = ArgumentParser(prog="borgia", description="Borgia clustering toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    # RECALL: to be able to gather all Command subclasses they must be imported
    commands = Command.registered()
    common = add_common_args(ArgumentParser(add_help=False))
    for name in COMMAND_ORDER:
        command = commands[name]
        subparser = subparsers.add_parser(
            name,
            parents=[command.add_command_specific_args(ArgumentParser(parents=[common], add_help=False))],
            help=command.command_help,
        )
        subparser.set_defaults(handler=command)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Runs the command line tool.

    Errors are reported as one ``error[CODE]: message`` line on stderr.

    Args:
        argv: arguments, None for sys.argv. Defaults to None.

    Returns:
        exit status: 0 on success, 2 on toolkit errors, 1 on unexpected failures.
    """
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if args.trace:
        logging.getLogger("borgia.clustering").setLevel(logging.DEBUG)

    try:
        return args.handler().run(args)
    except BorgiaError as error:
        print(error.one_line(), file=sys.stderr)
    except ValidationError as error:
        print(ConfigurationError(str(error)).one_line(), file=sys.stderr)
    except OSError as error:
        print(f"error[E_IO]: {error}", file=sys.stderr)
    except Exception as error:
        logger.debug("unexpected failure", exc_info=True)
        print(f"error[{INTERNAL_ERROR_CODE}]: {type(error).__name__}: {error}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
