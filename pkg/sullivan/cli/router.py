"""Command-line parser composition."""
from sullivan import __version__
from sullivan.cli.commands import analysis, corpus, theorems
from sullivan.cli.options import CliParser


def build_parser() -> CliParser:
    parser = CliParser(prog="sullivan", description="Exact rational homotopy computations on Sullivan minimal models.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    analysis.register(subparsers)
    theorems.register(subparsers)
    corpus.register(subparsers)
    return parser


__all__ = ["build_parser"]
