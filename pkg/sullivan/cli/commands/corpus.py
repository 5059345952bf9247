"""`corpus list|run|show`: the built-in model corpus."""
from __future__ import annotations

import argparse
import sys

from sullivan.cli.options import EXIT_FAIL, EXIT_OK, add_output_options, emit, report_exit
from sullivan.services.corpus import corpus_entry, filter_entries, run_corpus
from sullivan.services.report import emit_report, format_table


def run_list(args: argparse.Namespace) -> int:
    entries = filter_entries(args.filter)
    payload = [{"id": e.id, "description": e.description, "tags": list(e.tags)} for e in entries]
    emit(args, payload, format_table(["id", "tags", "description"], [[e.id, ",".join(e.tags), e.description] for e in entries]))
    return EXIT_OK


def run_run(args: argparse.Namespace) -> int:
    entries = filter_entries(args.filter)
    if not entries:
        sys.stderr.write(f"no corpus model carries tag {args.filter!r}\n")
        return EXIT_FAIL
    reports = run_corpus(entries, jobs=args.jobs)
    if args.format == "json":
        emit(args, reports, "")
    else:
        sys.stdout.write("\n".join(emit_report(report, "table") for report in reports))
    codes = [report_exit(report) for report in reports]
    if EXIT_FAIL in codes:
        return EXIT_FAIL
    return max(codes, default=EXIT_OK)


def run_show(args: argparse.Namespace) -> int:
    sys.stdout.write(corpus_entry(args.id).source())
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    corpus = subparsers.add_parser("corpus", help="the built-in model corpus")
    actions = corpus.add_subparsers(dest="corpus_command", required=True)

    parser = actions.add_parser("list", help="list corpus models")
    parser.add_argument("--filter", default=None, help="only models carrying this tag")
    add_output_options(parser)
    parser.set_defaults(func=run_list)

    parser = actions.add_parser("run", help="full reports for corpus models")
    parser.add_argument("--filter", default=None, help="only models carrying this tag")
    parser.add_argument("--jobs", type=int, default=None, help="worker processes")
    add_output_options(parser)
    parser.set_defaults(func=run_run)

    parser = actions.add_parser("show", help="print a corpus model's source")
    parser.add_argument("id")
    add_output_options(parser)
    parser.set_defaults(func=run_show)
