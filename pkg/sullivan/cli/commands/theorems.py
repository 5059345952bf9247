"""Sub-commands running the executable theorem and conjecture checks."""
from __future__ import annotations

import argparse
from typing import Callable

from sullivan.cli.options import CONCLUSION_EXIT, EXIT_OK, add_model_argument, emit, resolve_model, verdict_table
from sullivan.models.report import TheoremVerdict
from sullivan.services import theorems
from sullivan.services.sullivan_model import SullivanModel


def _command(check: Callable[[SullivanModel], TheoremVerdict]) -> Callable[[argparse.Namespace], int]:
    def run(args: argparse.Namespace) -> int:
        model, _ = resolve_model(args.model)
        verdict = check(model)
        emit(args, verdict, verdict_table(verdict))
        return CONCLUSION_EXIT[verdict.conclusion]

    return run


def run_suite(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    verdicts = theorems.run_suite(model)
    emit(args, verdicts, "\n\n".join(verdict_table(v) for v in verdicts))
    return max((CONCLUSION_EXIT[v.conclusion] for v in verdicts), default=EXIT_OK)


COMMANDS = {
    "hilali": (theorems.hilali_check, "dim H >= dim V on elliptic models"),
    "nogaps": (theorems.nogap_check, "no empty E_infinity column 0..e when (ΛV,d_k) is elliptic"),
    "special-cases": (theorems.hilali_special_cases, "dim H >= e >= dim V for V = V^odd or k >= 3"),
    "e0gaps": (theorems.e0gap_check, "e0 values fill 0..e when (ΛV,d_k) is elliptic"),
    "lupton": (theorems.lupton_sequence_check, "degree-sequence inequalities of length-homogeneous models"),
}


def register(subparsers: argparse._SubParsersAction) -> None:
    for name, (check, help_text) in COMMANDS.items():
        parser = subparsers.add_parser(name, help=help_text)
        add_model_argument(parser)
        parser.set_defaults(func=_command(check))

    parser = subparsers.add_parser("suite", help="every check; aborts if a proven statement fails")
    add_model_argument(parser)
    parser.set_defaults(func=run_suite)
