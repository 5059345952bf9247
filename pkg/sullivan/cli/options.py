"""Options and helpers shared by every sub-command."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Tuple

from pydantic import BaseModel

from sullivan.core.config import get_settings
from sullivan.models.report import Report, TheoremVerdict
from sullivan.services.corpus import corpus_entry
from sullivan.services.parser import load_model
from sullivan.services.sullivan_model import SullivanModel

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNDETERMINED = 2

CONCLUSION_EXIT = {"Holds": EXIT_OK, "HypothesisNotMet": EXIT_OK, "Fails": EXIT_FAIL, "Undetermined": EXIT_UNDETERMINED}


def report_exit(report: Report) -> int:
    """Worst verdict status, with an undetermined ellipticity verdict counting as Undetermined."""

    codes = [CONCLUSION_EXIT[v.conclusion] for v in report.verdicts]
    if report.ellipticity.status == "Undetermined":
        codes.append(EXIT_UNDETERMINED)
    if EXIT_FAIL in codes:
        return EXIT_FAIL
    return max(codes, default=EXIT_OK)


class CliParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


def add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["table", "json"], default="table", help="output format")
    parser.add_argument("--verbose", "-v", action="store_true", help="log engine progress to stderr")


def add_model_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("model", help="model file, or corpus:<id> / a corpus id")
    add_output_options(parser)


def read_source(reference: str) -> Tuple[str, str, str]:
    """(text, provenance, model name) for a file path or a corpus reference."""

    path = Path(reference)
    if not reference.startswith("corpus:") and path.exists():
        return path.read_text(encoding="utf-8"), str(path), path.stem
    entry = corpus_entry(reference[len("corpus:"):] if reference.startswith("corpus:") else reference)
    return entry.source(), f"corpus:{entry.id}", entry.id


def resolve_model(reference: str) -> Tuple[SullivanModel, str]:
    """Load a model from a file path or the built-in corpus."""

    text, provenance, name = read_source(reference)
    return load_model(text, provenance, name), provenance


def emit(args: argparse.Namespace, payload: Any, table: str) -> None:
    """Print ``payload`` as json or the pre-rendered table text."""

    if args.format == "json":
        indent = get_settings().json_indent or None
        if isinstance(payload, BaseModel):
            text = payload.model_dump_json(indent=indent)
        else:
            text = json.dumps(_plain(payload), indent=indent, sort_keys=False)
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write(table if table.endswith("\n") else table + "\n")


def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set)):
        items = sorted(value) if isinstance(value, set) else value
        return [_plain(v) for v in items]
    return value


def verdict_table(verdict: TheoremVerdict) -> str:
    lines = [f"{verdict.statement}: {verdict.conclusion}"]
    if verdict.witness:
        lines.append(f"  witness: {verdict.witness}")
    if verdict.window is not None:
        lines.append(f"  window: {verdict.window}")
    for hypothesis in verdict.hypotheses:
        mark = {True: "yes", False: "no", None: "?"}[hypothesis.satisfied]
        lines.append(f"  [{mark}] {hypothesis.name}: {hypothesis.evidence}")
    for key, value in verdict.details.items():
        lines.append(f"  {key} = {value}")
    return "\n".join(lines)
