"""Sub-commands computing invariants, cohomology and spectral-sequence tables of one model."""
from __future__ import annotations

import argparse
import sys

from sullivan.cli.options import EXIT_FAIL, EXIT_OK, EXIT_UNDETERMINED, add_model_argument, emit, read_source, report_exit, resolve_model
from sullivan.core.config import get_settings
from sullivan.models.diagnostic import DiagnosticList
from sullivan.services.cohomology import (
    bigraded_entries,
    closure_cohomology,
    cohomology_table,
    ellipticity_verdict,
    fundamental_class,
    model_complex,
)
from sullivan.services.parser import parse_model, parse_polynomial
from sullivan.services.report import build_report, default_bound, emit_report, format_table
from sullivan.services.spectral import e0_report, first_page_index, page_table, spectral_sequence, toomer, toomer_by_quotients
from sullivan.services.sullivan_model import acyclic_closure, homogeneous_model, invariants, validate


def _bound(args: argparse.Namespace, attribute: str, model) -> int:
    value = getattr(args, attribute, None)
    if value is not None:
        return value
    return default_bound(invariants(model).n_formula, get_settings())


def run_validate(args: argparse.Namespace) -> int:
    text, provenance, name = read_source(args.model)
    parsed = parse_model(text, provenance, name)
    if isinstance(parsed, DiagnosticList):
        for item in parsed.items:
            sys.stderr.write(item.render(provenance) + "\n")
        if args.format == "json":
            emit(args, parsed, "")
        return EXIT_FAIL
    report = validate(parsed)
    emit(args, report, f"{provenance}: valid ({', '.join(report.checks)})")
    return EXIT_OK


def run_cohomology(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    table = cohomology_table(model, _bound(args, "max_degree", model))
    rows = [[c.degree, c.dimension, ", ".join(c.representatives)] for c in table.degrees]
    emit(args, table, format_table(["degree", "dim", "representatives"], rows) + f"\ntotal {table.total_dimension}")
    return EXIT_OK


def run_bigraded(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    if args.homogeneous:
        model = homogeneous_model(model)
    bound = _bound(args, "max_degree", model)
    entries = bigraded_entries(model_complex(model), bound)
    emit(
        args,
        {"model": model.name, "bound": bound, "entries": entries},
        format_table(["degree", "length", "dim"], [[e.degree, e.length, e.dimension] for e in entries]),
    )
    return EXIT_OK


def run_page(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    r = args.r if args.r is not None else first_page_index(model)
    table = page_table(model, r, _bound(args, "max_total", model))
    rows = [[c.p, c.q, c.dimension, ", ".join(c.representatives)] for c in table.cells]
    emit(args, table, f"E_{table.r}\n" + format_table(["p", "q", "dim", "representatives"], rows))
    return EXIT_OK


def run_einfty(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    table = page_table(model, None, _bound(args, "max_total", model))
    rows = [[c.p, c.q, c.dimension, ", ".join(c.representatives)] for c in table.cells]
    emit(args, table, f"E_infinity (r = {table.r})\n" + format_table(["p", "q", "dim", "representatives"], rows))
    return EXIT_OK


def run_toomer(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    verdict = ellipticity_verdict(model)
    elliptic_n = verdict.n if verdict.status == "Elliptic" else None
    bound = _bound(args, "max_degree", model)
    value = toomer(model, bound, elliptic_n)
    formula = invariants(model).e_formula
    payload = {
        "toomer": value.value,
        "certified": value.certified,
        "bound": value.bound,
        "e_formula": formula,
        "agrees": value.value == formula,
        "by_quotients": toomer_by_quotients(model, value.bound),
    }
    qualifier = "" if value.certified else f" (lower bound, degrees <= {value.bound})"
    emit(args, payload, f"toomer {value.value}{qualifier}\ne_formula {formula}\nagrees {payload['agrees']}")
    return EXIT_OK


def run_e0(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    if args.class_expr is not None:
        x = parse_polynomial(args.class_expr, model)
        sequence = spectral_sequence(model)
        by_quotients, by_representatives = sequence.e0_routes(x)
        payload = {"class": model.algebra.format(x), "e0": by_quotients, "representative_route": by_representatives}
        emit(args, payload, f"e0([{payload['class']}]) = {by_quotients} (representative route {by_representatives})")
        return EXIT_OK if by_quotients == by_representatives else EXIT_FAIL
    verdict = ellipticity_verdict(model)
    elliptic = verdict.status == "Elliptic"
    bound = verdict.n if elliptic else _bound(args, "max_degree", model)
    report = e0_report(model, bound, complete=elliptic)
    qualifier = "" if elliptic else f" (within degree {bound})"
    emit(args, report, f"spectrum {report.spectrum}{qualifier}\ngaps {report.gaps}\nroutes agree {report.routes_agree}")
    return EXIT_OK if report.routes_agree else EXIT_FAIL


def run_elliptic(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    verdict = ellipticity_verdict(model, window_factor=args.window)
    lines = [f"{verdict.status} (N_formula {verdict.n_formula}, window {verdict.window})", verdict.reason]
    if verdict.witness is not None:
        lines.append(f"witness [{verdict.witness.representative}] in degree {verdict.witness.degree}")
    omega = fundamental_class(model, verdict)
    if omega is not None:
        lines.append(f"fundamental class [{omega.representative}], word lengths {omega.word_lengths}")
    emit(args, verdict, "\n".join(lines))
    return EXIT_UNDETERMINED if verdict.status == "Undetermined" else EXIT_OK


def run_closure(args: argparse.Namespace) -> int:
    model, _ = resolve_model(args.model)
    closure = acyclic_closure(model)
    bound = args.max_degree
    if bound is None:
        bound = get_settings().closure_bound_for(invariants(model).n_formula)
    dims = closure_cohomology(closure, bound)
    acyclic = dims[0] == 1 and not any(dims[1:])
    algebra = closure.algebra
    rows = [[g.name, g.degree, algebra.format(closure.D.value(g.id))] for g in algebra.generators]
    payload = {
        "model": model.name,
        "generators": [{"name": g.name, "degree": g.degree} for g in algebra.generators],
        "D": {g.name: algebra.format(closure.D.value(g.id)) for g in algebra.generators},
        "bound": bound,
        "dimensions": dims,
        "acyclic": acyclic,
    }
    table = format_table(["generator", "degree", "D"], rows) + f"\nH^0..H^{bound}: {dims}\nacyclic {acyclic}"
    emit(args, payload, table)
    return EXIT_OK if acyclic else EXIT_FAIL


def run_report(args: argparse.Namespace) -> int:
    model, source = resolve_model(args.model)
    report = build_report(model, source=source, degree_bound=args.max_degree)
    print(emit_report(report, args.format), end="")
    return report_exit(report)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("validate", help="parse and validate a model")
    add_model_argument(parser)
    parser.set_defaults(func=run_validate)

    parser = subparsers.add_parser("cohomology", help="H^n(ΛV, d) with representatives")
    add_model_argument(parser)
    parser.add_argument("--max-degree", type=int, default=None)
    parser.set_defaults(func=run_cohomology)

    parser = subparsers.add_parser("bigraded", help="H^n_p of a length-homogeneous differential")
    add_model_argument(parser)
    parser.add_argument("--max-degree", type=int, default=None)
    parser.add_argument("--homogeneous", action="store_true", help="use (ΛV, d_k) instead of (ΛV, d)")
    parser.set_defaults(func=run_bigraded)

    parser = subparsers.add_parser("page", help="nonzero entries of E_r")
    add_model_argument(parser)
    parser.add_argument("--r", type=int, default=None, help="page index (default: k)")
    parser.add_argument("--max-total", type=int, default=None)
    parser.set_defaults(func=run_page)

    parser = subparsers.add_parser("einfty", help="nonzero entries of E_infinity")
    add_model_argument(parser)
    parser.add_argument("--max-total", type=int, default=None)
    parser.set_defaults(func=run_einfty)

    parser = subparsers.add_parser("toomer", help="Toomer invariant next to the length formula")
    add_model_argument(parser)
    parser.add_argument("--max-degree", type=int, default=None)
    parser.set_defaults(func=run_toomer)

    parser = subparsers.add_parser("e0", help="e0 spectrum, or e0 of one class")
    add_model_argument(parser)
    parser.add_argument("--class", dest="class_expr", default=None, help="cocycle in the model language")
    parser.add_argument("--max-degree", type=int, default=None)
    parser.set_defaults(func=run_e0)

    parser = subparsers.add_parser("elliptic", help="window-certified ellipticity verdict")
    add_model_argument(parser)
    parser.add_argument("--window", type=int, default=None, help="window factor (default from settings)")
    parser.set_defaults(func=run_elliptic)

    parser = subparsers.add_parser("closure", help="acyclic closure and its cohomology")
    add_model_argument(parser)
    parser.add_argument("--max-degree", type=int, default=None)
    parser.set_defaults(func=run_closure)

    parser = subparsers.add_parser("report", help="everything, as one report")
    add_model_argument(parser)
    parser.add_argument("--max-degree", type=int, default=None)
    parser.set_defaults(func=run_report)
