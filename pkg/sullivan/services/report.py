"""Assemble the full per-model report and render it as json or aligned tables."""
from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Sequence

from sullivan import __version__
from sullivan.core.config import Settings, get_settings
from sullivan.models.report import EngineMetadata, Report, ReportSummary
from sullivan.services.cohomology import cohomology_table, ellipticity_verdict, fundamental_class
from sullivan.services.spectral import e0_report, early_page_check, first_page_index, page_table, r_stab, toomer
from sullivan.services.sullivan_model import SullivanModel, homogeneous_model, invariants, validate
from sullivan.services.theorems import run_suite, total_dimension

logger = logging.getLogger(__name__)


def default_bound(n_formula: int, settings: Settings) -> int:
    """Degree bound for tables: N_formula + slack, or the fallback when N_formula < 0."""

    if n_formula < 0:
        return settings.fallback_bound
    return n_formula + settings.page_slack


def build_report(
    model: SullivanModel,
    source: str = "<model>",
    tags: Sequence[str] = (),
    settings: Optional[Settings] = None,
    degree_bound: Optional[int] = None,
) -> Report:
    settings = settings or get_settings()
    facts = invariants(model)
    valid = validate(model).valid
    verdict = ellipticity_verdict(model, settings=settings)
    bound = degree_bound if degree_bound is not None else default_bound(facts.n_formula, settings)
    elliptic_n = verdict.n if verdict.status == "Elliptic" else None
    logger.debug("%s: report with degree bound %d (%s)", model.name, bound, verdict.status)

    table = cohomology_table(model, bound, settings)
    toomer_value = toomer(model, bound, elliptic_n)
    early_page_check(model, bound, settings)
    first = first_page_index(model)
    stable = r_stab(bound)
    pages = [page_table(model, r, bound, settings) for r in range(first, stable + 1)]
    dim_h = total_dimension(model, elliptic_n if elliptic_n is not None else bound, settings)
    return Report(
        model=model.name,
        source=source,
        summary=ReportSummary(N=facts.n_formula, e=facts.e_formula, dimH=dim_h, toomer=toomer_value.value),
        invariants=facts,
        validation=valid,
        cohomology=table,
        ellipticity=verdict,
        toomer=toomer_value.value,
        toomer_certified=toomer_value.certified,
        fundamental_class=fundamental_class(model, verdict, settings),
        first_page=cohomology_table(homogeneous_model(model), bound, settings),
        pages=pages,
        einfty=page_table(model, None, bound, settings),
        e0=e0_report(model, elliptic_n if elliptic_n is not None else bound, complete=elliptic_n is not None),
        verdicts=run_suite(model, settings),
        tags=list(tags),
        metadata=EngineMetadata(
            version=__version__,
            degree_bound=bound,
            page_bound=bound,
            window=verdict.window,
            stabilization={"first_page": first, "r_stab": stable},
        ),
    )


def format_table(headers: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Left-aligned columns separated by two spaces."""

    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells)


def render_report_table(report: Report) -> str:
    lines: List[str] = [f"model {report.model} ({report.source})"]
    if report.tags:
        lines.append(f"tags: {', '.join(report.tags)}")
    summary = report.summary
    facts = report.invariants
    lines += [
        "",
        format_table(
            ["N", "e", "dimH", "toomer", "k", "dim V", "chi_pi"],
            [[summary.N, summary.e, summary.dimH, summary.toomer, facts.k, facts.dim_v, facts.chi_pi]],
        ),
    ]
    verdict = report.ellipticity
    lines += ["", f"ellipticity: {verdict.status} (window {verdict.window}) {verdict.reason}"]
    if verdict.witness is not None:
        lines.append(f"  witness: [{verdict.witness.representative}] in degree {verdict.witness.degree}")
    lines += [
        "",
        "cohomology",
        format_table(
            ["degree", "dim", "representatives"],
            [[c.degree, c.dimension, ", ".join(c.representatives)] for c in report.cohomology.degrees],
        ),
        "",
        f"E_infinity (r = {report.einfty.r})",
        format_table(["p", "q", "dim"], [[c.p, c.q, c.dimension] for c in report.einfty.cells]),
        "",
        f"e0 spectrum: {report.e0.spectrum}  gaps: {report.e0.gaps}  routes agree: {report.e0.routes_agree}",
        "",
        "verdicts",
        format_table(
            ["statement", "conclusion", "witness"],
            [[v.statement, v.conclusion, v.witness or ""] for v in report.verdicts],
        ),
    ]
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "table", settings: Optional[Settings] = None) -> str:
    settings = settings or get_settings()
    if fmt == "json":
        return report.model_dump_json(indent=settings.json_indent or None) + "\n"
    return render_report_table(report)
