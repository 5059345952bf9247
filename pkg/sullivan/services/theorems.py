"""Executable statements: the Hilali inequality, no-gap results and Lupton's degree sequences."""
from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Tuple

from sullivan.core.config import Settings, get_settings
from sullivan.core.errors import EngineInconsistency
from sullivan.models.report import EllipticityVerdict, Hypothesis, TheoremVerdict
from sullivan.services.cohomology import ellipticity_verdict, model_complex
from sullivan.services.spectral import e0_report, fundamental_class_factorization, page_dump, spectral_sequence
from sullivan.services.sullivan_model import (
    SullivanModel,
    homogeneous_model,
    invariants,
    is_length_homogeneous,
    word_lengths,
)

logger = logging.getLogger(__name__)

PROVEN = ("nogaps", "hilali-special-cases", "e0gaps", "lupton")


def _elliptic_hypothesis(name: str, verdict: EllipticityVerdict) -> Hypothesis:
    satisfied = {"Elliptic": True, "NotElliptic": False}.get(verdict.status)
    evidence = f"{verdict.status}, N_formula={verdict.n_formula}, window {verdict.window}: {verdict.reason}"
    if verdict.witness is not None:
        evidence += f"; witness [{verdict.witness.representative}] in degree {verdict.witness.degree}"
    return Hypothesis(name=name, satisfied=satisfied, evidence=evidence)


def _unmet(statement: str, hypotheses: List[Hypothesis], verdict: EllipticityVerdict) -> TheoremVerdict:
    """HypothesisNotMet or Undetermined, depending on how the ellipticity hypothesis failed."""

    if verdict.status == "Undetermined":
        return TheoremVerdict(statement=statement, hypotheses=hypotheses, conclusion="Undetermined", window=verdict.window)
    witness = None
    if verdict.witness is not None:
        witness = f"degree {verdict.witness.degree}: {verdict.witness.representative}"
    return TheoremVerdict(
        statement=statement, hypotheses=hypotheses, conclusion="HypothesisNotMet", witness=witness, window=verdict.window
    )


def _homogeneous_verdict(model: SullivanModel, settings: Settings) -> Tuple[SullivanModel, EllipticityVerdict]:
    homogeneous = homogeneous_model(model)
    return homogeneous, ellipticity_verdict(homogeneous, settings=settings)


def total_dimension(model: SullivanModel, top: int, settings: Optional[Settings] = None) -> int:
    complex_ = model_complex(model, settings)
    return sum(complex_.dimension(n) for n in range(top + 1))


def hilali_check(model: SullivanModel, settings: Optional[Settings] = None) -> TheoremVerdict:
    """dim H(ΛV, d) >= dim V for elliptic models."""

    settings = settings or get_settings()
    verdict = ellipticity_verdict(model, settings=settings)
    hypotheses = [_elliptic_hypothesis("elliptic", verdict)]
    if verdict.status != "Elliptic":
        return _unmet("hilali", hypotheses, verdict)
    dim_h = total_dimension(model, verdict.n, settings)
    dim_v = len(model.generators)
    holds = dim_h >= dim_v
    if not holds:
        logger.warning("%s: potential Hilali counterexample, dim H = %d < dim V = %d", model.name, dim_h, dim_v)
    return TheoremVerdict(
        statement="hilali",
        hypotheses=hypotheses,
        conclusion="Holds" if holds else "Fails",
        witness=None if holds else f"dim H = {dim_h} < dim V = {dim_v}",
        window=verdict.window,
        details={"dim_h": str(dim_h), "dim_v": str(dim_v)},
    )


def nogap_check(model: SullivanModel, settings: Optional[Settings] = None) -> TheoremVerdict:
    """With (ΛV, d_k) elliptic, every E_∞ column 0..e is nonzero."""

    settings = settings or get_settings()
    _, verdict = _homogeneous_verdict(model, settings)
    hypotheses = [_elliptic_hypothesis("(ΛV,d_k) elliptic", verdict)]
    if verdict.status != "Elliptic":
        return _unmet("nogaps", hypotheses, verdict)
    e = invariants(model).e_formula
    support = spectral_sequence(model, settings).column_support(verdict.n)
    missing = [p for p in range(e + 1) if p not in support]
    if missing:
        logger.warning("%s: E_infinity column %d vanishes", model.name, missing[0])
    return TheoremVerdict(
        statement="nogaps",
        hypotheses=hypotheses,
        conclusion="Fails" if missing else "Holds",
        witness=f"empty column {missing[0]}" if missing else None,
        window=verdict.window,
        details={"e": str(e), "columns": ",".join(str(p) for p in sorted(support))},
    )


def hilali_special_cases(model: SullivanModel, settings: Optional[Settings] = None) -> TheoremVerdict:
    """dim H >= e >= dim V when V = V^odd, or when (ΛV, d_k) is elliptic with k >= 3."""

    settings = settings or get_settings()
    facts = invariants(model)
    odd_only = facts.dim_v_even == 0
    _, homogeneous = _homogeneous_verdict(model, settings)
    hypotheses = [
        Hypothesis(name="V = V^odd", satisfied=odd_only, evidence=f"dim V^even = {facts.dim_v_even}"),
        Hypothesis(name="k >= 3", satisfied=facts.k is not None and facts.k >= 3, evidence=f"k = {facts.k}"),
        _elliptic_hypothesis("(ΛV,d_k) elliptic", homogeneous),
    ]
    if facts.k == 2 and homogeneous.status == "Elliptic":
        dim_h2 = total_dimension(homogeneous_model(model), homogeneous.n, settings)
        dim_h = total_dimension(model, homogeneous.n, settings)
        weak = dim_h >= facts.dim_v_odd
        hypotheses.append(
            Hypothesis(
                name="weak bound dim H >= dim V^odd (k = 2)",
                satisfied=weak,
                evidence=f"dim H = {dim_h}, dim H(ΛV,d_2) = {dim_h2}, dim V^odd = {facts.dim_v_odd}",
            )
        )
    quadratic_elliptic = facts.k is not None and facts.k >= 3 and homogeneous.status == "Elliptic"
    if not (odd_only or quadratic_elliptic):
        if facts.k is not None and facts.k >= 3 and homogeneous.status == "Undetermined":
            return TheoremVerdict(
                statement="hilali-special-cases",
                hypotheses=hypotheses,
                conclusion="Undetermined",
                window=homogeneous.window,
            )
        witness = f"dim V^even = {facts.dim_v_even}, k = {facts.k}"
        if homogeneous.witness is not None:
            witness += f"; (ΛV,d_k) class in degree {homogeneous.witness.degree}: {homogeneous.witness.representative}"
        return TheoremVerdict(
            statement="hilali-special-cases",
            hypotheses=hypotheses,
            conclusion="HypothesisNotMet",
            witness=witness,
            window=homogeneous.window,
        )

    verdict = ellipticity_verdict(model, settings=settings)
    if verdict.status != "Elliptic":
        conclusion = "Undetermined" if verdict.status == "Undetermined" else "Fails"
        return TheoremVerdict(
            statement="hilali-special-cases",
            hypotheses=hypotheses + [_elliptic_hypothesis("elliptic", verdict)],
            conclusion=conclusion,
            witness=None if verdict.witness is None else f"degree {verdict.witness.degree}: {verdict.witness.representative}",
            window=verdict.window,
        )
    dim_h = total_dimension(model, verdict.n, settings)
    e = facts.e_formula
    dim_v = facts.dim_v
    chain = {"dim H >= e": dim_h >= e, "e >= dim V": e >= dim_v}
    failed = [name for name, ok in chain.items() if not ok]
    return TheoremVerdict(
        statement="hilali-special-cases",
        hypotheses=hypotheses,
        conclusion="Fails" if failed else "Holds",
        witness=failed[0] if failed else None,
        window=verdict.window,
        details={
            "case": "V = V^odd" if odd_only else "k >= 3, (ΛV,d_k) elliptic",
            "dim_h": str(dim_h),
            "e": str(e),
            "dim_v": str(dim_v),
        },
    )


def e0gap_check(model: SullivanModel, settings: Optional[Settings] = None) -> TheoremVerdict:
    """With (ΛV, d_k) elliptic, the e0 values of H fill 0..e."""

    settings = settings or get_settings()
    _, verdict = _homogeneous_verdict(model, settings)
    hypotheses = [_elliptic_hypothesis("(ΛV,d_k) elliptic", verdict)]
    if verdict.status != "Elliptic":
        return _unmet("e0gaps", hypotheses, verdict)
    e = invariants(model).e_formula
    report = e0_report(model, verdict.n, complete=True)
    expected = list(range(e + 1))
    if report.gaps:
        witness: Optional[str] = f"gap at {report.gaps[0]}"
    elif report.spectrum != expected:
        witness = f"spectrum {report.spectrum} differs from 0..{e}"
    elif not report.routes_agree:
        witness = f"e0 routes disagree: class values {report.class_values}"
    else:
        witness = None
    details = {"spectrum": ",".join(map(str, report.spectrum)), "e": str(e)}
    if witness is None and is_length_homogeneous(model):
        try:
            pairs = fundamental_class_factorization(model, settings)
        except EngineInconsistency as exc:
            witness = str(exc)
        else:
            details["factorization"] = "; ".join(f"{pair.p}: ({pair.left})*({pair.right})" for pair in pairs)
    return TheoremVerdict(
        statement="e0gaps",
        hypotheses=hypotheses,
        conclusion="Fails" if witness else "Holds",
        witness=witness,
        window=verdict.window,
        details=details,
    )


def degree_sequences(model: SullivanModel, e: int, top: int, settings: Optional[Settings] = None) -> Tuple[Dict[int, int], Dict[int, int]]:
    """n_p and N_p: lowest and highest degree of H_p for each p in 0..e (missing when H_p = 0)."""

    complex_ = model_complex(model, settings)
    lowest: Dict[int, int] = {}
    highest: Dict[int, int] = {}
    for n in range(top + 1):
        for p in range(min(e, n // 2) + 1):
            if complex_.bigraded(n, p).dimension:
                lowest.setdefault(p, n)
                highest[p] = n
    return lowest, highest


def lupton_sequence_check(model: SullivanModel, settings: Optional[Settings] = None) -> TheoremVerdict:
    """Degree-sequence inequalities for length-homogeneous elliptic models."""

    settings = settings or get_settings()
    homogeneous = is_length_homogeneous(model)
    verdict = ellipticity_verdict(model, settings=settings)
    hypotheses = [
        Hypothesis(name="length-homogeneous", satisfied=homogeneous, evidence=f"word lengths of d: {word_lengths(model)}"),
        _elliptic_hypothesis("elliptic", verdict),
    ]
    if not homogeneous:
        return TheoremVerdict(
            statement="lupton",
            hypotheses=hypotheses,
            conclusion="HypothesisNotMet",
            witness=f"d has word lengths {word_lengths(model)}",
        )
    if verdict.status != "Elliptic":
        return _unmet("lupton", hypotheses, verdict)
    e = invariants(model).e_formula
    top = verdict.n
    low, high = degree_sequences(model, e, top, settings)

    checks: List[Tuple[str, bool]] = []
    checks.extend((f"H_{p} != 0", p in low) for p in range(1, e + 1))
    if all(ok for _, ok in checks):
        n1 = low.get(1, 0)
        if e >= 1:
            checks.append(("n_1 > 0", n1 > 0))
            checks.append(("N_1 >= n_1", high[1] >= n1))
            checks.append((f"N_{e} = N_{e - 1} + n_1", high[e] == high[e - 1] + n1))
        checks.extend((f"n_{p + 1} >= n_{p} + n_1", low[p + 1] >= low[p] + n1) for p in range(1, e))
        checks.extend((f"N_{p + 1} >= N_{p} + n_1", high[p + 1] >= high[p] + n1) for p in range(1, e - 1))
        checks.extend((f"n_{p} + N_{e - p} = N_{e}", low[p] + high[e - p] == high[e]) for p in range(e + 1))
        checks.append((f"n_{e} = N_{e} = N", low[e] == high[e] == top))
    failed = [name for name, ok in checks if not ok]
    return TheoremVerdict(
        statement="lupton",
        hypotheses=hypotheses,
        conclusion="Fails" if failed else "Holds",
        witness=failed[0] if failed else None,
        window=verdict.window,
        details={
            "n": ",".join(str(low.get(p, "-")) for p in range(e + 1)),
            "N": ",".join(str(high.get(p, "-")) for p in range(e + 1)),
        },
    )


CHECKS: Dict[str, Callable[..., TheoremVerdict]] = {
    "hilali": hilali_check,
    "nogaps": nogap_check,
    "hilali-special-cases": hilali_special_cases,
    "e0gaps": e0gap_check,
    "lupton": lupton_sequence_check,
}


def run_suite(model: SullivanModel, settings: Optional[Settings] = None) -> List[TheoremVerdict]:
    """Every check on one model; a failed proven statement aborts with a page dump."""

    settings = settings or get_settings()
    verdicts = []
    for name, check in CHECKS.items():
        verdict = check(model, settings)
        if verdict.conclusion == "Fails" and name in PROVEN:
            facts = invariants(model)
            bound = facts.n_formula if facts.n_formula >= 0 else settings.fallback_bound
            raise EngineInconsistency(
                f"{name} fails on {model.name}: {verdict.witness}", verdict=verdict, dump=page_dump(model, bound)
            )
        verdicts.append(verdict)
    return verdicts
