"""Tests for the executable Hilali, no-gap, e0-gap and degree-sequence checks."""

import pytest

from sullivan.core.errors import EngineInconsistency
from sullivan.models.report import TheoremVerdict
from sullivan.services import theorems
from sullivan.services.theorems import (
    e0gap_check,
    hilali_check,
    hilali_special_cases,
    lupton_sequence_check,
    nogap_check,
    run_suite,
)

from conftest import ELLIPTIC_CORPUS


@pytest.mark.parametrize(
    "model_id, dim_h, n, e",
    [
        ("s2", 2, 2, 1),
        ("s3", 2, 3, 1),
        ("s3xs5", 4, 8, 2),
        ("cp2", 3, 4, 2),
        ("cp3", 4, 6, 3),
        ("e6-pure", 9, 8, 4),
        ("free-odd", 8, 15, 3),
    ],
)
def test_corpus_exactness(corpus, model_id, dim_h, n, e):
    """(dim H, N, e, Hilali) on the elliptic corpus."""

    model = corpus(model_id)
    verdict = hilali_check(model)

    assert verdict.conclusion == "Holds"
    assert verdict.details["dim_h"] == str(dim_h)
    assert verdict.hypotheses[0].satisfied is True
    assert f"N_formula={n}" in verdict.hypotheses[0].evidence
    assert nogap_check(model).details["e"] == str(e)


@pytest.mark.parametrize("model_id", ELLIPTIC_CORPUS)
def test_proven_statements_hold_on_the_elliptic_corpus(corpus, model_id):
    """nogaps, e0gaps and lupton hold wherever their hypotheses are met."""

    model = corpus(model_id)
    for check in (nogap_check, e0gap_check, lupton_sequence_check):
        verdict = check(model)
        assert verdict.conclusion == "Holds", (verdict.statement, verdict.witness)


def test_e0gaps_exhibits_the_factorization_of_the_fundamental_class(corpus):
    """On cp2 the e0gaps verdict lists one factorizing pair per column."""

    verdict = e0gap_check(corpus("cp2"))

    assert verdict.conclusion == "Holds"
    assert verdict.details["factorization"] == "0: (1)*(x^2); 1: (x)*(x); 2: (x^2)*(1)"


def test_nogaps_on_e6_pure_lists_every_column(corpus):
    """Columns 0..4 of E_inf are all occupied."""

    verdict = nogap_check(corpus("e6-pure"))

    assert verdict.conclusion == "Holds"
    assert verdict.details["columns"] == "0,1,2,3,4"


@pytest.mark.parametrize("model_id", ["s3", "s3xs5", "cp2", "cp3", "e6-pure", "free-odd"])
def test_special_cases_hold(corpus, model_id):
    """dim H >= e >= dim V when V = V^odd or k >= 3."""

    verdict = hilali_special_cases(corpus(model_id))

    assert verdict.conclusion == "Holds"
    assert int(verdict.details["dim_h"]) >= int(verdict.details["e"]) >= int(verdict.details["dim_v"])


def test_special_cases_report_the_weak_bound_for_quadratic_models(corpus):
    """S^2 has k = 2: no special case applies, but dim H >= dim V^odd is reported."""

    verdict = hilali_special_cases(corpus("s2"))

    assert verdict.conclusion == "HypothesisNotMet"
    weak = [h for h in verdict.hypotheses if h.name.startswith("weak bound")]
    assert len(weak) == 1 and weak[0].satisfied is True


@pytest.mark.parametrize(
    "model_id, low, high",
    [
        ("s2", "0,2", "0,2"),
        ("s3xs5", "0,3,8", "0,5,8"),
        ("cp2", "0,2,4", "0,2,4"),
        ("cp3", "0,2,4,6", "0,2,4,6"),
        ("e6-pure", "0,2,4,6,8", "0,2,4,6,8"),
        ("free-odd", "0,3,8,15", "0,7,12,15"),
    ],
)
def test_degree_sequences(corpus, model_id, low, high):
    """n_p and N_p of length-homogeneous elliptic models."""

    verdict = lupton_sequence_check(corpus(model_id))

    assert verdict.details == {"n": low, "N": high}


@pytest.mark.parametrize("check", [nogap_check, e0gap_check, hilali_special_cases, lupton_sequence_check])
def test_mixed_model_misses_the_hypotheses_with_a_witness(corpus, check):
    """mixed-1: (ΛV, d_3) is not elliptic and d is not length-homogeneous."""

    verdict = check(corpus("mixed-1"))

    assert verdict.conclusion == "HypothesisNotMet"
    assert verdict.witness


def test_suite_runs_every_check(corpus):
    """run_suite returns one verdict per statement, all Holds on CP^2."""

    verdicts = run_suite(corpus("cp2"))

    assert [v.statement for v in verdicts] == ["hilali", "nogaps", "hilali-special-cases", "e0gaps", "lupton"]
    assert {v.conclusion for v in verdicts} == {"Holds"}


def test_failed_proven_statement_aborts_with_a_page_dump(corpus, monkeypatch):
    """A Fails from a proven statement is an engine inconsistency."""

    def broken(model, settings=None):
        return TheoremVerdict(statement="nogaps", hypotheses=[], conclusion="Fails", witness="empty column 1")

    monkeypatch.setitem(theorems.CHECKS, "nogaps", broken)

    with pytest.raises(EngineInconsistency) as excinfo:
        run_suite(corpus("s2"))
    assert excinfo.value.verdict.conclusion == "Fails"
    assert "E1" in excinfo.value.dump
