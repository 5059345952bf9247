"""Tests for bounded-degree cohomology, ellipticity verdicts and Poincare duality."""

import pytest

from sullivan.core.config import Settings
from sullivan.core.errors import NotACocycle, NotHomogeneous, ZeroClass
from sullivan.services.cohomology import (
    bigraded_cohomology,
    cohomology_table,
    ellipticity_verdict,
    euler_consistency,
    fundamental_class,
    model_complex,
    pairing_dual,
    pairing_matrix,
)
from sullivan.services.algebra import Polynomial
from sullivan.services.sullivan_model import SullivanModel, homogeneous_model, invariants

from conftest import ELLIPTIC_CORPUS


@pytest.mark.parametrize(
    "model_id, dims",
    [
        ("s2", [1, 0, 1, 0, 0, 0, 0]),
        ("s3", [1, 0, 0, 1, 0, 0]),
        ("cp2", [1, 0, 1, 0, 1, 0, 0]),
        ("cp3", [1, 0, 1, 0, 1, 0, 1, 0, 0]),
        ("s3xs5", [1, 0, 0, 1, 0, 1, 0, 0, 1, 0]),
        ("e6-pure", [1, 0, 2, 0, 3, 0, 2, 0, 1, 0]),
        ("free-odd", [1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 0, 1, 0]),
    ],
)
def test_cohomology_dimensions(corpus, model_id, dims):
    """dim H^n for the corpus, degree by degree."""

    table = cohomology_table(corpus(model_id), len(dims) - 1)

    assert table.dimensions() == dims


def test_representatives_are_printed_in_the_model_language(corpus):
    """H^2 and H^4 of CP^2 are spanned by x and x^2."""

    table = cohomology_table(corpus("cp2"), 4)

    assert table.degrees[2].representatives == ["x"]
    assert table.degrees[4].representatives == ["x^2"]
    assert table.total_dimension == 3
    assert table.bigraded is not None


def test_bigraded_cohomology_by_word_length(corpus):
    """x^2 in H^4(CP^2) sits in word length 2."""

    assert bigraded_cohomology(corpus("cp2"), 4) == {0: 0, 1: 0, 2: 1}


def test_bigraded_cohomology_needs_a_homogeneous_differential(corpus):
    """dc = xab + x^4 has two word lengths, so there is no bigrading."""

    with pytest.raises(NotHomogeneous):
        bigraded_cohomology(corpus("mixed-1"), 7)
    assert cohomology_table(corpus("mixed-1"), 7).bigraded is None


@pytest.mark.parametrize(
    "model_id, n, window",
    [("s2", 2, 5), ("s3", 3, 6), ("s3xs5", 8, 16), ("cp2", 4, 9), ("cp3", 6, 13), ("e6-pure", 8, 16), ("free-odd", 15, 30)],
)
def test_corpus_models_are_certified_elliptic(corpus, model_id, n, window):
    """Each elliptic corpus model gets an Elliptic verdict with the expected window."""

    verdict = ellipticity_verdict(corpus(model_id))

    assert verdict.status == "Elliptic"
    assert verdict.n == n
    assert verdict.window == window


def test_negative_formal_dimension_is_not_elliptic():
    """Λ(x_2) with d = 0 has N_formula = -1; the witness is x in degree 2."""

    verdict = ellipticity_verdict(SullivanModel.build("poly", [("x", 2)]))

    assert verdict.status == "NotElliptic"
    assert verdict.witness is not None
    assert verdict.witness.degree == 2
    assert verdict.witness.representative == "x"


def test_cohomology_above_the_formal_dimension_is_a_witness(corpus):
    """(ΛV, d_3) of mixed-1 has classes above N_formula = 12."""

    verdict = ellipticity_verdict(homogeneous_model(corpus("mixed-1")))

    assert verdict.status == "NotElliptic"
    assert verdict.witness is not None
    assert 12 < verdict.witness.degree <= verdict.window


def test_basis_limit_makes_the_verdict_undetermined(corpus):
    """A tiny max_basis_size stops the window computation."""

    verdict = ellipticity_verdict(corpus("e6-pure"), settings=Settings(max_basis_size=1))

    assert verdict.status == "Undetermined"
    assert "limit" in verdict.reason


def test_window_factor_override(corpus):
    """An explicit factor widens the window."""

    assert ellipticity_verdict(corpus("cp2"), window_factor=4).window == 16


def test_pairing_matrix_of_cp2_is_the_identity(corpus):
    """<x, x> = 1 on the fundamental class x^2."""

    complex_ = model_complex(corpus("cp2"))

    assert pairing_matrix(complex_, 2, 4) == [[1]]
    assert pairing_matrix(complex_, 0, 4) == [[1]]


def test_pairing_dual(corpus):
    """The dual of x is x and the dual of 1 is x^2 in CP^2."""

    model = corpus("cp2")
    verdict = ellipticity_verdict(model)
    x = model.var("x")

    assert pairing_dual(model, x, verdict) == x
    assert pairing_dual(model, model.algebra.power(x, 0), verdict) == model.algebra.power(x, 2)


def test_pairing_dual_rejects_cochains_and_coboundaries(corpus):
    """y is no cocycle in CP^2 and x^2 is exact in S^2."""

    cp2 = corpus("cp2")
    with pytest.raises(NotACocycle):
        pairing_dual(cp2, cp2.var("y"), ellipticity_verdict(cp2))
    s2 = corpus("s2")
    with pytest.raises(ZeroClass):
        pairing_dual(s2, s2.algebra.power(s2.var("x"), 2), ellipticity_verdict(s2))
    with pytest.raises(NotACocycle):
        pairing_dual(s2, s2.var("x") + s2.algebra.power(s2.var("x"), 2), ellipticity_verdict(s2))
    with pytest.raises(ZeroClass):
        pairing_dual(s2, Polynomial.zero(), ellipticity_verdict(s2))


def test_fundamental_class_with_word_lengths(corpus):
    """ω = x^2 y^2 in degree 8 for e6-pure, of word length 4."""

    model = corpus("e6-pure")
    omega = fundamental_class(model, ellipticity_verdict(model))

    assert omega is not None
    assert omega.degree == 8
    assert omega.representative == "x^2*y^2"
    assert omega.word_lengths == [4]


@pytest.mark.parametrize("model_id", ELLIPTIC_CORPUS)
def test_fundamental_class_has_word_length_e(corpus, model_id):
    """On length-homogeneous elliptic models ω is a single word length, equal to e."""

    model = corpus(model_id)
    facts = invariants(model)
    omega = fundamental_class(model, ellipticity_verdict(model))

    assert facts.length_homogeneous
    assert omega is not None
    assert omega.word_lengths == [facts.e_formula]


@pytest.mark.parametrize("model_id", ELLIPTIC_CORPUS + ("mixed-1",))
def test_euler_characteristics_are_consistent(corpus, model_id):
    """Basis sizes, ranks and cohomology dimensions fit together up to degree 12."""

    assert euler_consistency(corpus(model_id), 12)
