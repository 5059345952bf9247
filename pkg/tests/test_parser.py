"""Tests for the model language parser and its diagnostics."""

from fractions import Fraction

import pytest

from sullivan.core.errors import ParseFailure
from sullivan.models.diagnostic import DiagnosticList
from sullivan.services.parser import load_model, parse_model, parse_polynomial, read_model
from sullivan.services.sullivan_model import SullivanModel

S2 = "generator x 2\ngenerator y 3\nd y = x^2\n"


def test_sphere_is_a_direct_transcription():
    """The S^2 source gives the model Λ(x_2, y_3), dy = x^2."""

    model = parse_model(S2, name="s2")

    assert isinstance(model, SullivanModel)
    bare = SullivanModel.build("s2", [("x", 2), ("y", 3)])
    expected = SullivanModel.build("s2", [("x", 2), ("y", 3)], {"y": bare.algebra.power(bare.var("x"), 2)})
    assert model == expected


def test_comments_blank_lines_and_missing_differentials():
    """# comments and blank lines are ignored; an omitted d line means zero."""

    model = load_model("# free odd\n\ngenerator x 3   # first\ngenerator y 5\n", name="odd")

    assert model.has_zero_differential()
    assert [g.name for g in model.generators] == ["x", "y"]


def test_linear_differential_is_a_minimality_diagnostic():
    """d y = x on Λ(x_2, y_3) is flagged on the d line."""

    result = parse_model("generator x 2\ngenerator y 3\nd y = x\n")

    assert isinstance(result, DiagnosticList)
    minimality = [item for item in result.items if item.category == "minimality"]
    assert minimality and minimality[0].line == 3


def test_unknown_generator_is_positioned():
    """z in `d y = x^2 + 1/2*x*z` was never declared."""

    result = parse_model("generator x 2\ngenerator y 3\nd y = x^2 + 1/2*x*z\n")

    assert isinstance(result, DiagnosticList)
    assert result.categories() == ["unknown-generator"]
    item = result.items[0]
    assert item.line == 3
    assert item.column > len("d y = x^2")
    assert "z" in item.message


def test_d_of_an_undeclared_generator():
    """A d line for a name never declared is an unknown-generator diagnostic."""

    result = parse_model("generator x 2\nd q = x^2\n")

    assert isinstance(result, DiagnosticList)
    assert result.items[0].category == "unknown-generator"
    assert result.items[0].line == 2


@pytest.mark.parametrize(
    "source, category, line",
    [
        ("generator x 2\ngenerator y 3\nd y = x^^2\n", "syntax", 3),
        ("generator x 2\ngenerator y 3\nd y =\n", "syntax", 3),
        ("generator x two\n", "syntax", 1),
        ("hello world\n", "syntax", 1),
        ("generator x 2\ngenerator x 4\n", "duplicate-generator", 2),
        ("generator x 1\n", "degree", 1),
        ("generator x 2\ngenerator y 3\nd y = 1/0*x^2\n", "syntax", 3),
        ("generator y 3\ngenerator x 2\n", "order-violation", 2),
        ("generator x 2\ngenerator y 4\nd y = x^2\n", "degree-mismatch", 3),
    ],
)
def test_malformed_sources_produce_diagnostics(source, category, line):
    """Parsing never raises; each problem carries its category and line."""

    result = parse_model(source)

    assert isinstance(result, DiagnosticList)
    matching = [item for item in result.items if item.category == category]
    assert matching, result.items
    assert matching[0].line == line
    assert matching[0].column >= 1


def test_square_failure_names_the_generator_and_witness():
    """dz = xy with dy = x^2 fails d² = 0 with witness x^3."""

    result = parse_model("generator x 2\ngenerator y 3\ngenerator z 4\nd y = x^2\nd z = x*y\n")

    assert isinstance(result, DiagnosticList)
    item = result.items[0]
    assert item.category == "d-squared"
    assert item.line == 5
    assert "x^3" in item.message


def test_odd_factors_pick_up_koszul_signs():
    """`d c = b*a` and `d c = -a*b` describe the same model."""

    header = "generator a 3\ngenerator b 3\ngenerator c 5\n"

    assert load_model(header + "d c = b*a\n", name="m") == load_model(header + "d c = -a*b\n", name="m")


def test_rational_coefficients_and_powers():
    """Coefficients may be integers or fractions; exponents repeat a factor."""

    model = load_model("generator x 2\ngenerator y 2\ngenerator z 5\nd z = 1/2*x^3 - 3*x*y^2\n", name="m")
    value = model.dg(model.generator("z").id)

    assert model.algebra.format(value) == "1/2*x^3 - 3*x*y^2"
    assert sorted(value.terms.values()) == [Fraction(-3), Fraction(1, 2)]


def test_load_model_raises_with_diagnostics():
    """load_model turns a DiagnosticList into ParseFailure."""

    with pytest.raises(ParseFailure) as excinfo:
        load_model("generator x 1\n", provenance="bad.sullivan")
    assert excinfo.value.diagnostics.provenance == "bad.sullivan"
    assert excinfo.value.diagnostics.items[0].render("bad.sullivan").startswith("bad.sullivan:1:")


def test_read_model_names_the_model_after_the_file(tmp_path):
    """A model read from disk is named by its file stem."""

    path = tmp_path / "sphere.sullivan"
    path.write_text(S2, encoding="utf-8")

    model = read_model(path)
    assert model.name == "sphere"
    assert len(model.generators) == 2


def test_parse_polynomial_against_a_model():
    """Class expressions use the model's generators and report unknown names."""

    model = load_model(S2, name="s2")

    assert parse_polynomial("x^2 - 2*x", model) == model.algebra.power(model.var("x"), 2) - model.var("x").scale(2)
    with pytest.raises(ParseFailure) as excinfo:
        parse_polynomial("x*q", model)
    assert excinfo.value.diagnostics.items[0].category == "unknown-generator"
    with pytest.raises(ParseFailure):
        parse_polynomial("x +* y", model)


def test_huge_exponent_is_a_degree_mismatch_not_an_expansion():
    """A term's degree comes from the declared degrees before anything is multiplied out."""

    result = parse_model("generator x 2\ngenerator y 3\nd y = x^30000000\n")

    assert isinstance(result, DiagnosticList)
    assert result.categories() == ["degree-mismatch"]
    item = result.items[0]
    assert item.line == 3
    assert "degree 60000000" in item.message
    assert "expected 4" in item.message


def test_only_the_wrong_term_is_reported():
    """Each term of the wrong degree gets its own diagnostic; odd squares vanish silently."""

    result = parse_model("generator x 2\ngenerator y 3\ngenerator z 5\nd z = x^3 + x + y^2\n")

    assert isinstance(result, DiagnosticList)
    assert result.categories() == ["degree-mismatch"]
    assert "term of degree 2 in d(z)" in result.items[0].message


def test_class_expressions_with_large_powers():
    """Powers of generators are built directly, so large exponents stay cheap."""

    model = load_model(S2, name="s2")

    power = parse_polynomial("x^100000", model)
    assert model.algebra.degree(power) == 200000
    assert not parse_polynomial("y^100000", model)
