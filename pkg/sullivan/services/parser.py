"""The model language: `generator <name> <degree>` and `d <name> = <polynomial>` lines, `#` comments.

Polynomials are parsed with a parglare LR grammar; every problem becomes a positioned
diagnostic and parsing never raises on malformed input.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from parglare import Grammar, ParseError, Parser

from sullivan.core.errors import ParseFailure
from sullivan.models.diagnostic import Diagnostic, DiagnosticList
from sullivan.services.algebra import Generator, GradedAlgebra, Monomial, Polynomial
from sullivan.services.sullivan_model import SullivanModel, validate

logger = logging.getLogger(__name__)

POLYNOMIAL_GRAMMAR = r"""
Expr: Expr AddOp Term | AddOp Term | Term;
Term: Term '*' Atom | Atom;
Atom: Number | Power;
Power: Name | Name '^' Integer;
Number: Integer | Integer '/' Integer;

terminals
AddOp: /[+-]/;
Integer: /\d+/;
Name: /[A-Za-z_][A-Za-z0-9_']*/;
"""

GENERATOR_LINE = re.compile(r"^\s*generator\s+(?P<name>\S+)\s+(?P<degree>\S+)\s*$")
DIFFERENTIAL_LINE = re.compile(r"^\s*d\s+(?P<name>\S+)\s*=(?P<rhs>.*)$")
NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")

# (name, exponent, offset)
Factor = Tuple[str, int, int]
Term = Tuple[Fraction, List[Factor]]


def _signed(sign: str, term: Term) -> Term:
    coefficient, factors = term
    return (-coefficient if sign == "-" else coefficient, factors)


def _times(left: Term, right: Term) -> Term:
    return (left[0] * right[0], left[1] + right[1])


ACTIONS = {
    "Expr": [
        lambda _, n: n[0] + [_signed(n[1], n[2])],
        lambda _, n: [_signed(n[0], n[1])],
        lambda _, n: [n[0]],
    ],
    "Term": [lambda _, n: _times(n[0], n[2]), lambda _, n: n[0]],
    "Atom": [lambda _, n: (n[0], []), lambda _, n: (Fraction(1), [n[0]])],
    "Power": [
        lambda context, n: (n[0], 1, context.start_position),
        lambda context, n: (n[0], int(n[2]), context.start_position),
    ],
    "Number": [lambda _, n: Fraction(int(n[0])), lambda _, n: Fraction(int(n[0]), int(n[2]))],
}


@lru_cache(maxsize=1)
def polynomial_parser() -> Parser:
    return Parser(Grammar.from_string(POLYNOMIAL_GRAMMAR), actions=ACTIONS)


@dataclass
class _Declaration:
    name: str
    degree: int
    line: int


@dataclass
class _Differential:
    name: str
    line: int
    column: int
    rhs_offset: int
    terms: List[Term] = field(default_factory=list)


def _strip_comment(line: str) -> str:
    index = line.find("#")
    return line if index < 0 else line[:index]


def parse_terms(text: str) -> List[Term]:
    """Parse a polynomial expression into signed terms; raises ParseError or ZeroDivisionError."""

    return polynomial_parser().parse(text)


def _error_column(text: str, exc: ParseError) -> int:
    location = getattr(exc, "location", None)
    position = getattr(location, "start_position", None)
    if position is None:
        return 1
    return min(position, len(text)) + 1


def parse_model(source: str, provenance: str = "<model>", name: Optional[str] = None) -> Union[SullivanModel, DiagnosticList]:
    """Parse and validate model text; return the model or every diagnostic found."""

    diagnostics: List[Diagnostic] = []

    def report(line: int, column: int, category: str, message: str) -> None:
        diagnostics.append(Diagnostic(line=line, column=column, category=category, message=message))

    declarations: List[_Declaration] = []
    differentials: List[_Differential] = []
    declared: Dict[str, _Declaration] = {}
    seen_d: Dict[str, int] = {}

    for number, raw in enumerate(source.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        generator = GENERATOR_LINE.match(line)
        differential = DIFFERENTIAL_LINE.match(line)
        if generator:
            gname, degree_text = generator.group("name"), generator.group("degree")
            column = generator.start("name") + 1
            if not NAME.match(gname) or gname == "d":
                report(number, column, "syntax", f"invalid generator name {gname!r}")
                continue
            if not re.fullmatch(r"-?\d+", degree_text):
                report(number, generator.start("degree") + 1, "syntax", f"degree {degree_text!r} is not an integer")
                continue
            degree = int(degree_text)
            if gname in declared:
                report(number, column, "duplicate-generator", f"{gname} already declared on line {declared[gname].line}")
                continue
            if degree < 2:
                report(number, generator.start("degree") + 1, "degree", f"degree {degree} < 2 (models are simply connected)")
                continue
            declared[gname] = _Declaration(gname, degree, number)
            declarations.append(declared[gname])
        elif differential:
            gname = differential.group("name")
            rhs = differential.group("rhs")
            offset = differential.start("rhs")
            if gname in seen_d:
                report(number, differential.start("name") + 1, "syntax", f"d {gname} already given on line {seen_d[gname]}")
                continue
            seen_d[gname] = number
            try:
                terms = parse_terms(rhs)
            except ParseError as exc:
                report(number, offset + _error_column(rhs, exc), "syntax", f"cannot parse polynomial: {exc}")
                continue
            except ZeroDivisionError:
                report(number, offset + 1, "syntax", "zero denominator in a coefficient")
                continue
            differentials.append(_Differential(gname, number, differential.start("name") + 1, offset, terms))
        else:
            report(number, len(line) - len(line.lstrip()) + 1, "syntax", "expected `generator <name> <degree>` or `d <name> = <polynomial>`")

    ids = {d.name: i for i, d in enumerate(declarations)}
    algebra = GradedAlgebra(tuple(Generator(i, d.name, d.degree) for i, d in enumerate(declarations)))
    values: Dict[str, Polynomial] = {}
    d_lines: Dict[str, _Differential] = {}
    for entry in differentials:
        if entry.name not in ids:
            report(entry.line, entry.column, "unknown-generator", f"d of undeclared generator {entry.name}")
            continue
        expected = algebra.generator(ids[entry.name]).degree + 1
        polynomial, unknown, misplaced = _assemble(entry.terms, ids, algebra, expected)
        for fname, position in unknown:
            report(entry.line, entry.rhs_offset + position + 1, "unknown-generator", f"undeclared generator {fname}")
        for position, degree in misplaced:
            report(
                entry.line,
                entry.rhs_offset + position + 1,
                "degree-mismatch",
                f"term of degree {degree} in d({entry.name}), expected {expected}",
            )
        if unknown or misplaced:
            continue
        values[entry.name] = polynomial
        d_lines[entry.name] = entry

    if diagnostics:
        return DiagnosticList(provenance=provenance, items=diagnostics)

    model = SullivanModel.build(name or provenance, [(d.name, d.degree) for d in declarations], values)
    validation = validate(model)
    for issue in validation.issues:
        where = d_lines.get(issue.generator)
        if where is not None and issue.witness is not None:
            line, column = where.line, where.rhs_offset + 1
        else:
            line, column = declared[issue.generator].line, 1
        message = issue.message if issue.witness is None else f"{issue.message}: {issue.witness}"
        report(line, column, issue.category, message)
    if diagnostics:
        logger.debug("%s: %d diagnostic(s)", provenance, len(diagnostics))
        return DiagnosticList(provenance=provenance, items=diagnostics)
    return model


def _term_degree(factors: List[Factor], ids: Dict[str, int], algebra: GradedAlgebra) -> Optional[int]:
    """Degree of a product from the declared degrees, None when it vanishes (an odd generator twice)."""

    totals: Dict[int, int] = {}
    for fname, exponent, _ in factors:
        totals[ids[fname]] = totals.get(ids[fname], 0) + exponent
    if any(algebra.generator(gid).is_odd and exponent > 1 for gid, exponent in totals.items()):
        return None
    return sum(algebra.generator(gid).degree * exponent for gid, exponent in totals.items())


def _assemble(
    terms: List[Term], ids: Dict[str, int], algebra: GradedAlgebra, expected_degree: Optional[int] = None
) -> Tuple[Polynomial, List[Tuple[str, int]], List[Tuple[int, int]]]:
    """Multiply out each term in the order written, so odd factors pick up their Koszul signs.

    Terms naming undeclared generators are returned as ``(name, position)``. With ``expected_degree``,
    terms of any other degree are returned as ``(position, degree)`` and never expanded.
    """

    unknown: List[Tuple[str, int]] = []
    misplaced: List[Tuple[int, int]] = []
    result = Polynomial.zero()
    for coefficient, factors in terms:
        missing = [(fname, position) for fname, _, position in factors if fname not in ids]
        if missing:
            unknown.extend(missing)
            continue
        degree = _term_degree(factors, ids, algebra)
        if degree is None or not coefficient:
            continue
        if expected_degree is not None and degree != expected_degree:
            misplaced.append((factors[0][2] if factors else 0, degree))
            continue
        product = Polynomial.monomial(Monomial(), coefficient)
        for fname, exponent, _ in factors:
            product = algebra.multiply_polynomials(product, algebra.generator_power(ids[fname], exponent))
        result = result + product
    return result, unknown, misplaced


def load_model(source: str, provenance: str = "<model>", name: Optional[str] = None) -> SullivanModel:
    """Like parse_model, but raise ParseFailure carrying the diagnostics."""

    parsed = parse_model(source, provenance, name)
    if isinstance(parsed, DiagnosticList):
        raise ParseFailure(parsed)
    return parsed


def read_model(path: Path | str) -> SullivanModel:
    path = Path(path)
    return load_model(path.read_text(encoding="utf-8"), provenance=str(path), name=path.stem)


def parse_polynomial(text: str, model: SullivanModel) -> Polynomial:
    """A polynomial over the generators of ``model``; raises ParseFailure with positioned diagnostics."""

    provenance = "<polynomial>"
    try:
        terms = parse_terms(text)
    except ParseError as exc:
        item = Diagnostic(line=1, column=_error_column(text, exc), category="syntax", message=f"cannot parse polynomial: {exc}")
        raise ParseFailure(DiagnosticList(provenance=provenance, items=[item])) from exc
    except ZeroDivisionError as exc:
        item = Diagnostic(line=1, column=1, category="syntax", message="zero denominator in a coefficient")
        raise ParseFailure(DiagnosticList(provenance=provenance, items=[item])) from exc
    ids = {g.name: g.id for g in model.generators}
    polynomial, unknown, _ = _assemble(terms, ids, model.algebra)
    if unknown:
        items = [
            Diagnostic(line=1, column=position + 1, category="unknown-generator", message=f"undeclared generator {fname}")
            for fname, position in unknown
        ]
        raise ParseFailure(DiagnosticList(provenance=provenance, items=items))
    return polynomial
