"""Exact graded-commutative polynomial arithmetic over the rationals.

ΛV = Exterior(V^odd) ⊗ Symmetric(V^even) on an ordered list of generators.
Monomials are always stored in canonical (generator id) order; the Koszul sign
of reordering a product is computed once, when the product is normalized.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from sullivan.core.linalg import Vector, to_fraction, to_qq

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Generator:
    """A basis element of V."""

    id: int
    name: str
    degree: int

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True, order=True)
class Monomial:
    """A word g_1^e_1 ... g_m^e_m with strictly increasing generator ids."""

    exponents: Tuple[Tuple[int, int], ...] = ()

    @property
    def word_length(self) -> int:
        return sum(e for _, e in self.exponents)

    def exponent(self, gid: int) -> int:
        for g, e in self.exponents:
            if g == gid:
                return e
        return 0

    def generator_ids(self) -> Tuple[int, ...]:
        return tuple(g for g, _ in self.exponents)

    def is_unit(self) -> bool:
        return not self.exponents


ONE = Monomial()


class Polynomial:
    """A finite QQ-linear combination of monomials. Treated as immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Fraction | int]] = None) -> None:
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in (terms or {}).items():
            value = Fraction(coefficient)
            if value:
                cleaned[monomial] = value
        self._terms = cleaned

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({ONE: 1})

    @classmethod
    def monomial(cls, monomial: Monomial, coefficient: Fraction | int = 1) -> "Polynomial":
        return cls({monomial: coefficient})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"Polynomial({self._terms!r})"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        merged = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            merged[monomial] = merged.get(monomial, 0) + coefficient
        return Polynomial(merged)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, factor: Fraction | int) -> "Polynomial":
        return Polynomial({m: c * factor for m, c in self._terms.items()})

    def monomials(self) -> List[Monomial]:
        return list(self._terms)

    def word_lengths(self) -> List[int]:
        return sorted({m.word_length for m in self._terms})

    def length_component(self, length: int) -> "Polynomial":
        return Polynomial({m: c for m, c in self._terms.items() if m.word_length == length})

    def truncate(self, max_length: int) -> "Polynomial":
        """Image in ΛV / Λ^{>max_length}V."""

        return Polynomial({m: c for m, c in self._terms.items() if m.word_length <= max_length})

    def is_length_homogeneous(self) -> bool:
        return len(self.word_lengths()) <= 1

    def generator_ids(self) -> List[int]:
        return sorted({g for m in self._terms for g in m.generator_ids()})


@dataclass(frozen=True)
class Derivation:
    """A derivation of ΛV determined by its values on generators (missing values are zero)."""

    degree: int
    values: Tuple[Tuple[int, Polynomial], ...] = ()

    @classmethod
    def from_mapping(cls, degree: int, values: Mapping[int, Polynomial]) -> "Derivation":
        return cls(degree, tuple(sorted((g, p) for g, p in values.items() if p)))

    def value(self, gid: int) -> Polynomial:
        for g, p in self.values:
            if g == gid:
                return p
        return Polynomial.zero()

    def as_dict(self) -> Dict[int, Polynomial]:
        return dict(self.values)

    def is_zero(self) -> bool:
        return not self.values


@lru_cache(maxsize=None)
def _exponent_vectors(degrees: Tuple[int, ...], n: int) -> Tuple[Tuple[int, ...], ...]:
    found: List[Tuple[int, ...]] = []
    count = len(degrees)

    def walk(i: int, remaining: int, acc: Tuple[int, ...]) -> None:
        if i == count:
            if remaining == 0:
                found.append(acc)
            return
        degree = degrees[i]
        cap = remaining // degree
        if degree % 2 == 1:
            cap = min(cap, 1)
        for e in range(cap + 1):
            walk(i + 1, remaining - e * degree, acc + (e,))

    if n >= 0:
        walk(0, n, ())
    return tuple(sorted(found))


@dataclass(frozen=True)
class GradedAlgebra:
    """The free graded-commutative algebra ΛV on ``generators`` (ids 0..n-1 in order)."""

    generators: Tuple[Generator, ...]
    _odd: Tuple[bool, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for position, generator in enumerate(self.generators):
            if generator.id != position:
                raise ValueError(f"generator ids must be consecutive from 0, got {generator.id} at {position}")
            if generator.degree < 1:
                raise ValueError(f"generator {generator.name} has degree {generator.degree} < 1")
        object.__setattr__(self, "_odd", tuple(g.is_odd for g in self.generators))

    # ----- generators -------------
    def generator(self, gid: int) -> Generator:
        return self.generators[gid]

    def by_name(self, name: str) -> Optional[Generator]:
        for generator in self.generators:
            if generator.name == name:
                return generator
        return None

    def generator_polynomial(self, gid: int) -> Polynomial:
        return Polynomial.monomial(Monomial(((gid, 1),)))

    def generator_power(self, gid: int, exponent: int) -> Polynomial:
        """g^exponent without repeated multiplication; zero for odd g and exponent >= 2."""

        if exponent == 0:
            return Polynomial.one()
        if self.generators[gid].is_odd and exponent > 1:
            return Polynomial.zero()
        return Polynomial.monomial(Monomial(((gid, exponent),)))

    def max_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    # ----- degrees -------------
    def monomial_degree(self, monomial: Monomial) -> int:
        return sum(self.generators[g].degree * e for g, e in monomial.exponents)

    def degree(self, polynomial: Polynomial) -> Optional[int]:
        """Degree of a degree-homogeneous polynomial, None for zero or inhomogeneous input."""

        degrees = {self.monomial_degree(m) for m in polynomial.monomials()}
        return degrees.pop() if len(degrees) == 1 else None

    def degrees(self, polynomial: Polynomial) -> List[int]:
        return sorted({self.monomial_degree(m) for m in polynomial.monomials()})

    # ----- products -------------
    def multiply_monomials(self, a: Monomial, b: Monomial) -> Optional[Tuple[int, Monomial]]:
        """Return (sign, a*b in canonical order), or None when an odd generator repeats."""

        odd = self._odd
        odd_a = [g for g, _ in a.exponents if odd[g]]
        transpositions = 0
        for g, _ in b.exponents:
            if odd[g]:
                if g in odd_a:
                    return None
                transpositions += sum(1 for h in odd_a if h > g)
        merged: Dict[int, int] = dict(a.exponents)
        for g, e in b.exponents:
            merged[g] = merged.get(g, 0) + e
        sign = -1 if transpositions % 2 else 1
        return sign, Monomial(tuple(sorted(merged.items())))

    def multiply_polynomials(self, p: Polynomial, q: Polynomial) -> Polynomial:
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in p:
            for m2, c2 in q:
                product = self.multiply_monomials(m1, m2)
                if product is None:
                    continue
                sign, monomial = product
                result[monomial] = result.get(monomial, 0) + sign * c1 * c2
        return Polynomial(result)

    def product(self, factors: Sequence[Polynomial]) -> Polynomial:
        result = Polynomial.one()
        for factor in factors:
            result = self.multiply_polynomials(result, factor)
        return result

    def power(self, p: Polynomial, exponent: int) -> Polynomial:
        return self.product([p] * exponent)

    # ----- derivations -------------
    def apply_derivation(self, theta: Derivation, p: Polynomial) -> Polynomial:
        """Extend ``theta`` to ``p`` by the graded Leibniz rule."""

        values = theta.as_dict()
        result = Polynomial.zero()
        for monomial, coefficient in p:
            factors = monomial.exponents
            for i, (gid, exponent) in enumerate(factors):
                image = values.get(gid)
                if not image:
                    continue
                prefix = Monomial(factors[:i])
                suffix = Monomial(factors[i + 1:])
                if exponent > 1:
                    inner = self.multiply_polynomials(
                        Polynomial.monomial(Monomial(((gid, exponent - 1),)), exponent), image
                    )
                else:
                    inner = image
                sign = -1 if (theta.degree * self.monomial_degree(prefix)) % 2 else 1
                term = self.multiply_polynomials(Polynomial.monomial(prefix, sign * coefficient), inner)
                result = result + self.multiply_polynomials(term, Polynomial.monomial(suffix))
        return result

    # ----- bases -------------
    def degree_basis(self, n: int) -> Tuple[Monomial, ...]:
        """All monomials of degree n, ordered lexicographically by exponent vector."""

        degrees = tuple(g.degree for g in self.generators)
        return tuple(
            Monomial(tuple((g, e) for g, e in enumerate(vector) if e))
            for vector in _exponent_vectors(degrees, n)
        )

    def basis_index(self, n: int) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.degree_basis(n))}

    def to_vector(self, p: Polynomial, n: int, index: Optional[Mapping[Monomial, int]] = None) -> Vector:
        index = index if index is not None else self.basis_index(n)
        vector: Vector = {}
        for monomial, coefficient in p:
            if monomial not in index:
                raise ValueError(f"monomial {self.format_monomial(monomial)} is not in degree {n}")
            vector[index[monomial]] = to_qq(coefficient)
        return vector

    def from_vector(self, vector: Vector, n: int, basis: Optional[Sequence[Monomial]] = None) -> Polynomial:
        basis = basis if basis is not None else self.degree_basis(n)
        return Polynomial({basis[i]: to_fraction(c) for i, c in vector.items()})

    # ----- printing -------------
    def format_monomial(self, monomial: Monomial) -> str:
        if monomial.is_unit():
            return "1"
        parts = []
        for gid, exponent in monomial.exponents:
            name = self.generators[gid].name
            parts.append(name if exponent == 1 else f"{name}^{exponent}")
        return "*".join(parts)

    def _dense(self, monomial: Monomial) -> Tuple[int, ...]:
        return tuple(monomial.exponent(g.id) for g in self.generators)

    def format(self, p: Polynomial) -> str:
        """Render in the model language (parsable back by the model parser)."""

        if not p:
            return "0"
        pieces: List[str] = []
        for monomial, coefficient in sorted(p, key=lambda item: self._dense(item[0]), reverse=True):
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            body = self.format_monomial(monomial)
            if monomial.is_unit():
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            if not pieces:
                pieces.append(text if sign == "+" else f"-{text}")
            else:
                pieces.append(f"{sign} {text}")
        return " ".join(pieces)


def series_coefficients(algebra: GradedAlgebra, bound: int) -> List[int]:
    """Coefficients of prod_even (1-t^|g|)^-1 * prod_odd (1+t^|g|) up to t^bound."""

    coefficients = [1] + [0] * bound
    for generator in algebra.generators:
        d = generator.degree
        if generator.is_odd:
            for n in range(bound, d - 1, -1):
                coefficients[n] += coefficients[n - d]
        else:
            for n in range(d, bound + 1):
                coefficients[n] += coefficients[n - d]
    return coefficients


def polynomial_from_terms(terms: Iterable[Tuple[Monomial, Fraction | int]]) -> Polynomial:
    result: Dict[Monomial, Fraction] = {}
    for monomial, coefficient in terms:
        result[monomial] = result.get(monomial, 0) + Fraction(coefficient)
    return Polynomial(result)
