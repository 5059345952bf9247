"""Shared exact sparse linear algebra over the rationals.

Vectors are sparse ``{coordinate: QQ element}`` dicts. Every subspace is kept in
canonical reduced row echelon form, so two spans are equal exactly when their
rows are equal, and every quotient representative is reduced against its
denominator before it is echelonized.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices.sdm import SDM

logger = logging.getLogger(__name__)

Vector = Dict[int, Any]


def to_qq(value: Fraction | int) -> Any:
    """Convert an exact Python rational into a QQ domain element."""

    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(value: Any) -> Fraction:
    """Convert a QQ domain element back into a Fraction."""

    rational = QQ.to_sympy(value)
    return Fraction(int(rational.p), int(rational.q))


def _axpy(target: Vector, scale: Any, source: Vector) -> None:
    """target += scale * source, in place, dropping cancelled entries."""

    for index, entry in source.items():
        updated = target.get(index, QQ.zero) + scale * entry
        if updated:
            target[index] = updated
        else:
            target.pop(index, None)


def combine(coefficients: Sequence[Any], vectors: Sequence[Vector]) -> Vector:
    """Return the linear combination sum(c_i * v_i)."""

    result: Vector = {}
    for coefficient, vector in zip(coefficients, vectors):
        if coefficient:
            _axpy(result, coefficient, vector)
    return result


def _rref_rows(vectors: List[Vector], ambient: int) -> Tuple[Tuple[Vector, ...], Tuple[int, ...]]:
    rows = dict(enumerate(vector for vector in vectors if vector))
    if not rows or ambient == 0:
        return (), ()
    reduced, _ = SDM(rows, (len(rows), ambient), QQ).rref()
    echelon = sorted((dict(row) for row in reduced.values() if row), key=min)
    return tuple(echelon), tuple(min(row) for row in echelon)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """A subspace of QQ^ambient stored as its reduced row echelon basis."""

    ambient: int
    rows: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Vector]) -> "SubspaceBasis":
        rows, pivots = _rref_rows([dict(v) for v in vectors], ambient)
        return cls(ambient, rows, pivots)

    @classmethod
    def zero(cls, ambient: int) -> "SubspaceBasis":
        return cls(ambient, (), ())

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> "SubspaceBasis":
        """Span of the unit vectors at ``indices`` (already in echelon form)."""

        ordered = sorted(set(indices))
        return cls(ambient, tuple({i: QQ.one} for i in ordered), tuple(ordered))

    @classmethod
    def full(cls, ambient: int) -> "SubspaceBasis":
        return cls.coordinate(ambient, range(ambient))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Vector) -> Vector:
        """Return the canonical remainder of ``vector`` modulo this subspace."""

        remainder = dict(vector)
        for row, pivot in zip(self.rows, self.pivots):
            coefficient = remainder.get(pivot)
            if coefficient:
                _axpy(remainder, -coefficient, row)
        return remainder

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(row) for row in self.rows)

    def same_span(self, other: "SubspaceBasis") -> bool:
        return self.ambient == other.ambient and self.pivots == other.pivots and list(self.rows) == list(other.rows)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        if not other.rows:
            return self
        if not self.rows:
            return other
        return SubspaceBasis.span(self.ambient, list(self.rows) + list(other.rows))

    def intersection(self, other: "SubspaceBasis") -> "SubspaceBasis":
        if not self.rows or not other.rows:
            return SubspaceBasis.zero(self.ambient)
        remainders = [other.reduce(row) for row in self.rows]
        relations = SparseMap(len(self.rows), self.ambient, tuple(remainders)).kernel()
        return SubspaceBasis.span(
            self.ambient, (combine([rel.get(i, QQ.zero) for i in range(len(self.rows))], self.rows) for rel in relations.rows)
        )


@dataclass(frozen=True, eq=False)
class Subquotient:
    """numerator / denominator, with canonical representatives reduced modulo the denominator."""

    numerator: SubspaceBasis
    denominator: SubspaceBasis
    complement: SubspaceBasis

    @classmethod
    def build(cls, numerator: SubspaceBasis, denominator: SubspaceBasis) -> "Subquotient":
        if not denominator.is_subspace_of(numerator):
            raise ValueError("denominator is not contained in numerator")
        complement = SubspaceBasis.span(numerator.ambient, (denominator.reduce(row) for row in numerator.rows))
        return cls(numerator, denominator, complement)

    @property
    def dimension(self) -> int:
        return self.complement.dimension

    @property
    def representatives(self) -> Tuple[Vector, ...]:
        return self.complement.rows

    def coordinates(self, vector: Vector) -> List[Any]:
        """Coordinates of the class of ``vector`` in the representative basis."""

        remainder = self.denominator.reduce(vector)
        coefficients = [remainder.get(pivot, QQ.zero) for pivot in self.complement.pivots]
        residual = dict(remainder)
        for coefficient, row in zip(coefficients, self.complement.rows):
            if coefficient:
                _axpy(residual, -coefficient, row)
        if residual:
            raise ValueError("vector does not lie in the numerator")
        return coefficients

    def is_zero_class(self, vector: Vector) -> bool:
        return self.denominator.contains(vector)


@dataclass(frozen=True, eq=False)
class SparseMap:
    """A linear map QQ^source -> QQ^target stored column by column."""

    source: int
    target: int
    columns: Tuple[Vector, ...]

    def apply(self, vector: Vector) -> Vector:
        result: Vector = {}
        for index, coefficient in vector.items():
            if coefficient:
                _axpy(result, coefficient, self.columns[index])
        return result

    def project(self, keep: Iterable[int]) -> "SparseMap":
        """Compose with the coordinate projection onto the target indices ``keep``."""

        kept = set(keep)
        return SparseMap(
            self.source,
            self.target,
            tuple({j: a for j, a in column.items() if j in kept} for column in self.columns),
        )

    def _row_major(self) -> Dict[int, Vector]:
        rows: Dict[int, Vector] = {}
        for i, column in enumerate(self.columns):
            for j, entry in column.items():
                rows.setdefault(j, {})[i] = entry
        return rows

    def kernel(self, within: Optional[SubspaceBasis] = None) -> SubspaceBasis:
        """Kernel of the map, optionally restricted to the subspace ``within``."""

        if within is not None:
            if not within.rows:
                return SubspaceBasis.zero(self.source)
            restricted = SparseMap(within.dimension, self.target, tuple(self.apply(row) for row in within.rows))
            relations = restricted.kernel()
            return SubspaceBasis.span(
                self.source,
                (combine([rel.get(i, QQ.zero) for i in range(within.dimension)], within.rows) for rel in relations.rows),
            )
        if self.source == 0:
            return SubspaceBasis.zero(0)
        rows = self._row_major()
        if not rows:
            return SubspaceBasis.full(self.source)
        null, _ = SDM(rows, (self.target, self.source), QQ).nullspace()
        return SubspaceBasis.span(self.source, (dict(row) for row in null.values()))

    def image(self, of: Optional[SubspaceBasis] = None) -> SubspaceBasis:
        if of is None:
            return SubspaceBasis.span(self.target, self.columns)
        return SubspaceBasis.span(self.target, (self.apply(row) for row in of.rows))

    def rank(self) -> int:
        return self.image().dimension

    def solve(self, rhs: Vector) -> Optional[Vector]:
        """Canonical particular solution x of M x = rhs (free variables zero), or None."""

        if not rhs:
            return {}
        rows = self._row_major()
        for j, entry in rhs.items():
            rows.setdefault(j, {})[self.source] = entry
        reduced, _ = SDM(rows, (self.target, self.source + 1), QQ).rref()
        solution: Vector = {}
        for row in reduced.values():
            if not row:
                continue
            pivot = min(row)
            if pivot == self.source:
                return None
            value = row.get(self.source)
            if value:
                solution[pivot] = value
        return solution
