"""Bounded-degree exact cochain computations on (ΛV, d)."""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from sullivan.core.config import Settings, get_settings
from sullivan.core.errors import ComputationLimitExceeded, DualityViolation, NotACocycle, NotHomogeneous, ZeroClass
from sullivan.core.linalg import SparseMap, Subquotient, SubspaceBasis, Vector, to_fraction, to_qq
from sullivan.models.report import (
    BigradedEntry,
    ClassWitness,
    CohomologyDegree,
    CohomologyTable,
    EllipticityVerdict,
    FundamentalClass,
)
from sullivan.services.algebra import Derivation, GradedAlgebra, Monomial, Polynomial, series_coefficients
from sullivan.services.sullivan_model import AcyclicClosure, SullivanModel, invariants

logger = logging.getLogger(__name__)


class CochainComplex:
    """(ΛV, θ) for a degree +1 derivation θ with θ² = 0, computed degree by degree on demand.

    Tables are filled lazily by a single caller; after that, concurrent readers are safe.
    """

    def __init__(self, algebra: GradedAlgebra, differential: Derivation, max_basis_size: Optional[int] = None) -> None:
        self.algebra = algebra
        self.differential = differential
        self.max_basis_size = max_basis_size
        self._basis: Dict[int, Tuple[Monomial, ...]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}
        self._matrix: Dict[int, SparseMap] = {}
        self._cocycles: Dict[int, SubspaceBasis] = {}
        self._coboundaries: Dict[int, SubspaceBasis] = {}
        self._cohomology: Dict[int, Subquotient] = {}

    # ----- bases -------------
    def basis(self, n: int) -> Tuple[Monomial, ...]:
        if n not in self._basis:
            basis = self.algebra.degree_basis(n) if n >= 0 else ()
            if self.max_basis_size is not None and len(basis) > self.max_basis_size:
                raise ComputationLimitExceeded(n, len(basis), self.max_basis_size)
            self._basis[n] = basis
            self._index[n] = {m: i for i, m in enumerate(basis)}
            logger.debug("degree %d: %d monomials", n, len(basis))
        return self._basis[n]

    def index(self, n: int) -> Dict[Monomial, int]:
        self.basis(n)
        return self._index[n]

    def size(self, n: int) -> int:
        return len(self.basis(n))

    def length_indices(self, n: int, lengths: Iterable[int]) -> List[int]:
        wanted = set(lengths)
        return [i for i, m in enumerate(self.basis(n)) if m.word_length in wanted]

    def filtration_indices(self, n: int, p: int) -> List[int]:
        """Coordinates of F^p = Λ^{≥p}V in degree n."""

        return [i for i, m in enumerate(self.basis(n)) if m.word_length >= p]

    def vector(self, p: Polynomial, n: int) -> Vector:
        return self.algebra.to_vector(p, n, self.index(n))

    def polynomial(self, vector: Vector, n: int) -> Polynomial:
        return self.algebra.from_vector(vector, n, self.basis(n))

    def format(self, vector: Vector, n: int) -> str:
        return self.algebra.format(self.polynomial(vector, n))

    def apply(self, p: Polynomial) -> Polynomial:
        return self.algebra.apply_derivation(self.differential, p)

    # ----- linear algebra -------------
    def differential_matrix(self, n: int) -> SparseMap:
        """Matrix of θ: (ΛV)^n -> (ΛV)^{n+1}; columns follow degree_basis(n)."""

        if n not in self._matrix:
            source = self.basis(n)
            target_index = self.index(n + 1)
            columns = tuple(
                self.algebra.to_vector(self.apply(Polynomial.monomial(m)), n + 1, target_index) for m in source
            )
            self._matrix[n] = SparseMap(len(source), len(target_index), columns)
        return self._matrix[n]

    def cocycles(self, n: int) -> SubspaceBasis:
        if n not in self._cocycles:
            self._cocycles[n] = self.differential_matrix(n).kernel()
        return self._cocycles[n]

    def coboundaries(self, n: int) -> SubspaceBasis:
        if n not in self._coboundaries:
            if n <= 0:
                self._coboundaries[n] = SubspaceBasis.zero(self.size(n))
            else:
                self._coboundaries[n] = self.differential_matrix(n - 1).image()
        return self._coboundaries[n]

    def cohomology(self, n: int) -> Subquotient:
        if n not in self._cohomology:
            self._cohomology[n] = Subquotient.build(self.cocycles(n), self.coboundaries(n))
        return self._cohomology[n]

    def dimension(self, n: int) -> int:
        return self.cohomology(n).dimension

    def representatives(self, n: int) -> List[Polynomial]:
        return [self.polynomial(row, n) for row in self.cohomology(n).representatives]

    def is_cocycle(self, p: Polynomial) -> bool:
        return not self.apply(p)

    def class_coordinates(self, p: Polynomial, n: int) -> List[Fraction]:
        return [to_fraction(c) for c in self.cohomology(n).coordinates(self.vector(p, n))]

    def is_exact(self, p: Polynomial, n: int) -> bool:
        return self.coboundaries(n).contains(self.vector(p, n))

    # ----- word-length bigrading -------------
    def length_shift(self) -> Optional[int]:
        """k - 1 when θ is length-homogeneous of length k, 0 for θ = 0, None otherwise."""

        lengths = sorted({l for _, value in self.differential.values for l in value.word_lengths()})
        if not lengths:
            return 0
        if len(lengths) > 1:
            return None
        return lengths[0] - 1

    def bigraded(self, n: int, p: int) -> Subquotient:
        """H^n_p: classes represented by length-p cocycles (θ length-homogeneous)."""

        shift = self.length_shift()
        if shift is None:
            raise NotHomogeneous("the differential is not word-length homogeneous")
        source = SubspaceBasis.coordinate(self.size(n), self.length_indices(n, [p]))
        kernel = self.differential_matrix(n).kernel(within=source)
        if n > 0 and shift > 0:
            preimage = SubspaceBasis.coordinate(self.size(n - 1), self.length_indices(n - 1, [p - shift]))
            image = self.differential_matrix(n - 1).image(of=preimage)
        else:
            image = SubspaceBasis.zero(self.size(n))
        return Subquotient.build(kernel, image)


@lru_cache(maxsize=128)
def complex_for(algebra: GradedAlgebra, differential: Derivation, max_basis_size: Optional[int] = None) -> CochainComplex:
    return CochainComplex(algebra, differential, max_basis_size)


def model_complex(model: SullivanModel, settings: Optional[Settings] = None) -> CochainComplex:
    settings = settings or get_settings()
    return complex_for(model.algebra, model.differential, settings.max_basis_size)


def differential_matrix(model: SullivanModel, n: int) -> SparseMap:
    return model_complex(model).differential_matrix(n)


def cohomology(model: SullivanModel, n: int, settings: Optional[Settings] = None) -> Subquotient:
    return model_complex(model, settings).cohomology(n)


def cohomology_table(
    model: SullivanModel, bound: int, settings: Optional[Settings] = None, with_bigraded: bool = True
) -> CohomologyTable:
    complex_ = model_complex(model, settings)
    degrees = [
        CohomologyDegree(
            degree=n,
            dimension=complex_.dimension(n),
            representatives=[complex_.algebra.format(p) for p in complex_.representatives(n)],
        )
        for n in range(bound + 1)
    ]
    bigraded = None
    if with_bigraded and complex_.length_shift() is not None:
        bigraded = bigraded_entries(complex_, bound)
    return CohomologyTable(bound=bound, degrees=degrees, bigraded=bigraded)


def bigraded_entries(complex_: CochainComplex, bound: int) -> List[BigradedEntry]:
    entries: List[BigradedEntry] = []
    for n in range(bound + 1):
        for p in range(n // 2 + 1 if n else 1):
            dimension = complex_.bigraded(n, p).dimension
            if dimension:
                entries.append(BigradedEntry(degree=n, length=p, dimension=dimension))
    return entries


def bigraded_cohomology(model: SullivanModel, n: int, settings: Optional[Settings] = None) -> Dict[int, int]:
    """dim H^n_p for every word length p (differential must be length-homogeneous)."""

    complex_ = model_complex(model, settings)
    if complex_.length_shift() is None:
        raise NotHomogeneous(f"d of {model.name} is not word-length homogeneous")
    top = max((m.word_length for m in complex_.basis(n)), default=0)
    return {p: complex_.bigraded(n, p).dimension for p in range(top + 1)}


# ----- ellipticity -------------


def _first_witness(complex_: CochainComplex, degrees: Iterable[int], note: str) -> Optional[ClassWitness]:
    for n in degrees:
        representatives = complex_.representatives(n)
        if representatives:
            return ClassWitness(degree=n, representative=complex_.algebra.format(representatives[0]), note=note)
    return None


def ellipticity_verdict(
    model: SullivanModel, window_factor: Optional[int] = None, settings: Optional[Settings] = None
) -> EllipticityVerdict:
    """Semi-decide ellipticity inside an explicit degree window."""

    settings = settings or get_settings()
    factor = window_factor or settings.window_factor
    n_formula = invariants(model).n_formula
    max_degree = model.algebra.max_degree()
    complex_ = model_complex(model, settings)

    if n_formula < 0:
        window = 2 * max_degree
        try:
            witness = _first_witness(complex_, range(1, window + 1), "nonzero class above a negative formal dimension")
        except ComputationLimitExceeded:
            witness = None
        witness = witness or ClassWitness(degree=0, representative="1", note="H^0 lies above a negative formal dimension")
        return EllipticityVerdict(
            status="NotElliptic", n_formula=n_formula, window=window, witness=witness, reason="N_formula < 0"
        )

    window = max(factor * n_formula, n_formula + max_degree)
    try:
        above = _first_witness(complex_, range(n_formula + 1, window + 1), "nonzero class above N_formula")
        if above is not None:
            logger.debug("%s: cohomology in degree %d > N_formula=%d", model.name, above.degree, n_formula)
            return EllipticityVerdict(
                status="NotElliptic",
                n_formula=n_formula,
                window=window,
                witness=above,
                reason="cohomology above N_formula",
            )
        top = complex_.dimension(n_formula)
        if top != 1:
            witness = _first_witness(complex_, [n_formula], "top cohomology is not one-dimensional") or ClassWitness(
                degree=n_formula, representative="0", note="H^N vanishes"
            )
            return EllipticityVerdict(
                status="NotElliptic",
                n_formula=n_formula,
                window=window,
                witness=witness,
                reason=f"dim H^{n_formula} = {top}",
            )
        for i in range(n_formula + 1):
            degenerate = _pairing_degeneracy(complex_, i, n_formula)
            if degenerate is not None:
                return EllipticityVerdict(
                    status="NotElliptic",
                    n_formula=n_formula,
                    window=window,
                    witness=degenerate,
                    reason=f"Poincare pairing degenerate in degree {i}",
                )
    except ComputationLimitExceeded as exc:
        return EllipticityVerdict(status="Undetermined", n_formula=n_formula, window=window, reason=str(exc))
    return EllipticityVerdict(
        status="Elliptic",
        n=n_formula,
        n_formula=n_formula,
        window=window,
        reason=f"H vanishes on ({n_formula}, {window}], dim H^{n_formula} = 1, pairing nondegenerate",
    )


# ----- Poincare duality -------------


def pairing_matrix(complex_: CochainComplex, i: int, top: int) -> List[List[Fraction]]:
    """<a_r, b_s>: coefficient of a_r * b_s on the fundamental class, over representative bases."""

    left = complex_.representatives(i)
    right = complex_.representatives(top - i)
    algebra = complex_.algebra
    return [
        [complex_.class_coordinates(algebra.multiply_polynomials(a, b), top)[0] for b in right]
        for a in left
    ]


def _pairing_degeneracy(complex_: CochainComplex, i: int, top: int) -> Optional[ClassWitness]:
    left = complex_.representatives(i)
    right = complex_.representatives(top - i)
    if len(left) != len(right):
        classes = left or right
        degree = i if left else top - i
        return ClassWitness(
            degree=degree,
            representative=complex_.algebra.format(classes[0]),
            note=f"dim H^{i} = {len(left)} but dim H^{top - i} = {len(right)}",
        )
    if not left:
        return None
    matrix = pairing_matrix(complex_, i, top)
    # Left kernel of the pairing: combinations of the a_r pairing to zero with every b_s.
    pairing = SparseMap(
        len(left),
        len(right),
        tuple({s: to_qq(value) for s, value in enumerate(row) if value} for row in matrix),
    )
    null = pairing.kernel()
    if null.dimension == 0:
        return None
    combination = Polynomial.zero()
    for r, coefficient in null.rows[0].items():
        combination = combination + left[r].scale(to_fraction(coefficient))
    return ClassWitness(
        degree=i,
        representative=complex_.algebra.format(combination),
        note="class pairs to zero with every class of complementary degree",
    )


def pairing_dual(model: SullivanModel, a: Polynomial, verdict: EllipticityVerdict, settings: Optional[Settings] = None) -> Polynomial:
    """b with [a]·[b] = [ω] (ω the canonical fundamental class representative)."""

    if verdict.status != "Elliptic" or verdict.n is None:
        raise DualityViolation(f"{model.name} is not certified elliptic ({verdict.status})")
    complex_ = model_complex(model, settings)
    algebra = complex_.algebra
    degree = algebra.degree(a)
    if degree is None:
        if a:
            raise NotACocycle(f"{algebra.format(a)} is not homogeneous in degree")
        raise ZeroClass("the zero class has no dual")
    if not complex_.is_cocycle(a):
        raise NotACocycle(algebra.format(a))
    if complex_.is_exact(a, degree):
        raise ZeroClass(algebra.format(a))
    top = verdict.n
    partners = complex_.representatives(top - degree)
    pairings = [complex_.class_coordinates(algebra.multiply_polynomials(a, b), top)[0] for b in partners]
    system = SparseMap(len(partners), 1, tuple({0: to_qq(value)} if value else {} for value in pairings))
    solution = system.solve({0: to_qq(Fraction(1))})
    if solution is None:
        raise DualityViolation(f"[{algebra.format(a)}] has no Poincare dual", witness=algebra.format(a))
    dual = Polynomial.zero()
    for s, coefficient in solution.items():
        dual = dual + partners[s].scale(to_fraction(coefficient))
    return dual


def fundamental_class(model: SullivanModel, verdict: EllipticityVerdict, settings: Optional[Settings] = None) -> Optional[FundamentalClass]:
    if verdict.status != "Elliptic" or verdict.n is None:
        return None
    complex_ = model_complex(model, settings)
    omega = complex_.representatives(verdict.n)[0]
    return FundamentalClass(
        degree=verdict.n, representative=complex_.algebra.format(omega), word_lengths=omega.word_lengths()
    )


# ----- consistency -------------


def euler_consistency(model: SullivanModel, bound: int, settings: Optional[Settings] = None) -> bool:
    """Truncated Euler characteristics, rank-nullity and basis sizes agree up to ``bound``."""

    complex_ = model_complex(model, settings)
    series = series_coefficients(model.algebra, bound)
    alternating_h = 0
    alternating_c = 0
    for n in range(bound + 1):
        size = complex_.size(n)
        matrix = complex_.differential_matrix(n)
        if size != series[n] or size != complex_.cocycles(n).dimension + matrix.rank():
            return False
        alternating_h += (-1) ** n * complex_.dimension(n)
        alternating_c += (-1) ** n * size
    return alternating_h == alternating_c - (-1) ** bound * complex_.differential_matrix(bound).rank()


def closure_cohomology(closure: AcyclicClosure, bound: int, settings: Optional[Settings] = None) -> List[int]:
    """dim H^i(Λ(V ⊕ sV), D) for 0 <= i <= bound."""

    settings = settings or get_settings()
    complex_ = complex_for(closure.algebra, closure.D, settings.max_basis_size)
    return [complex_.dimension(i) for i in range(bound + 1)]
