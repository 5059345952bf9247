"""The spectral sequence of the word-length filtration F^p = Λ^{≥p}V.

Conventions (r ≥ 1, n = p + q):

    Z_r^{p,q}  = {x ∈ F^p ∩ (ΛV)^n : dx ∈ F^{p+r}}
    B_r^{p,q}  = d(Z_{r-1}^{p-r+1, q+r-2})
    E_r^{p,q}  = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + B_r^{p,q})
    δ_r        : E_r^{p,q} -> E_r^{p+r, q-r+1},  [x] -> [dx]

so that E_1 = ... = E_{k-1} is ΛV and E_k is H(ΛV, d_k) when d = d_k + d_{k+1} + ...
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Set, Tuple

from sullivan.core.config import Settings, get_settings
from sullivan.core.errors import (
    DualityViolation,
    EngineInconsistency,
    IsoViolation,
    NotACocycle,
    NotHomogeneous,
    WellDefinednessViolation,
    ZeroClass,
)
from sullivan.core.linalg import SparseMap, Subquotient, SubspaceBasis, Vector
from sullivan.models.report import ColumnFactorization, E0Report, PageCell, PageTable
from sullivan.services.algebra import Polynomial
from sullivan.services.cohomology import CochainComplex, ellipticity_verdict, model_complex, pairing_dual
from sullivan.services.sullivan_model import SullivanModel, first_length, homogeneous_model, invariants, is_length_homogeneous

logger = logging.getLogger(__name__)


def r_stab(n: int) -> int:
    """First page index from which every entry of total degree n is stationary."""

    return (n + 2) // 2 + 1


@dataclass(frozen=True)
class PageEntry:
    r: int
    p: int
    q: int
    space: Subquotient

    @property
    def degree(self) -> int:
        return self.p + self.q

    @property
    def dimension(self) -> int:
        return self.space.dimension

    @property
    def representatives(self) -> Tuple[Vector, ...]:
        return self.space.representatives


class Toomer(NamedTuple):
    value: int
    certified: bool
    bound: int


@dataclass(frozen=True)
class IsoCheck:
    """Dimensions of ker/im δ_r at (p, q) next to their subquotient descriptions."""

    r: int
    p: int
    q: int
    kernel: int
    kernel_subquotient: int
    image: int
    image_subquotient: int

    @property
    def holds(self) -> bool:
        return self.kernel == self.kernel_subquotient and self.image == self.image_subquotient


class SpectralSequence:
    """Pages of the word-length spectral sequence of one cochain complex, memoized per bidegree."""

    def __init__(self, complex_: CochainComplex) -> None:
        self.complex = complex_
        self._z: Dict[Tuple[int, int, int], SubspaceBasis] = {}
        self._b: Dict[Tuple[int, int, int], SubspaceBasis] = {}
        self._pages: Dict[Tuple[int, int, int], PageEntry] = {}
        self._differentials: Dict[Tuple[int, int, int], SparseMap] = {}

    # ----- filtration -------------
    def filtration(self, n: int, p: int) -> SubspaceBasis:
        """F^p ∩ (ΛV)^n as a coordinate subspace."""

        return SubspaceBasis.coordinate(self.complex.size(n), self.complex.filtration_indices(n, p))

    # ----- Z and B -------------
    def z_space(self, r: int, p: int, q: int) -> SubspaceBasis:
        key = (r, p, q)
        if key not in self._z:
            n = p + q
            if n < 0:
                self._z[key] = SubspaceBasis.zero(0)
            else:
                source = self.filtration(n, p)
                forbidden = [i for i, m in enumerate(self.complex.basis(n + 1)) if m.word_length < p + r]
                if not forbidden or not source.rows:
                    self._z[key] = source
                else:
                    self._z[key] = self.complex.differential_matrix(n).project(forbidden).kernel(within=source)
        return self._z[key]

    def b_space(self, r: int, p: int, q: int) -> SubspaceBasis:
        key = (r, p, q)
        if key not in self._b:
            n = p + q
            if n <= 0:
                self._b[key] = SubspaceBasis.zero(self.complex.size(n))
            else:
                preimage = self.z_space(r - 1, p - r + 1, q + r - 2)
                image = self.complex.differential_matrix(n - 1).image(of=preimage)
                if not image.is_subspace_of(self.filtration(n, p)):
                    raise WellDefinednessViolation(f"B_{r}^{{{p},{q}}} leaves F^{p}")
                self._b[key] = image
        return self._b[key]

    # ----- pages -------------
    def page_entry(self, r: int, p: int, q: int) -> PageEntry:
        key = (r, p, q)
        if key not in self._pages:
            numerator = self.z_space(r, p, q)
            denominator = self.z_space(r - 1, p + 1, q - 1) + self.b_space(r, p, q)
            try:
                space = Subquotient.build(numerator, denominator)
            except ValueError as exc:
                raise WellDefinednessViolation(f"E_{r}^{{{p},{q}}}: {exc}") from exc
            self._pages[key] = PageEntry(r, p, q, space)
            logger.debug("E_%d^{%d,%d}: dim %d", r, p, q, space.dimension)
        return self._pages[key]

    def page_differential(self, r: int, p: int, q: int) -> SparseMap:
        """δ_r out of E_r^{p,q}, in representative coordinates on both sides."""

        key = (r, p, q)
        if key not in self._differentials:
            source = self.page_entry(r, p, q)
            target = self.page_entry(r, p + r, q - r + 1)
            n = p + q
            matrix = self.complex.differential_matrix(n)
            for row in source.space.denominator.rows:
                if not target.space.is_zero_class(matrix.apply(row)):
                    raise WellDefinednessViolation(
                        f"δ_{r} at ({p},{q}) depends on the representative {self.complex.format(row, n)}"
                    )
            columns = []
            for representative in source.representatives:
                image = matrix.apply(representative)
                try:
                    coordinates = target.space.coordinates(image)
                except ValueError as exc:
                    raise WellDefinednessViolation(
                        f"d({self.complex.format(representative, n)}) is not in Z_{r}^{{{p + r},{q - r + 1}}}"
                    ) from exc
                columns.append({i: c for i, c in enumerate(coordinates) if c})
            self._differentials[key] = SparseMap(source.dimension, target.dimension, tuple(columns))
        return self._differentials[key]

    def differential_squares_to_zero(self, r: int, p: int, q: int) -> bool:
        first = self.page_differential(r, p, q)
        second = self.page_differential(r, p + r, q - r + 1)
        return all(not second.apply(column) for column in first.columns)

    def page_homology_dimension(self, r: int, p: int, q: int) -> int:
        """dim of ker δ_r / im δ_r at (p, q); equals dim E_{r+1}^{p,q}."""

        outgoing = self.page_differential(r, p, q).rank()
        incoming = self.page_differential(r, p - r, q + r - 1).rank()
        return self.page_entry(r, p, q).dimension - outgoing - incoming

    def e_infinity(self, p: int, q: int) -> PageEntry:
        return self.page_entry(r_stab(p + q), p, q)

    def bidegrees(self, max_total: int) -> List[Tuple[int, int]]:
        return [(p, n - p) for n in range(max_total + 1) for p in range(n // 2 + 1)]

    def column_support(self, max_total: int) -> Set[int]:
        return {p for p, q in self.bidegrees(max_total) if self.e_infinity(p, q).dimension}

    # ----- isomorphism checks -------------
    def subquotient_iso_checks(self, r: int, p: int, q: int) -> IsoCheck:
        """Compare ker/im of δ_r at (p, q) with the Z/B subquotients describing them."""

        entry = self.page_entry(r, p, q)
        lower = self.z_space(r - 1, p + 1, q - 1)
        denominator = lower + self.b_space(r, p, q)
        kernel_space = self.z_space(r + 1, p, q) + lower
        n = p + q
        if n > 0:
            incoming = self.complex.differential_matrix(n - 1).image(of=self.z_space(r, p - r, q + r - 1))
        else:
            incoming = SubspaceBasis.zero(self.complex.size(n))
        image_space = incoming + lower
        try:
            kernel_subquotient = Subquotient.build(kernel_space, denominator).dimension
            image_subquotient = Subquotient.build(image_space, denominator).dimension
        except ValueError as exc:
            raise IsoViolation(f"r={r} ({p},{q}): {exc}") from exc
        check = IsoCheck(
            r=r,
            p=p,
            q=q,
            kernel=entry.dimension - self.page_differential(r, p, q).rank(),
            kernel_subquotient=kernel_subquotient,
            image=self.page_differential(r, p - r, q + r - 1).rank(),
            image_subquotient=image_subquotient,
        )
        if not check.holds:
            raise IsoViolation(f"subquotient dimensions disagree: {check}")
        return check

    # ----- e0 -------------
    def _require_class(self, x: Polynomial) -> int:
        algebra = self.complex.algebra
        n = algebra.degree(x)
        if n is None:
            if x:
                raise NotACocycle(f"{algebra.format(x)} is not homogeneous in degree")
            raise ZeroClass("0")
        if not self.complex.is_cocycle(x):
            raise NotACocycle(algebra.format(x))
        if self.complex.is_exact(x, n):
            raise ZeroClass(algebra.format(x))
        return n

    def e0_by_quotients(self, vector: Vector, n: int) -> int:
        """Smallest m with x nonzero in H(ΛV / Λ^{≥m+1}V)."""

        for m in range(n // 2 + 1):
            kept = {i for i, mono in enumerate(self.complex.basis(n)) if mono.word_length <= m}
            truncated = {i: c for i, c in vector.items() if i in kept}
            if not truncated:
                continue
            if n > 0:
                below = SubspaceBasis.coordinate(
                    self.complex.size(n - 1),
                    [i for i, mono in enumerate(self.complex.basis(n - 1)) if mono.word_length <= m],
                )
                image = self.complex.differential_matrix(n - 1).project(kept).image(of=below)
            else:
                image = SubspaceBasis.zero(self.complex.size(n))
            if not image.contains(truncated):
                return m
        raise EngineInconsistency(f"class in degree {n} vanishes in every quotient")

    def e0_by_representatives(self, vector: Vector, n: int) -> int:
        """Largest p with x ∈ F^p + B."""

        boundaries = self.complex.coboundaries(n)
        best = 0
        for p in range(n // 2 + 1):
            if (self.filtration(n, p) + boundaries).contains(vector):
                best = p
            else:
                break
        return best

    def e0_routes(self, x: Polynomial) -> Tuple[int, int]:
        n = self._require_class(x)
        vector = self.complex.vector(x, n)
        return self.e0_by_quotients(vector, n), self.e0_by_representatives(vector, n)

    def e0_of_class(self, x: Polynomial) -> int:
        by_quotients, by_representatives = self.e0_routes(x)
        if by_quotients != by_representatives:
            raise EngineInconsistency(
                f"e0({self.complex.algebra.format(x)}): quotient route {by_quotients}, "
                f"representative route {by_representatives}"
            )
        return by_quotients

    def filtration_adapted_basis(self, n: int) -> List[Tuple[int, Vector]]:
        """Basis of H^n built column by column from the top of the filtration, with each element's column."""

        cocycles = self.complex.cocycles(n)
        previous = self.complex.coboundaries(n)
        basis: List[Tuple[int, Vector]] = []
        for p in range(n // 2, -1, -1):
            level = cocycles.intersection(self.filtration(n, p)) + previous
            for representative in Subquotient.build(level, previous).representatives:
                basis.append((p, representative))
            previous = level
        return basis


@lru_cache(maxsize=64)
def _sequence_for(complex_: CochainComplex) -> SpectralSequence:
    return SpectralSequence(complex_)


def spectral_sequence(model: SullivanModel, settings: Optional[Settings] = None) -> SpectralSequence:
    return _sequence_for(model_complex(model, settings))


# ----- model level operations -------------


def z_space(model: SullivanModel, r: int, p: int, q: int) -> SubspaceBasis:
    return spectral_sequence(model).z_space(r, p, q)


def b_space(model: SullivanModel, r: int, p: int, q: int) -> SubspaceBasis:
    return spectral_sequence(model).b_space(r, p, q)


def page_entry(model: SullivanModel, r: int, p: int, q: int) -> PageEntry:
    return spectral_sequence(model).page_entry(r, p, q)


def page_differential(model: SullivanModel, r: int, p: int, q: int) -> SparseMap:
    return spectral_sequence(model).page_differential(r, p, q)


def e_infinity(model: SullivanModel, p: int, q: int) -> PageEntry:
    return spectral_sequence(model).e_infinity(p, q)


def subquotient_iso_checks(model: SullivanModel, r: int, p: int, q: int) -> IsoCheck:
    return spectral_sequence(model).subquotient_iso_checks(r, p, q)


def e0_of_class(model: SullivanModel, x: Polynomial) -> int:
    return spectral_sequence(model).e0_of_class(x)


def page_table(model: SullivanModel, r: Optional[int], max_total: int, settings: Optional[Settings] = None) -> PageTable:
    """Nonzero entries of E_r (E_∞ when r is None) up to total degree max_total."""

    sequence = spectral_sequence(model, settings)
    cells = []
    for p, q in sequence.bidegrees(max_total):
        entry = sequence.e_infinity(p, q) if r is None else sequence.page_entry(r, p, q)
        if entry.dimension:
            cells.append(
                PageCell(
                    p=p,
                    q=q,
                    dimension=entry.dimension,
                    representatives=[sequence.complex.format(v, p + q) for v in entry.representatives],
                )
            )
    return PageTable(r=r if r is not None else r_stab(max_total), max_total=max_total, cells=cells)


def page_dump(model: SullivanModel, max_total: int) -> Dict[str, List[Dict[str, int]]]:
    """Dimensions of every page from E_1 to E_∞ (used when a proven statement fails)."""

    sequence = spectral_sequence(model)
    dump: Dict[str, List[Dict[str, int]]] = {}
    for r in range(1, r_stab(max_total) + 1):
        dump[f"E{r}"] = [
            {"p": p, "q": q, "dim": sequence.page_entry(r, p, q).dimension}
            for p, q in sequence.bidegrees(max_total)
            if sequence.page_entry(r, p, q).dimension
        ]
    return dump


def toomer(model: SullivanModel, bound: int, elliptic_n: Optional[int] = None) -> Toomer:
    """Largest surviving E_∞ column; certified when an elliptic formal dimension is supplied."""

    sequence = spectral_sequence(model)
    limit = elliptic_n if elliptic_n is not None else bound
    support = sequence.column_support(limit)
    value = max(support) if support else 0
    if elliptic_n is None:
        logger.debug("%s: toomer value %d is a lower bound (degrees <= %d)", model.name, value, bound)
    return Toomer(value=value, certified=elliptic_n is not None, bound=limit)


def toomer_by_quotients(model: SullivanModel, bound: int) -> Optional[int]:
    """Smallest n with ΛV -> ΛV/Λ^{≥n+1}V injective in cohomology through degree ``bound``."""

    complex_ = model_complex(model)
    sequence = spectral_sequence(model)
    answer = 0
    for degree in range(bound + 1):
        cocycles = complex_.cocycles(degree)
        boundaries = complex_.coboundaries(degree)
        n = answer
        while True:
            deep = cocycles.intersection(sequence.filtration(degree, n + 1))
            if deep.is_subspace_of(boundaries):
                break
            n += 1
            if n > degree // 2 + 1:
                return None
        answer = max(answer, n)
    return answer


def e0_spectrum(model: SullivanModel, bound: int) -> Set[int]:
    return spectral_sequence(model).column_support(bound)


def gap_report(spectrum: Set[int]) -> List[int]:
    if not spectrum:
        return []
    return [p for p in range(max(spectrum) + 1) if p not in spectrum]


def e0_report(model: SullivanModel, bound: int, complete: bool) -> E0Report:
    """E_∞ support next to direct e0 values on filtration-adapted bases, for degrees <= bound."""

    sequence = spectral_sequence(model)
    spectrum = sequence.column_support(bound)
    values: Set[int] = set()
    agree = True
    for n in range(bound + 1):
        for column, vector in sequence.filtration_adapted_basis(n):
            by_quotients = sequence.e0_by_quotients(vector, n)
            by_representatives = sequence.e0_by_representatives(vector, n)
            agree = agree and by_quotients == by_representatives == column
            values.add(by_quotients)
    agree = agree and values == spectrum
    if not agree:
        logger.warning("%s: e0 routes disagree (spectrum %s, class values %s)", model.name, sorted(spectrum), sorted(values))
    return E0Report(
        spectrum=sorted(spectrum),
        gaps=gap_report(spectrum),
        class_values=sorted(values),
        routes_agree=agree,
        complete=complete,
    )


def first_page_sequence(model: SullivanModel) -> SpectralSequence:
    """The cochain complex (ΛV, d_k) seen through its own spectral sequence."""

    homogeneous = homogeneous_model(model)
    return _sequence_for(model_complex(homogeneous))


def first_page_nogap(model: SullivanModel, bound: int) -> List[int]:
    """Lengths 1..e with H_p(ΛV, d_k) = 0 in every degree <= bound."""

    facts = invariants(model)
    if facts.e_formula is None:
        return []
    complex_ = first_page_sequence(model).complex
    present = set()
    for n in range(bound + 1):
        for p in range(n // 2 + 1):
            if complex_.bigraded(n, p).dimension:
                present.add(p)
    return [p for p in range(1, facts.e_formula + 1) if p not in present]


def fundamental_class_survival(model: SullivanModel) -> bool:
    """Whether E_∞^{e, N-e} is nonzero."""

    facts = invariants(model)
    if facts.e_formula is None or facts.n_formula < 0:
        return False
    return spectral_sequence(model).e_infinity(facts.e_formula, facts.n_formula - facts.e_formula).dimension > 0


def filtration_adapted_basis(model: SullivanModel, n: int) -> List[Tuple[int, str]]:
    sequence = spectral_sequence(model)
    return [(p, sequence.complex.format(v, n)) for p, v in sequence.filtration_adapted_basis(n)]


def first_page_index(model: SullivanModel) -> int:
    """k, or 1 when d = 0 (every page is ΛV)."""

    k = first_length(model)
    return k if k is not None else 1


def early_page_check(model: SullivanModel, max_total: int, settings: Optional[Settings] = None) -> int:
    """Assert E_r^{p,q} = Λ^p V in degree p + q for every page before E_k, with δ_r = 0 before δ_{k-1}.

    Returns the last page checked (k - 1, or r_stab(max_total) when d = 0).
    """

    k = first_length(model)
    sequence = spectral_sequence(model, settings)
    last = k - 1 if k is not None else r_stab(max_total)
    silent = last if k is None else k - 2
    for r in range(1, last + 1):
        for p, q in sequence.bidegrees(max_total):
            expected = len(sequence.complex.length_indices(p + q, [p]))
            found = sequence.page_entry(r, p, q).dimension
            if found != expected:
                raise EngineInconsistency(
                    f"{model.name}: dim E_{r}^{{{p},{q}}} = {found}, but Λ^{p}V has dimension {expected} in degree {p + q}"
                )
            if r <= silent and sequence.page_differential(r, p, q).rank():
                raise EngineInconsistency(f"{model.name}: δ_{r} is nonzero at ({p},{q}) below the first nontrivial page")
    return last


def fundamental_class_factorization(model: SullivanModel, settings: Optional[Settings] = None) -> List[ColumnFactorization]:
    """For each column p in 0..e, a pair [a]·[b] = [ω] with e0(a) = p and e0(b) = e - p.

    a is the first length-p class by degree; b is the length-(e - p) part of its Poincare dual,
    which is again a dual because d is length-homogeneous.
    """

    if not is_length_homogeneous(model):
        raise NotHomogeneous(f"{model.name}: the differential is not word-length homogeneous")
    verdict = ellipticity_verdict(model, settings=settings)
    if verdict.status != "Elliptic" or verdict.n is None:
        raise DualityViolation(f"{model.name} is not certified elliptic ({verdict.status})")
    e = invariants(model).e_formula
    top = verdict.n
    sequence = spectral_sequence(model, settings)
    complex_ = sequence.complex
    algebra = complex_.algebra
    omega = complex_.representatives(top)[0]
    pairs: List[ColumnFactorization] = []
    for p in range(e + 1):
        degree = next((n for n in range(top + 1) if complex_.bigraded(n, p).dimension), None)
        if degree is None:
            raise EngineInconsistency(f"{model.name}: E_∞ column {p} is empty below degree {top}")
        left = complex_.polynomial(complex_.bigraded(degree, p).representatives[0], degree)
        right = pairing_dual(model, left, verdict, settings).length_component(e - p)
        product = algebra.multiply_polynomials(left, right)
        if not right or not complex_.is_exact(product - omega, top):
            raise EngineInconsistency(
                f"{model.name}: [ω] does not factor through column {p} (left {algebra.format(left)}, "
                f"right {algebra.format(right)})"
            )
        columns = (sequence.e0_of_class(left), sequence.e0_of_class(right), sequence.e0_of_class(product))
        if columns != (p, e - p, e):
            raise EngineInconsistency(f"{model.name}: factorization through column {p} lands in columns {columns}")
        pairs.append(
            ColumnFactorization(
                p=p,
                left=algebra.format(left),
                left_degree=degree,
                right=algebra.format(right),
                right_degree=top - degree,
            )
        )
    return pairs
