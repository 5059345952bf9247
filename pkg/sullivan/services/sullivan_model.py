"""Sullivan minimal models: validation, homogeneous parts, closed-form invariants and the acyclic closure."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sullivan.core.errors import EngineInconsistency, ModelError
from sullivan.core.linalg import SparseMap, SubspaceBasis
from sullivan.models.diagnostic import ValidationIssue, ValidationReport
from sullivan.models.report import ModelInvariants
from sullivan.services.algebra import Derivation, Generator, GradedAlgebra, Monomial, Polynomial

logger = logging.getLogger(__name__)

VALIDATION_CHECKS = ["degree", "order-violation", "degree-mismatch", "minimality", "d-squared"]


@dataclass(frozen=True)
class SullivanModel:
    """(ΛV, d): ordered generators and the values of d on them."""

    name: str
    generators: Tuple[Generator, ...]
    differential: Derivation

    @classmethod
    def build(
        cls, name: str, generators: Sequence[Tuple[str, int]], differential: Optional[Mapping[str, Polynomial]] = None
    ) -> "SullivanModel":
        gens = tuple(Generator(i, gname, degree) for i, (gname, degree) in enumerate(generators))
        ids = {g.name: g.id for g in gens}
        values = {ids[gname]: value for gname, value in (differential or {}).items()}
        return cls(name, gens, Derivation.from_mapping(1, values))

    @property
    def algebra(self) -> GradedAlgebra:
        return GradedAlgebra(self.generators)

    def d(self, p: Polynomial) -> Polynomial:
        return self.algebra.apply_derivation(self.differential, p)

    def dg(self, gid: int) -> Polynomial:
        return self.differential.value(gid)

    def generator(self, name: str) -> Generator:
        found = self.algebra.by_name(name)
        if found is None:
            raise KeyError(name)
        return found

    def var(self, name: str) -> Polynomial:
        return self.algebra.generator_polynomial(self.generator(name).id)

    def odd_generators(self) -> List[Generator]:
        return [g for g in self.generators if g.is_odd]

    def even_generators(self) -> List[Generator]:
        return [g for g in self.generators if not g.is_odd]

    def has_zero_differential(self) -> bool:
        return self.differential.is_zero()

    def with_differential(self, differential: Derivation, name: Optional[str] = None) -> "SullivanModel":
        return SullivanModel(name or self.name, self.generators, differential)


def validate(model: SullivanModel) -> ValidationReport:
    """Check every model invariant exactly; never raises on bad input."""

    algebra = model.algebra
    issues: List[ValidationIssue] = []
    previous_degree = 0
    for generator in model.generators:
        if generator.degree < 2:
            issues.append(
                ValidationIssue(
                    category="degree",
                    generator=generator.name,
                    message=f"degree {generator.degree} < 2 (models are simply connected)",
                )
            )
        if generator.degree < previous_degree:
            issues.append(
                ValidationIssue(
                    category="order-violation",
                    generator=generator.name,
                    message=f"degree {generator.degree} follows a generator of degree {previous_degree}",
                )
            )
        previous_degree = max(previous_degree, generator.degree)

    for generator in model.generators:
        value = model.dg(generator.id)
        if not value:
            continue
        rendered = algebra.format(value)
        degrees = algebra.degrees(value)
        if degrees != [generator.degree + 1]:
            issues.append(
                ValidationIssue(
                    category="degree-mismatch",
                    generator=generator.name,
                    message=f"d({generator.name}) has degrees {degrees}, expected {generator.degree + 1}",
                    witness=rendered,
                )
            )
        short = [m for m in value.monomials() if m.word_length < 2]
        if short:
            issues.append(
                ValidationIssue(
                    category="minimality",
                    generator=generator.name,
                    message=f"d({generator.name}) has a term of word length {min(m.word_length for m in short)}",
                    witness=algebra.format(Polynomial({m: value.terms[m] for m in short})),
                )
            )
        late = [gid for gid in value.generator_ids() if gid >= generator.id]
        if late:
            issues.append(
                ValidationIssue(
                    category="order-violation",
                    generator=generator.name,
                    message=f"d({generator.name}) involves {model.generators[late[0]].name}, which is not earlier",
                    witness=rendered,
                )
            )
        # d is a derivation, so d∘d = 0 iff it vanishes on generators.
        square = model.d(value)
        if square:
            issues.append(
                ValidationIssue(
                    category="d-squared",
                    generator=generator.name,
                    message=f"d(d({generator.name})) is nonzero",
                    witness=algebra.format(square),
                )
            )
    report = ValidationReport(model=model.name, valid=not issues, checks=VALIDATION_CHECKS, issues=issues)
    if issues:
        logger.debug("model %s failed validation: %s", model.name, [i.category for i in issues])
    return report


def require_valid(model: SullivanModel) -> SullivanModel:
    report = validate(model)
    if not report.valid:
        raise ModelError(f"model {model.name} is not a valid Sullivan minimal model", report)
    return model


def word_lengths(model: SullivanModel) -> List[int]:
    return sorted({length for _, value in model.differential.values for length in value.word_lengths()})


def first_length(model: SullivanModel) -> Optional[int]:
    """k, the smallest word length occurring in d; None when d = 0."""

    lengths = word_lengths(model)
    return lengths[0] if lengths else None


def homogeneous_part(model: SullivanModel, i: int) -> Derivation:
    """d_i: the derivation sending each generator to the length-i component of its differential."""

    return Derivation.from_mapping(1, {g: value.length_component(i) for g, value in model.differential.values})


def is_length_homogeneous(model: SullivanModel) -> bool:
    return len(word_lengths(model)) <= 1


def homogeneous_model(model: SullivanModel) -> SullivanModel:
    """(ΛV, d_k); for d = 0 the model itself."""

    k = first_length(model)
    if k is None:
        return model
    return model.with_differential(homogeneous_part(model, k), name=f"{model.name}/d{k}")


def invariants(model: SullivanModel) -> ModelInvariants:
    odd = len(model.odd_generators())
    even = len(model.even_generators())
    k = first_length(model)
    n_formula = even - sum((-1) ** g.degree * g.degree for g in model.generators)
    notes: List[str] = []
    if k is not None:
        e_formula: Optional[int] = odd + (k - 2) * even
    elif even == 0:
        e_formula = odd
        notes.append("d = 0: k is undefined; the free odd model is its own homogeneous model")
    else:
        e_formula = None
        notes.append("d = 0 with even generators: k and e are undefined")
    return ModelInvariants(
        k=k,
        dim_v=odd + even,
        dim_v_odd=odd,
        dim_v_even=even,
        n_formula=n_formula,
        e_formula=e_formula,
        chi_pi=even - odd,
        length_homogeneous=is_length_homogeneous(model),
        notes=notes,
    )


def odd_hurewicz_kernel(model: SullivanModel) -> bool:
    """Whether d_2 restricted to V^odd has a nonzero kernel."""

    odd = model.odd_generators()
    if not odd:
        return False
    quadratic = homogeneous_part(model, 2)
    values = [quadratic.value(g.id) for g in odd]
    monomials = sorted({m for value in values for m in value.monomials()})
    index = {m: i for i, m in enumerate(monomials)}
    algebra = model.algebra
    vectors = [algebra.to_vector(value, 0, index) for value in values]
    rank = SubspaceBasis.span(len(monomials), vectors).dimension
    return rank < len(odd)


def format_model(model: SullivanModel) -> str:
    """Pretty-print in the model language."""

    algebra = model.algebra
    lines = [f"# {model.name}"]
    lines.extend(f"generator {g.name} {g.degree}" for g in model.generators)
    for generator in model.generators:
        value = model.dg(generator.id)
        if value:
            lines.append(f"d {generator.name} = {algebra.format(value)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AcyclicClosure:
    """(Λ(V ⊕ sV), D) with D|_V = d and D(sv) = v - σ_v, D σ_v = dv."""

    base: SullivanModel
    algebra: GradedAlgebra
    base_ids: Tuple[int, ...]
    suspension_ids: Tuple[int, ...]
    D: Derivation
    S: Derivation
    twisting: Tuple[Polynomial, ...]
    normalized: Tuple[bool, ...]

    def suspension(self, name: str) -> Polynomial:
        gid = self.suspension_ids[self.base.generator(name).id]
        return self.algebra.generator_polynomial(gid)

    def variable(self, name: str) -> Polynomial:
        return self.algebra.generator_polynomial(self.base_ids[self.base.generator(name).id])

    def square_vanishes(self) -> bool:
        return all(not self.algebra.apply_derivation(self.D, self.D.value(g.id)) for g in self.algebra.generators)


def _suspension_name(name: str, taken: set) -> str:
    candidate = f"s{name}"
    while candidate in taken:
        candidate = f"s{candidate}"
    return candidate


def acyclic_closure(model: SullivanModel) -> AcyclicClosure:
    """Build the acyclic closure generator by generator."""

    require_valid(model)
    taken = {g.name for g in model.generators}
    entries = []
    for g in model.generators:
        entries.append((g.degree, 1, g.id, g.name, False))
        suspended = _suspension_name(g.name, taken)
        taken.add(suspended)
        entries.append((g.degree - 1, 0, g.id, suspended, True))
    entries.sort()
    closure_generators = tuple(Generator(i, name, degree) for i, (degree, _, _, name, _) in enumerate(entries))
    algebra = GradedAlgebra(closure_generators)
    base_ids = [0] * len(model.generators)
    suspension_ids = [0] * len(model.generators)
    for new_id, (_, _, old_id, _, is_suspension) in enumerate(entries):
        (suspension_ids if is_suspension else base_ids)[old_id] = new_id

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(
            {Monomial(tuple(sorted((base_ids[g], e) for g, e in m.exponents))): c for m, c in p}
        )

    s_derivation = Derivation.from_mapping(
        -1, {base_ids[g.id]: algebra.generator_polynomial(suspension_ids[g.id]) for g in model.generators}
    )
    values: Dict[int, Polynomial] = {}
    twisting: List[Polynomial] = []
    normalized: List[bool] = []
    allowed: set = set()
    for g in model.generators:
        dv = lift(model.dg(g.id))
        values[base_ids[g.id]] = dv
        partial = Derivation.from_mapping(1, values)
        candidate = Polynomial.zero()
        for length in dv.word_lengths():
            candidate = candidate + algebra.apply_derivation(s_derivation, dv.length_component(length)).scale(
                Fraction(1, length)
            )
        if algebra.apply_derivation(partial, candidate) == dv:
            sigma, exact = candidate, True
        else:
            sigma, exact = _solve_primitive(algebra, partial, dv, allowed, g.degree), False
        values[suspension_ids[g.id]] = algebra.generator_polynomial(base_ids[g.id]) - sigma
        allowed.update({base_ids[g.id], suspension_ids[g.id]})
        twisting.append(sigma)
        normalized.append(exact)
    closure = AcyclicClosure(
        base=model,
        algebra=algebra,
        base_ids=tuple(base_ids),
        suspension_ids=tuple(suspension_ids),
        D=Derivation.from_mapping(1, values),
        S=s_derivation,
        twisting=tuple(twisting),
        normalized=tuple(normalized),
    )
    if not closure.square_vanishes():
        raise EngineInconsistency(f"D∘D is nonzero on the acyclic closure of {model.name}")
    return closure


def _solve_primitive(
    algebra: GradedAlgebra, partial: Derivation, target: Polynomial, allowed: set, degree: int
) -> Polynomial:
    """Canonical σ in the closure built so far with partial(σ) = target."""

    if not target:
        return Polynomial.zero()
    source = [m for m in algebra.degree_basis(degree) if set(m.generator_ids()) <= allowed]
    index = algebra.basis_index(degree + 1)
    columns = tuple(algebra.to_vector(algebra.apply_derivation(partial, Polynomial.monomial(m)), degree + 1, index) for m in source)
    solution = SparseMap(len(source), len(index), columns).solve(algebra.to_vector(target, degree + 1, index))
    if solution is None:
        raise EngineInconsistency(f"no primitive for {algebra.format(target)} in the partial closure")
    return algebra.from_vector(solution, degree, source)
