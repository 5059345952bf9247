"""Report models: invariants, tables, verdicts and the assembled report."""
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict

EllipticStatus = Literal["Elliptic", "NotElliptic", "Undetermined"]
Conclusion = Literal["Holds", "Fails", "HypothesisNotMet", "Undetermined"]


class ModelInvariants(BaseModel):
    """Closed-form invariants read off the generators and the differential."""

    k: Optional[int] = None
    dim_v: int
    dim_v_odd: int
    dim_v_even: int
    n_formula: int
    e_formula: Optional[int] = None
    chi_pi: int
    length_homogeneous: bool
    notes: List[str] = []


class ClassWitness(BaseModel):
    """A cohomology class used as evidence: its degree and a representing cocycle."""

    degree: int
    representative: str
    note: Optional[str] = None


class CohomologyDegree(BaseModel):
    degree: int
    dimension: int
    representatives: List[str] = []


class BigradedEntry(BaseModel):
    degree: int
    length: int
    dimension: int


class CohomologyTable(BaseModel):
    """Cohomology of a model (or of a derivation) in degrees 0..bound."""

    bound: int
    degrees: List[CohomologyDegree]
    bigraded: Optional[List[BigradedEntry]] = None

    @property
    def total_dimension(self) -> int:
        return sum(entry.dimension for entry in self.degrees)

    def dimensions(self) -> List[int]:
        return [entry.dimension for entry in self.degrees]


class EllipticityVerdict(BaseModel):
    """Window-certified ellipticity outcome."""

    status: EllipticStatus
    n: Optional[int] = None
    n_formula: int
    window: int
    witness: Optional[ClassWitness] = None
    reason: str


class FundamentalClass(BaseModel):
    degree: int
    representative: str
    word_lengths: List[int]


class PageCell(BaseModel):
    p: int
    q: int
    dimension: int
    representatives: List[str] = []


class PageTable(BaseModel):
    """Nonzero entries of E_r with total degree <= max_total."""

    r: int
    max_total: int
    cells: List[PageCell]


class E0Report(BaseModel):
    spectrum: List[int]
    gaps: List[int]
    class_values: List[int]
    routes_agree: bool
    complete: bool


class ColumnFactorization(BaseModel):
    """[ω] = [left]·[right] with left in E_∞ column p and right in column e - p."""

    p: int
    left: str
    left_degree: int
    right: str
    right_degree: int


class Hypothesis(BaseModel):
    name: str
    satisfied: Optional[bool] = None
    evidence: str


class TheoremVerdict(BaseModel):
    """Outcome of one executable theorem or conjecture statement."""

    statement: str
    hypotheses: List[Hypothesis]
    conclusion: Conclusion
    witness: Optional[str] = None
    window: Optional[int] = None
    details: Dict[str, str] = {}

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "statement": "hilali",
                "hypotheses": [{"name": "elliptic", "satisfied": True, "evidence": "Elliptic, N=4, window 8"}],
                "conclusion": "Holds",
                "witness": None,
                "window": 8,
                "details": {"dim_h": "3", "dim_v": "2"},
            }
        }
    )


class ReportSummary(BaseModel):
    """Headline numbers: formal dimension, Toomer formula value and total cohomology dimension."""

    N: int
    e: Optional[int] = None
    dimH: int
    toomer: Optional[int] = None


class EngineMetadata(BaseModel):
    version: str
    degree_bound: int
    page_bound: int
    window: int
    stabilization: Dict[str, int] = {}


class Report(BaseModel):
    """Everything the engine knows about one model."""

    model: str
    source: str
    summary: ReportSummary
    invariants: ModelInvariants
    validation: bool
    cohomology: CohomologyTable
    ellipticity: EllipticityVerdict
    toomer: Optional[int] = None
    toomer_certified: bool
    fundamental_class: Optional[FundamentalClass] = None
    first_page: Optional[CohomologyTable] = None
    pages: List[PageTable] = []
    einfty: PageTable
    e0: E0Report
    verdicts: List[TheoremVerdict]
    tags: List[str] = []
    metadata: EngineMetadata
