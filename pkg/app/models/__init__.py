from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from app.core.errors import DomainError, UsageError

# QQ elements (gmpy2 mpq or PythonMPQ, depending on the ground types)
Rational = Any
RationalMatrix = Tuple[Tuple[Rational, ...], ...]


# ---- exact symbolic values ---------------------------------------------


@dataclass
class RatFn:
    num: PolyElement
    den: PolyElement

    def __post_init__(self) -> None:
        if not self.den:
            raise DomainError("rational function with zero denominator")
        if self.num.ring != self.den.ring:
            raise UsageError("numerator and denominator live in different rings")
        lc = self.den.LC
        if lc < 0:
            self.num, self.den = -self.num, -self.den


@dataclass(frozen=True)
class LinForm:
    coeffs: Tuple[Rational, ...]
    constant: Rational = QQ.zero

    def evaluate(self, alphas) -> Rational:
        if len(alphas) != len(self.coeffs):
            raise UsageError(
                f"linear form over {len(self.coeffs)} parameters got {len(alphas)} values"
            )
        acc = self.constant
        for c, a in zip(self.coeffs, alphas):
            acc += c * a
        return acc

    @property
    def is_zero(self) -> bool:
        return not self.constant and not any(self.coeffs)


@dataclass(frozen=True)
class ParamSymMatrix:
    """Symmetric n x n matrix whose entries are linear forms in m parameters."""

    n: int
    param_count: int
    entries: Tuple[Tuple[LinForm, ...], ...]

    def generator(self, q: int) -> RationalMatrix:
        return tuple(
            tuple(self.entries[i][j].coeffs[q] for j in range(self.n))
            for i in range(self.n)
        )

    def generators(self) -> List[RationalMatrix]:
        return [self.generator(q) for q in range(self.param_count)]

    def evaluate(self, alphas) -> RationalMatrix:
        return tuple(
            tuple(self.entries[i][j].evaluate(alphas) for j in range(self.n))
            for i in range(self.n)
        )

    @classmethod
    def from_generators(cls, n: int, gens: List[RationalMatrix]) -> "ParamSymMatrix":
        m = len(gens)
        entries = tuple(
            tuple(
                LinForm(tuple(QQ.convert(g[i][j]) for g in gens), QQ.zero)
                for j in range(n)
            )
            for i in range(n)
        )
        return cls(n, m, entries)


# ---- algebras ------------------------------------------------------------


@dataclass(frozen=True)
class Algebra:
    name: str
    dim: int
    structure: Tuple[Tuple[Tuple[Rational, ...], ...], ...]
    unit: Optional[Tuple[Rational, ...]] = None
    unit_norm_sq: Optional[Rational] = None
    associative: bool = True
    unital: bool = True


@dataclass
class ValidationReport:
    associative: bool
    unital: bool
    unit: Optional[Tuple[Rational, ...]]
    unit_norm_sq: Optional[Rational]
    warnings: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class FieldMode:
    """Which vector field f(s) the Skewer is applied to."""

    kind: str  # "inverse" | "power"
    exponent: int = -1

    @classmethod
    def parse(cls, text: str) -> "FieldMode":
        text = text.strip().lower()
        if text in ("inverse", "inv", "power:-1"):
            return cls("inverse", -1)
        if text.startswith("power:"):
            try:
                j = int(text.split(":", 1)[1])
            except ValueError as exc:
                raise UsageError(f"bad power mode {text!r}") from exc
            if j == 0:
                raise UsageError("power:0 is a constant field")
            if j == -1:
                return cls("inverse", -1)
            return cls("power", j)
        raise UsageError(f"unknown field mode {text!r} (use inverse or power:<j>)")

    @property
    def label(self) -> str:
        return "inverse" if self.kind == "inverse" else f"power:{self.exponent}"


@dataclass
class RationalVectorField:
    numerators: Tuple[PolyElement, ...]
    denominator: PolyElement
    mode: FieldMode

    def component(self, k: int) -> RatFn:
        num, den = self.numerators[k], self.denominator
        if num:
            g = num.gcd(den)
            num, den = num.exquo(g), den.exquo(g)
        else:
            den = den.ring.one
        return RatFn(num, den)


# ---- skewer ----------------------------------------------------------------


@dataclass
class ConstraintSystem:
    n: int
    unknowns: Tuple[Tuple[int, int], ...]
    rows: List[Tuple[Rational, ...]]
    pair_count: int
    homogeneous: bool = True

    @property
    def row_count(self) -> int:
        return len(self.rows)


@dataclass
class AffineSubspace:
    particular: Optional[RationalMatrix]
    directions: Optional[ParamSymMatrix]
    consistent: bool = True


@dataclass
class MembershipResult:
    member: bool
    coordinates: Optional[Tuple[Rational, ...]] = None


# ---- invariants ------------------------------------------------------------


@dataclass
class TermClasses:
    has_rational: bool = False
    has_log: bool = False
    has_arctan: bool = False
    undecided: bool = False

    def __post_init__(self):
        # sympy comparisons hand back sympy booleans
        self.has_rational = bool(self.has_rational)
        self.has_log = bool(self.has_log)
        self.has_arctan = bool(self.has_arctan)
        self.undecided = bool(self.undecided)

    def merge(self, other: "TermClasses") -> "TermClasses":
        return TermClasses(
            self.has_rational or other.has_rational,
            self.has_log or other.has_log,
            self.has_arctan or other.has_arctan,
            self.undecided or other.undecided,
        )


@dataclass
class ClassRows:
    """
    Linear functionals on the parameter space, one list per term class.

    A parameter vector alpha produces no term of a class exactly when every row
    of that class vanishes on alpha. ``numeric`` marks rows holding floats
    (irreducible factors of degree >= 3 with nonreal roots).
    """

    rational: List[List[Any]] = field(default_factory=list)
    log: List[List[Any]] = field(default_factory=list)
    arctan: List[List[Any]] = field(default_factory=list)
    numeric: bool = False

    def extend(self, other: "ClassRows") -> None:
        self.rational.extend(other.rational)
        self.log.extend(other.log)
        self.arctan.extend(other.arctan)
        self.numeric = self.numeric or other.numeric


@dataclass
class VarietySummary:
    dim: Union[int, str]
    component_count: Union[int, str]
    convention: str = "sensitive-subspace"
    shape: str = ""
    raw: Optional[str] = None

    @property
    def supported(self) -> bool:
        return self.component_count != "unsupported"


@dataclass
class InvariantReport:
    n: int
    m: int
    max_rank: int
    max_rank_method: str
    min_nonzero_rank: int
    min_rank_certainty: str
    det_poly: PolyElement
    sensitive_param_count: int
    variety: VarietySummary
    tau_raw: Optional[Tuple[int, int, int]] = None
    tau_undecided: bool = False
    warnings: List[str] = field(default_factory=list)

    @property
    def tau_reduced(self) -> Optional[Tuple[int, int, int]]:
        if self.tau_raw is None:
            return None
        r, lg, a = self.tau_raw
        return (r, lg - 1, a)

    @property
    def sextuple(self) -> Tuple[Any, ...]:
        return (
            self.m,
            self.max_rank,
            self.min_nonzero_rank,
            self.sensitive_param_count,
            self.variety.dim,
            self.variety.component_count,
        )


@dataclass
class Verdict:
    label: str  # "not-isomorphic" | "indistinguishable" | "no-epimorphism" | ...
    reasons: List[str] = field(default_factory=list)


# ---- numerics ----------------------------------------------------------------


@dataclass
class NormEvaluation:
    value: float
    log_value: float
    path: Tuple[Tuple[float, ...], ...]
    quadrature_error_estimate: float
    metric_coordinates: Optional[Tuple[Rational, ...]] = None
    flagged: bool = False


@dataclass(frozen=True)
class NormPair:
    """Member of the inversion characterization group: (L, ell_L)."""

    algebra: Algebra
    metric: RationalMatrix


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    informational: bool = False


# ---- harness -----------------------------------------------------------------


@dataclass
class TrialTally:
    passed: int = 0
    failed: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class SurveyResult:
    labels: List[str]
    dims: List[int]
    equal: List[List[bool]]

    @property
    def all_equal(self) -> bool:
        return all(all(row) for row in self.equal)


@dataclass
class CaseResult:
    name: str
    group: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class RunReport:
    verb: str
    algebra: Optional[str]
    inputs_digest: str
    results: Dict[str, Any]
    warnings: List[str] = field(default_factory=list)
    timing: Optional[float] = None
    tool_version: str = ""
