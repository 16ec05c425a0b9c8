from typing import Any, Dict, FrozenSet, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from paths import Path

# Subcommands of the command line front end
Subcommand = Literal[
    "kl", "invkl", "partitions", "render", "neat", "char-check",
    "rouquier", "homdim", "pieri-check", "demazure-check", "selftest",
]
OutputFormat = Literal["csv", "json", "ascii"]
EdgeKind = Literal["guaranteed", "candidate"]

# Constants to avoid string duplication
LABEL_SETS_DESCRIPTION = "Sequence of sets of simple reflection labels"
PATH_DESCRIPTION = "Path as a step word over {U,D}"

# Commands that need (n, i) and those that also need a path
_NEEDS_SPACE = {"kl", "invkl", "partitions", "render", "neat", "char-check", "rouquier", "homdim", "pieri-check", "demazure-check"}
_NEEDS_MU = {"rouquier", "render", "neat", "homdim", "partitions"}
_NEEDS_LAM = {"homdim", "partitions"}


class VerificationReport(BaseModel):
    """Outcome of a verification suite"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "szj",
                "parameters": {"n": 4, "i": 2},
                "checked": 36,
                "mismatches": []
            }
        }
    )

    name: str = Field(..., description="Suite name")
    parameters: Dict[str, Any] = Field(default_factory=dict)
    checked: int = Field(default=0, description="Number of individual checks performed")
    mismatches: List[str] = Field(default_factory=list, description="Human readable failures")
    notes: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.mismatches

    def record(self, ok: bool, message: str) -> bool:
        """Count one check and keep the message when it fails"""
        self.checked += 1
        if not ok:
            self.mismatches.append(message)
        return ok

    def absorb(self, other: "VerificationReport") -> None:
        self.checked += other.checked
        self.mismatches.extend(f"{other.name}: {m}" for m in other.mismatches)
        self.notes.extend(other.notes)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        return f"{status} {self.name} {params} checked={self.checked} failures={len(self.mismatches)}"


class TranslationPair(BaseModel):
    """Nested label-set sequences I_0..I_k and J_1..J_k"""
    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
        json_schema_extra={
            "example": {
                "I": [[], [3], [3], [1, 3]],
                "J": [[1, 3], [2, 3], [1, 3]],
                "shift": 3
            }
        }
    )

    n: int = Field(..., ge=2, description="Rank of the symmetric group")
    ivec: Tuple[Tuple[int, ...], ...] = Field(..., alias="I", description=LABEL_SETS_DESCRIPTION)
    jvec: Tuple[Tuple[int, ...], ...] = Field(..., alias="J", description=LABEL_SETS_DESCRIPTION)
    shift: int = Field(..., ge=0, description="Sum of l(w_J) - l(w_I)")

    @model_validator(mode="after")
    def _check_nesting(self) -> "TranslationPair":
        if len(self.ivec) != len(self.jvec) + 1:
            raise ValueError("a translation pair has one more I set than J sets")
        for h, jset in enumerate(self.jvec, start=1):
            if not set(self.ivec[h - 1]) <= set(jset) >= set(self.ivec[h]):
                raise ValueError(f"I_{h - 1} and I_{h} must lie in J_{h}")
        return self

    @property
    def i_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(s) for s in self.ivec]

    @property
    def j_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(s) for s in self.jvec]

    def tensor_notation(self) -> str:
        """Render as R ⊗_{R^{J1}} R^{I1} ⊗ ... ⊗_{R^{Jk}} R^{Ik}(shift)."""
        def ring(labels):
            return "R" if not labels else "R^{" + ",".join(map(str, labels)) + "}"
        parts = [ring(self.ivec[0])]
        for jset, iset in zip(self.jvec, self.ivec[1:]):
            parts.append(f"⊗_{{{ring(jset)}}} {ring(iset)}")
        return " ".join(parts) + f"({self.shift})"


class RouquierSummand(BaseModel):
    """One shifted indecomposable summand of a complex term"""
    model_config = ConfigDict(frozen=True)

    path: Path
    shift: int
    multiplicity: int = 1


class RouquierTerms(BaseModel):
    """Character level terms of the singular Rouquier complex of mu"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "mu": {"n": 4, "i": 2, "steps": "UUDD"},
                "terms": {"0": [{"path": {"n": 4, "i": 2, "steps": "UUDD"}, "shift": 0, "multiplicity": 1}]}
            }
        }
    )

    mu: Path
    terms: Dict[int, List[RouquierSummand]] = Field(default_factory=dict, description="Homological degree to summands")

    def paths_in_degree(self, degree: int) -> List[str]:
        return [s.path.steps for s in self.terms.get(degree, [])]

    def nodes(self) -> List[Tuple[int, Path]]:
        return [(deg, s.path) for deg in sorted(self.terms, reverse=True) for s in self.terms[deg]]


class DiffEdge(BaseModel):
    """Support of a differential component between two summands"""
    model_config = ConfigDict(frozen=True)

    source_degree: int
    source: Path
    target_degree: int
    target: Path
    kind: EdgeKind


class DiffSupport(BaseModel):
    """Nodes and edges of the differential support graph"""
    mu: Path
    nodes: List[Tuple[int, Path]] = Field(default_factory=list)
    edges: List[DiffEdge] = Field(default_factory=list)

    def edges_from(self, degree: int, steps: str) -> List[DiffEdge]:
        return [e for e in self.edges if e.source_degree == degree and e.source.steps == steps]


class CommandRequest(BaseModel):
    """Validated command line request"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {"subcommand": "kl", "n": 4, "i": 2, "format": "csv"}
        }
    )

    subcommand: Subcommand
    n: Optional[int] = Field(None, ge=2)
    i: Optional[int] = Field(None, ge=1)
    mu: Optional[str] = Field(None, pattern=r"^[UDud]+$", description=PATH_DESCRIPTION)
    lam: Optional[str] = Field(None, pattern=r"^[UDud]+$", description=PATH_DESCRIPTION)
    format: OutputFormat = "ascii"
    seed: int = 0
    jobs: int = Field(default=1, ge=1)
    max_n: int = Field(default=6, ge=2)
    cap: int = Field(default=50, ge=1)
    output: Optional[str] = None
    emit_fixtures: Optional[str] = None

    @model_validator(mode="after")
    def _check_flags(self) -> "CommandRequest":
        if self.subcommand in _NEEDS_SPACE and (self.n is None or self.i is None):
            raise ValueError(f"{self.subcommand} requires --n and --i")
        if self.n is not None and self.i is not None and self.i > self.n - 1:
            raise ValueError("--i must satisfy 1 <= i <= n-1")
        if self.subcommand in _NEEDS_MU and self.mu is None:
            raise ValueError(f"{self.subcommand} requires --mu")
        if self.subcommand in _NEEDS_LAM and self.lam is None:
            raise ValueError(f"{self.subcommand} requires --lam")
        for name in ("mu", "lam"):
            value = getattr(self, name)
            if value is not None and self.n is not None:
                if len(value) != self.n or value.upper().count("D") != self.i:
                    raise ValueError(f"--{name} {value} is not a path for n={self.n}, i={self.i}")
        return self
