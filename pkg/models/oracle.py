"""
Models for the brute-force verification engine
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from config import settings


class ClaimName(str, Enum):
    """Claims the oracle knows how to check exhaustively"""

    TRANSITIVITY = "transitivity"
    ETA_BIJECTION = "eta-bijection"
    THETA_BIJECTION = "theta-bijection"
    RELATIVE_ETA = "relative-eta"
    RELATIVE_THETA = "relative-theta"
    INVARIANT_FORMULAS = "invariant-formulas"
    DUALITY_INVOLUTION = "duality-involution"
    T1_SHARPNESS = "t1-sharpness"
    DECOMPOSE_REPLAY = "decompose-replay"


class SearchWindow(BaseModel):
    """Degree range, value bound and height bound of an exhaustive search"""

    model_config = ConfigDict(frozen=True)

    lo: int = Field(default_factory=lambda: settings.ORACLE_WINDOW_LO)
    hi: int = Field(default_factory=lambda: settings.ORACLE_WINDOW_HI)
    max_abs: int = Field(default_factory=lambda: settings.ORACLE_MAX_ABS, ge=1)
    max_height: int = Field(default_factory=lambda: settings.ORACLE_MAX_HEIGHT, ge=0)

    @model_validator(mode="after")
    def _nonempty(self) -> "SearchWindow":
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")
        return self

    @property
    def degrees(self) -> Tuple[int, int]:
        return (self.lo, self.hi)


class ClaimReport(BaseModel):
    """Outcome of one exhaustive claim check"""

    claim: ClaimName
    window: SearchWindow
    instances: int = 0
    skipped: int = 0
    counterexample_count: int = 0
    counterexamples: List[Dict[str, Any]] = Field(default_factory=list)

    @computed_field
    @property
    def holds(self) -> bool:
        return self.counterexample_count == 0

    def record(self, witness: Dict[str, Any]) -> None:
        self.counterexample_count += 1
        if len(self.counterexamples) < settings.ORACLE_MAX_COUNTEREXAMPLES:
            self.counterexamples.append(witness)


class SubschemeKind(str, Enum):
    LINE = "line"
    COMPLETE_INTERSECTION = "complete_intersection"
    DISJOINT_LINES = "disjoint_lines"
    LINES_ON_QUADRIC = "lines_on_quadric"


class SubschemeConfig(BaseModel):
    """A subscheme of P^3 with a closed-form Hilbert function"""

    model_config = ConfigDict(frozen=True)

    kind: SubschemeKind
    a: Optional[int] = Field(None, ge=1, description="First complete intersection degree")
    b: Optional[int] = Field(None, ge=1, description="Second complete intersection degree")
    d: Optional[int] = Field(None, ge=1, description="Number of lines")

    @model_validator(mode="after")
    def _parameters(self) -> "SubschemeConfig":
        if self.kind == SubschemeKind.COMPLETE_INTERSECTION and (self.a is None or self.b is None):
            raise ValueError("a complete intersection needs degrees a and b")
        if self.kind in (SubschemeKind.DISJOINT_LINES, SubschemeKind.LINES_ON_QUADRIC) and self.d is None:
            raise ValueError(f"{self.kind.value} needs the number of lines d")
        return self
