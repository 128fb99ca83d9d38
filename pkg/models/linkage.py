"""
Document models for linkage classes and their subschemes
"""

from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from services.characters import AdmissibleCharacter, IntFn
from services.domination import validate_theta
from services.errors import LinkageError


class LinkKind(str, Enum):
    """Double link kind"""

    BASIC = "basic"
    ELEMENTARY = "elementary"


class IntegralVariant(str, Enum):
    """Which interval the integrality test uses"""

    STRICT_S0 = "strict-s0"
    COMBINED_S1 = "combined-s1"


class LinkageClassDescriptor(BaseModel):
    """
    Numeric identity of a non-ACM even linkage class

    gamma0 is the character of a minimal element. The dual descriptor is
    user supplied; a self-dual class sets self_dual instead.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    name: Optional[str] = Field(None, description="Label used in output")
    n: int = Field(3, ge=3, description="Ambient projective dimension")
    gamma0: IntFn = Field(..., description="Character of a minimal element")
    t1: int = Field(..., description="Least degree meeting the first hypersurface properly")
    e: int = Field(..., description="Top twist with nonvanishing top cohomology of the structure sheaf")
    non_acm: bool = Field(True, description="Class has a nonzero core bundle")
    self_dual: bool = Field(False, description="Dual class is this class")
    dual: Optional["LinkageClassDescriptor"] = Field(None, description="Dual class")

    @field_validator("non_acm")
    @classmethod
    def _require_non_acm(cls, value: bool) -> bool:
        if not value:
            raise ValueError("ACM classes have no minimal-element calculus here")
        return value

    @model_validator(mode="after")
    def _check_constants(self) -> "LinkageClassDescriptor":
        gamma = AdmissibleCharacter.of(self.gamma0)
        if not gamma.s0 <= gamma.s1 <= self.t1:
            raise ValueError(
                f"need s0 <= s1 <= t1, got s0={gamma.s0}, s1={gamma.s1}, t1={self.t1}"
            )
        if self.self_dual and self.dual is not None:
            raise ValueError("a self-dual class cannot also carry a dual descriptor")
        degree = self.gamma0.weighted_total()
        if self.self_dual and 2 * degree != gamma.s0 * self.t1:
            raise ValueError(
                f"self-dual class needs 2*degree = s0*t1, got 2*{degree} and {gamma.s0}*{self.t1}"
            )
        if self.dual is not None:
            if self.dual.n != self.n:
                raise ValueError(f"dual class lives in P^{self.dual.n}, not P^{self.n}")
            if self.dual.s0 + self.dual.t1 != gamma.s0 + self.t1:
                raise ValueError(
                    f"minimal pairs disagree: s0+t1={gamma.s0 + self.t1} "
                    f"but dual s0+t1={self.dual.s0 + self.dual.t1}"
                )
            if degree + self.dual.gamma0.weighted_total() != gamma.s0 * self.t1:
                raise ValueError(
                    f"minimal pair degrees do not add up to s0*t1={gamma.s0 * self.t1}"
                )
        return self

    @cached_property
    def gamma(self) -> AdmissibleCharacter:
        return AdmissibleCharacter.of(self.gamma0)

    @property
    def s0(self) -> int:
        return self.gamma.s0

    @property
    def s1(self) -> int:
        return self.gamma.s1

    def key(self) -> Tuple[int, IntFn, int, int]:
        return (self.n, self.gamma0, self.t1, self.e)

    def same_class(self, other: "LinkageClassDescriptor") -> bool:
        return self.key() == other.key()

    def has_dual(self) -> bool:
        return self.self_dual or self.dual is not None

    def dual_class(self) -> "LinkageClassDescriptor":
        """Dual descriptor whose own dual points back here"""
        if self.self_dual:
            return self
        if self.dual is None:
            raise LinkageError(
                f"class {self.name or self.gamma0} has no dual descriptor", clause="dual"
            )
        return self.dual.model_copy(update={"dual": self.model_copy(update={"dual": None})})


class SubschemeModel(BaseModel):
    """A deformation class of subschemes: class, height and theta"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    cls: LinkageClassDescriptor = Field(..., alias="class")
    h: int = Field(..., ge=0, description="Height over the minimal element")
    theta: IntFn = Field(default_factory=IntFn)

    @model_validator(mode="after")
    def _check_theta(self) -> "SubschemeModel":
        validate_theta(self.cls.gamma, self.h, self.theta)
        return self

    @property
    def m(self) -> int:
        return self.theta.total()

    def key(self) -> Tuple[Any, int, IntFn]:
        return (self.cls.key(), self.h, self.theta)

    def same_as(self, other: "SubschemeModel") -> bool:
        return self.key() == other.key()

    def label(self) -> str:
        return f"h={self.h} theta={self.theta}"

    def summary(self) -> Dict[str, Any]:
        return {"h": self.h, "theta": self.theta.to_json()}


class DerivedInvariants(BaseModel):
    """Invariants recomputed from (class, h, theta)"""

    s0X: int
    s1X: int
    eX: int
    degree: int
    gammaX: IntFn
    etaX: IntFn


class DoubleLinkStep(BaseModel):
    """A double link of type (s, h)"""

    model_config = ConfigDict(frozen=True)

    s: int
    h: int = Field(..., ge=0)
    kind: LinkKind = LinkKind.ELEMENTARY

    def as_pair(self) -> Tuple[int, int]:
        return (self.s, self.h)


class T1Witness(BaseModel):
    """Elementary double link chain attaining the t1 bound of a model"""

    bound: int
    base_height: int
    base_link: Tuple[int, int] = Field(..., description="Degrees linking the minimal pair to the base")
    steps: List[DoubleLinkStep] = Field(default_factory=list)

    @property
    def chain(self) -> List[DoubleLinkStep]:
        """Full chain from a minimal element, base step first"""
        prefix = []
        if self.base_height > 0:
            prefix.append(
                DoubleLinkStep(s=self.base_link[0], h=self.base_height, kind=LinkKind.ELEMENTARY)
            )
        return prefix + list(self.steps)

    def certificate(self) -> str:
        s, t = self.base_link
        return f"link minimal pair at degrees ({s}, {t})"


class IntegralVerdict(BaseModel):
    passed: bool
    variant: IntegralVariant
    failures: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


LinkageClassDescriptor.model_rebuild()
