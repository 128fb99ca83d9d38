"""
Twist-level shadows of short resolutions
"""

from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from services.characters import EventuallyConstant, IntFn


class ResolutionKind(str, Enum):
    """N-type carries the core in the middle term, E-type in the kernel"""

    N = "N"
    E = "E"

    def flipped(self) -> "ResolutionKind":
        return ResolutionKind.E if self == ResolutionKind.N else ResolutionKind.N


class CoreDelta(BaseModel):
    """
    n-th difference of h0 of the core bundle

    Zero below the window, the stored values inside it, and tail_rank from
    tail_start on.
    """

    model_config = ConfigDict(frozen=True)

    window: IntFn = Field(default_factory=IntFn)
    tail_rank: int = Field(0, ge=0)
    tail_start: int = 0

    @model_validator(mode="after")
    def _window_below_tail(self) -> "CoreDelta":
        top = self.window.max_degree()
        if top is not None and top >= self.tail_start:
            raise ValueError(f"window degree {top} is not below tail_start {self.tail_start}")
        return self

    @classmethod
    def from_function(cls, fn: EventuallyConstant) -> "CoreDelta":
        if fn.tail == 0 and not fn.body:
            return cls()
        return cls(window=fn.body, tail_rank=fn.tail, tail_start=fn.tail_start)

    def function(self) -> EventuallyConstant:
        return EventuallyConstant(self.window, self.tail_rank, self.tail_start)

    @property
    def is_zero(self) -> bool:
        return self.tail_rank == 0 and not self.window


class ResolutionData(BaseModel):
    """
    0 -> P -> core(-core_twist) + Q -> I_X for N-type,
    0 -> core(-core_twist) + P -> Q -> I_X for E-type.

    p holds the kernel twists and q the middle twists in both shapes.
    """

    model_config = ConfigDict(frozen=True)

    kind: ResolutionKind
    p: Tuple[int, ...] = Field(default_factory=tuple, description="Kernel dissocie twists")
    q: Tuple[int, ...] = Field(default_factory=tuple, description="Middle dissocie twists")
    core: Optional[CoreDelta] = None
    dual_core: Optional[CoreDelta] = None
    core_twist: int = 0

    @field_validator("p", "q")
    @classmethod
    def _sorted(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(sorted(value))

    @property
    def has_core(self) -> bool:
        return self.core is not None and not self.core.is_zero


class FreeResolution(BaseModel):
    """Stages of a graded free resolution, generators first"""

    stages: Tuple[Tuple[int, ...], ...]
