"""
Sparse integer functions and the character layer.

IntFn is the carrier for characters, eta and theta functions and difference
data. Values are stored sparsely with zeros dropped, so two functions are
equal exactly when their stored entries agree.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from pydantic_core import core_schema

from services.errors import InvalidInputError, NotAdmissibleError

logger = logging.getLogger(__name__)

POS_INF = math.inf
NEG_INF = -math.inf


def step(l: int) -> int:
    """1 for l >= 0, else 0"""
    return 1 if l >= 0 else 0


def _as_degree(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"{what} must be an integer, got {value!r}")
    return value


class IntFn:
    """
    Finitely supported function from the integers to the integers.

    Construction sums repeated degrees and drops zero values. Instances are
    immutable and hashable.
    """

    __slots__ = ("_data", "_hash")

    def __init__(
        self,
        entries: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None,
    ):
        data: Dict[int, int] = {}
        if entries is not None:
            pairs = entries.items() if isinstance(entries, Mapping) else entries
            for l, v in pairs:
                l = _as_degree(l, "degree")
                v = _as_degree(v, "value")
                data[l] = data.get(l, 0) + v
        self._data = {l: v for l, v in data.items() if v != 0}
        self._hash = None

    @classmethod
    def _canonical(cls, data: Dict[int, int]) -> "IntFn":
        fn = cls.__new__(cls)
        fn._data = data
        fn._hash = None
        return fn

    @classmethod
    def indicator(cls, a: int, b: int) -> "IntFn":
        """1 on [a, b], empty when a > b"""
        return cls._canonical({l: 1 for l in range(a, b + 1)})

    @classmethod
    def step_difference(cls, a: int, b: int) -> "IntFn":
        """step(l - a) - step(l - b)"""
        if a <= b:
            return cls.indicator(a, b - 1)
        return cls._canonical({l: -1 for l in range(b, a)})

    def __call__(self, l: int) -> int:
        return self._data.get(l, 0)

    def __getitem__(self, l: int) -> int:
        return self._data.get(l, 0)

    def __bool__(self) -> bool:
        return bool(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __iter__(self) -> Iterator[int]:
        return iter(self.support())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntFn):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __add__(self, other: "IntFn") -> "IntFn":
        data = dict(self._data)
        for l, v in other._data.items():
            total = data.get(l, 0) + v
            if total:
                data[l] = total
            else:
                data.pop(l, None)
        return IntFn._canonical(data)

    def __sub__(self, other: "IntFn") -> "IntFn":
        return self + (-other)

    def __neg__(self) -> "IntFn":
        return IntFn._canonical({l: -v for l, v in self._data.items()})

    def __mul__(self, k: int) -> "IntFn":
        if k == 0:
            return IntFn()
        return IntFn._canonical({l: k * v for l, v in self._data.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"IntFn({self})"

    def __str__(self) -> str:
        return "{" + ", ".join(f"{l}:{v}" for l, v in self.items()) + "}"

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self._data.items())

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self._data))

    def total(self) -> int:
        return sum(self._data.values())

    def weighted_total(self) -> int:
        """sum of l * f(l)"""
        return sum(l * v for l, v in self._data.items())

    def min_degree(self) -> Optional[int]:
        return min(self._data) if self._data else None

    def max_degree(self) -> Optional[int]:
        return max(self._data) if self._data else None

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._data.values())

    def first_negative(self) -> Optional[int]:
        negative = [l for l, v in self._data.items() if v < 0]
        return min(negative) if negative else None

    def shift(self, k: int) -> "IntFn":
        """g(l) = f(l - k)"""
        if k == 0:
            return self
        return IntFn._canonical({l + k: v for l, v in self._data.items()})

    def reflect(self, c: int) -> "IntFn":
        """g(l) = f(c - l)"""
        return IntFn._canonical({c - l: v for l, v in self._data.items()})

    def restrict(self, lo: int, hi: int) -> "IntFn":
        return IntFn._canonical(
            {l: v for l, v in self._data.items() if lo <= l <= hi}
        )

    def to_json(self) -> Dict[str, List[List[int]]]:
        return {"entries": [[l, v] for l, v in self.items()]}

    @classmethod
    def from_json(cls, payload: Any) -> "IntFn":
        """
        Parse the canonical form {"entries": [[l, v], ...]}.

        A plain mapping {"l": v} is also accepted. Duplicate degrees, unsorted
        entries and zero values are rejected.
        """
        if isinstance(payload, IntFn):
            return payload
        if isinstance(payload, Mapping) and set(payload.keys()) == {"entries"}:
            entries = payload["entries"]
            if not isinstance(entries, list):
                raise InvalidInputError("'entries' must be a list of [degree, value]")
            data: Dict[int, int] = {}
            previous = None
            for entry in entries:
                if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                    raise InvalidInputError(f"Bad entry {entry!r}, expected [degree, value]")
                l = _as_degree(entry[0], "degree")
                v = _as_degree(entry[1], "value")
                if previous is not None and l <= previous:
                    raise InvalidInputError(
                        f"Degrees must be strictly increasing, got {l} after {previous}"
                    )
                if v == 0:
                    raise InvalidInputError(f"Zero value stored at degree {l}")
                data[l] = v
                previous = l
            return cls._canonical(data)
        if isinstance(payload, Mapping):
            data = {}
            for key, v in payload.items():
                try:
                    l = int(key)
                except (TypeError, ValueError):
                    raise InvalidInputError(f"Degree key {key!r} is not an integer")
                if l in data:
                    raise InvalidInputError(f"Duplicate degree {l}")
                v = _as_degree(v, "value")
                if v == 0:
                    raise InvalidInputError(f"Zero value stored at degree {l}")
                data[l] = v
            return cls._canonical(data)
        raise InvalidInputError(f"Cannot read an integer function from {type(payload).__name__}")

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: Any) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls.from_json,
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda fn: fn.to_json()
            ),
        )


@dataclass(frozen=True)
class EventuallyConstant:
    """
    Function that is 0 far to the left and constant from tail_start on.

    body holds the values below tail_start.
    """

    body: IntFn
    tail: int
    tail_start: int

    def __post_init__(self):
        top = self.body.max_degree()
        if top is not None and top >= self.tail_start:
            raise InvalidInputError(
                f"Stored value at degree {top} is not below tail start {self.tail_start}"
            )

    def __call__(self, l: int) -> int:
        return self.tail if l >= self.tail_start else self.body(l)

    def shift(self, k: int) -> "EventuallyConstant":
        return EventuallyConstant(self.body.shift(k), self.tail, self.tail_start + k)


STEP = EventuallyConstant(IntFn(), 1, 0)

FunctionLike = Union[IntFn, EventuallyConstant]


def diff(f: FunctionLike, m: int = 1) -> FunctionLike:
    """m-fold first difference, Δf(l) = f(l) - f(l - 1)"""
    if m < 0:
        raise InvalidInputError(f"Difference order must be >= 0, got {m}")
    for _ in range(m):
        if isinstance(f, EventuallyConstant):
            f = f.body - f.body.shift(1) + IntFn({f.tail_start: f.tail})
        else:
            f = f - f.shift(1)
    return f


def partial_sum(f: IntFn) -> EventuallyConstant:
    """l -> sharp(f, l), the inverse of diff on finitely supported functions"""
    if not f:
        return EventuallyConstant(IntFn(), 0, 0)
    lo, hi = f.min_degree(), f.max_degree()
    running = 0
    body = {}
    for l in range(lo, hi):
        running += f(l)
        if running:
            body[l] = running
    return EventuallyConstant(IntFn._canonical(body), f.total(), hi)


def sharp(f: IntFn, a: int) -> int:
    """Sum of f(l) over l <= a"""
    return sum(v for l, v in f.items() if l <= a)


def bounds(f: IntFn) -> Tuple[Union[int, float], Union[int, float]]:
    """(f_a, f_o): least and greatest degree with a positive value, or (inf, -inf)"""
    positive = [l for l, v in f.items() if v > 0]
    if not positive:
        return POS_INF, NEG_INF
    return positive[0], positive[-1]


class ConnectivityMode(str, Enum):
    """Direction of a one-sided connectedness test"""

    AT_LEAST = ">="
    ABOVE = ">"
    AT_MOST = "<="
    BELOW = "<"


def _require_nonnegative(f: IntFn) -> None:
    negative = f.first_negative()
    if negative is not None:
        raise InvalidInputError(
            f"Connectedness needs a nonnegative function, f({negative})={f(negative)}"
        )


def connected_in_degrees(f: IntFn, mode: ConnectivityMode, bound: int) -> bool:
    """
    One-sided connectedness.

    ">= a": f(b) > 0 for some b > a forces f > 0 on [a, b]; "> a" uses (a, b].
    "<= b": f(a) > 0 for some a < b forces f > 0 on [a, b]; "< b" uses [a, b).
    """
    _require_nonnegative(f)
    mode = ConnectivityMode(mode)
    if mode in (ConnectivityMode.AT_LEAST, ConnectivityMode.ABOVE):
        far = [l for l in f.support() if l > bound]
        if not far:
            return True
        start = bound if mode == ConnectivityMode.AT_LEAST else bound + 1
        return all(f(l) > 0 for l in range(start, far[-1] + 1))

    near = [l for l in f.support() if l < bound]
    if not near:
        return True
    end = bound if mode == ConnectivityMode.AT_MOST else bound - 1
    return all(f(l) > 0 for l in range(near[0], end + 1))


def connected_about(f: IntFn, a: int, b: int) -> bool:
    if not connected_in_degrees(f, ConnectivityMode.AT_MOST, b):
        return False
    if not connected_in_degrees(f, ConnectivityMode.AT_LEAST, a):
        return False
    return a > b or all(f(l) > 0 for l in range(a, b + 1))


def is_connected(f: IntFn) -> bool:
    """Connected about [f_a, f_o]; the empty function counts as connected"""
    lo, hi = bounds(f)
    if not f:
        return True
    return connected_about(f, int(lo), int(hi))


class CharacterKind(str, Enum):
    NOT_CHARACTER = "not-character"
    CHARACTER = "character"
    ADMISSIBLE = "admissible"


@dataclass(frozen=True)
class Classification:
    kind: CharacterKind
    s0: Optional[int] = None
    s1: Optional[int] = None
    failed_clause: Optional[int] = None
    reason: Optional[str] = None

    @property
    def is_admissible(self) -> bool:
        return self.kind == CharacterKind.ADMISSIBLE

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"kind": self.kind.value}
        if self.is_admissible:
            payload.update({"s0": self.s0, "s1": self.s1})
        else:
            payload.update({"failed_clause": self.failed_clause, "reason": self.reason})
        return payload


def classify(f: IntFn) -> Classification:
    """Sum-zero test followed by the four admissibility clauses in order"""
    total = f.total()
    if total != 0:
        return Classification(
            CharacterKind.NOT_CHARACTER, reason=f"values sum to {total}, not 0"
        )

    low = f.min_degree()
    if low is not None and low < 0:
        return Classification(
            CharacterKind.CHARACTER,
            failed_clause=1,
            reason=f"nonzero value {f(low)} at negative degree {low}",
        )
    if f(0) != -1:
        return Classification(
            CharacterKind.CHARACTER, failed_clause=2, reason=f"value at 0 is {f(0)}, not -1"
        )

    s0 = 0
    while f(s0) == -1:
        s0 += 1
    if f(s0) < 0:
        return Classification(
            CharacterKind.CHARACTER,
            failed_clause=3,
            reason=f"value {f(s0)} at s0={s0} is negative",
        )

    top = f.max_degree()
    s1 = s0
    while s1 <= top and f(s1) == 0:
        s1 += 1
    if s1 > top or f(s1) <= 0:
        return Classification(
            CharacterKind.CHARACTER,
            failed_clause=4,
            reason=f"first nonzero value from s0={s0} is not positive",
        )
    return Classification(CharacterKind.ADMISSIBLE, s0=s0, s1=s1)


@dataclass(frozen=True)
class Character:
    fn: IntFn

    @classmethod
    def of(cls, f: Union[IntFn, Mapping[int, int]]) -> "Character":
        fn = f if isinstance(f, IntFn) else IntFn(f)
        if fn.total() != 0:
            raise InvalidInputError(f"{fn} is not a character, values sum to {fn.total()}")
        return cls(fn)


@dataclass(frozen=True)
class AdmissibleCharacter:
    """An admissible character together with its s0 and s1"""

    fn: IntFn
    s0: int
    s1: int

    @classmethod
    def of(
        cls, f: Union["AdmissibleCharacter", IntFn, Mapping[int, int]]
    ) -> "AdmissibleCharacter":
        if isinstance(f, AdmissibleCharacter):
            return f
        fn = f if isinstance(f, IntFn) else IntFn(f)
        verdict = classify(fn)
        if not verdict.is_admissible:
            raise NotAdmissibleError(
                f"{fn} is not admissible: {verdict.reason}",
                clause=str(verdict.failed_clause) if verdict.failed_clause else "sum",
            )
        return cls(fn, verdict.s0, verdict.s1)

    def __call__(self, l: int) -> int:
        return self.fn(l)

    def __str__(self) -> str:
        return str(self.fn)
