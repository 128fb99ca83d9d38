import re
from pathlib import Path
from typing import List, Tuple

from services.characters import IntFn
from services.errors import InvalidInputError

PAIR_PATTERN = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*$")
ENTRY_PATTERN = re.compile(r"(-?\d+)\s*:\s*(-?\d+)")


def parse_pair(text: str, what: str = "pair") -> Tuple[int, int]:
    """'S,T' -> (S, T)"""
    match = PAIR_PATTERN.match(text or "")
    if not match:
        raise InvalidInputError(f"Bad {what} {text!r}, expected two integers like 3,8")
    return int(match.group(1)), int(match.group(2))


def parse_window(text: str) -> Tuple[int, int]:
    lo, hi = parse_pair(text, "window")
    if lo > hi:
        raise InvalidInputError(f"Empty window [{lo}, {hi}]")
    return lo, hi


def parse_int_list(text: str) -> List[int]:
    """'4,4,9' -> [4, 4, 9]; blank is the empty list"""
    if not (text or "").strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"Bad integer list {text!r}")


def parse_int_fn_text(text: str) -> IntFn:
    """
    Inline function such as '{4:1, 5:2}' or '4:1,5:2'; '{}' is zero.

    Repeated degrees are rejected like they are in files.
    """
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1].strip()
    if not body:
        return IntFn()
    entries = [part.strip() for part in body.split(",")]
    data = {}
    for entry in entries:
        match = ENTRY_PATTERN.fullmatch(entry)
        if not match:
            raise InvalidInputError(f"Bad entry {entry!r}, expected degree:value")
        l, v = int(match.group(1)), int(match.group(2))
        if l in data:
            raise InvalidInputError(f"Duplicate degree {l}")
        data[l] = v
    return IntFn(data)


def looks_like_path(text: str) -> bool:
    return Path(text).suffix != "" or "/" in text
