"""Shared result types, exceptions and coalition helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator


class HypothesesNotMet(Exception):
    """A theorem checker was called on an object outside its standing assumptions.

    ``failed`` lists the names of the assumptions that do not hold (e.g.
    ``["UD", "IIA"]``).  Raised instead of returning ``False`` so that
    "theorem refuted" and "theorem inapplicable" stay distinguishable.
    """

    def __init__(self, failed: Iterable[str], detail: str = ""):
        self.failed = list(failed)
        self.detail = detail
        msg = "hypotheses not met: " + ", ".join(self.failed)
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InternalContradiction(AssertionError):
    """A proved implication failed on concrete data; indicates a bug."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a universally quantified check, with the least counterexample."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


# Coalitions are plain int bitmasks over voters 0..m-1.

def members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def coalition(voters: Iterable[int]) -> int:
    mask = 0
    for i in voters:
        if i < 0:
            raise ValueError(f"negative voter index {i}")
        mask |= 1 << i
    return mask


def full_coalition(m: int) -> int:
    return (1 << m) - 1


def all_coalitions(m: int) -> Iterator[int]:
    return iter(range(1 << m))


def format_coalition(mask: int) -> str:
    """``0b101`` -> ``{0,2}``."""
    return "{" + ",".join(str(i) for i in members(mask)) + "}"


def parse_coalition(text: str) -> int:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"coalition must be written as {{i,j,...}}: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return 0
    return coalition(int(tok) for tok in body.split(","))
