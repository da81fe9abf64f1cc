"""Exact logarithmic length bounds.

Every bound produced by this package is a formal logarithm ln(p/q) of a
positive rational ratio, clamped below at 0 because cobordism lengths are
nonnegative.  The exact ratio is kept alongside any decimal rendering; the
raw (unclamped) ratio is retained for provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

__all__ = ["LengthBound", "format_fraction"]


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass
class LengthBound:
    """The value max(0, ln(raw_ratio)) with provenance.

    ``ratio`` is the clamped ratio (>= 1), so the value is ln(ratio);
    ``open_bound`` marks infima that are not attained (construction-side
    results, rendered as "> ln(p/q)").
    """

    raw_ratio: Fraction
    rule: str
    provenance: dict[str, Any] = field(default_factory=dict)
    open_bound: bool = False

    def __post_init__(self) -> None:
        if self.raw_ratio <= 0:
            raise ValueError(f"log ratio must be positive, got {self.raw_ratio}")

    @property
    def ratio(self) -> Fraction:
        return self.raw_ratio if self.raw_ratio > 1 else Fraction(1)

    @property
    def is_zero(self) -> bool:
        return self.ratio == 1

    def exact_str(self) -> str:
        if self.is_zero:
            return "0"
        return f"ln({format_fraction(self.ratio)})"

    def decimal_str(self, digits: int = 12) -> str:
        if self.is_zero:
            return "0." + "0" * digits
        with mpmath.workdps(digits + 15):
            val = mpmath.log(mpmath.mpf(self.ratio.numerator) / mpmath.mpf(self.ratio.denominator))
            return mpmath.nstr(val, digits, strip_zeros=False)

    def __lt__(self, other: "LengthBound") -> bool:
        return self.ratio < other.ratio

    def __le__(self, other: "LengthBound") -> bool:
        return self.ratio <= other.ratio

    def render(self, digits: int = 12) -> str:
        prefix = "> " if self.open_bound and not self.is_zero else ""
        return f"{prefix}{self.exact_str()} ({prefix}{self.decimal_str(digits)}) [{self.rule}]"
