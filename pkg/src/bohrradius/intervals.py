"""Closed real intervals used as the output type of every solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

CERTIFIED = "certified"
HEURISTIC = "heuristic"
CLAMPED = "clamped"
STATUSES = (CERTIFIED, HEURISTIC, CLAMPED)

# unit roundoff of IEEE double precision
UNIT_ROUNDOFF = 2.0**-53


def gamma_factor(k: int) -> float:
    """Higham's ``gamma_k = k u / (1 - k u)`` bound on accumulated relative error."""
    ku = k * UNIT_ROUNDOFF
    if ku >= 0.5:
        raise OverflowError(f"too many floating point operations ({k}) for a relative error bound")
    return ku / (1.0 - ku)


@dataclass(frozen=True)
class BoundInterval:
    """An enclosure ``[lo, hi]`` of a real quantity.

    ``status`` tells how much the enclosure can be trusted: ``certified``
    intervals contain the true value given certified inputs, ``heuristic``
    ones come from local optimisation, and ``clamped`` ones were cut to a
    prescribed range (the pre-clamp values are kept in ``meta``).
    """

    lo: float
    hi: float
    status: str = CERTIFIED
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo!r}, {self.hi!r}]")
        if self.status not in STATUSES:
            raise ValueError(f"unknown interval status {self.status!r}")

    @classmethod
    def exact(cls, value: float, status: str = CERTIFIED, **meta: Any) -> BoundInterval:
        return cls(float(value), float(value), status, dict(meta))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    def widened(self, rel: float = 0.0, absolute: float = 0.0) -> BoundInterval:
        """Outward widening by ``rel * |endpoint| + absolute`` on each side."""
        lo = self.lo - rel * abs(self.lo) - absolute
        hi = self.hi + rel * abs(self.hi) + absolute
        return BoundInterval(math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf),
                             self.status, dict(self.meta))

    def __repr__(self) -> str:
        return f"BoundInterval([{self.lo:.15g}, {self.hi:.15g}], {self.status})"
