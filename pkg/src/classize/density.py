"""Density, outpacing and bounded checks for sets given by membership oracles.

For periodic sets everything here is exact.  Sets outside that class (the
squares, divergent block sets, greedy constructions) are wrapped as
:class:`OracleSet` and only examined up to a finite horizon.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .counting import index_set
from .errors import DomainError, ParseError
from .periodic import EMPTY, NATURALS, PeriodicSet, count_upto, difference, intersect, union

__all__ = [
    "density",
    "relative_density",
    "outpaces",
    "alternating_pair",
    "OracleSet",
    "oracle",
    "ORACLE_NAMES",
    "fract",
    "ladder",
    "DensityVerdict",
    "density_estimate",
    "OutpacingVerdict",
    "outpaces_empirical",
]


def density(x: PeriodicSet) -> Fraction:
    """beta/alpha of the periodic core; exceptions do not matter."""
    return Fraction(len(x.residues), x.modulus) if x.residues else Fraction(0)


def relative_density(x: PeriodicSet, y: PeriodicSet) -> Fraction:
    """Density of x inside y, for x a subset of an infinite y."""
    if y.is_finite():
        raise DomainError("relative density needs an infinite reference set")
    if difference(x, y) != EMPTY:
        raise DomainError("relative density needs x to be a subset of y")
    return density(x) / density(y)


def outpaces(x: PeriodicSet, y: PeriodicSet) -> bool:
    """Eventually every initial segment holds strictly more of x than of y."""
    return index_set([(1, x), (-1, y)], 0, ">").is_cofinite()


def alternating_pair(x: PeriodicSet, y: PeriodicSet) -> bool:
    """x_1 < y_1 < x_2 < y_2 < ... for the increasing enumerations.

    Equivalently x and y are disjoint and every initial segment holds as many
    members of x as of y, or one more.
    """
    if x.is_finite() or y.is_finite():
        raise DomainError("alternating pairs are defined for infinite sets")
    if intersect(x, y) != EMPTY:
        return False
    terms = [(1, x), (-1, y)]
    return union(index_set(terms, 0, "="), index_set(terms, -1, "=")) == NATURALS


# -- oracle sets -------------------------------------------------------------

@dataclass
class OracleSet:
    """A total membership predicate on the naturals with cached prefix counts."""

    membership: Callable[[int], bool]
    description: str
    _counts: array = field(default_factory=lambda: array("q"), repr=False)

    def __contains__(self, k: int) -> bool:
        return k >= 0 and bool(self.membership(k))

    def count_upto(self, m: int) -> int:
        """|{k in x : k <= m}|."""
        if m < 0:
            return 0
        counts = self._counts
        total = counts[-1] if counts else 0
        for k in range(len(counts), m + 1):
            if self.membership(k):
                total += 1
            counts.append(total)
        return counts[m]

    @classmethod
    def from_periodic(cls, x: PeriodicSet) -> "OracleSet":
        return cls(x.__contains__, str(x))


def _greedy(r: Fraction) -> Callable[[int], bool]:
    """i+1 joins the set when the fraction of members <= i is below r."""
    members = bytearray([0])  # 0 is never added
    state = {"count": 0}

    def member(k: int) -> bool:
        while len(members) <= k:
            i = len(members) - 1
            c = state["count"]
            # fract(x, i) < r, with fract(x, 0) read as 0
            join = r > 0 if i == 0 else c * r.denominator < r.numerator * i
            members.append(1 if join else 0)
            state["count"] = c + join
        return bool(members[k])

    return member


def _blocks(k: int) -> bool:
    # 10^(2n) <= k < 10^(2n+1): an odd number of decimal digits, k >= 1
    return k >= 1 and len(str(k)) % 2 == 1


def _square(k: int) -> bool:
    return math.isqrt(k) ** 2 == k


ORACLE_NAMES = ("squares", "blocks1010", "evens", "odds", "greedy:<p>/<q>")


def oracle(name: str) -> OracleSet:
    """Built-in oracle sets by name."""
    if name == "squares":
        return OracleSet(_square, "squares")
    if name == "blocks1010":
        return OracleSet(_blocks, "numbers with an odd count of decimal digits")
    if name == "evens":
        return OracleSet(lambda k: k % 2 == 0, "evens")
    if name == "odds":
        return OracleSet(lambda k: k % 2 == 1, "odds")
    if name.startswith("greedy:"):
        try:
            r = Fraction(name.split(":", 1)[1])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad greedy density in {name!r}") from None
        if not 0 <= r <= 1:
            raise DomainError("greedy density must lie in [0, 1]")
        return OracleSet(_greedy(r), f"greedy set of density {r}")
    raise ParseError(f"unknown oracle {name!r}; choose from {', '.join(ORACLE_NAMES)}")


def _as_oracle(x: Union[OracleSet, PeriodicSet]) -> OracleSet:
    return OracleSet.from_periodic(x) if isinstance(x, PeriodicSet) else x


def _count(x, m: int) -> int:
    return count_upto(x, m) if isinstance(x, PeriodicSet) else x.count_upto(m)


def fract(x: Union[OracleSet, PeriodicSet], i: int) -> Fraction:
    """|{k in x : k <= i}| / i, for i >= 1."""
    if i < 1:
        raise DomainError("fract needs i >= 1")
    return Fraction(_count(x, i), i)


def ladder(horizon: int) -> list[int]:
    """Sample points 100 * sqrt(10)^k up to the horizon, horizon included."""
    if horizon < 100:
        raise DomainError("density estimates need a horizon of at least 100")
    points, k = [], 0
    while True:
        i = math.isqrt(10**(k + 4)) if k % 2 else 100 * 10**(k // 2)
        if i > horizon:
            break
        points.append(i)
        k += 1
    if points[-1] != horizon:
        points.append(horizon)
    return points


@dataclass(frozen=True)
class DensityVerdict:
    kind: str  # "Converges", "Diverges" or "Unknown"
    estimate: Optional[Fraction]
    bound: int
    values: tuple = ()

    def __str__(self) -> str:
        if self.kind == "Converges":
            return f"Converges({float(self.estimate):.6g})"
        if self.kind == "Unknown":
            return f"Unknown({self.bound})"
        return "Diverges"


def density_estimate(x: Union[OracleSet, PeriodicSet], horizon: int) -> DensityVerdict:
    """Classify convergence of fract(x, i) along :func:`ladder`.

    Converges when the last three values lie within 1e-2 of each other,
    Diverges when the second half of the ladder spans more than 0.3.
    """
    x = _as_oracle(x)
    points = ladder(horizon)
    values = tuple((i, fract(x, i)) for i in points)
    fracs = [v for _, v in values]
    last = fracs[-3:]
    if len(last) == 3 and max(last) - min(last) <= Fraction(1, 100):
        return DensityVerdict("Converges", fracs[-1], horizon, values)
    tail = fracs[len(fracs) // 2:]
    if max(tail) - min(tail) > Fraction(3, 10):
        return DensityVerdict("Diverges", None, horizon, values)
    return DensityVerdict("Unknown", None, horizon, values)


@dataclass(frozen=True)
class OutpacingVerdict:
    kind: str  # "YesUpTo", "No" or "Mixed"
    m: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "YesUpTo":
            return f"Yes-up-to({self.m})"
        if self.kind == "No":
            return f"No({self.m})"
        return "Mixed"


def outpaces_empirical(x: Union[OracleSet, PeriodicSet], y: Union[OracleSet, PeriodicSet],
                       horizon: int) -> OutpacingVerdict:
    """Bounded outpacing check on m <= horizon.

    Yes-up-to(horizon) when the count difference is positive on the final
    20% of the window; No(m) when it is negative there, m being the start of
    the final negative run; Mixed otherwise.
    """
    if horizon < 1:
        raise DomainError("horizon must be positive")
    x, y = _as_oracle(x), _as_oracle(y)
    x.count_upto(horizon)
    y.count_upto(horizon)
    start = horizon - horizon // 5
    diffs = [x.count_upto(m) - y.count_upto(m) for m in range(horizon + 1)]
    window = diffs[start:]
    if all(d > 0 for d in window):
        return OutpacingVerdict("YesUpTo", horizon)
    if all(d < 0 for d in window):
        m = start
        while m > 0 and diffs[m - 1] < 0:
            m -= 1
        return OutpacingVerdict("No", m)
    return OutpacingVerdict("Mixed")
