"""Sizes <rho, delta> and the size assignment theta_f on periodic sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Optional, Union

from .errors import DomainError, SizeUndefined
from .periodic import PeriodicSet
from .remainders import ZERO, RemainderFn, is_congruous

__all__ = [
    "Size",
    "SizedUniverse",
    "Verdict",
    "size_less",
    "size_add",
    "theta",
    "compare",
    "sum_holds",
    "is_unit",
]

Rational = Union[int, Fraction]


@total_ordering
@dataclass(frozen=True)
class Size:
    """Ordered pair of exact rationals, ordered lexicographically."""

    rho: Fraction
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", Fraction(self.rho))
        object.__setattr__(self, "delta", Fraction(self.delta))

    def __lt__(self, other: "Size") -> bool:
        if not isinstance(other, Size):
            return NotImplemented
        return (self.rho, self.delta) < (other.rho, other.delta)

    def __add__(self, other: "Size") -> "Size":
        return Size(self.rho + other.rho, self.delta + other.delta)

    def __sub__(self, other: "Size") -> "Size":
        return Size(self.rho - other.rho, self.delta - other.delta)

    def __str__(self) -> str:
        return f"({self.rho}, {self.delta})"

    def to_json(self) -> dict:
        return {"rho": str(self.rho), "delta": str(self.delta)}


ZERO_SIZE = Size(0, 0)
UNIT_SIZE = Size(0, 1)


def size_less(a: Size, b: Size) -> bool:
    return a < b


def size_add(a: Size, b: Size) -> Size:
    return a + b


class Verdict(enum.Enum):
    SMALLER = "Smaller"
    SAME_SIZE = "SameSize"
    LARGER = "Larger"

    def __str__(self) -> str:
        return self.value


class SizedUniverse:
    """The protomodel Q_f: periodic sets sized by theta_f.

    ``f`` must be congruous.  For a finite f, theta is evaluated at the least
    multiple of alpha(C(x)) in dom f; sets with no such multiple are unsized.
    """

    def __init__(self, f: RemainderFn = ZERO):
        self.f = f
        if not is_congruous(f):
            raise DomainError(f"remainder function {f.spec()} is not congruous")
        self._modulus_for = lru_cache(maxsize=None)(self._find_modulus)

    def __repr__(self) -> str:
        return f"SizedUniverse({self.f.spec()!r})"

    def _find_modulus(self, alpha: int) -> Optional[int]:
        if self.f.defined_at(alpha):
            return alpha
        multiples = [n for n in self.f.domain if n % alpha == 0]
        return min(multiples) if multiples else None

    def evaluation_modulus(self, x: PeriodicSet) -> Optional[int]:
        """Modulus at which theta_f(x) is computed (None for finite x)."""
        if x.is_finite():
            return None
        n = self._modulus_for(x.modulus)
        if n is None:
            raise SizeUndefined(f"size undefined under f={self.f.spec()}: "
                                f"no multiple of {x.modulus} in dom f")
        return n

    def theta(self, x: PeriodicSet, modulus: Optional[int] = None) -> Size:
        """theta_f(x); ``modulus`` forces evaluation at a specific multiple of alpha."""
        exceptions = len(x.added) - len(x.removed)
        if x.is_finite():
            return Size(0, exceptions)
        n = self.evaluation_modulus(x) if modulus is None else modulus
        if not self.f.defined_at(n):
            raise SizeUndefined(f"f is undefined at {n}")
        threshold = self.f(n)
        lifted = x.residues_at(n)
        charmed = sum(1 for i in lifted if i < threshold)
        rho = Fraction(len(lifted), n)
        # charmed classes get (n - f)/n, common ones -f/n
        delta = charmed - Fraction(len(lifted) * threshold, n) + exceptions
        return Size(rho, delta)

    def compare(self, x: PeriodicSet, y: PeriodicSet) -> Verdict:
        a, b = self.theta(x), self.theta(y)
        if a < b:
            return Verdict.SMALLER
        if b < a:
            return Verdict.LARGER
        return Verdict.SAME_SIZE

    def sum_holds(self, x: PeriodicSet, y: PeriodicSet, z: PeriodicSet) -> bool:
        return self.theta(z) == self.theta(x) + self.theta(y)

    def is_unit(self, x: PeriodicSet) -> bool:
        return self.theta(x) == UNIT_SIZE


def theta(u: SizedUniverse, x: PeriodicSet) -> Size:
    return u.theta(x)


def compare(u: SizedUniverse, x: PeriodicSet, y: PeriodicSet) -> Verdict:
    return u.compare(x, y)


def sum_holds(u: SizedUniverse, x: PeriodicSet, y: PeriodicSet, z: PeriodicSet) -> bool:
    return u.sum_holds(x, y, z)


def is_unit(u: SizedUniverse, x: PeriodicSet) -> bool:
    return u.is_unit(x)
