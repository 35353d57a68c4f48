"""Eventually periodic subsets of the naturals.

A set x is stored as ``(C(x) | added) - removed`` where C(x) is a union of
congruence classes modulo ``modulus``.  Every instance is canonical: the
modulus is the least period of C(x), ``added`` avoids C(x), ``removed`` lies
inside C(x), and a finite set has no residues and modulus 1.  Canonical form
makes ``==`` and ``hash`` extensional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import DomainError

__all__ = [
    "PeriodicSet",
    "NATURALS",
    "EMPTY",
    "EVENS",
    "ODDS",
    "congruence_class",
    "finite_set",
    "normalize",
    "union",
    "intersect",
    "difference",
    "complement",
    "member",
    "count_upto",
    "near",
    "render",
]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _least_period(modulus: int, residues: frozenset[int]) -> int:
    for d in _divisors(modulus):
        if all((r + d) % modulus in residues for r in residues):
            return d
    return modulus


def _as_naturals(values: Iterable[int], what: str) -> frozenset[int]:
    out = frozenset(int(v) for v in values)
    if any(v < 0 for v in out):
        raise DomainError(f"{what} must be natural numbers")
    return out


@dataclass(frozen=True)
class PeriodicSet:
    """Canonical eventually periodic set; see the module docstring."""

    modulus: int = 1
    residues: tuple[int, ...] = ()
    added: tuple[int, ...] = ()
    removed: tuple[int, ...] = ()

    def __post_init__(self):
        modulus = int(self.modulus)
        if modulus < 1:
            raise DomainError(f"modulus must be positive, got {modulus}")
        residues = frozenset(int(r) for r in self.residues)
        if any(not 0 <= r < modulus for r in residues):
            raise DomainError(f"residues must lie in [0, {modulus})")
        added = _as_naturals(self.added, "added elements")
        removed = _as_naturals(self.removed, "removed elements")

        # x = (C | added) - removed, whatever overlaps the raw data carries
        if residues:
            period = _least_period(modulus, residues)
            core = frozenset(r % period for r in residues)
            if len(core) == period:
                period, core = 1, frozenset({0})
            extra = sorted(a for a in added - removed if a % period not in core)
            gone = sorted(r for r in removed if r % period in core)
        else:
            period, core = 1, frozenset()
            extra, gone = sorted(added - removed), []
        object.__setattr__(self, "modulus", period)
        object.__setattr__(self, "residues", tuple(sorted(core)))
        object.__setattr__(self, "added", tuple(extra))
        object.__setattr__(self, "removed", tuple(gone))

    # -- basic queries ---------------------------------------------------
    @property
    def alpha(self) -> int:
        """Least n with C(x) a union of n-congruence classes."""
        return self.modulus

    @property
    def beta(self) -> int:
        """Number of alpha-congruence classes composing C(x)."""
        return len(self.residues)

    @property
    def core(self) -> "PeriodicSet":
        """C(x), the quasi-congruence class near x."""
        if not self.residues:
            return EMPTY
        return PeriodicSet(self.modulus, self.residues)

    def is_finite(self) -> bool:
        return not self.residues

    def is_cofinite(self) -> bool:
        return self.modulus == 1 and self.residues == (0,)

    def is_quasi_congruence(self) -> bool:
        """True when x has no exceptions (x is in QC, or x is empty)."""
        return not self.added and not self.removed

    def exceptions_bound(self) -> int:
        """One more than the largest exception element (0 if none)."""
        return max(self.added + self.removed, default=-1) + 1

    def residues_at(self, n: int) -> tuple[int, ...]:
        """Residues of C(x) lifted to modulus n (a multiple of alpha)."""
        if n % self.modulus:
            raise DomainError(f"{n} is not a multiple of the modulus {self.modulus}")
        if not self.residues:
            return ()
        step = self.modulus
        return tuple(sorted(r + j * step for r in self.residues for j in range(n // step)))

    def __contains__(self, k: int) -> bool:
        return member(self, k)

    def __or__(self, other: "PeriodicSet") -> "PeriodicSet":
        return union(self, other)

    def __and__(self, other: "PeriodicSet") -> "PeriodicSet":
        return intersect(self, other)

    def __sub__(self, other: "PeriodicSet") -> "PeriodicSet":
        return difference(self, other)

    def __invert__(self) -> "PeriodicSet":
        return complement(self)

    def __len__(self) -> int:
        if self.residues:
            raise DomainError("infinite set has no finite length")
        return len(self.added)

    def elements(self, limit: int) -> list[int]:
        """Members k with k < limit, ascending."""
        return [k for k in range(limit) if member(self, k)]

    def nth(self, i: int) -> int:
        """The i-th member (1-based) of x in increasing order."""
        if i < 1:
            raise DomainError("index must be positive")
        if not self.residues and i > len(self.added):
            raise DomainError("finite set has fewer members")
        # count_upto is monotone; bisect on the cutoff
        lo, hi = 0, max(self.exceptions_bound(), 1)
        while count_upto(self, hi) < i:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if count_upto(self, mid) >= i:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def __str__(self) -> str:
        return render(self)


NATURALS = PeriodicSet(1, (0,))
EMPTY = PeriodicSet()
EVENS = PeriodicSet(2, (0,))
ODDS = PeriodicSet(2, (1,))


def congruence_class(n: int, r: int) -> PeriodicSet:
    """M_n^r = {k : k = r mod n}."""
    if n < 1 or not 0 <= r < n:
        raise DomainError(f"congruence class needs 0 <= r < n, got n={n}, r={r}")
    return PeriodicSet(n, (r,))


def finite_set(elements: Iterable[int]) -> PeriodicSet:
    return PeriodicSet(1, (), tuple(elements))


def normalize(modulus: int, residues: Iterable[int] = (), added: Iterable[int] = (),
              removed: Iterable[int] = ()) -> PeriodicSet:
    """Canonical form of raw ``(C | added) - removed`` data.

    The modulus may be non-minimal and the exception sets may overlap C.
    """
    return PeriodicSet(modulus, tuple(residues), tuple(added), tuple(removed))


def member(x: PeriodicSet, k: int) -> bool:
    if k < 0:
        return False
    if x.residues:
        if k in x.removed:
            return False
        return k % x.modulus in x.residues or k in x.added
    return k in x.added


def _combine(x: PeriodicSet, y: PeriodicSet, op: Callable[[bool, bool], bool]) -> PeriodicSet:
    n = math.lcm(x.modulus, y.modulus)
    rx, ry = set(x.residues_at(n)), set(y.residues_at(n))
    residues = {r for r in range(n) if op(r in rx, r in ry)}
    added, removed = [], []
    for e in set(x.added + x.removed + y.added + y.removed):
        actual = op(member(x, e), member(y, e))
        periodic = e % n in residues
        if actual and not periodic:
            added.append(e)
        elif periodic and not actual:
            removed.append(e)
    return PeriodicSet(n, tuple(residues), tuple(added), tuple(removed))


def union(x: PeriodicSet, y: PeriodicSet) -> PeriodicSet:
    return _combine(x, y, lambda a, b: a or b)


def intersect(x: PeriodicSet, y: PeriodicSet) -> PeriodicSet:
    return _combine(x, y, lambda a, b: a and b)


def difference(x: PeriodicSet, y: PeriodicSet) -> PeriodicSet:
    return _combine(x, y, lambda a, b: a and not b)


def complement(x: PeriodicSet) -> PeriodicSet:
    return difference(NATURALS, x)


def count_upto(x: PeriodicSet, m: int) -> int:
    """|{k in x : k <= m}| in closed form."""
    if m < 0:
        return 0
    total = 0
    if x.residues:
        q, rem = divmod(m + 1, x.modulus)
        total = q * len(x.residues) + sum(1 for r in x.residues if r < rem)
    total += sum(1 for a in x.added if a <= m)
    total -= sum(1 for a in x.removed if a <= m)
    return total


def near(x: PeriodicSet, y: PeriodicSet) -> bool:
    """x - y and y - x are both finite."""
    return x.modulus == y.modulus and x.residues == y.residues


def _braces(values: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


def render(x: PeriodicSet) -> str:
    """Canonical text form, parseable by :func:`classize.parser.parse_set`."""
    if x.is_cofinite():
        parts = ["N"]
    else:
        parts = [f"M({x.modulus},{r})" for r in x.residues]
    if x.added:
        parts.append(_braces(x.added))
    if not parts:
        return "empty"
    text = "+".join(parts)
    if x.removed:
        # difference binds tighter than union
        if len(parts) > 1:
            text = f"({text})"
        text += " \\ " + _braces(x.removed)
    return text
