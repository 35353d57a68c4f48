"""Remainder functions, congruity and generalized CRT solving."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .errors import DomainError, ParseError

__all__ = [
    "RemainderFn",
    "ZERO",
    "parse_fspec",
    "is_congruous",
    "solve",
    "solve_by_scan",
    "mu",
    "restrict",
]


@dataclass(frozen=True)
class RemainderFn:
    """A partial map n -> f(n) with 0 <= f(n) < n, or the total zero function."""

    entries: tuple[tuple[int, int], ...] = ()
    zero_total: bool = False
    _lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pairs = tuple(sorted((int(n), int(m)) for n, m in dict(self.entries).items()))
        if len(pairs) != len(self.entries):
            raise DomainError("duplicate argument in remainder function")
        for n, m in pairs:
            if n < 1:
                raise DomainError(f"remainder function argument must be positive, got {n}")
            if not 0 <= m < n:
                raise DomainError(f"need 0 <= f({n}) < {n}, got {m}")
        if self.zero_total and pairs:
            raise DomainError("zero-total function carries no explicit entries")
        object.__setattr__(self, "entries", pairs)
        object.__setattr__(self, "_lookup", dict(pairs))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "RemainderFn":
        return cls(tuple(mapping.items()))

    @property
    def domain(self) -> tuple[int, ...]:
        """Explicit domain; empty for the zero-total function."""
        return tuple(n for n, _ in self.entries)

    def defined_at(self, n: int) -> bool:
        return n >= 1 and (self.zero_total or n in self._lookup)

    def __call__(self, n: int) -> int:
        if self.zero_total:
            if n < 1:
                raise DomainError(f"f is defined on positive integers only, got {n}")
            return 0
        try:
            return self._lookup[n]
        except KeyError:
            raise DomainError(f"f is undefined at {n}") from None

    def get(self, n: int) -> Optional[int]:
        return self(n) if self.defined_at(n) else None

    def spec(self) -> str:
        if self.zero_total:
            return "zero"
        return ",".join(f"{n}:{m}" for n, m in self.entries)

    def to_json(self) -> dict:
        out = {"entries": {str(n): m for n, m in self.entries},
               "congruous": is_congruous(self)}
        if self.zero_total:
            out["zero_total"] = True
            out["solution"] = {"residue": 0, "modulus": None}
        else:
            sol = solve(self)
            out["solution"] = None if sol is None else {"residue": sol[0], "modulus": sol[1]}
        return out

    def __str__(self) -> str:
        return self.spec()


ZERO = RemainderFn(zero_total=True)


def parse_fspec(text: str) -> RemainderFn:
    """Parse ``"zero"`` or a comma list of ``n:m`` pairs, e.g. ``"2:1,4:3"``."""
    text = text.strip()
    if text == "zero":
        return ZERO
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad f-spec JSON: {exc}") from None
        data = data.get("entries", data)
        return RemainderFn(tuple((int(k), int(v)) for k, v in data.items()))
    if not text:
        return RemainderFn()
    seen = {}
    for chunk in text.split(","):
        n_text, sep, m_text = chunk.strip().partition(":")
        if not sep:
            raise ParseError(f"expected n:m in f-spec, got {chunk.strip()!r}")
        try:
            n, m = int(n_text), int(m_text)
        except ValueError:
            raise ParseError(f"non-integer entry {chunk.strip()!r} in f-spec") from None
        if n in seen:
            raise ParseError(f"duplicate argument {n} in f-spec")
        seen[n] = m
    return RemainderFn(tuple(seen.items()))


def is_congruous(f: RemainderFn) -> bool:
    """gcd(i, j) divides f(i) - f(j) for every i, j in dom f."""
    if f.zero_total:
        return True
    return all((mi - mj) % math.gcd(i, j) == 0
               for (i, mi), (j, mj) in combinations(f.entries, 2))


def _merge(a: tuple[int, int], b: tuple[int, int]) -> Optional[tuple[int, int]]:
    r1, n1 = a
    r2, n2 = b
    g = math.gcd(n1, n2)
    if (r2 - r1) % g:
        return None
    lcm = n1 // g * n2
    # r1 + n1*t = r2 (mod n2)  =>  t = (r2 - r1)/g * inv(n1/g) mod n2/g
    step = n2 // g
    t = ((r2 - r1) // g * pow(n1 // g, -1, step)) % step if step > 1 else 0
    return (r1 + n1 * t) % lcm, lcm


def solve(f: RemainderFn) -> Optional[tuple[int, int]]:
    """All solutions of f as ``(residue, modulus)``, or None when there are none.

    The solutions are exactly the k with k = residue (mod modulus); modulus is
    the lcm of dom f.
    """
    if f.zero_total:
        raise DomainError("solve needs a finite remainder function")
    return reduce(lambda acc, e: None if acc is None else _merge(acc, (e[1], e[0])),
                  f.entries, (0, 1))


def solve_by_scan(f: RemainderFn, limit: Optional[int] = None) -> list[int]:
    """Brute-force solutions k < limit (default: the lcm of dom f)."""
    if limit is None:
        limit = mu(f.domain) if f.domain else 1
    return [k for k in range(limit) if all(k % n == m for n, m in f.entries)]


def mu(values: Iterable[int]) -> int:
    """Least common multiple of a finite nonempty set of positive integers."""
    values = list(values)
    if not values:
        raise DomainError("mu needs a nonempty set")
    if any(v < 1 for v in values):
        raise DomainError("mu is defined for positive integers")
    return math.lcm(*values)


def restrict(f: RemainderFn, domain: Iterable[int]) -> RemainderFn:
    keep = set(domain)
    if f.zero_total:
        return RemainderFn(tuple((n, 0) for n in sorted(keep) if n >= 1))
    return RemainderFn(tuple((n, m) for n, m in f.entries if n in keep))
