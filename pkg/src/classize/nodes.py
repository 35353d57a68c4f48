"""The factorial node tree and (n, m)-partitions of periodic sets.

A node <n_1, ..., n_k> with n_i < i addresses the congruence class
M_{k!}^v, v = sum n_i * (i-1)!.  The nodes of depth k enumerate the k!
classes modulo k!, and the children of a node split its class into k + 1
classes modulo (k+1)!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .errors import DomainError
from .periodic import PeriodicSet, congruence_class
from .remainders import RemainderFn, is_congruous
from .sizes import Size, SizedUniverse

__all__ = [
    "Node",
    "node_set",
    "node_value",
    "node_for",
    "nodes_at_depth",
    "NodeEntry",
    "depth_partition",
    "nm_partition",
    "charmed_count",
    "equal_core_partition",
]


@dataclass(frozen=True)
class Node:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise DomainError("a node has at least one entry")
        for i, e in enumerate(entries, start=1):
            if not 0 <= e < i:
                raise DomainError(f"node entry {i} must lie in [0, {i}), got {e}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "Node":
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        """P(i), 1-based."""
        return self.entries[i - 1]

    def extend(self, m: int) -> "Node":
        return Node(self.entries + (m,))

    def children(self) -> list["Node"]:
        return [self.extend(m) for m in range(len(self) + 1)]

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.entries)) + ">"


def node_value(p: Node) -> int:
    """sum of P(i) * (i-1)!, the least member of the node set."""
    return sum(e * math.factorial(i - 1) for i, e in enumerate(p.entries, start=1))


def node_set(p: Node) -> PeriodicSet:
    return congruence_class(math.factorial(len(p)), node_value(p))


def node_for(n: int) -> Node:
    """The shortest node whose value is n (factorial-base digits of n)."""
    if n < 0:
        raise DomainError("node values are natural numbers")
    digits, base = [0], 2
    while n:
        n, d = divmod(n, base)
        digits.append(d)
        base += 1
    return Node(tuple(digits))


def nodes_at_depth(d: int) -> Iterator[Node]:
    """All d! nodes of length d in lexicographic order."""
    if d < 1:
        raise DomainError("depth must be positive")
    for entries in product(*(range(i) for i in range(1, d + 1))):
        yield Node(entries)


@dataclass(frozen=True)
class NodeEntry:
    node: Node
    set: PeriodicSet
    size: Size
    charmed: bool


def depth_partition(f: RemainderFn, d: int) -> list[NodeEntry]:
    """Every depth-d node with its set, its theta_f size and its charm.

    The node sets partition the naturals; the charmed ones (residue below
    f(d!)) are one atom larger than the rest.
    """
    u = SizedUniverse(f)
    modulus = math.factorial(d)
    if not f.defined_at(modulus):
        raise DomainError(f"f is undefined at {d}! = {modulus}")
    threshold = f(modulus)
    out = []
    for node in nodes_at_depth(d):
        x = node_set(node)
        out.append(NodeEntry(node, x, u.theta(x, modulus=modulus), node_value(node) < threshold))
    return out


def _split_modulus(f: RemainderFn, alpha: int, m: int) -> Optional[int]:
    if f.zero_total:
        return alpha
    candidates = [n for n in f.domain if n % alpha == 0 and f.defined_at(n * m)]
    return min(candidates, default=None)


def charmed_count(f: RemainderFn, n: int, m: int, i: int) -> int:
    """Charmed nm-subclasses of the n-class of residue i: q + [i < f(n)]."""
    q, rest = divmod(f(n * m) - f(n), n)
    if rest:
        raise DomainError(f"f({n * m}) - f({n}) is not divisible by {n}; f is incongruous")
    return q + (1 if i < f(n) else 0)


def nm_partition(f: RemainderFn, x: PeriodicSet, m: int, n: Optional[int] = None) -> list[PeriodicSet]:
    """Split a union of n-classes into m pieces of nearly equal size.

    Each n-class i of x is refined into the m classes i + j*n modulo nm.  Its
    charmed subclasses go to consecutive pieces starting at a pointer that
    runs round-robin across all classes, so piece sizes differ by at most
    one atom and the larger pieces come first.  ``n`` defaults to the least
    multiple of alpha(x) at which f is defined together with nm.
    """
    if not is_congruous(f):
        raise DomainError(f"remainder function {f.spec()} is not congruous")
    if m < 1:
        raise DomainError("number of pieces must be positive")
    if not x.is_quasi_congruence() or x.is_finite():
        raise DomainError("only unions of congruence classes (no exceptions) can be split")
    if n is None:
        n = _split_modulus(f, x.modulus, m)
        if n is None:
            raise DomainError(f"no multiple n of {x.modulus} has f defined at n and n*{m}")
    elif n % x.modulus or not (f.defined_at(n) and f.defined_at(n * m)):
        raise DomainError(f"n={n} must be a multiple of {x.modulus} with f defined at n and n*{m}")
    pieces = [[] for _ in range(m)]
    pointer = 0
    for i in x.residues_at(n):
        c = charmed_count(f, n, m, i)
        for j in range(m):
            pieces[(pointer + j) % m].append(i + j * n)
        pointer = (pointer + c) % m
    return [PeriodicSet(n * m, tuple(p)) for p in pieces]


def _set_partitions(items: list, blocks: int) -> Iterator[list[list]]:
    """Partitions of items into exactly ``blocks`` nonempty unlabeled blocks."""
    if not items:
        if blocks == 0:
            yield []
        return
    if blocks == 0:
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest, blocks - 1):
        yield [[head]] + part
    for part in _set_partitions(rest, blocks):
        for k in range(len(part)):
            yield part[:k] + [[head] + part[k]] + part[k + 1:]


def equal_core_partition(u: SizedUniverse, n: int, m: int) -> Optional[list[PeriodicSet]]:
    """A partition of the naturals into m unions of n-classes with equal sizes.

    Returns the first one found by exhaustive search, or None.  Under f = 0
    this settles whether any m-piece equal-size partition into sets near
    unions of n-classes exists: finite exceptions never change the density
    part, and pieces with equal density have equal exception-free sizes.
    """
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive")
    for blocks in _set_partitions(list(range(n)), m):
        pieces = [PeriodicSet(n, tuple(b)) for b in blocks]
        sizes = {u.theta(p) for p in pieces}
        if len(sizes) == 1:
            return pieces
    return None
