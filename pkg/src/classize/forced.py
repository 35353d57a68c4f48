"""Ground quantifier-free sentences in the truncation models.

For a sentence phi over named periodic sets, S(phi) is the set of j such
that phi holds when every named set is cut down to its members <= j (the
finite model with basis {0, ..., j}).  Each atomic formula compares counting
functions, so S(phi) is an exactly computable periodic set.  An ultrafilter
model decides phi the same way for every non-principal ultrafilter exactly
when S(phi) is finite or cofinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .counting import index_set
from .errors import UnsupportedFragment
from .formulas import (And, Atom, Difference, Equal, Exists, ForAll, Iff, Implies,
                       Intersect, Less, Named, Not, Or, SameSize, Subset, Sum, Union,
                       Unit, Universe, Var, Zero)
from .periodic import EMPTY, NATURALS, PeriodicSet, complement, difference, intersect, union

__all__ = ["ForcedVerdict", "index_pattern", "forced_in_ultrafilter_models", "successor_set"]


@dataclass(frozen=True)
class ForcedVerdict:
    """Forced(true), Forced(false) or Contingent(pattern).

    ``index_set`` is S(phi) in every case.
    """

    kind: str  # "Forced" or "Contingent"
    value: Optional[bool]
    index_set: PeriodicSet

    @property
    def pattern(self) -> Optional[PeriodicSet]:
        return self.index_set if self.kind == "Contingent" else None

    def __str__(self) -> str:
        if self.kind == "Forced":
            return f"Forced({str(self.value).lower()})"
        return f"Contingent({self.index_set})"


def _ground(t) -> PeriodicSet:
    if isinstance(t, Named):
        return t.value
    if isinstance(t, Universe):
        return NATURALS
    if isinstance(t, Zero):
        return EMPTY
    if isinstance(t, Union):
        return union(_ground(t.left), _ground(t.right))
    if isinstance(t, Intersect):
        return intersect(_ground(t.left), _ground(t.right))
    if isinstance(t, Difference):
        return difference(_ground(t.left), _ground(t.right))
    if isinstance(t, Var):
        raise UnsupportedFragment(f"variable {t.name!r} in a ground sentence")
    raise UnsupportedFragment(f"not a term: {t!r}")


def index_pattern(phi) -> PeriodicSet:
    """S(phi) = {j : phi holds with named sets truncated to members <= j}."""
    if isinstance(phi, Less):
        a, b = _ground(phi.left), _ground(phi.right)
        return index_set([(1, b), (-1, a)], 0, ">")
    if isinstance(phi, SameSize):
        a, b = _ground(phi.left), _ground(phi.right)
        return index_set([(1, a), (-1, b)], 0, "=")
    if isinstance(phi, Sum):
        a, b, c = _ground(phi.first), _ground(phi.second), _ground(phi.total)
        return index_set([(1, a), (1, b), (-1, c)], 0, "=")
    if isinstance(phi, (Unit, Atom)):
        return index_set([(1, _ground(phi.term))], -1, "=")
    if isinstance(phi, Equal):
        a, b = _ground(phi.left), _ground(phi.right)
        return index_set([(1, union(difference(a, b), difference(b, a)))], 0, "=")
    if isinstance(phi, Subset):
        a, b = _ground(phi.left), _ground(phi.right)
        inside = index_set([(1, difference(a, b))], 0, "=")
        return intersect(inside, index_set([(1, difference(b, a))], 0, ">"))
    if isinstance(phi, Not):
        return complement(index_pattern(phi.body))
    if isinstance(phi, And):
        out = NATURALS
        for p in phi.parts:
            out = intersect(out, index_pattern(p))
        return out
    if isinstance(phi, Or):
        out = EMPTY
        for p in phi.parts:
            out = union(out, index_pattern(p))
        return out
    if isinstance(phi, Implies):
        return union(complement(index_pattern(phi.left)), index_pattern(phi.right))
    if isinstance(phi, Iff):
        a, b = index_pattern(phi.left), index_pattern(phi.right)
        return union(intersect(a, b), intersect(complement(a), complement(b)))
    if isinstance(phi, (ForAll, Exists)):
        raise UnsupportedFragment("quantifiers are outside the forced fragment")
    raise UnsupportedFragment(f"not a formula: {phi!r}")


def forced_in_ultrafilter_models(phi) -> ForcedVerdict:
    """Classify a ground quantifier-free sentence by its index set."""
    s = index_pattern(phi)
    if s.is_finite():
        return ForcedVerdict("Forced", False, s)
    if s.modulus == 1:
        return ForcedVerdict("Forced", True, s)
    return ForcedVerdict("Contingent", None, s)


def successor_set(x: PeriodicSet) -> PeriodicSet:
    """x+ = {i + 1 : i in x}."""
    a = x.modulus
    return PeriodicSet(a, tuple((r + 1) % a for r in x.residues),
                       tuple(e + 1 for e in x.added),
                       tuple(e + 1 for e in x.removed) + (0,))
