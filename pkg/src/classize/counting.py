"""Exact index sets of counting-function inequalities.

For periodic sets x_1..x_k, integer coefficients c_i and a constant c_0 the
function

    L(j) = c_0 + sum_i c_i * count_upto(x_i, j)

satisfies L(j + P) = L(j) + s for every j past the last exception, where P
is the lcm of the moduli and s the per-period slope.  Along each residue
class the values form an arithmetic progression, so {j : L(j) > 0} and
{j : L(j) = 0} are eventually periodic and can be computed exactly.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import DomainError
from .periodic import PeriodicSet, count_upto

__all__ = ["LinearCount", "index_set"]

LinearCount = Sequence[tuple[int, PeriodicSet]]


def _value(terms: LinearCount, const: int, j: int) -> int:
    return const + sum(c * count_upto(x, j) for c, x in terms)


def _holds(value: int, relation: str) -> bool:
    return value > 0 if relation == ">" else value == 0


def index_set(terms: LinearCount, const: int = 0, relation: str = ">") -> PeriodicSet:
    """The set of j >= 0 with ``L(j) > 0`` (relation ``">"``) or ``L(j) == 0`` (``"="``)."""
    if relation not in (">", "="):
        raise DomainError(f"unknown relation {relation!r}")
    terms = [(int(c), x) for c, x in terms if c]
    period = math.lcm(1, *(x.modulus for _, x in terms))
    start = max((x.exceptions_bound() for _, x in terms), default=0)
    slope = sum(c * len(x.residues) * (period // x.modulus) for c, x in terms)

    eventual = []
    cutoff = start
    for r in range(period):
        j0 = start + r
        v0 = _value(terms, const, j0)
        # values along j0 + q*period are v0 + q*slope
        if slope == 0:
            if _holds(v0, relation):
                eventual.append(j0 % period)
            continue
        if relation == ">":
            if slope > 0:
                eventual.append(j0 % period)
                q_first = max(0, -v0 // slope + 1)  # least q with v0 + q*slope > 0
                cutoff = max(cutoff, j0 + q_first * period)
            else:
                q_end = max(0, (v0 - 1) // -slope + 1) if v0 > 0 else 0
                cutoff = max(cutoff, j0 + q_end * period)
        else:
            if -v0 % slope == 0 and -v0 // slope >= 0:
                cutoff = max(cutoff, j0 + (-v0 // slope) * period + 1)

    eventual_set = set(eventual)
    added, removed = [], []
    for j in range(cutoff):
        actual = _holds(_value(terms, const, j), relation)
        periodic = j % period in eventual_set
        if actual and not periodic:
            added.append(j)
        elif periodic and not actual:
            removed.append(j)
    return PeriodicSet(period, tuple(eventual_set), tuple(added), tuple(removed))
