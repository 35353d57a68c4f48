"""Satisfaction in standard finite models and in sampled periodic-set structures.

A finite model A_n has the power set of the basis {0, ..., n-1} as domain;
elements are n-bit masks.  ``<`` and same size compare popcounts, ``unit``
and ``atom`` mean popcount 1 and ``sum(a, b, c)`` means |a| + |b| = |c|.
Named periodic sets denote their members below n.

Quantifiers are searched depth first.  Two reductions keep the search
exhaustive while making MOD-style sentences affordable:

* conjuncts of a quantifier block are tested as soon as their variables are
  bound, so failing branches are cut early;
* a quantified variable only ranges over one representative per orbit of the
  basis permutations fixing every set the formula can see.  Two masks in the
  same orbit satisfy the same formulas, so the verdict is unchanged.

A step budget bounds the number of atomic evaluations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DomainError, EvaluationError
from .formulas import (ATOMIC, And, Atom, Difference, Equal, Exists, ForAll, Iff,
                       Implies, Intersect, Less, Named, Not, Or, SameSize, Subset,
                       Sum, Union, Unit, Universe, Var, Zero, conjuncts, free_vars,
                       named_sets)
from .periodic import EMPTY, NATURALS, PeriodicSet, difference, intersect, union
from .schemas import recognize
from .sizes import UNIT_SIZE, SizedUniverse

__all__ = [
    "DEFAULT_BUDGET",
    "FiniteModel",
    "SampleStructure",
    "BudgetExceeded",
    "CSVerdict",
    "evaluate",
    "evaluate_in",
    "mod_truth_fast",
    "cs_check",
]

DEFAULT_BUDGET = 10**8


class BudgetExceeded(EvaluationError):
    """The step budget ran out before a verdict was reached."""


@dataclass(frozen=True)
class FiniteModel:
    """The standard finite interpretation over the basis {0, ..., n-1}."""

    basis_size: int

    def __post_init__(self):
        if self.basis_size < 1:
            raise DomainError(f"basis size must be positive, got {self.basis_size}")

    @property
    def universe(self) -> int:
        return (1 << self.basis_size) - 1

    def elements(self) -> range:
        return range(1 << self.basis_size)

    def truncate(self, x: PeriodicSet) -> int:
        """Mask of the members of x below the basis size."""
        mask = 0
        for k in range(self.basis_size):
            if k in x:
                mask |= 1 << k
        return mask

    def decode(self, mask: int) -> frozenset:
        return frozenset(k for k in range(self.basis_size) if mask >> k & 1)

    # structure interface
    zero = 0

    def top(self) -> int:
        return self.universe

    def named(self, x: PeriodicSet) -> int:
        return self.truncate(x)

    @staticmethod
    def union(a, b):
        return a | b

    @staticmethod
    def intersect(a, b):
        return a & b

    @staticmethod
    def difference(a, b):
        return a & ~b

    @staticmethod
    def subset(a, b):
        return a != b and a & b == a

    @staticmethod
    def less(a, b):
        return a.bit_count() < b.bit_count()

    @staticmethod
    def same(a, b):
        return a.bit_count() == b.bit_count()

    @staticmethod
    def unit(a):
        return a.bit_count() == 1

    atom = unit

    @staticmethod
    def sum(a, b, c):
        return a.bit_count() + b.bit_count() == c.bit_count()

    def fast_truth(self, shape) -> Optional[bool]:
        """Arithmetic verdict for a recognized sentence."""
        kind, k = shape[0], shape[1]
        n = self.basis_size
        if kind == "mod":
            return n % k == shape[2]
        if kind == "atleast":
            return n >= k
        if kind == "exactly":
            return n == k
        return True  # div and adiv hold in every finite model


class SampleStructure:
    """Periodic sets sized by theta_f, with quantifiers over finite samples.

    ``domains[i]`` is the range of quantifier blocks nested i deep (the last
    entry is reused for deeper blocks).  Truth here is truth of the sampled
    instances only; it certifies failures of universal sentences and
    witnesses of existential ones.
    """

    zero = EMPTY

    def __init__(self, sized: SizedUniverse, domains: Sequence[Sequence[PeriodicSet]]):
        if not domains:
            raise DomainError("need at least one sample domain")
        self.sized = sized
        self.domains = [list(d) for d in domains]

    def top(self):
        return NATURALS

    @staticmethod
    def named(x):
        return x

    union = staticmethod(union)
    intersect = staticmethod(intersect)
    difference = staticmethod(difference)

    @staticmethod
    def subset(a, b):
        return a != b and difference(a, b) == EMPTY

    def less(self, a, b):
        return self.sized.theta(a) < self.sized.theta(b)

    def same(self, a, b):
        return self.sized.theta(a) == self.sized.theta(b)

    def unit(self, a):
        return self.sized.theta(a) == UNIT_SIZE

    @staticmethod
    def atom(a):
        return a.is_finite() and len(a) == 1

    def sum(self, a, b, c):
        return self.sized.sum_holds(a, b, c)

    def fast_truth(self, shape):
        return None


def _negated_conjuncts(phi) -> list:
    """Conjuncts whose conjunction is equivalent to not phi."""
    if isinstance(phi, Implies):
        return conjuncts(phi.left) + _negated_conjuncts(phi.right)
    if isinstance(phi, Or):
        return [c for p in phi.parts for c in _negated_conjuncts(p)]
    if isinstance(phi, Not):
        return conjuncts(phi.body)
    return [Not(phi)]


class _Evaluator:
    def __init__(self, structure, budget: int, fast: bool, orbit: bool, named: Iterable):
        self.s = structure
        self.budget = budget
        self.steps = 0
        self.fast = fast and hasattr(structure, "fast_truth")
        self.orbit = orbit and isinstance(structure, FiniteModel)
        self.named_values = [structure.named(x) for x in named]
        self._blocks = {}
        self._free = {}
        self._shape = {}
        self._reps = {}

    # -- terms -------------------------------------------------------------
    def term(self, t, env):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise EvaluationError(f"unbound variable {t.name!r}") from None
        if isinstance(t, Union):
            return self.s.union(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Intersect):
            return self.s.intersect(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Difference):
            return self.s.difference(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Zero):
            return self.s.zero
        if isinstance(t, Universe):
            return self.s.top()
        if isinstance(t, Named):
            return self.s.named(t.value)
        raise EvaluationError(f"not a term: {t!r}")

    # -- formulas ----------------------------------------------------------
    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"step budget of {self.budget} exhausted")

    def free(self, phi) -> frozenset:
        key = id(phi)
        if key not in self._free:
            self._free[key] = (phi, free_vars(phi))
        return self._free[key][1]

    def holds(self, phi, env, level=0) -> bool:
        if isinstance(phi, ATOMIC):
            self.tick()
            s, term = self.s, self.term
            if isinstance(phi, Subset):
                return s.subset(term(phi.left, env), term(phi.right, env))
            if isinstance(phi, Less):
                return s.less(term(phi.left, env), term(phi.right, env))
            if isinstance(phi, SameSize):
                return s.same(term(phi.left, env), term(phi.right, env))
            if isinstance(phi, Equal):
                return term(phi.left, env) == term(phi.right, env)
            if isinstance(phi, Sum):
                return s.sum(term(phi.first, env), term(phi.second, env), term(phi.total, env))
            if isinstance(phi, Unit):
                return s.unit(term(phi.term, env))
            return s.atom(term(phi.term, env))
        if isinstance(phi, Not):
            return not self.holds(phi.body, env, level)
        if isinstance(phi, And):
            if self.fast and (verdict := self.shortcut(phi)) is not None:
                return verdict
            return all(self.holds(p, env, level) for p in phi.parts)
        if isinstance(phi, Or):
            if self.fast and (verdict := self.shortcut(phi)) is not None:
                return verdict
            return any(self.holds(p, env, level) for p in phi.parts)
        if isinstance(phi, Implies):
            return not self.holds(phi.left, env, level) or self.holds(phi.right, env, level)
        if isinstance(phi, Iff):
            return self.holds(phi.left, env, level) == self.holds(phi.right, env, level)
        if isinstance(phi, (ForAll, Exists)):
            if self.fast and (verdict := self.shortcut(phi)) is not None:
                return verdict
            return self.quantified(phi, env, level)
        raise EvaluationError(f"not a formula: {phi!r}")

    def shortcut(self, phi) -> Optional[bool]:
        key = id(phi)
        if key not in self._shape:
            shape = recognize(phi) if not self.free(phi) else None
            self._shape[key] = (phi, shape)
        shape = self._shape[key][1]
        return None if shape is None else self.s.fast_truth(shape)

    def block(self, phi):
        """Split a run of like quantifiers into variables and a conjunct schedule."""
        key = id(phi)
        if key in self._blocks:
            return self._blocks[key][1]
        universal = isinstance(phi, ForAll)
        names, body = [], phi
        while isinstance(body, ForAll if universal else Exists):
            names.append(body.var)
            body = body.body
        # keep only the innermost binding of a repeated name
        parts = _negated_conjuncts(body) if universal else conjuncts(body)
        position = {}
        for i, name in enumerate(names):
            position[name] = i
        schedule = [[] for _ in range(len(names) + 1)]
        for part in parts:
            used = [position[v] for v in self.free(part) if v in position]
            schedule[max(used, default=-1) + 1].append(part)
        outer = sorted(self.free(phi))
        info = (universal, names, schedule, outer)
        self._blocks[key] = (phi, info)
        return info

    def quantified(self, phi, env, level) -> bool:
        universal, names, schedule, outer = self.block(phi)
        inner_level = level + 1
        if not all(self.holds(c, env, inner_level) for c in schedule[0]):
            return universal
        saved = {name: env.get(name, _MISSING) for name in names}
        try:
            found = self.search(names, schedule, outer, env, level, 0)
        finally:
            for name, value in saved.items():
                if value is _MISSING:
                    env.pop(name, None)
                else:
                    env[name] = value
        return not found if universal else found

    def search(self, names, schedule, outer, env, level, i) -> bool:
        name = names[i]
        checks = schedule[i + 1]
        last = i == len(names) - 1
        for value in self.candidates(level, names, outer, env, i):
            env[name] = value
            if all(self.holds(c, env, level + 1) for c in checks):
                if last or self.search(names, schedule, outer, env, level, i + 1):
                    return True
        return False

    def candidates(self, level, names, outer, env, i):
        s = self.s
        if not isinstance(s, FiniteModel):
            domains = s.domains
            return domains[min(level, len(domains) - 1)]
        if not self.orbit:
            return s.elements()
        fixed = [env[v] for v in outer if v in env]
        fixed.extend(env[v] for v in names[:i])
        fixed.extend(self.named_values)
        key = tuple(fixed)
        reps = self._reps.get(key)
        if reps is None:
            reps = self._representatives(s.basis_size, fixed)
            if len(self._reps) < 100_000:
                self._reps[key] = reps
        return reps

    @staticmethod
    def _representatives(n: int, fixed: list) -> list:
        regions = {}
        for b in range(n):
            sig = tuple(f >> b & 1 for f in fixed)
            regions.setdefault(sig, []).append(1 << b)
        choices = []
        for bits in regions.values():
            prefixes, acc = [0], 0
            for bit in bits:
                acc |= bit
                prefixes.append(acc)
            choices.append(prefixes)
        return [sum(combo) for combo in itertools.product(*choices)]


_MISSING = object()


def evaluate_in(structure, phi, env: Optional[Mapping] = None, *, budget: int = DEFAULT_BUDGET,
                fast: bool = True, orbit: bool = True) -> bool:
    """Truth of phi in a finite model or a sample structure."""
    ev = _Evaluator(structure, budget, fast, orbit, named_sets(phi))
    return ev.holds(phi, dict(env or {}))


def evaluate(model, phi, env: Optional[Mapping] = None, *, budget: int = DEFAULT_BUDGET,
             fast: bool = True, orbit: bool = True) -> bool:
    """Truth of phi in A_n.

    ``model`` is a :class:`FiniteModel` or a basis size.  ``env`` maps free
    variables to masks (ints) or to iterables of basis elements.  With
    ``fast=False`` recognized MOD/DIV/ATLEAST/EXACTLY sentences are searched
    like any other; ``orbit=False`` also disables the symmetry reduction.
    """
    if isinstance(model, int):
        model = FiniteModel(model)
    env = {k: _as_mask(model, v) for k, v in (env or {}).items()}
    return evaluate_in(model, phi, env, budget=budget, fast=fast, orbit=orbit)


def _as_mask(model: FiniteModel, value) -> int:
    if isinstance(value, int):
        mask = value
    elif isinstance(value, PeriodicSet):
        mask = model.truncate(value)
    else:
        mask = 0
        for k in value:
            if not 0 <= k < model.basis_size:
                raise DomainError(f"{k} is outside the basis of A_{model.basis_size}")
            mask |= 1 << k
    if not 0 <= mask <= model.universe:
        raise DomainError(f"mask {mask} is not a subset of the basis")
    return mask


def mod_truth_fast(n: int, k: int, m: int) -> bool:
    """Whether A_n satisfies MOD_k^m, i.e. n = m (mod k)."""
    if k < 1 or not 0 <= m < k:
        raise DomainError(f"need 0 <= m < k, got m={m}, k={k}")
    return n % k == m


@dataclass(frozen=True)
class CSVerdict:
    """Outcome of a bounded check over A_1 ... A_max_n."""

    kind: str  # "HoldsUpTo", "Counterexample" or "BudgetExceeded"
    n: int

    @property
    def holds(self) -> bool:
        return self.kind == "HoldsUpTo"

    def __str__(self) -> str:
        label = {"HoldsUpTo": "Holds-up-to"}.get(self.kind, self.kind)
        return f"{label}({self.n})"


def cs_check(phi, max_n: int, budget: int = DEFAULT_BUDGET, *, fast: bool = True) -> CSVerdict:
    """Evaluate a sentence in A_1 ... A_max_n and report the first failure.

    The budget is shared across all n.
    """
    if max_n < 1:
        raise DomainError("max_n must be positive")
    if free_vars(phi):
        raise EvaluationError(f"free variables {sorted(free_vars(phi))} in a sentence check")
    remaining = budget
    for n in range(1, max_n + 1):
        ev = _Evaluator(FiniteModel(n), remaining, fast, True, named_sets(phi))
        try:
            ok = ev.holds(phi, {})
        except BudgetExceeded:
            return CSVerdict("BudgetExceeded", n)
        remaining -= ev.steps
        if not ok:
            return CSVerdict("Counterexample", n)
    return CSVerdict("HoldsUpTo", max_n)
