"""Generators for the named sentence families and the BASIC axiom list.

Every generator returns a fresh AST.  Sentences are closed; the open
formulas ``times_formula``, ``mod_formula`` and ``div_formula`` have exactly
the free variables passed in.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from itertools import combinations

from .errors import DomainError
from .formulas import (And, Atom, Difference, Equal, Exists, ForAll, Iff, Implies,
                       Intersect, Less, Not, Or, SameSize, Subset, Sum, Union, Unit,
                       Universe, Var, Zero, conjoin, disjoin, disjuncts, exists,
                       forall, free_vars, universal_closure)

__all__ = [
    "mod_sentence", "div_sentence", "atleast", "exactly", "even_sentence", "odd_sentence",
    "times_formula", "mod_formula", "div_formula", "adiv_sentence",
    "indisc", "basic_axioms", "named_basic_axioms", "BASIC_NAMES", "recognize",
]


def _check_mod(n: int, m: int):
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if not 0 <= m < n:
        raise DomainError(f"need 0 <= m < n, got m={m}, n={n}")


def _union_all(terms):
    return reduce(Union, terms)


def _disjoint(a, b):
    return Equal(Intersect(a, b), Zero())


@lru_cache(maxsize=None)
def mod_sentence(n: int, m: int):
    """The universe splits into n same-size disjoint sets plus m atoms."""
    _check_mod(n, m)
    xs = [Var(f"x{i}") for i in range(1, n + 1)]
    ys = [Var(f"y{i}") for i in range(1, m + 1)]
    parts = []
    if n == 1:
        parts.append(SameSize(xs[0], xs[0]))
    else:
        parts.extend(SameSize(a, b) for a, b in zip(xs, xs[1:]))
    parts.extend(Atom(y) for y in ys)
    parts.extend(_disjoint(a, b) for a, b in combinations(xs, 2))
    parts.extend(_disjoint(a, b) for a, b in combinations(ys, 2))
    big_x = _union_all(xs)
    if ys:
        big_y = _union_all(ys)
        parts.append(_disjoint(big_x, big_y))
        parts.append(Equal(Union(big_x, big_y), Universe()))
    else:
        parts.append(Equal(big_x, Universe()))
    return exists([v.name for v in xs + ys], And(tuple(parts)))


def even_sentence():
    return mod_sentence(2, 0)


def odd_sentence():
    return mod_sentence(2, 1)


@lru_cache(maxsize=None)
def div_sentence(n: int):
    """MOD_n^0 or ... or MOD_n^(n-1)."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return disjoin(*(mod_sentence(n, m) for m in range(n)))


@lru_cache(maxsize=None)
def atleast(n: int):
    """There are at least n distinct atoms."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    xs = [Var(f"x{i}") for i in range(1, n + 1)]
    parts = [Atom(x) for x in xs]
    parts.extend(Not(Equal(a, b)) for a, b in combinations(xs, 2))
    return exists([x.name for x in xs], conjoin(*parts))


@lru_cache(maxsize=None)
def exactly(n: int):
    return And((atleast(n), Not(atleast(n + 1))))


def _fresh(base: str, taken: set) -> str:
    name, k = base, 0
    while name in taken:
        k += 1
        name = f"{base}_{k}"
    taken.add(name)
    return name


def _name(v) -> str:
    return v.name if isinstance(v, Var) else str(v)


def times_formula(n: int, x, y, prefix: str = "t"):
    """y is the same size as the sum of n copies of x.

    Built as a SUM chain through fresh variables t0..tn with t0 = 0, tn = y.
    """
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    x, y = Var(_name(x)), Var(_name(y))
    taken = {x.name, y.name}
    chain = [Var(_fresh(f"{prefix}{i}", taken)) for i in range(n + 1)]
    parts = [Equal(chain[0], Zero()), Equal(chain[-1], y)]
    parts.extend(Sum(chain[i - 1], x, chain[i]) for i in range(1, n + 1))
    return exists([c.name for c in chain], And(tuple(parts)))


def mod_formula(n: int, m: int, z):
    """z splits into n same-size parts with m atoms left over.

    Some a, u, v, w: Times_n(a, v), unit(u), Times_m(u, w), SUM(v, w, z).
    """
    _check_mod(n, m)
    z = Var(_name(z))
    taken = {z.name}
    a, u, v, w = (Var(_fresh(s, taken)) for s in ("a", "u", "v", "w"))
    p = _fresh("p", taken)
    q = _fresh("q", taken)
    body = And((times_formula(n, a, v, prefix=p), Unit(u),
                times_formula(m, u, w, prefix=q), Sum(v, w, z)))
    return exists([a.name, u.name, v.name, w.name], body)


def div_formula(n: int, z):
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return disjoin(*(mod_formula(n, m, z) for m in range(n)))


@lru_cache(maxsize=None)
def adiv_sentence(n: int):
    """Every set is roughly divisible by n."""
    return ForAll("x", div_formula(n, Var("x")))


def indisc(t, u, var: str = "z"):
    """t and u are interchangeable in every size comparison."""
    taken = {v for term in (t, u) for v in free_vars(term)}
    z = Var(_fresh(var, taken))
    return ForAll(z.name, And((Iff(Less(z, t), Less(z, u)), Iff(Less(t, z), Less(u, z)))))


def _v(*names):
    return [Var(n) for n in names]


def _ba_axioms():
    x, y, z = _v("x", "y", "z")
    comp = lambda t: Difference(Universe(), t)  # noqa: E731
    return [
        ("BA1", Equal(Union(x, y), Union(y, x))),
        ("BA2", Equal(Intersect(x, y), Intersect(y, x))),
        ("BA3", Equal(Union(x, Union(y, z)), Union(Union(x, y), z))),
        ("BA4", Equal(Intersect(x, Intersect(y, z)), Intersect(Intersect(x, y), z))),
        ("BA5", Equal(Intersect(x, Union(y, z)), Union(Intersect(x, y), Intersect(x, z)))),
        ("BA6", Equal(Union(x, Intersect(y, z)), Intersect(Union(x, y), Union(x, z)))),
        ("BA7", Equal(Intersect(x, comp(x)), Zero())),
        ("BA8", Equal(Union(x, comp(x)), Universe())),
        ("BA9", Iff(Subset(x, y), And((Equal(Union(x, y), y), Not(Equal(x, y)))))),
        ("BA10", Iff(Atom(x), And((Not(Equal(x, Zero())),
                                   ForAll("y", Implies(Subset(y, x), Equal(y, Zero()))))))),
        ("BA11", Implies(Not(Equal(x, Zero())),
                         Exists("y", And((Atom(y), Or((Subset(y, x), Equal(y, x)))))))),
    ]


def _size_axioms():
    x, y, xp, yp = _v("x", "y", "xp", "yp")
    z = Var("z")
    return [
        ("SUBSET", Implies(Subset(x, y), Less(x, y))),
        # x > y <-> y < x, with > already rewritten to <
        ("DEFGT", Iff(Less(y, x), Less(y, x))),
        ("DEFEQ", Iff(SameSize(x, y), indisc(x, y))),
        ("IRREFLT", Not(Less(x, x))),
        ("TRICH", Or((Less(x, y), SameSize(x, y), Less(y, x)))),
        ("DEFID", Iff(Unit(x), Atom(x))),
        ("DEFPL", Iff(Sum(x, y, z),
                      Exists("xp", Exists("yp", And((SameSize(x, xp), SameSize(y, yp),
                                                      Equal(Intersect(xp, yp), Zero()),
                                                      Equal(Union(xp, yp), z))))))),
        ("DISJU", Implies(And((SameSize(x, xp), SameSize(y, yp),
                               Equal(Intersect(x, y), Zero()),
                               Equal(Intersect(xp, yp), Zero()))),
                          SameSize(Union(x, y), Union(xp, yp)))),
    ]


BASIC_NAMES = tuple(name for name, _ in _ba_axioms() + _size_axioms())


def named_basic_axioms() -> dict:
    """BASIC axiom name -> universally closed sentence."""
    return {name: universal_closure(phi) for name, phi in _ba_axioms() + _size_axioms()}


def basic_axioms() -> list:
    """The 11 boolean-algebra axioms followed by the 8 size axioms."""
    return list(named_basic_axioms().values())


# -- structural recognition used by the evaluators' fast paths ---------------

def _leading_exists(phi) -> int:
    k = 0
    while isinstance(phi, Exists):
        k, phi = k + 1, phi.body
    return k


def recognize(phi):
    """Identify a generated sentence: returns ("mod", n, m), ("div", n),
    ("atleast", n), ("exactly", n), ("adiv", n) or None."""
    if isinstance(phi, Exists):
        q = _leading_exists(phi)
        if phi == atleast(q):
            return ("atleast", q)
        for n in range(q // 2 + 1, q + 1):
            m = q - n
            if phi == mod_sentence(n, m):
                return ("mod", n, m)
        return None
    if isinstance(phi, Or):
        n = len(phi.parts)
        if phi == div_sentence(n):
            return ("div", n)
        return None
    if isinstance(phi, And) and len(phi.parts) == 2:
        first = recognize(phi.parts[0])
        if first and first[0] == "atleast" and phi == exactly(first[1]):
            return ("exactly", first[1])
        return None
    if isinstance(phi, ForAll) and phi.var == "x":
        n = len(disjuncts(phi.body))
        if phi == adiv_sentence(n):
            return ("adiv", n)
    return None
