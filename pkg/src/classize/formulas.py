"""Terms and formulas of the class-size language.

Terms are boolean combinations of variables, the constants ``0`` (empty) and
``I`` (the universe), and named periodic sets.  Atomic formulas are proper
subset, ``<``, same size ``~``, identity, ``sum``, ``unit`` and ``atom``.
All nodes are frozen dataclasses, so structural equality is AST equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .periodic import PeriodicSet
from .periodic import difference as _pdiff
from .periodic import intersect as _pinter
from .periodic import render as _render_set
from .periodic import union as _punion

__all__ = [
    "Var", "Zero", "Universe", "Named", "Union", "Intersect", "Difference",
    "Subset", "Less", "SameSize", "Equal", "Sum", "Unit", "Atom",
    "Not", "And", "Or", "Implies", "Iff", "ForAll", "Exists",
    "Term", "Formula",
    "free_vars", "is_closed", "quantifier_count", "named_sets", "fold",
    "conjoin", "disjoin", "forall", "exists", "universal_closure",
    "render", "render_term", "conjuncts", "disjuncts",
]


# -- terms -----------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Universe:
    pass


@dataclass(frozen=True)
class Named:
    value: PeriodicSet


@dataclass(frozen=True)
class Union:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Intersect:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Difference:
    left: "Term"
    right: "Term"


Term = object  # annotation alias; a term is any of the classes above
_BINARY_TERMS = (Union, Intersect, Difference)


# -- formulas --------------------------------------------------------------

@dataclass(frozen=True)
class Subset:
    """Proper inclusion."""
    left: object
    right: object


@dataclass(frozen=True)
class Less:
    left: object
    right: object


@dataclass(frozen=True)
class SameSize:
    left: object
    right: object


@dataclass(frozen=True)
class Equal:
    left: object
    right: object


@dataclass(frozen=True)
class Sum:
    first: object
    second: object
    total: object


@dataclass(frozen=True)
class Unit:
    term: object


@dataclass(frozen=True)
class Atom:
    term: object


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = object
ATOMIC = (Subset, Less, SameSize, Equal, Sum, Unit, Atom)
_BINARY_ATOMS = (Subset, Less, SameSize, Equal)
QUANTIFIERS = (ForAll, Exists)


def conjoin(*parts) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def disjoin(*parts) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def forall(names, body) -> Formula:
    for name in reversed(list(names)):
        body = ForAll(name, body)
    return body


def exists(names, body) -> Formula:
    for name in reversed(list(names)):
        body = Exists(name, body)
    return body


def conjuncts(phi) -> list:
    """Flatten nested conjunctions."""
    if isinstance(phi, And):
        return [c for part in phi.parts for c in conjuncts(part)]
    return [phi]


def disjuncts(phi) -> list:
    if isinstance(phi, Or):
        return [d for part in phi.parts for d in disjuncts(part)]
    return [phi]


# -- traversal -------------------------------------------------------------

def _term_children(t) -> tuple:
    if isinstance(t, _BINARY_TERMS):
        return (t.left, t.right)
    return ()


def _atom_terms(phi) -> tuple:
    if isinstance(phi, _BINARY_ATOMS):
        return (phi.left, phi.right)
    if isinstance(phi, Sum):
        return (phi.first, phi.second, phi.total)
    return (phi.term,)


def _term_vars(t) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    for child in _term_children(t):
        yield from _term_vars(child)


def free_vars(phi) -> frozenset:
    if isinstance(phi, ATOMIC):
        return frozenset(v for t in _atom_terms(phi) for v in _term_vars(t))
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        return frozenset().union(*(free_vars(p) for p in phi.parts))
    if isinstance(phi, (Implies, Iff)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, QUANTIFIERS):
        return free_vars(phi.body) - {phi.var}
    if isinstance(phi, (Var, Zero, Universe, Named) + _BINARY_TERMS):
        return frozenset(_term_vars(phi))
    raise TypeError(f"not a formula: {phi!r}")


def is_closed(phi) -> bool:
    return not free_vars(phi)


def quantifier_count(phi) -> int:
    if isinstance(phi, ATOMIC):
        return 0
    if isinstance(phi, Not):
        return quantifier_count(phi.body)
    if isinstance(phi, (And, Or)):
        return sum(quantifier_count(p) for p in phi.parts)
    if isinstance(phi, (Implies, Iff)):
        return quantifier_count(phi.left) + quantifier_count(phi.right)
    return 1 + quantifier_count(phi.body)


def _term_named(t) -> Iterator[PeriodicSet]:
    if isinstance(t, Named):
        yield t.value
    for child in _term_children(t):
        yield from _term_named(child)


def named_sets(phi) -> list:
    """Distinct named-set constants occurring in phi, in first-seen order."""
    seen = {}

    def walk(f):
        if isinstance(f, ATOMIC):
            for t in _atom_terms(f):
                for s in _term_named(t):
                    seen.setdefault(s, None)
        elif isinstance(f, Not):
            walk(f.body)
        elif isinstance(f, (And, Or)):
            for p in f.parts:
                walk(p)
        elif isinstance(f, (Implies, Iff)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, QUANTIFIERS):
            walk(f.body)
        else:
            for s in _term_named(f):
                seen.setdefault(s, None)

    walk(phi)
    return list(seen)


def universal_closure(phi) -> Formula:
    """Bind the free variables of phi universally, in order of first occurrence."""
    order = []

    def walk(f, bound):
        if isinstance(f, ATOMIC):
            for t in _atom_terms(f):
                for v in _term_vars(t):
                    if v not in bound and v not in order:
                        order.append(v)
        elif isinstance(f, Not):
            walk(f.body, bound)
        elif isinstance(f, (And, Or)):
            for p in f.parts:
                walk(p, bound)
        elif isinstance(f, (Implies, Iff)):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, QUANTIFIERS):
            walk(f.body, bound | {f.var})

    walk(phi, frozenset())
    return forall(order, phi)


# -- folding of ground set literals ----------------------------------------

_SET_OPS = {Union: _punion, Intersect: _pinter, Difference: _pdiff}


def fold_term(t):
    """Collapse subterms built only from named sets into one named set."""
    if isinstance(t, _BINARY_TERMS):
        left, right = fold_term(t.left), fold_term(t.right)
        if isinstance(left, Named) and isinstance(right, Named):
            return Named(_SET_OPS[type(t)](left.value, right.value))
        return type(t)(left, right)
    return t


def fold(phi):
    """Apply :func:`fold_term` throughout a formula (the parser's normal form)."""
    if isinstance(phi, (Subset, Less, SameSize, Equal)):
        return type(phi)(fold_term(phi.left), fold_term(phi.right))
    if isinstance(phi, Sum):
        return Sum(fold_term(phi.first), fold_term(phi.second), fold_term(phi.total))
    if isinstance(phi, (Unit, Atom)):
        return type(phi)(fold_term(phi.term))
    if isinstance(phi, Not):
        return Not(fold(phi.body))
    if isinstance(phi, (And, Or)):
        return type(phi)(tuple(fold(p) for p in phi.parts))
    if isinstance(phi, (Implies, Iff)):
        return type(phi)(fold(phi.left), fold(phi.right))
    if isinstance(phi, QUANTIFIERS):
        return type(phi)(phi.var, fold(phi.body))
    return fold_term(phi)


# -- rendering -------------------------------------------------------------

_TERM_OPS = {Union: "+", Intersect: "&", Difference: "\\"}
_REL_OPS = {Subset: "sub", Less: "<", SameSize: "~", Equal: "="}


def render_term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Universe):
        return "I"
    if isinstance(t, Named):
        text = _render_set(t.value)
        return f"({text})" if "+" in text or "\\" in text else text
    if isinstance(t, _BINARY_TERMS):
        return f"({render_term(t.left)} {_TERM_OPS[type(t)]} {render_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")


def _render(phi, top=False) -> str:
    if isinstance(phi, _BINARY_ATOMS):
        return f"{render_term(phi.left)} {_REL_OPS[type(phi)]} {render_term(phi.right)}"
    if isinstance(phi, Sum):
        return f"sum({render_term(phi.first)}, {render_term(phi.second)}, {render_term(phi.total)})"
    if isinstance(phi, Unit):
        return f"unit({render_term(phi.term)})"
    if isinstance(phi, Atom):
        return f"atom({render_term(phi.term)})"
    if isinstance(phi, Not):
        return "!" + _render(phi.body)
    if isinstance(phi, QUANTIFIERS):
        word = "all" if isinstance(phi, ForAll) else "some"
        body = _render(phi.body)
        if not isinstance(phi.body, (And, Or, Implies, Iff, ForAll, Exists)):
            body = f"({body})"
        return f"{word} {phi.var} {body}"
    if isinstance(phi, (And, Or)):
        sep = " & " if isinstance(phi, And) else " | "
        text = sep.join(_render(p) for p in phi.parts)
    elif isinstance(phi, Implies):
        text = f"{_render(phi.left)} -> {_render(phi.right)}"
    elif isinstance(phi, Iff):
        text = f"{_render(phi.left)} <-> {_render(phi.right)}"
    else:
        raise TypeError(f"not a formula: {phi!r}")
    return text if top else f"({text})"


def render(phi) -> str:
    """Concrete syntax accepted by :func:`classize.parser.parse`."""
    if isinstance(phi, (Var, Zero, Universe, Named) + _BINARY_TERMS):
        return render_term(phi)
    return _render(phi, top=True)
