import math

from hypothesis import settings, strategies as st

from classize.periodic import PeriodicSet, normalize

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def raw_sets(draw, max_modulus=12, max_exception=30):
    """Raw (modulus, residues, added, removed) data, possibly non-canonical."""
    modulus = draw(st.integers(1, max_modulus))
    residues = draw(st.sets(st.integers(0, modulus - 1), max_size=modulus))
    added = draw(st.sets(st.integers(0, max_exception), max_size=5))
    removed = draw(st.sets(st.integers(0, max_exception), max_size=5))
    return modulus, residues, added, removed


def raw_member(raw, k):
    modulus, residues, added, removed = raw
    return (k % modulus in residues or k in added) and k not in removed


@st.composite
def periodic_sets(draw, max_modulus=12, max_exception=30):
    return normalize(*draw(raw_sets(max_modulus, max_exception)))


@st.composite
def infinite_sets(draw, max_modulus=12, max_exception=30):
    x = draw(periodic_sets(max_modulus, max_exception))
    if x.is_finite():
        r = draw(st.integers(0, 5))
        x = x | PeriodicSet(6, (r,))
    return x


def window(*sets):
    """A membership window long enough to separate canonical forms."""
    lcm = math.lcm(1, *(x.modulus for x in sets))
    top = max((x.exceptions_bound() for x in sets), default=0)
    return 3 * lcm + top + 1


# -- random formulas ---------------------------------------------------------

from classize.formulas import (And, Atom, Difference, Equal, Exists, ForAll, Iff, Implies,
                               Intersect, Less, Named, Not, Or, SameSize, Subset, Sum, Union,
                               Unit, Universe, Var, Zero)

VAR_NAMES = ("x", "y", "z", "w1", "v_2")


def small_sets():
    return periodic_sets(max_modulus=4, max_exception=6)


def terms(names=VAR_NAMES):
    leaves = st.one_of(
        st.sampled_from(names).map(Var),
        st.just(Zero()),
        st.just(Universe()),
        small_sets().map(Named),
    )
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(Union, inner, inner),
            st.builds(Intersect, inner, inner),
            st.builds(Difference, inner, inner),
        ),
        max_leaves=4,
    )


def atomic_formulas(names=VAR_NAMES):
    t = terms(names)
    return st.one_of(
        st.builds(Subset, t, t), st.builds(Less, t, t), st.builds(SameSize, t, t),
        st.builds(Equal, t, t), st.builds(Sum, t, t, t), st.builds(Unit, t), st.builds(Atom, t),
    )


def formulas(names=VAR_NAMES, max_leaves=6):
    def extend(inner):
        parts = st.lists(inner, min_size=2, max_size=3).map(tuple)
        return st.one_of(
            st.builds(Not, inner),
            st.builds(And, parts),
            st.builds(Or, parts),
            st.builds(Implies, inner, inner),
            st.builds(Iff, inner, inner),
            st.builds(ForAll, st.sampled_from(names), inner),
            st.builds(Exists, st.sampled_from(names), inner),
        )

    return st.recursive(atomic_formulas(names), extend, max_leaves=max_leaves)


def depth(phi):
    children = []
    if isinstance(phi, (Not,)):
        children = [phi.body]
    elif isinstance(phi, (And, Or)):
        children = list(phi.parts)
    elif isinstance(phi, (Implies, Iff)):
        children = [phi.left, phi.right]
    elif isinstance(phi, (ForAll, Exists)):
        children = [phi.body]
    return 1 + max((depth(c) for c in children), default=0)


def ground_terms():
    return st.recursive(
        st.one_of(st.just(Zero()), st.just(Universe()), small_sets().map(Named)),
        lambda inner: st.one_of(
            st.builds(Union, inner, inner),
            st.builds(Intersect, inner, inner),
            st.builds(Difference, inner, inner),
        ),
        max_leaves=4,
    )


def ground_atomic_formulas():
    t = ground_terms()
    return st.one_of(
        st.builds(Subset, t, t), st.builds(Less, t, t), st.builds(SameSize, t, t),
        st.builds(Equal, t, t), st.builds(Sum, t, t, t), st.builds(Unit, t), st.builds(Atom, t),
    )


def ground_formulas(max_leaves=4):
    """Quantifier-free sentences over named sets."""
    def extend(inner):
        parts = st.lists(inner, min_size=2, max_size=3).map(tuple)
        return st.one_of(
            st.builds(Not, inner), st.builds(And, parts), st.builds(Or, parts),
            st.builds(Implies, inner, inner), st.builds(Iff, inner, inner),
        )

    return st.recursive(ground_atomic_formulas(), extend, max_leaves=max_leaves)


# -- acceptance report -------------------------------------------------------

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
