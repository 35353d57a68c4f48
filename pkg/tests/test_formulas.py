import pytest
from hypothesis import assume, given, settings

from classize.errors import DomainError, ParseError
from classize.formulas import (And, Atom, Difference, Equal, Exists, ForAll, Iff, Implies,
                               Intersect, Less, Named, Not, Or, SameSize, Subset, Sum, Union,
                               Unit, Universe, Var, Zero, fold, free_vars, quantifier_count,
                               render, universal_closure)
from classize.parser import parse, parse_set, parse_term
from classize.periodic import EVENS, NATURALS, ODDS, congruence_class, finite_set
from classize.schemas import (BASIC_NAMES, adiv_sentence, atleast, basic_axioms, div_formula,
                              div_sentence, even_sentence, exactly, indisc, mod_formula,
                              mod_sentence, named_basic_axioms, odd_sentence, recognize,
                              times_formula)

from conftest import depth, formulas

x, y, z = Var("x"), Var("y"), Var("z")


class TestParse:
    def test_universal_subset(self):
        assert parse("all x (x sub I -> x < I)") == ForAll(
            "x", Implies(Subset(x, Universe()), Less(x, Universe())))

    def test_some_unit(self):
        assert parse("some x (unit(x))") == Exists("x", Unit(x))

    def test_sum_of_named(self):
        assert parse("sum(M(2,0), M(2,1), N)") == Sum(Named(EVENS), Named(ODDS), Named(NATURALS))

    def test_greater_rewritten(self):
        assert parse("x > y") == Less(y, x)

    def test_not_equal(self):
        assert parse("x != 0") == Not(Equal(x, Zero()))

    def test_conjunction_ends_top_level_term(self):
        assert parse("x < y & y < z") == And((Less(x, y), Less(y, z)))

    def test_intersection_inside_parentheses(self):
        assert parse("(x & y) < z") == Less(Intersect(x, y), z)
        assert parse("unit(x & y)") == Unit(Intersect(x, y))

    def test_tilde_roles(self):
        assert parse("~x ~ y") == SameSize(Difference(Universe(), x), y)
        assert parse("x ~ ~M(2,0)") == SameSize(x, Named(ODDS))

    def test_term_precedence(self):
        # ~ > & > \ > +
        assert parse_term("x + y \\ z & w") == Union(x, Difference(y, Intersect(z, Var("w"))))
        assert parse_term("x \\ y \\ z") == Difference(Difference(x, y), z)

    def test_connective_precedence(self):
        a, b, c = (Unit(v) for v in (x, y, z))
        assert parse("unit(x) | unit(y) & unit(z)") == Or((a, And((b, c))))
        assert parse("unit(x) -> unit(y) -> unit(z)") == Implies(a, Implies(b, c))
        assert parse("unit(x) -> unit(y) <-> unit(z)") == Iff(Implies(a, b), c)
        assert parse("!unit(x) & unit(y)") == And((Not(a), b))

    def test_quantifier_scope(self):
        assert parse("all x unit(x) & unit(y)") == And((ForAll("x", Unit(x)), Unit(y)))

    def test_ground_subterms_fold(self):
        assert parse("x < M(2,0) + M(2,1)") == Less(x, Named(NATURALS))
        assert parse("x < I \\ M(2,0)") == Less(x, Difference(Universe(), Named(EVENS)))

    def test_parenthesized_term_at_formula_start(self):
        assert parse("((x + y) + z) < x") == Less(Union(Union(x, y), z), x)

    def test_set_literals(self):
        assert parse_set("{}") == finite_set([])
        assert parse_set("M(4,1)+M(4,3)") == ODDS
        assert parse_set("~(M(3,0)+M(3,1))") == congruence_class(3, 2)

    @pytest.mark.parametrize("text, column", [
        ("all x (x <)", 11),
        ("x < y &", 8),
        ("x sub", 6),
        ("M(2,3) < x", 5),
        ("x < y $", 7),
        ("all sub (x < y)", 5),
    ])
    def test_errors_report_position(self, text, column):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.line == 1
        assert err.value.column == column

    def test_error_on_second_line(self):
        with pytest.raises(ParseError) as err:
            parse("all x (\n  x < )")
        assert (err.value.line, err.value.column) == (2, 7)

    def test_bare_number(self):
        with pytest.raises(ParseError):
            parse("x < 3")

    def test_set_parser_rejects_variables(self):
        with pytest.raises(ParseError):
            parse_set("M(2,0) + x")

    def test_free_variables_allowed(self):
        assert free_vars(parse("x < y")) == {"x", "y"}


class TestRender:
    def test_round_trip_examples(self):
        for text in ["all x (x sub I -> x < I)", "some x (unit(x))", "sum(M(2,0), M(2,1), N)",
                     "(x & y) < z & y < x", "!!x = 0", "(M(2,0) \\ {0}) ~ x"]:
            assert parse(render(parse(text))) == parse(text)

    @settings(max_examples=1000)
    @given(formulas())
    def test_parse_render_identity(self, phi):
        assume(depth(phi) <= 6)
        assert parse(render(phi)) == fold(phi)


class TestSchemas:
    def test_even_shape(self):
        x1, x2 = Var("x1"), Var("x2")
        assert even_sentence() == Exists("x1", Exists("x2", And((
            SameSize(x1, x2), Equal(Intersect(x1, x2), Zero()), Equal(Union(x1, x2), Universe())))))

    def test_odd_shape(self):
        x1, x2, y1 = Var("x1"), Var("x2"), Var("y1")
        assert odd_sentence() == Exists("x1", Exists("x2", Exists("y1", And((
            SameSize(x1, x2), Atom(y1), Equal(Intersect(x1, x2), Zero()),
            Equal(Intersect(Union(x1, x2), y1), Zero()),
            Equal(Union(Union(x1, x2), y1), Universe()))))))

    def test_mod_one(self):
        x1 = Var("x1")
        assert mod_sentence(1, 0) == Exists("x1", And((SameSize(x1, x1), Equal(x1, Universe()))))

    @pytest.mark.parametrize("n, m", [(2, 2), (3, 5), (0, 0), (2, -1)])
    def test_mod_domain(self, n, m):
        with pytest.raises(DomainError):
            mod_sentence(n, m)

    @pytest.mark.parametrize("n, m", [(n, m) for n in range(1, 6) for m in range(n)])
    def test_mod_quantifier_count(self, n, m):
        phi = mod_sentence(n, m)
        assert quantifier_count(phi) == n + m
        assert not free_vars(phi)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_div(self, n):
        phi = div_sentence(n)
        if n == 1:
            assert phi == mod_sentence(1, 0)
        else:
            assert phi == Or(tuple(mod_sentence(n, m) for m in range(n)))
            assert len(phi.parts) == n

    def test_atleast_and_exactly(self):
        assert atleast(1) == Exists("x1", Atom(Var("x1")))
        assert exactly(2) == And((atleast(2), Not(atleast(3))))
        x1, x2 = Var("x1"), Var("x2")
        assert atleast(2) == Exists("x1", Exists("x2", And((Atom(x1), Atom(x2),
                                                             Not(Equal(x1, x2))))))

    @pytest.mark.parametrize("fn", [div_sentence, atleast, exactly, adiv_sentence])
    def test_domain_errors(self, fn):
        with pytest.raises(DomainError):
            fn(0)

    def test_times_zero(self):
        phi = times_formula(0, "x", "y")
        assert phi == Exists("t0", And((Equal(Var("t0"), Zero()), Equal(Var("t0"), y))))

    def test_times_chain(self):
        phi = times_formula(2, "x", "y")
        assert quantifier_count(phi) == 3
        assert free_vars(phi) == {"x", "y"}

    def test_mod_formula_free_variable(self):
        for n in range(1, 4):
            for m in range(n):
                assert free_vars(mod_formula(n, m, "z")) == {"z"}
        # internal names never capture the argument
        for name in ("a", "u", "v", "w", "p0", "q1"):
            assert free_vars(mod_formula(3, 2, name)) == {name}

    def test_div_formula_and_adiv(self):
        assert div_formula(1, "z") == mod_formula(1, 0, "z")
        assert adiv_sentence(2) == ForAll("x", div_formula(2, "x"))
        assert not free_vars(adiv_sentence(3))

    def test_indisc(self):
        assert indisc(x, y) == ForAll("z", And((Iff(Less(z, x), Less(z, y)),
                                               Iff(Less(x, z), Less(y, z)))))
        assert indisc(Var("z"), y).var != "z"

    def test_basic_list(self):
        axioms = basic_axioms()
        assert len(axioms) == 19 == len(BASIC_NAMES)
        assert all(not free_vars(a) for a in axioms)
        named = named_basic_axioms()
        assert named["SUBSET"] == ForAll("x", ForAll("y", Implies(Subset(x, y), Less(x, y))))
        assert named["TRICH"] == ForAll("x", ForAll("y", Or((Less(x, y), SameSize(x, y),
                                                            Less(y, x)))))

    def test_universal_closure_order(self):
        phi = universal_closure(Less(y, Union(x, y)))
        assert phi == ForAll("y", ForAll("x", Less(y, Union(x, y))))

    def test_every_generated_sentence_parses_back(self):
        sentences = [mod_sentence(3, 2), div_sentence(3), exactly(3), adiv_sentence(2)]
        sentences += basic_axioms()
        for phi in sentences:
            assert parse(render(phi)) == phi


class TestRecognize:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_families(self, n):
        assert recognize(atleast(n)) == ("atleast", n)
        assert recognize(exactly(n)) == ("exactly", n)
        assert recognize(div_sentence(n)) == (("div", n) if n > 1 else ("mod", 1, 0))
        assert recognize(adiv_sentence(n)) == ("adiv", n)
        for m in range(n):
            assert recognize(mod_sentence(n, m)) == ("mod", n, m)

    def test_lookalikes(self):
        assert recognize(parse("some x1 (atom(x1) & unit(x1))")) is None
        assert recognize(parse("some x (unit(x))")) is None
        assert recognize(parse("all x (x < I)")) is None
