"""Command-line interface: ``classize <subcommand> ...``.

Exit status: 0 success or true, 1 false, 2 usage or parse error, 3 domain
error.  ``--json`` prints ``{command, inputs, result, error}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import schemas
from .density import (alternating_pair, density, density_estimate, oracle, outpaces,
                      relative_density)
from .errors import ClassizeError, DomainError, EvaluationError, ParseError
from .forced import forced_in_ultrafilter_models
from .formulas import Var, render
from .models import DEFAULT_BUDGET, cs_check, evaluate
from .nodes import Node, depth_partition, node_for, node_set, node_value, nm_partition
from .parser import parse_formula, parse_set
from .periodic import render as render_set
from .remainders import is_congruous, parse_fspec, solve
from .sizes import SizedUniverse

__all__ = ["main", "build_parser"]


class _Outcome:
    def __init__(self, result, text: str, status: int = 0):
        self.result, self.text, self.status = result, text, status


def _bool(value: bool) -> _Outcome:
    return _Outcome(value, "true" if value else "false", 0 if value else 1)


def _size_json(s):
    return {"rho": str(s.rho), "delta": str(s.delta)}


def _universe(args) -> SizedUniverse:
    return SizedUniverse(parse_fspec(args.f))


# -- handlers ----------------------------------------------------------------

def _cmd_size(args):
    s = _universe(args).theta(parse_set(args.set))
    return _Outcome(_size_json(s), str(s))


def _cmd_cmp(args):
    u = _universe(args)
    x, y = parse_set(args.x), parse_set(args.y)
    verdict = u.compare(x, y)
    if not args.op:
        return _Outcome(str(verdict), str(verdict))
    if outpaces(x, y):
        pace = "Larger"
    elif outpaces(y, x):
        pace = "Smaller"
    else:
        pace = "None"
    result = {"theta": str(verdict), "outpacing": pace}
    return _Outcome(result, f"theta: {verdict}\noutpacing: {pace}")


def _cmd_sum(args):
    u = _universe(args)
    return _bool(u.sum_holds(parse_set(args.x), parse_set(args.y), parse_set(args.z)))


def _cmd_eval(args):
    phi = parse_formula(args.formula)
    return _bool(evaluate(args.n, phi, budget=args.budget, fast=not args.no_fast))


def _cmd_cs_check(args):
    phi = parse_formula(args.formula)
    verdict = cs_check(phi, args.max_n, args.budget)
    result = {"verdict": verdict.kind, "witness_n": verdict.n, "pattern": None}
    return _Outcome(result, str(verdict), 0 if verdict.holds else 1)


def _cmd_forced(args):
    verdict = forced_in_ultrafilter_models(parse_formula(args.formula))
    pattern = render_set(verdict.index_set)
    result = {"verdict": verdict.kind, "value": verdict.value,
              "witness_n": None, "pattern": pattern}
    return _Outcome(result, str(verdict), 1 if verdict.value is False else 0)


def _gen_formula(args):
    kind, nums = args.kind, args.args
    need = {"mod": 2, "div": 1, "atleast": 1, "exactly": 1, "adiv": 1, "even": 0,
            "odd": 0, "basic": 0, "times": 3, "modf": 3, "divf": 2}
    if kind not in need:
        raise ParseError(f"unknown schema {kind!r}; choose from {', '.join(need)}")
    if len(nums) != need[kind]:
        raise ParseError(f"gen {kind} takes {need[kind]} argument(s)")
    if kind == "times":
        return [schemas.times_formula(int(nums[0]), Var(nums[1]), Var(nums[2]))]
    if kind == "modf":
        return [schemas.mod_formula(int(nums[0]), int(nums[1]), Var(nums[2]))]
    if kind == "divf":
        return [schemas.div_formula(int(nums[0]), Var(nums[1]))]
    if kind == "basic":
        return schemas.basic_axioms()
    if kind == "even":
        return [schemas.even_sentence()]
    if kind == "odd":
        return [schemas.odd_sentence()]
    try:
        ints = [int(a) for a in nums]
    except ValueError:
        raise ParseError(f"gen {kind} needs integer arguments") from None
    fn = {"mod": schemas.mod_sentence, "div": schemas.div_sentence, "atleast": schemas.atleast,
          "exactly": schemas.exactly, "adiv": schemas.adiv_sentence}[kind]
    return [fn(*ints)]


def _cmd_gen(args):
    texts = [render(phi) for phi in _gen_formula(args)]
    if args.kind == "basic":
        names = list(schemas.BASIC_NAMES)
        return _Outcome(dict(zip(names, texts)),
                        "\n".join(f"{n}: {t}" if args.label else t for n, t in zip(names, texts)))
    return _Outcome(texts[0], texts[0])


def _cmd_congruous(args):
    f = parse_fspec(args.f)
    ok = is_congruous(f)
    return _Outcome(ok, "congruous" if ok else "incongruous", 0 if ok else 1)


def _cmd_solve(args):
    f = parse_fspec(args.f)
    sol = solve(f)
    if sol is None:
        return _Outcome(None, "no solution", 1)
    r, mod = sol
    return _Outcome({"residue": r, "modulus": mod}, f"k = {r} (mod {mod})")


def _cmd_outpaces(args):
    return _bool(outpaces(parse_set(args.x), parse_set(args.y)))


def _cmd_alternating(args):
    return _bool(alternating_pair(parse_set(args.x), parse_set(args.y)))


def _cmd_density(args):
    x = parse_set(args.set)
    value = relative_density(x, parse_set(args.within)) if args.within else density(x)
    return _Outcome(str(value), str(value))


def _cmd_density_est(args):
    verdict = density_estimate(oracle(args.oracle), args.horizon)
    result = {"verdict": verdict.kind,
              "estimate": None if verdict.estimate is None else str(verdict.estimate),
              "bound": verdict.bound,
              "ladder": [[i, float(v)] for i, v in verdict.values]}
    return _Outcome(result, str(verdict))


def _parse_node(text: str) -> Node:
    try:
        entries = tuple(int(t) for t in text.strip("<>() ").split(","))
    except ValueError:
        raise ParseError(f"node must be a comma list of naturals, got {text!r}") from None
    return Node(entries)


def _cmd_node(args):
    p = _parse_node(args.node)
    x = node_set(p)
    size = _universe(args).theta(x)
    result = {"node": list(p.entries), "set": render_set(x), "value": node_value(p),
              "size": _size_json(size)}
    return _Outcome(result, f"{p}  set {x}  value {node_value(p)}  size {size}")


def _cmd_node_for(args):
    p = node_for(args.n)
    return _Outcome(list(p.entries), str(p))


def _cmd_partition(args):
    entries = depth_partition(parse_fspec(args.f), args.depth)
    rows = [{"node": list(e.node.entries), "set": render_set(e.set), "size": _size_json(e.size),
             "charmed": e.charmed} for e in entries]
    lines = [f"{e.node}  {e.set}  {e.size}{'  charmed' if e.charmed else ''}" for e in entries]
    return _Outcome(rows, "\n".join(lines))


def _cmd_split(args):
    f = parse_fspec(args.f)
    u = SizedUniverse(f)
    pieces = nm_partition(f, parse_set(args.set), args.into, n=args.n)
    sizes = [u.theta(p) for p in pieces]
    rows = [{"set": render_set(p), "size": _size_json(s)} for p, s in zip(pieces, sizes)]
    return _Outcome(rows, "\n".join(f"{p}  {s}" for p, s in zip(pieces, sizes)))


# -- parser --------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


SET_HELP = 'set expression, e.g. "M(2,0)+{1} \\ {4}", "~M(3,0)", "N", "empty"'
F_HELP = 'remainder function: "zero" or a list such as "2:1,4:3" (default: zero)'


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print {command, inputs, result, error} as JSON")

    parser = _Parser(prog="classize", parents=[],
                     description="Exact class-size computations on periodic sets and finite models.")
    parser.add_argument("--json", action="store_true", default=False,
                        help="print {command, inputs, result, error} as JSON")
    sub = parser.add_subparsers(dest="command", metavar="<command>", parser_class=_Parser)

    def add(name, handler, help_text, description):
        p = sub.add_parser(name, help=help_text, description=description, parents=[common])
        p.set_defaults(handler=handler)
        return p

    p = add("size", _cmd_size, "theta_f size of a set",
            "Size <rho, delta> under theta_f: at modulus n each residue i contributes "
            "<1/n, (n-f(n))/n> when i < f(n) and <1/n, -f(n)/n> otherwise; added and "
            "removed exceptions shift delta by +1 and -1 each.")
    p.add_argument("--f", default="zero", help=F_HELP)
    p.add_argument("set", help=SET_HELP)

    p = add("cmp", _cmd_cmp, "compare two sets by theta_f",
            "Smaller / SameSize / Larger by the lexicographic order of theta_f sizes. "
            "With --op the outpacing judgment (eventually more members in every initial "
            "segment) is reported next to it.")
    p.add_argument("--f", default="zero", help=F_HELP)
    p.add_argument("--op", action="store_true", help="also report the outpacing judgment")
    p.add_argument("x", help=SET_HELP)
    p.add_argument("y", help=SET_HELP)

    p = add("sum", _cmd_sum, "does theta(z) = theta(x) + theta(y)",
            "The SUM relation of the sized universe: theta_f(z) = theta_f(x) + theta_f(y).")
    p.add_argument("--f", default="zero", help=F_HELP)
    for name in ("x", "y", "z"):
        p.add_argument(name, help=SET_HELP)

    p = add("eval", _cmd_eval, "truth of a sentence in A_n",
            "Truth in the standard finite model over the power set of an n-element basis, "
            "with < and ~ read as smaller and equal cardinality.")
    p.add_argument("--n", type=_positive, required=True, help="basis size")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                   help="maximum number of atomic evaluations")
    p.add_argument("--no-fast", action="store_true",
                   help="search recognized MOD/DIV/ATLEAST/EXACTLY sentences instead of "
                        "answering them arithmetically")
    p.add_argument("formula")

    p = add("cs-check", _cmd_cs_check, "bounded check over A_1 .. A_N",
            "Evaluate a sentence in every standard finite model up to basis size N and report "
            "Holds-up-to(N), the first Counterexample(n) or BudgetExceeded(n).")
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("formula")

    p = add("forced", _cmd_forced, "verdict shared by all ultrafilter models",
            "For a ground quantifier-free sentence, the set of j at which it holds once named "
            "sets are truncated to members <= j; finite means Forced(false), cofinite "
            "Forced(true), anything else Contingent(pattern).")
    p.add_argument("formula")

    p = add("gen", _cmd_gen, "print a schema instance",
            "Print a generated sentence: mod N M | div N | atleast N | exactly N | adiv N | "
            "even | odd | times N X Y | modf N M Z | divf N Z | basic.")
    p.add_argument("kind")
    p.add_argument("args", nargs="*")
    p.add_argument("--label", action="store_true", help="prefix basic axioms with their names")

    p = add("congruous", _cmd_congruous, "is a remainder function congruous",
            "Congruous means gcd(i, j) divides f(i) - f(j) for all i, j in dom f.")
    p.add_argument("--f", required=True, help=F_HELP)

    p = add("solve", _cmd_solve, "solve k = f(n) (mod n) for all n in dom f",
            "Generalized Chinese remainder solution: all k congruent to f(n) modulo n for "
            "every n in dom f, as one residue modulo the lcm of the domain.")
    p.add_argument("--f", required=True, help=F_HELP)

    p = add("outpaces", _cmd_outpaces, "does x outpace y",
            "x outpaces y when from some point on every initial segment {0..m} holds strictly "
            "more members of x than of y; decided exactly for periodic sets.")
    p.add_argument("x", help=SET_HELP)
    p.add_argument("y", help=SET_HELP)

    p = add("alternating", _cmd_alternating, "are x and y an alternating pair",
            "x_1 < y_1 < x_2 < y_2 < ... for the increasing enumerations of x and y.")
    p.add_argument("x", help=SET_HELP)
    p.add_argument("y", help=SET_HELP)

    p = add("density", _cmd_density, "asymptotic density of a periodic set",
            "Density beta/alpha of the periodic core; with --in, the density relative to a "
            "superset.")
    p.add_argument("set", help=SET_HELP)
    p.add_argument("--in", dest="within", help="reference superset")

    p = add("density-est", _cmd_density_est, "estimate density of an oracle set",
            "Sample fract(x, i) = |x & {0..i}| / i at i = 100 * sqrt(10)^k up to the horizon: "
            "Converges if the last three samples agree within 1e-2, Diverges if the second "
            "half spans more than 0.3, else Unknown.  Oracles: squares, blocks1010, evens, "
            "odds, greedy:P/Q.")
    p.add_argument("--oracle", required=True)
    p.add_argument("--horizon", type=int, required=True)

    p = add("node", _cmd_node, "node set, value and size of a node",
            "A node <n1,...,nk> with ni < i addresses the class M(k!, sum ni*(i-1)!).")
    p.add_argument("node", help="comma list, e.g. 0,1,2")
    p.add_argument("--f", default="zero", help=F_HELP)

    p = add("node-for", _cmd_node_for, "shortest node with a given value",
            "Factorial-base digits of n as the shortest node whose value is n.")
    p.add_argument("n", type=_natural)

    p = add("partition", _cmd_partition, "all nodes of a given depth",
            "The d! node sets of depth d with their theta_f sizes; those with residue below "
            "f(d!) are charmed, one atom larger than the others.")
    p.add_argument("--f", default="zero", help=F_HELP)
    p.add_argument("--depth", type=_positive, required=True)

    p = add("split", _cmd_split, "split a union of n-classes into m near-equal pieces",
            "Refine each n-class into m classes modulo nm and deal the charmed ones out "
            "round-robin, so piece sizes differ by at most one atom.")
    p.add_argument("--f", default="zero", help=F_HELP)
    p.add_argument("--set", required=True, help=SET_HELP)
    p.add_argument("--into", type=_positive, required=True)
    p.add_argument("--n", type=_positive, default=None, help="modulus of the classes to refine")

    return parser


def _inputs(args) -> dict:
    skip = {"handler", "json", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        if want_json:
            print(json.dumps({"command": None, "inputs": argv, "result": None, "error": str(exc)}))
        else:
            print(exc, file=sys.stderr)
        return 2
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return 2
    status, result, error, text = 0, None, None, ""
    try:
        outcome = args.handler(args)
        status, result, text = outcome.status, outcome.result, outcome.text
    except ParseError as exc:
        status, error = 2, f"parse error: {exc}"
    except (DomainError, EvaluationError) as exc:
        status, error = 3, f"domain error: {exc}"
    except ClassizeError as exc:
        status, error = 3, str(exc)
    if args.json:
        print(json.dumps({"command": args.command, "inputs": _inputs(args),
                          "result": result, "error": error}, default=_jsonable))
    elif error:
        print(error, file=sys.stderr)
    else:
        print(text)
    return status


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


if __name__ == "__main__":
    sys.exit(main())
