"""Exact class-size computations: periodic sets, theta_f sizes, finite models."""

from .density import (OracleSet, alternating_pair, density, density_estimate, oracle,
                      outpaces, outpaces_empirical, relative_density)
from .errors import (ClassizeError, DomainError, EvaluationError, ParseError, SizeUndefined,
                     UnsupportedFragment)
from .forced import ForcedVerdict, forced_in_ultrafilter_models, successor_set
from .formulas import free_vars, render
from .models import FiniteModel, SampleStructure, cs_check, evaluate, mod_truth_fast
from .nodes import Node, depth_partition, nm_partition, node_for, node_set, node_value
from .parser import parse, parse_formula, parse_set
from .periodic import (EMPTY, EVENS, NATURALS, ODDS, PeriodicSet, complement,
                       congruence_class, count_upto, difference, finite_set, intersect,
                       member, near, normalize, union)
from .remainders import ZERO, RemainderFn, is_congruous, mu, parse_fspec, restrict, solve
from .schemas import (adiv_sentence, atleast, basic_axioms, div_formula, div_sentence,
                      exactly, mod_formula, mod_sentence, times_formula)
from .sizes import Size, SizedUniverse, Verdict, compare, is_unit, size_add, size_less, sum_holds, theta

__version__ = "0.1.0"
