"""p-gradients of finitely presented groups, computed exactly over the rationals."""

from .chaser import BudgetLedger, Trajectory, chase, check_limit_lemma
from .corpus import load
from .cosets import CosetTable, descend, is_normal, orbit_transversal, standardize, todd_coxeter, trace
from .errors import (EnumerationError, IntegrityError, NonInvariantFunctionalError, NotSaturatedError,
                     PresentationSyntaxError)
from .fp_linalg import FpMatrix, Functional, hyperplanes, invariant_hyperplanes, nullspace, rank, rref
from .gradient import (GradientEstimate, estimate, finite_p_gradient, finite_rank_gradient, relative_estimate)
from .lattice import Lattice, LatticeNode, children, enumerate_lattice
from .quotient_ops import (CertifiedValue, certify_finite, certify_free, certify_via_free_subgroup,
                           check_quotient_bound, pi_H_presentation, quotient_by_power)
from .schreier import dp, mod_p_data, rewrite, schreier_data, subgroup_presentation
from .words import Presentation, Word, commutator, invert, multiply, parse_presentation, power, reduce

__all__ = [
    "BudgetLedger", "CertifiedValue", "CosetTable", "EnumerationError", "FpMatrix", "Functional",
    "GradientEstimate", "IntegrityError", "Lattice", "LatticeNode", "NonInvariantFunctionalError",
    "NotSaturatedError", "Presentation", "PresentationSyntaxError", "Trajectory", "Word", "certify_finite",
    "certify_free", "certify_via_free_subgroup", "chase", "check_limit_lemma", "check_quotient_bound",
    "children", "commutator", "descend", "dp", "enumerate_lattice", "estimate", "finite_p_gradient",
    "finite_rank_gradient", "hyperplanes", "invariant_hyperplanes", "invert", "is_normal", "load",
    "mod_p_data", "multiply", "nullspace", "orbit_transversal", "parse_presentation", "pi_H_presentation",
    "power", "quotient_by_power", "rank", "reduce", "relative_estimate", "rewrite", "rref", "schreier_data",
    "standardize", "subgroup_presentation", "todd_coxeter", "trace",
]
