"""noethops: Noetherian differential operators over exact rational arithmetic.

Describe primary ideals of quotient rings R = Q[x]/N by finite sets of
differential operators into the reduced ring, verify such descriptions
exactly, and search for the minimal uniform shifts c making degree-truncated
differential colons of ideal powers (plain, integrally closed, or symbolic)
land back in the powers of a source ideal.
"""

from .closures import (
    NewtonPolyhedron,
    NonMonomialIdealError,
    bs_harness,
    monomial_closure_bruteforce_oracle,
    monomial_integral_closure,
    symb_harness,
    symbolic_power,
)
from .diffops import (
    DiffOp,
    OperatorSet,
    check_order_lemma,
    parse_operator,
    parse_operator_set,
)
from .groebner import (
    IdealHandle,
    RingSpec,
    buchberger,
    eliminate,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_sum,
    normal_form,
    polynomial_ring,
    saturate,
    standard_monomials,
)
from .noetherian import (
    ComponentMismatchError,
    NoetherianCertificate,
    NonRationalPointError,
    PrimaryComponent,
    combine_components,
    dual_space,
    noetherian_ops_primary,
    verify_noetherian_ops,
)
from .poly import (
    Block,
    GrevLex,
    Lex,
    Poly,
    PolyParseError,
    RationalFunction,
    monomial_compare,
    parse_polynomial,
)
from .uniformity import (
    ConstantReport,
    TruncatedSubspace,
    artin_rees_experiment,
    check_reverse,
    diff_colon,
    find_min_c,
    separating_operator,
    subspace_in_ideal,
    verify_filtration,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
