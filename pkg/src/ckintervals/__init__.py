"""Exact interval algebra in C(K) for discrete spaces and convergent sequences.

Spaces are ``Discrete(n)`` or ``AlphaN(m, k)`` (a convergent sequence with
limit ``x0`` and residue classes mod ``k``).  Fields carry exact rational
(or quadratic-surd) values; order intervals ``[f, g]`` support sums, signed
products, square roots, a continuous selector for convex combinations of
products, and certified counterexamples.
"""

from .errors import (
    CKError,
    EmptyInterval,
    NegativeResult,
    NoSquareRoot,
    NotInProduct,
    NotSigned,
    PreconditionError,
    SpaceMismatch,
)
from .exact import Germ, Surd, exact_sqrt, format_number, parse_number
from .feasible import FeasibleSet, feasible_factor_values
from .interval import (
    BoundingPair,
    FnInterval,
    bounding_pair,
    canonicalize,
    constant_interval,
    contains,
    factor_in_signed_product,
    insert_continuous,
    interval_equal,
    minkowski_sum,
    product_envelope,
    real_interval_product,
    scalar_mul,
    signed_case,
    signed_product,
)
from .obstruction import (
    Certificate,
    certify_nonfactorable,
    feasible_h_values,
    tail_cluster_gap,
    thm32_closure_witness,
    thm32_instance,
    thm33_instance,
    thm36_instance,
)
from .selector import QuadZ, convex_witness, midpoint_factorization, selector_P, selector_point
from .space import (
    X0,
    AlphaN,
    Discrete,
    ScalarField,
    SpaceModel,
    constant,
    discrete_field,
    eval_field,
    field_add,
    field_div,
    field_max,
    field_min,
    field_mul,
    field_scale,
    field_sqrt,
    field_sub,
    from_evaluator,
    is_continuous,
    is_lsc,
    is_usc,
    lsc_envelope,
    make_space,
    seq_field,
    sup_norm_dist,
    tail_liminf,
    tail_limsup,
    usc_envelope,
)
from .sqrt import SqrtPair, hull_sqrt_factor, interval_sqrt, necessity_check, real_sqrt_roots, verify_square

__version__ = "0.1.0"
