"""Exact computations for intersection motives of surfaces with contracted curves.

The package is organised like a small numerical library:

- ``exact``   rationals, real quadratic fields, rational matrices, k* (x) Q classes
- ``motive``  projector onto the exceptional lattice, IH^2, Kunneth data, Murre
  correction and the hard Lefschetz check
- ``divisor`` curve configurations, dual graphs, cycle spaces and Euler numbers
- ``pic``     degree-zero bundles on a configuration, holonomy and the
  Kummer-Chern-Eisenstein class
- ``cusp``    minus continued fractions, cusp cycles and fundamental units
- ``io``      versioned JSON documents
"""

from .errors import (
    BrokenWalk,
    ComputationError,
    DegenerateGram,
    FieldMismatch,
    HypothesisViolated,
    IHMotiveError,
    NotIrrational,
    NotSquarefree,
    NotSymmetric,
    ParseError,
    PreconditionFailed,
    ShapeMismatch,
    SingularMatrix,
    SupportAtNode,
    UnknownComponentId,
    ValidationError,
    ZeroBase,
)
from .exact import (
    QF,
    KStarClass,
    QuadraticFieldElement,
    RationalMatrix,
    bilinear,
    block_diag,
    inertia,
    is_negative_definite,
    kstar_equal,
    mat_kernel,
    mat_solve,
    quad_ops,
)
from .motive import (
    SurfaceDatum,
    blow_up,
    degree_check,
    gram_matrix,
    hard_lefschetz_check,
    ih_decomposition,
    kunneth_betti,
    murre_correct,
    projector_p,
    restricted_form,
    signature,
)
from .divisor import (
    INF,
    Component,
    CurveConfiguration,
    Node,
    cech_check,
    dual_graph,
    euler_char_compact,
    euler_char_divisor,
    euler_char_surface,
    fundamental_cycles,
    motive_dims,
    polygon,
    subdivide,
)
from .pic import (
    ConfigLineBundle,
    KCEInput,
    cl_kce,
    coboundary_reduce,
    edge_transitions,
    holonomy,
    orthogonal_correction,
    pic_group_law_check,
    pic_prime_class,
)
from .cusp import (
    cusp_cycle,
    cusp_surface,
    cycle_gram,
    fundamental_unit,
    minus_cf,
    reduced_seed,
    unit_period_check,
)
from .selfcheck import run_selfcheck

__version__ = "0.1.0"

__all__ = [
    "BrokenWalk",
    "ComputationError",
    "DegenerateGram",
    "FieldMismatch",
    "HypothesisViolated",
    "IHMotiveError",
    "NotIrrational",
    "NotSquarefree",
    "NotSymmetric",
    "ParseError",
    "PreconditionFailed",
    "ShapeMismatch",
    "SingularMatrix",
    "SupportAtNode",
    "UnknownComponentId",
    "ValidationError",
    "ZeroBase",
    "QF",
    "KStarClass",
    "QuadraticFieldElement",
    "RationalMatrix",
    "bilinear",
    "block_diag",
    "inertia",
    "is_negative_definite",
    "kstar_equal",
    "mat_kernel",
    "mat_solve",
    "quad_ops",
    "SurfaceDatum",
    "blow_up",
    "degree_check",
    "gram_matrix",
    "hard_lefschetz_check",
    "ih_decomposition",
    "kunneth_betti",
    "murre_correct",
    "projector_p",
    "restricted_form",
    "signature",
    "INF",
    "Component",
    "CurveConfiguration",
    "Node",
    "cech_check",
    "dual_graph",
    "euler_char_compact",
    "euler_char_divisor",
    "euler_char_surface",
    "fundamental_cycles",
    "motive_dims",
    "polygon",
    "subdivide",
    "ConfigLineBundle",
    "KCEInput",
    "cl_kce",
    "coboundary_reduce",
    "edge_transitions",
    "holonomy",
    "orthogonal_correction",
    "pic_group_law_check",
    "pic_prime_class",
    "cusp_cycle",
    "cusp_surface",
    "cycle_gram",
    "fundamental_unit",
    "minus_cf",
    "reduced_seed",
    "unit_period_check",
    "run_selfcheck",
]
