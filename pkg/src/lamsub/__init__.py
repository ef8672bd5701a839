"""lamsub: a lambda-calculus rewriting workbench with a subtractive extension
rule, plus finite-model analysis of subtractive algebras and the separation
properties of their topologies."""

from .terms import (
    Abs,
    App,
    B_TERM,
    C_TERM,
    CURRY_Y,
    FLS,
    Free,
    Hole,
    IDENT,
    OMEGA,
    ParseError,
    THETA,
    TRU,
    Term,
    Var,
    app,
    lam,
    parse,
    parse_named,
    pretty,
    theta_n,
)
from .verdict import PROVED, REFUTED, UNKNOWN, Verdict
from .reduction import (
    BETA,
    Budget,
    ETA,
    PI,
    ReductionGraph,
    head_status,
    joinable,
    normalize,
    reduction_graph,
    redexes,
)
from .pi import (
    FactorizationError,
    PiOracle,
    THETA_GRAPH,
    TraceStep,
    betaetapi_graph,
    factorize,
    lambda_pi_eq,
    plotkin_simpson_terms,
    validate_trace,
)
from .labelled import (
    Leaf,
    LinkRefuted,
    ProofSkeleton,
    TransformResult,
    erase,
    lift,
    superpose,
    transform_proof,
)
from .algebra import (
    AlgTerm,
    FiniteAlgebra,
    compatible_closure,
    enumerate_compatible_partial_orders,
    find_malcev_terms,
    find_subtractive_witnesses,
    is_0_symmetric,
    is_0_unorderable,
    validate_subtractive,
)
from .topology import (
    FiniteSpace,
    check_top_algebra,
    closure,
    discrete,
    enumerate_topologies,
    gamma_iteration,
    indiscrete,
    separated,
    sierpinski,
    specialization,
    subtractive_separation_suite,
    validate_space,
)

__version__ = "0.1.0"
