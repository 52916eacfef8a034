"""fracon: numeric verification of local fractional convexity inequalities.

The package evaluates local fractional integrals and derivatives on two
independent routes (an exact monomial table and graded Gauss--Legendre
quadrature of the kernel form), searches for counterexamples to
generalized strong eta-convexity, and measures every link of the
Hermite--Hadamard and Fejer inequality chains with signed gaps.  Nothing
is assumed from theory: each claimed inequality is checked numerically
and reported honestly, including the documented divergence of the
magnitude carrier's additive embedding for alpha < 1.
"""

from .calculus import (
    EXACT,
    NUMERIC,
    BackendKind,
    CrosscheckReport,
    DerivativeMode,
    IntegralBackend,
    IntegrationError,
    QuadResult,
    backend_crosscheck,
    lf_derivative,
    lf_integral,
    lf_integral_changed,
    rl_integrate,
)
from .convexity import (
    ConvexityReport,
    Counterexample,
    MinimumConditionReport,
    NecessaryReport,
    SymmetryError,
    SymmetryReport,
    certify_gsc,
    check_eta_necessary,
    check_symmetry,
    defect,
    estimate_eta_sup,
    minimum_condition_check,
)
from .expr import (
    EtaSpec,
    EvalError,
    FunctionSpec,
    GPoly,
    NotPolynomial,
    ParseError,
    WeightSpec,
    evaluate,
    normalize,
    parse,
    pretty,
)
from .fractal_scalar import (
    AlphaContext,
    AxiomRow,
    FractalScalar,
    GammaDomainError,
    IsoFractal,
    TagMismatchError,
    axiom_conformance,
    embed,
    fs_arith,
    fs_cmp,
    gamma,
    iso_arith,
)
from .inequalities import (
    ConsistencyCheck,
    ConsistencyReport,
    FejerReport,
    HHReport,
    LinkStatus,
    fejer_terms,
    hh_fejer_consistency,
    hh_terms,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaContext",
    "AxiomRow",
    "BackendKind",
    "ConsistencyCheck",
    "ConsistencyReport",
    "ConvexityReport",
    "Counterexample",
    "CrosscheckReport",
    "DerivativeMode",
    "EXACT",
    "EtaSpec",
    "EvalError",
    "FejerReport",
    "FractalScalar",
    "FunctionSpec",
    "GPoly",
    "GammaDomainError",
    "HHReport",
    "IntegralBackend",
    "IntegrationError",
    "IsoFractal",
    "LinkStatus",
    "MinimumConditionReport",
    "NUMERIC",
    "NecessaryReport",
    "NotPolynomial",
    "ParseError",
    "QuadResult",
    "SymmetryError",
    "SymmetryReport",
    "TagMismatchError",
    "WeightSpec",
    "axiom_conformance",
    "backend_crosscheck",
    "certify_gsc",
    "check_eta_necessary",
    "check_symmetry",
    "defect",
    "embed",
    "estimate_eta_sup",
    "evaluate",
    "fejer_terms",
    "fs_arith",
    "fs_cmp",
    "gamma",
    "hh_fejer_consistency",
    "hh_terms",
    "iso_arith",
    "lf_derivative",
    "lf_integral",
    "lf_integral_changed",
    "minimum_condition_check",
    "normalize",
    "parse",
    "pretty",
    "rl_integrate",
    "__version__",
]
