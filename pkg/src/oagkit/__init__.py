"""Decision procedures and induction tooling for ordered divisible groups.

The public surface re-exports the pieces most callers need: exact scalars,
linear terms, first-order formulas with a parser and printer, structure
descriptions, quantifier elimination, one-dimensional definable sets, and
the induction / covering checks built on top of them.
"""

from .errors import (
    CoverAuditError,
    DegenerateIntervalError,
    DomainMismatchError,
    IllFormedSchemaError,
    InvalidCoverError,
    MissingAssignmentError,
    NotAFunctionError,
    NotASentenceError,
    NotQuantifierFreeError,
    OagError,
    ParseError,
    PredicateLeakError,
    ResourceLimitError,
    StructureFormatError,
    UnknownPredicateError,
)
from .scalar import (
    ONE,
    ZERO,
    QuadScalar,
    Rational,
    Scalar,
    compare,
    format_scalar,
    parse_scalar,
    rational_above,
    rational_below,
    rational_between,
)
from .terms import LinearTerm, Var
from .formulas import (
    And,
    Bottom,
    Eq0,
    Exists,
    Forall,
    Formula,
    Implies,
    Lt0,
    Not,
    Or,
    PredAtom,
    Top,
    alpha_equal,
    free_vars,
    fresh_var,
    make_and,
    make_or,
    substitute,
    to_nnf,
)
from .parser import parse_formula
from .printer import print_formula
from .structures import (
    PURE_Q,
    StructureSpec,
    bind_structure,
    in_domain,
    load_structure,
    parse_structure,
)
from .schemas import build_bci, build_dci
from .qe import (
    DEFAULT_MAX_NODES,
    decide,
    eliminate_all,
    eliminate_exists,
    evaluate,
    sample_point,
)
from .sets import (
    EMPTY_SET,
    FULL_LINE,
    CutReport,
    DefinableSet1D,
    OpenInterval,
    Point,
    PseudoFiniteReport,
    closure,
    complement,
    contains,
    cut_analysis,
    finite_points,
    from_components,
    interior,
    intersect,
    intervals,
    is_pseudo_finite,
    normalize,
    render_set,
    union,
)
from .induction import (
    DEFAULT_MAX_STEPS,
    CompactnessResult,
    DciReport,
    DefinableFamily,
    FamilyAudit,
    GapReport,
    SubcoverCertificate,
    UcontReport,
    check_bci,
    check_dci,
    compactness_certificate,
    completeness_audit,
    extract_subcover,
    family_audit,
    uniform_continuity_check,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "OagError",
    "DomainMismatchError",
    "ParseError",
    "StructureFormatError",
    "UnknownPredicateError",
    "PredicateLeakError",
    "ResourceLimitError",
    "NotASentenceError",
    "NotQuantifierFreeError",
    "MissingAssignmentError",
    "IllFormedSchemaError",
    "DegenerateIntervalError",
    "InvalidCoverError",
    "CoverAuditError",
    "NotAFunctionError",
    # scalars
    "Rational",
    "QuadScalar",
    "Scalar",
    "ZERO",
    "ONE",
    "compare",
    "parse_scalar",
    "format_scalar",
    "rational_between",
    "rational_below",
    "rational_above",
    # terms and formulas
    "Var",
    "LinearTerm",
    "Formula",
    "Top",
    "Bottom",
    "Lt0",
    "Eq0",
    "PredAtom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Exists",
    "Forall",
    "free_vars",
    "fresh_var",
    "substitute",
    "make_and",
    "make_or",
    "to_nnf",
    "alpha_equal",
    "parse_formula",
    "print_formula",
    # structures
    "StructureSpec",
    "PURE_Q",
    "parse_structure",
    "load_structure",
    "bind_structure",
    "in_domain",
    # schemas and elimination
    "build_dci",
    "build_bci",
    "DEFAULT_MAX_NODES",
    "eliminate_exists",
    "eliminate_all",
    "decide",
    "evaluate",
    "sample_point",
    # sets
    "DefinableSet1D",
    "Point",
    "OpenInterval",
    "EMPTY_SET",
    "FULL_LINE",
    "from_components",
    "union",
    "intersect",
    "complement",
    "closure",
    "interior",
    "intervals",
    "contains",
    "normalize",
    "render_set",
    "PseudoFiniteReport",
    "is_pseudo_finite",
    "finite_points",
    "CutReport",
    "cut_analysis",
    # induction and covering
    "DEFAULT_MAX_STEPS",
    "DciReport",
    "GapReport",
    "DefinableFamily",
    "FamilyAudit",
    "SubcoverCertificate",
    "CompactnessResult",
    "UcontReport",
    "check_dci",
    "check_bci",
    "completeness_audit",
    "family_audit",
    "extract_subcover",
    "compactness_certificate",
    "uniform_continuity_check",
]
