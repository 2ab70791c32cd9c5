"""Sign pattern minimum-rank toolkit.

Bounds with exact certificates for the minimum rank of sign patterns,
exact encodings between sign patterns and point-hyperplane configurations,
and rationalization of floating-point realizations into exact rational
witnesses.
"""

from .errors import (
    DomainError,
    FixtureCorrupt,
    NumericalDegeneracy,
    Overdetermined,
    PatternFormatError,
    PrecisionExhausted,
    RankMismatch,
    ResourceExhausted,
    SignRankError,
    SingularSystem,
    VerticalHyperplane,
)
from .exactnum import QuadElem, Rational, quad_sign, rational_round
from .geometry import (
    Configuration,
    OrientedHyperplane,
    avoid_vertical,
    dualize,
    encode_configuration,
    from_factorization,
    incidence_structure,
    is_simple,
    side,
    stack,
    translate,
)
from .pattern import (
    CondensationReport,
    EquivalenceWitness,
    MrBounds,
    MrBoundsOptions,
    SignPattern,
    condense,
    is_equivalent,
    is_mr1,
    is_mr2,
    is_sns,
    max_sns_submatrix,
    mr_bounds,
    term_rank,
)
from .realize import (
    RationalCertificate,
    Realization,
    SearchParams,
    has_direct_representation,
    normalize_factorization,
    rational_rank,
    rationalize,
    search_realization,
    solve_zero_columns,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FixtureCorrupt",
    "NumericalDegeneracy",
    "Overdetermined",
    "PatternFormatError",
    "PrecisionExhausted",
    "RankMismatch",
    "ResourceExhausted",
    "SignRankError",
    "SingularSystem",
    "VerticalHyperplane",
    "QuadElem",
    "Rational",
    "quad_sign",
    "rational_round",
    "Configuration",
    "OrientedHyperplane",
    "avoid_vertical",
    "dualize",
    "encode_configuration",
    "from_factorization",
    "incidence_structure",
    "is_simple",
    "side",
    "stack",
    "translate",
    "CondensationReport",
    "EquivalenceWitness",
    "MrBounds",
    "MrBoundsOptions",
    "SignPattern",
    "condense",
    "is_equivalent",
    "is_mr1",
    "is_mr2",
    "is_sns",
    "max_sns_submatrix",
    "mr_bounds",
    "term_rank",
    "RationalCertificate",
    "Realization",
    "SearchParams",
    "has_direct_representation",
    "normalize_factorization",
    "rational_rank",
    "rationalize",
    "search_realization",
    "solve_zero_columns",
]
