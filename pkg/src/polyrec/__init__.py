"""polyrec: an exact-arithmetic laboratory for polynomial sequences driven
by differential-difference recurrences.

The pipeline, end to end:

    recurrence  P_n = gamma P_{n-1} + m x P'_{n-1} + lag terms   (exact rows)
    families    named instances with closed-form EGF exponents
    oracle      brute-force partition enumeration (independent witness)
    distribution  exact PMFs, moments, distance-to-normal diagnostics
    asymptotics saddle-point predictions: mean ~ d n / log n,
                variance ~ d^2 n / log^2 n, coefficient estimates
    speclang    text format for custom recurrences
    cli         polyrec triangle / pmf / moments / clt / asymptotics /
                verify / families
"""

from .algebra import (
    ONE,
    X,
    ZERO,
    BivariateSeries,
    ExactPolynomial,
    monomial,
    series_exp,
)
from .asymptotics import (
    ComparisonRecord,
    Partials,
    SaddleReport,
    compare_exact,
    f_partials,
    saddle_report,
    solve_saddle,
)
from .distribution import (
    MeanIdentityReport,
    NormalityReport,
    PMFTable,
    clt_scan,
    mean_identity_check,
    normality,
    pmf,
    standard_normal_cdf,
    variance_formula_gap,
)
from .errors import (
    InvalidDistributionError,
    InvalidIndexError,
    NonzeroConstantTermError,
    ParameterError,
    ParseError,
    PolyrecError,
    SaddleFailureError,
    SaddleOverflowError,
    SizeGuardError,
    UnknownFamilyError,
    UnsupportedShapeError,
    ZeroMassError,
    ZeroVarianceError,
)
from .families import (
    FamilyDescriptor,
    NonnegativityReport,
    SaddleFunction,
    TheoremConstants,
    UNATTRIBUTED_OEIS_IDS,
    build_exponent,
    catalog,
    catalog_names,
    egf_rows,
    family_parameters,
    theorem_constants,
    validate_nonnegativity,
    verify_egf_identity,
)
from .oracle import OracleReport, PartitionConstraint, count_partitions, verify_family
from .recurrence import (
    LagTerm,
    RecurrenceSpec,
    TriangleRow,
    advance,
    generate,
    triangle,
    triangle_linear,
)
from .speclang import FamilyRequest, SpecSource, format_spec, load, parse

__version__ = "0.1.0"

__all__ = [
    "BivariateSeries",
    "ComparisonRecord",
    "ExactPolynomial",
    "FamilyDescriptor",
    "FamilyRequest",
    "InvalidDistributionError",
    "InvalidIndexError",
    "LagTerm",
    "MeanIdentityReport",
    "NonnegativityReport",
    "NonzeroConstantTermError",
    "NormalityReport",
    "ONE",
    "OracleReport",
    "PMFTable",
    "ParameterError",
    "ParseError",
    "Partials",
    "PartitionConstraint",
    "PolyrecError",
    "RecurrenceSpec",
    "SaddleFailureError",
    "SaddleFunction",
    "SaddleOverflowError",
    "SaddleReport",
    "SizeGuardError",
    "SpecSource",
    "TheoremConstants",
    "TriangleRow",
    "UNATTRIBUTED_OEIS_IDS",
    "UnknownFamilyError",
    "UnsupportedShapeError",
    "X",
    "ZERO",
    "ZeroMassError",
    "ZeroVarianceError",
    "advance",
    "build_exponent",
    "catalog",
    "catalog_names",
    "clt_scan",
    "compare_exact",
    "count_partitions",
    "egf_rows",
    "f_partials",
    "family_parameters",
    "format_spec",
    "generate",
    "load",
    "mean_identity_check",
    "monomial",
    "normality",
    "parse",
    "pmf",
    "saddle_report",
    "series_exp",
    "solve_saddle",
    "standard_normal_cdf",
    "theorem_constants",
    "triangle",
    "triangle_linear",
    "validate_nonnegativity",
    "variance_formula_gap",
    "verify_egf_identity",
    "verify_family",
]
