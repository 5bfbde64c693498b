"""Catalog of named polynomial families.

Each descriptor bundles the recurrence data, the closed-form exponent of the
exponential generating function, OEIS cross-references, and the constants
(d, alpha_d) that decide whether the n/log n normal limit applies.

The exponent is always stored in the split form

    f(z, x) = Q1(z, x) + Q2(x e^{m z})

with Q1 a polynomial in z whose coefficients are polynomials in x, and Q2 a
univariate polynomial with zero constant term.  The split isolates the
growth-carrying part Q2, whose degree d and leading coefficient alpha_d
drive all of the asymptotics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .algebra import (
    ONE,
    X,
    ZERO,
    BivariateSeries,
    ExactPolynomial,
    monomial,
    as_fraction,
)
from .errors import ParameterError, UnknownFamilyError, UnsupportedShapeError
from .recurrence import LagTerm, RecurrenceSpec, TriangleRow, generate


@dataclass(frozen=True)
class SaddleFunction:
    """Exponent f(z,x) = Q1(z,x) + Q2(x e^{m z}) of a family's EGF.

    `q1` holds the z-power coefficients of Q1 (entry p multiplies z^p);
    `q2` is univariate in u = x e^{m z} and never has a constant term.
    """

    q1: tuple[ExactPolynomial, ...]
    q2: ExactPolynomial
    m: Fraction

    def __post_init__(self):
        q1 = list(self.q1)
        while q1 and q1[-1].is_zero:
            q1.pop()
        object.__setattr__(self, "q1", tuple(q1))
        object.__setattr__(self, "m", as_fraction(self.m))
        if self.m <= 0:
            raise ValueError("m must be > 0")
        if self.q2.coefficient(0) != 0:
            raise ValueError("Q2 must have zero constant term")

    def exponent_series(self, order: int) -> BivariateSeries:
        """Expand f(z,x) as an exact series in z up to the given order."""
        out = [ZERO] * (order + 1)
        for p, poly in enumerate(self.q1):
            if p <= order:
                out[p] = out[p] + poly
        for j, cj in enumerate(self.q2.coeffs):
            if cj == 0:
                continue
            rate = j * self.m
            term = Fraction(cj)
            for p in range(order + 1):
                out[p] = out[p] + monomial(j, term)
                term = term * rate / (p + 1)
        return BivariateSeries(order, out)

    def exponent_series_at(self, order: int, x: Fraction) -> BivariateSeries:
        """Same expansion with x fixed to an exact value (univariate)."""
        x = as_fraction(x)
        out = [Fraction(0)] * (order + 1)
        for p, poly in enumerate(self.q1):
            if p <= order:
                out[p] += poly(x)
        for j, cj in enumerate(self.q2.coeffs):
            if cj == 0:
                continue
            rate = j * self.m
            term = cj * x**j
            for p in range(order + 1):
                out[p] += term
                term = term * rate / (p + 1)
        return BivariateSeries(order, [ExactPolynomial((c,)) for c in out])


class TheoremConstants(NamedTuple):
    """Degree and leading coefficient of Q2, plus the hypothesis flag for
    the n/log n normal limit (d >= 1, alpha_d > 0, m > 0)."""

    d: int
    alpha_d: Fraction
    hypothesis_ok: bool


def theorem_constants(saddle: SaddleFunction) -> TheoremConstants:
    if saddle.q2.is_zero:
        return TheoremConstants(0, Fraction(0), False)
    d = saddle.q2.degree
    alpha = saddle.q2.leading_coefficient
    ok = d >= 1 and alpha > 0 and saddle.m > 0
    return TheoremConstants(d, alpha, ok)


def build_exponent(spec: RecurrenceSpec) -> SaddleFunction:
    """Closed-form EGF exponent for a spec of the two-term shape: optional
    single lag of depth 2 with binomial weighting, default start.

    With gamma(x) = sum gamma_j x^j and c(x) the depth-2 lag factor,

        Q1 = -sum_{j>=1} gamma_j x^j/(j m) - sum_{j>=1} c_j x^j/(j^2 m^2)
             + (gamma_0 - sum_{j>=1} c_j x^j/(j m)) z + c_0 z^2/2
        Q2(u) = sum_{j>=1} (gamma_j/(j m) + c_j/(j^2 m^2)) u^j.
    """
    if spec.start_index != 0 or spec.start_poly != ONE:
        raise UnsupportedShapeError(
            "closed-form exponent requires the default start P_0 = 1"
        )
    if len(spec.lags) > 1:
        raise UnsupportedShapeError("at most one lag term is supported")
    c = ZERO
    if spec.lags:
        lag = spec.lags[0]
        if lag.s != 2 or not lag.binom_weight:
            raise UnsupportedShapeError(
                "only a binomially weighted lag of depth 2 has this closed form"
            )
        c = lag.kappa
    m = spec.m
    g = spec.gamma

    q1_0 = ExactPolynomial(
        [Fraction(0)]
        + [
            -g.coefficient(j) / (j * m) - c.coefficient(j) / (j * j * m * m)
            for j in range(1, max(g.degree, c.degree) + 1)
        ]
    )
    q1_1 = ExactPolynomial(
        [g.coefficient(0)]
        + [-c.coefficient(j) / (j * m) for j in range(1, c.degree + 1)]
    )
    q1_2 = ExactPolynomial((c.coefficient(0) / 2,))
    q2 = ExactPolynomial(
        [Fraction(0)]
        + [
            g.coefficient(j) / (j * m) + c.coefficient(j) / (j * j * m * m)
            for j in range(1, max(g.degree, c.degree) + 1)
        ]
    )
    return SaddleFunction((q1_0, q1_1, q1_2), q2, m)


@dataclass(frozen=True)
class FamilyDescriptor:
    """A named family: recurrence, EGF exponent, and metadata.

    Row `egf_row_offset + n` of the spec equals
    `egf_prefactor * n! * [z^n] exp(f)`; the offset and prefactor are
    nontrivial only for families whose triangle starts below a shifted
    initial row (r-restricted Stirling numbers).
    """

    name: str
    parameters: dict
    spec: RecurrenceSpec
    saddle: SaddleFunction
    oeis_refs: tuple[str, ...] = ()
    egf_row_offset: int = 0
    egf_prefactor: ExactPolynomial = ONE

    def constants(self) -> TheoremConstants:
        return theorem_constants(self.saddle)


def egf_rows(descriptor: FamilyDescriptor, order: int) -> list[ExactPolynomial]:
    """Rows predicted by the EGF: prefactor * n! * [z^n] exp(f), n = 0..order."""
    from .algebra import series_exp

    f = descriptor.saddle.exponent_series(order)
    series = series_exp(f)
    rows = []
    fact = 1
    for n in range(order + 1):
        if n:
            fact *= n
        rows.append(descriptor.egf_prefactor * (fact * series.coefficient(n)))
    return rows


def verify_egf_identity(
    descriptor: FamilyDescriptor, order: int
) -> Optional[tuple[int, ExactPolynomial, ExactPolynomial]]:
    """Cross-check the recurrence against the EGF exponent.

    Returns None when every row up to `order` matches exactly, else the
    first (row, from_recurrence, from_egf) mismatch.
    """
    offset = descriptor.egf_row_offset
    polys = generate(descriptor.spec, order + offset)
    predicted = egf_rows(descriptor, order)
    start = descriptor.spec.start_index
    for n in range(order + 1):
        row = n + offset
        actual = polys[row - start] if row >= start else ZERO
        if actual != predicted[n]:
            return (row, actual, predicted[n])
    return None


@dataclass(frozen=True)
class NonnegativityReport:
    all_nonnegative: bool
    first_negative: Optional[tuple[int, int]]
    zero_sum_rows: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.all_nonnegative


def validate_nonnegativity(rows: Sequence[TriangleRow]) -> NonnegativityReport:
    """Scan triangle rows for negative entries and zero row sums.

    Zero-sum rows are legal (they occur for block-size-restricted families
    at small n) but carry no probability mass, so they are reported for the
    distribution layer to skip.
    """
    first_negative = None
    zero_sums = []
    for row in rows:
        for k, value in enumerate(row.coeffs):
            if value < 0 and first_negative is None:
                first_negative = (row.n, k)
        if row.row_sum() == 0:
            zero_sums.append(row.n)
    return NonnegativityReport(first_negative is None, first_negative, tuple(zero_sums))


def _require_int(params: dict, key: str, minimum: Optional[int] = None) -> int:
    if key not in params:
        raise ParameterError(f"missing parameter {key!r}")
    value = params[key]
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ParameterError(f"parameter {key!r} must be an integer, got {value}")
        value = int(value)
    if not isinstance(value, int):
        raise ParameterError(f"parameter {key!r} must be an integer")
    if minimum is not None and value < minimum:
        raise ParameterError(f"parameter {key!r} must be >= {minimum}, got {value}")
    return value


def _wang_shape(m: int, c: int, label: str) -> RecurrenceSpec:
    return RecurrenceSpec(gamma=X + ExactPolynomial((c,)), m=Fraction(m), label=label)


def _whitney_like(
    name: str, m: int, c: int, oeis: tuple[str, ...]
) -> FamilyDescriptor:
    spec = _wang_shape(m, c, f"{name}(m={m},c={c})")
    return FamilyDescriptor(
        name=name,
        parameters={"m": m, "c": c},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=oeis,
    )


_DOWLING_ROWSUM_IDS = {
    2: "A007405",
    3: "A003575",
    4: "A003576",
    5: "A003577",
    6: "A003578",
    7: "A003579",
    8: "A003580",
    9: "A003581",
    10: "A003582",
    64: "A364069",
    624: "A364070",
}

_TRANSLATED_WHITNEY_IDS = {m: f"A{75497 + m - 2:06d}" for m in range(2, 11)}

_R_STIRLING_IDS = {2: "A143494", 3: "A143495", 4: "A143496"}

_SHEFFER_IDS = {
    (1, 0): "A048993",
    (2, 1): "A039755",
    (3, 2): "A225468",
    (4, 3): "A225469",
}

# Sheffer-family ids cited without explicit parameter values; kept as
# metadata only.
UNATTRIBUTED_OEIS_IDS = (
    "A154537",
    "A282629",
    "A225466",
    "A285061",
    "A225467",
)


def _build_stirling2(params: dict) -> FamilyDescriptor:
    spec = RecurrenceSpec(gamma=X, m=Fraction(1), label="stirling2")
    return FamilyDescriptor(
        name="stirling2",
        parameters={},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=("A048993",),
    )


def _build_whitney(params: dict) -> FamilyDescriptor:
    m = _require_int(params, "m", 1)
    c = _require_int(params, "c")
    oeis = ("A039755", "A039756") if (m, c) == (2, 1) else ()
    d = _whitney_like("whitney", m, c, oeis)
    return d


def _build_translated_whitney(params: dict) -> FamilyDescriptor:
    m = _require_int(params, "m", 1)
    oeis = (_TRANSLATED_WHITNEY_IDS[m],) if m in _TRANSLATED_WHITNEY_IDS else ()
    spec = _wang_shape(m, 0, f"translated_whitney(m={m})")
    return FamilyDescriptor(
        name="translated_whitney",
        parameters={"m": m},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=oeis,
    )


def _build_dowling(params: dict) -> FamilyDescriptor:
    m = _require_int(params, "m", 1)
    oeis = []
    if m in _DOWLING_ROWSUM_IDS:
        oeis.append(_DOWLING_ROWSUM_IDS[m])
    if m == 2:
        oeis.append("A039755")
    spec = _wang_shape(m, 1, f"dowling(m={m})")
    return FamilyDescriptor(
        name="dowling",
        parameters={"m": m},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=tuple(oeis),
    )


def _build_type_b(params: dict) -> FamilyDescriptor:
    m = _require_int(params, "m", 1)
    c = _require_int(params, "c", 1)
    spec = _wang_shape(m, c, f"type_b(m={m},c={c})")
    return FamilyDescriptor(
        name="type_b",
        parameters={"m": m, "c": c},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=(),
    )


def _build_r_stirling(params: dict) -> FamilyDescriptor:
    r = _require_int(params, "r", 0)
    spec = RecurrenceSpec(
        gamma=X,
        m=Fraction(1),
        start_index=r,
        start_poly=monomial(r) if r else ONE,
        label=f"r_stirling(r={r})",
    )
    # The EGF belongs to the index-shifted sequence: row r+n is x^r times
    # n! [z^n] exp(r z + x (e^z - 1)).
    shifted = _wang_shape(1, r, "")
    oeis = (_R_STIRLING_IDS[r],) if r in _R_STIRLING_IDS else ()
    return FamilyDescriptor(
        name="r_stirling",
        parameters={"r": r},
        spec=spec,
        saddle=build_exponent(shifted),
        oeis_refs=oeis,
        egf_row_offset=r,
        egf_prefactor=monomial(r) if r else ONE,
    )


def _build_sheffer(params: dict) -> FamilyDescriptor:
    d = _require_int(params, "d", 1)
    a = _require_int(params, "a", 0)
    spec = RecurrenceSpec(
        gamma=ExactPolynomial((a, d)), m=Fraction(d), label=f"sheffer(d={d},a={a})"
    )
    oeis = (_SHEFFER_IDS[(d, a)],) if (d, a) in _SHEFFER_IDS else ()
    return FamilyDescriptor(
        name="sheffer",
        parameters={"d": d, "a": a},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=oeis,
    )


def _build_stirling_frobenius(params: dict) -> FamilyDescriptor:
    m = _require_int(params, "m", 1)
    ids = {1: "A048993", 2: "A039755", 3: "A225468", 4: "A225469"}
    spec = _wang_shape(m, m - 1, f"stirling_frobenius(m={m})")
    return FamilyDescriptor(
        name="stirling_frobenius",
        parameters={"m": m},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=(ids[m],) if m in ids else (),
    )


def _build_galton(params: dict) -> FamilyDescriptor:
    m = _require_int(params, "m", 1)
    c = _require_int(params, "c")
    ids = {(2, -1): "A186695", (3, -2): "A111577"}
    spec = _wang_shape(m, c, f"galton(m={m},c={c})")
    return FamilyDescriptor(
        name="galton",
        parameters={"m": m, "c": c},
        spec=spec,
        saddle=build_exponent(spec),
        oeis_refs=(ids[(m, c)],) if (m, c) in ids else (),
    )


def _build_assoc_stirling(params: dict) -> FamilyDescriptor:
    s = _require_int(params, "s", 1)
    spec = RecurrenceSpec(
        gamma=ZERO,
        m=Fraction(1),
        lags=(LagTerm(s=s, kappa=X, binom_weight=True),),
        label=f"assoc_stirling(s={s})",
    )
    # exponent x (e^z - sum_{j<s} z^j / j!) split as
    #   Q1 = -x sum_{j<s} z^j/j!,  Q2(u) = u
    q1 = tuple(
        monomial(1, Fraction(-1, math.factorial(j))) for j in range(s)
    )
    saddle = SaddleFunction(q1=q1, q2=X, m=Fraction(1))
    return FamilyDescriptor(
        name="assoc_stirling",
        parameters={"s": s},
        spec=spec,
        saddle=saddle,
        oeis_refs=(),
    )


def _build_r_whitney_assoc(params: dict) -> FamilyDescriptor:
    m = _require_int(params, "m", 1)
    r = _require_int(params, "r", 0)
    s = _require_int(params, "s", 1)
    spec = RecurrenceSpec(
        gamma=ExactPolynomial((r,)),
        m=Fraction(m),
        lags=(
            LagTerm(s=s, kappa=monomial(1, Fraction(m) ** (s - 1)), binom_weight=True),
        ),
        label=f"r_whitney_assoc(m={m},r={r},s={s})",
    )
    # exponent r z + (x/m)(e^{m z} - sum_{j<s} (m z)^j / j!) split as
    #   Q1 = r z - (x/m) sum_{j<s} (m^j/j!) z^j,  Q2(u) = u/m
    q1 = [
        monomial(1, -(Fraction(m) ** (j - 1)) / math.factorial(j)) for j in range(s)
    ]
    while len(q1) < 2:
        q1.append(ZERO)
    q1[1] = q1[1] + ExactPolynomial((r,))
    saddle = SaddleFunction(q1=tuple(q1), q2=monomial(1, Fraction(1, m)), m=Fraction(m))
    return FamilyDescriptor(
        name="r_whitney_assoc",
        parameters={"m": m, "r": r, "s": s},
        spec=spec,
        saddle=saddle,
        oeis_refs=(),
    )


_BUILDERS: dict[str, tuple[Callable[[dict], FamilyDescriptor], tuple[str, ...]]] = {
    "stirling2": (_build_stirling2, ()),
    "whitney": (_build_whitney, ("m", "c")),
    "translated_whitney": (_build_translated_whitney, ("m",)),
    "dowling": (_build_dowling, ("m",)),
    "r_stirling": (_build_r_stirling, ("r",)),
    "sheffer": (_build_sheffer, ("d", "a")),
    "stirling_frobenius": (_build_stirling_frobenius, ("m",)),
    "galton": (_build_galton, ("m", "c")),
    "assoc_stirling": (_build_assoc_stirling, ("s",)),
    "r_whitney_assoc": (_build_r_whitney_assoc, ("m", "r", "s")),
    "type_b": (_build_type_b, ("m", "c")),
}


def catalog_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def family_parameters(name: str) -> tuple[str, ...]:
    if name not in _BUILDERS:
        raise UnknownFamilyError(f"unknown family {name!r}")
    return _BUILDERS[name][1]


def catalog(name: str, **params) -> FamilyDescriptor:
    """Build the named family descriptor.

    Known names: stirling2, whitney(m,c), translated_whitney(m), dowling(m),
    r_stirling(r), sheffer(d,a), stirling_frobenius(m), galton(m,c),
    assoc_stirling(s), r_whitney_assoc(m,r,s), type_b(m,c).
    """
    if name not in _BUILDERS:
        raise UnknownFamilyError(f"unknown family {name!r}")
    builder, expected = _BUILDERS[name]
    extra = set(params) - set(expected)
    if extra:
        raise ParameterError(
            f"family {name!r} does not take parameter(s) {sorted(extra)}"
        )
    return builder(params)
