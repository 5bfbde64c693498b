"""Catalog descriptors: EGF identities, exponent construction, constants."""

from fractions import Fraction

import pytest

from polyrec.algebra import ONE, X, ZERO, ExactPolynomial, monomial
from polyrec.errors import ParameterError, UnknownFamilyError, UnsupportedShapeError
from polyrec.families import (
    SaddleFunction,
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
from polyrec.recurrence import LagTerm, RecurrenceSpec, generate, triangle

ALL_DEFAULT_INSTANCES = [
    ("stirling2", {}),
    ("whitney", dict(m=2, c=1)),
    ("translated_whitney", dict(m=3)),
    ("dowling", dict(m=2)),
    ("r_stirling", dict(r=2)),
    ("sheffer", dict(d=3, a=2)),
    ("stirling_frobenius", dict(m=4)),
    ("galton", dict(m=2, c=-1)),
    ("assoc_stirling", dict(s=2)),
    ("r_whitney_assoc", dict(m=2, r=1, s=3)),
    ("type_b", dict(m=2, c=1)),
]


@pytest.mark.parametrize("name,params", ALL_DEFAULT_INSTANCES)
def test_egf_identity(name, params):
    descriptor = catalog(name, **params)
    assert verify_egf_identity(descriptor, 16) is None


def test_egf_rows_prefactor():
    # r-restricted families: row r+n is x^r * n! [z^n] exp(f)
    descriptor = catalog("r_stirling", r=3)
    rows = egf_rows(descriptor, 4)
    assert rows[0] == monomial(3)
    polys = generate(descriptor.spec, 7)
    assert rows[4] == polys[4]


def test_build_exponent_stirling():
    sf = build_exponent(catalog("stirling2").spec)
    # f = x(e^z - 1): Q1 = -x, Q2(u) = u
    assert sf.q1 == (ExactPolynomial([0, -1]),)
    assert sf.q2 == X
    assert sf.m == 1


def test_build_exponent_matches_stored_closed_forms():
    # families stored with hand-split exponents also fit the generic
    # two-term construction when the lag depth is 2
    for name, params in [
        ("assoc_stirling", dict(s=2)),
        ("r_whitney_assoc", dict(m=2, r=1, s=2)),
        ("r_whitney_assoc", dict(m=3, r=2, s=2)),
    ]:
        descriptor = catalog(name, **params)
        assert build_exponent(descriptor.spec) == descriptor.saddle


def test_build_exponent_shape_guard():
    with pytest.raises(UnsupportedShapeError):
        build_exponent(catalog("assoc_stirling", s=3).spec)
    with pytest.raises(UnsupportedShapeError):
        build_exponent(catalog("r_stirling", r=2).spec)
    with pytest.raises(UnsupportedShapeError):
        build_exponent(
            RecurrenceSpec(gamma=X, m=1, lags=(LagTerm(2, X, binom_weight=False),))
        )


def test_theorem_constants_catalog():
    cases = [
        ("stirling2", {}, 1, Fraction(1)),
        ("dowling", dict(m=3), 1, Fraction(1, 3)),
        ("whitney", dict(m=2, c=1), 1, Fraction(1, 2)),
        ("sheffer", dict(d=4, a=1), 1, Fraction(1)),
        ("galton", dict(m=3, c=-2), 1, Fraction(1, 3)),
        ("assoc_stirling", dict(s=3), 1, Fraction(1)),
        ("r_whitney_assoc", dict(m=2, r=1, s=2), 1, Fraction(1, 2)),
    ]
    for name, params, d, alpha in cases:
        constants = catalog(name, **params).constants()
        assert constants.d == d
        assert constants.alpha_d == alpha
        assert constants.hypothesis_ok


def test_theorem_constants_with_gamma_and_lag():
    # gamma of degree 1 plus a depth-2 lag of degree 2: alpha_d comes from
    # the lag alone at degree 2, gamma contributes at degree 1
    spec = RecurrenceSpec(
        gamma=X,
        m=Fraction(2),
        lags=(LagTerm(2, ExactPolynomial([0, 3, 5]), binom_weight=True),),
    )
    sf = build_exponent(spec)
    # q2 = (gamma_1/m + c_1/m^2) u + (c_2/(2 m^2 2)) u^2
    assert sf.q2.coefficient(1) == Fraction(1, 2) + Fraction(3, 4)
    assert sf.q2.coefficient(2) == Fraction(5, 16)
    constants = theorem_constants(sf)
    assert (constants.d, constants.alpha_d) == (2, Fraction(5, 16))
    assert constants.hypothesis_ok


def test_theorem_constants_rejects_constant_gamma():
    # gamma constant and no lag: Q2 vanishes, no growth, flag off
    sf = build_exponent(RecurrenceSpec(gamma=ExactPolynomial([5]), m=1))
    constants = theorem_constants(sf)
    assert constants == (0, 0, False)


def test_saddle_function_validation():
    with pytest.raises(ValueError):
        SaddleFunction(q1=(), q2=ONE, m=Fraction(1))  # constant term in Q2
    with pytest.raises(ValueError):
        SaddleFunction(q1=(), q2=X, m=Fraction(0))


def test_exponent_series_at_matches_bivariate():
    descriptor = catalog("dowling", m=2)
    order = 12
    full = descriptor.saddle.exponent_series(order)
    at_one = descriptor.saddle.exponent_series_at(order, Fraction(1))
    for p in range(order + 1):
        assert full.coefficient(p)(Fraction(1)) == at_one.coefficient(p)(Fraction(1))


def test_catalog_unknown_and_bad_params():
    with pytest.raises(UnknownFamilyError):
        catalog("nope")
    with pytest.raises(ParameterError):
        catalog("dowling")  # missing m
    with pytest.raises(ParameterError):
        catalog("dowling", m=0)
    with pytest.raises(ParameterError):
        catalog("stirling2", m=2)  # takes no parameters
    with pytest.raises(ParameterError):
        catalog("type_b", m=2, c=0)  # needs c >= 1
    with pytest.raises(ParameterError):
        catalog("sheffer", d=2, a=Fraction(1, 2))
    with pytest.raises(ParameterError):
        catalog("r_stirling", r=-1)


def test_oeis_tags():
    assert catalog("stirling2").oeis_refs == ("A048993",)
    assert catalog("dowling", m=2).oeis_refs == ("A007405", "A039755")
    assert catalog("dowling", m=3).oeis_refs == ("A003575",)
    assert catalog("dowling", m=10).oeis_refs == ("A003582",)
    assert catalog("dowling", m=64).oeis_refs == ("A364069",)
    assert catalog("dowling", m=624).oeis_refs == ("A364070",)
    assert catalog("dowling", m=11).oeis_refs == ()
    assert catalog("translated_whitney", m=2).oeis_refs == ("A075497",)
    assert catalog("translated_whitney", m=10).oeis_refs == ("A075505",)
    assert catalog("r_stirling", r=2).oeis_refs == ("A143494",)
    assert catalog("r_stirling", r=4).oeis_refs == ("A143496",)
    assert catalog("sheffer", d=1, a=0).oeis_refs == ("A048993",)
    assert catalog("sheffer", d=4, a=3).oeis_refs == ("A225469",)
    assert catalog("stirling_frobenius", m=3).oeis_refs == ("A225468",)
    assert catalog("galton", m=2, c=-1).oeis_refs == ("A186695",)
    assert catalog("galton", m=3, c=-2).oeis_refs == ("A111577",)
    assert len(UNATTRIBUTED_OEIS_IDS) == 5


def test_sheffer_scales_stirling_frobenius():
    # S2[m, m-1] is the column-scaled variant: entry (n, k) carries an
    # extra m^k, so the polynomials satisfy P_n(x) = W_n(m x)
    for m in range(1, 5):
        scaled = generate(catalog("sheffer", d=m, a=m - 1).spec, 8)
        plain = generate(catalog("stirling_frobenius", m=m).spec, 8)
        for p_s, p_w in zip(scaled, plain):
            rescaled = ExactPolynomial(
                [Fraction(m) ** k * p_w.coefficient(k) for k in range(p_w.degree + 1)]
            )
            assert p_s == rescaled


def test_catalog_names_and_parameters():
    names = catalog_names()
    assert len(names) == 11
    assert family_parameters("r_whitney_assoc") == ("m", "r", "s")
    assert family_parameters("stirling2") == ()
    with pytest.raises(UnknownFamilyError):
        family_parameters("smith")


def test_validate_nonnegativity():
    good = validate_nonnegativity(triangle(catalog("dowling", m=2).spec, 10))
    assert good.ok and good.first_negative is None and good.zero_sum_rows == ()

    gaps = validate_nonnegativity(triangle(catalog("assoc_stirling", s=3).spec, 8))
    assert gaps.ok
    assert gaps.zero_sum_rows == (1, 2)

    bad = validate_nonnegativity(
        triangle(RecurrenceSpec(gamma=X - 3 * ONE, m=1), 4)
    )
    assert not bad.ok
    assert bad.first_negative == (1, 0)
