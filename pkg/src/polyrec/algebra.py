"""Exact arithmetic layer: dense rational polynomials and truncated
bivariate power series.

Coefficients are `fractions.Fraction` throughout and every operation keeps
them fully reduced, so identity tests are exact.  Values are immutable after
construction; floating point enters the picture only in the distribution and
asymptotics layers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NonzeroConstantTermError

Scalar = Union[int, Fraction]


def as_fraction(value: Scalar) -> Fraction:
    """Coerce an int or Fraction to Fraction, rejecting floats outright."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact scalar expected, got {type(value).__name__}")


class ExactPolynomial:
    """Dense univariate polynomial over exact rationals.

    Index j of the coefficient tuple is the power of x.  The representation
    is normalized: no trailing zero coefficients, and the zero polynomial is
    the empty tuple with degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, j: int) -> Fraction:
        """Coefficient of x^j (zero beyond the degree)."""
        if 0 <= j < len(self._coeffs):
            return self._coeffs[j]
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __add__(self, other: ExactPolynomial) -> ExactPolynomial:
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return ExactPolynomial(out)

    def __neg__(self) -> ExactPolynomial:
        return ExactPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: ExactPolynomial) -> ExactPolynomial:
        return self + (-other)

    def __mul__(self, other) -> ExactPolynomial:
        if isinstance(other, ExactPolynomial):
            if not self._coeffs or not other._coeffs:
                return ZERO
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a:
                    for j, b in enumerate(other._coeffs):
                        out[i + j] += a * b
            return ExactPolynomial(out)
        if isinstance(other, (int, Fraction)):
            t = as_fraction(other)
            return ExactPolynomial(c * t for c in self._coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def derivative(self) -> ExactPolynomial:
        """Formal derivative with respect to x."""
        return ExactPolynomial(j * c for j, c in enumerate(self._coeffs) if j)

    def __call__(self, t: Scalar) -> Fraction:
        """Exact Horner evaluation."""
        t = as_fraction(t)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * t + c
        return acc

    def shift_up(self, k: int) -> ExactPolynomial:
        """Multiply by x^k."""
        if self.is_zero or k == 0:
            return self
        return ExactPolynomial((Fraction(0),) * k + self._coeffs)

    def shift_down(self, k: int) -> ExactPolynomial:
        """Exact division by x^k; the bottom k coefficients must be zero."""
        if self.is_zero:
            return self
        if any(self._coeffs[j] for j in range(min(k, len(self._coeffs)))):
            raise ValueError("polynomial is not divisible by x^%d" % k)
        return ExactPolynomial(self._coeffs[k:])

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __str__(self) -> str:
        return format_terms(self._coeffs)

    def __repr__(self) -> str:
        return f"ExactPolynomial({self})"


def format_terms(coeffs: Sequence[Fraction]) -> str:
    """Render a coefficient vector as a human-readable sum of monomials,
    highest power first (canonical form shared with the spec language)."""
    if not any(coeffs):
        return "0"
    parts: list[str] = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if j == 0:
            body = str(mag)
        else:
            xpart = "x" if j == 1 else f"x^{j}"
            body = xpart if mag == 1 else f"{mag}{xpart}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def monomial(power: int, coeff: Scalar = 1) -> ExactPolynomial:
    """The polynomial coeff * x^power."""
    return ExactPolynomial((Fraction(0),) * power + (as_fraction(coeff),))


ZERO = ExactPolynomial()
ONE = ExactPolynomial((1,))
X = ExactPolynomial((0, 1))


class BivariateSeries:
    """Truncated formal power series in z whose coefficients are
    polynomials in x.

    Entry p of the coefficient tuple is the polynomial multiplying z^p,
    for 0 <= p <= order; exactly order+1 slots are always present.
    Arithmetic is truncation-consistent: the product truncated at N
    depends only on the factors truncated at N.
    """

    __slots__ = ("_order", "_coeffs")

    def __init__(self, order: int, coeffs: Iterable[ExactPolynomial] = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = list(coeffs)
        if len(cs) > order + 1:
            raise ValueError("more coefficients than order allows")
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self._order = order
        self._coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[ExactPolynomial, ...]:
        return self._coeffs

    def coefficient(self, p: int) -> ExactPolynomial:
        """Polynomial multiplying z^p (zero beyond the truncation order)."""
        if 0 <= p <= self._order:
            return self._coeffs[p]
        return ZERO

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        n = min(self._order, other._order)
        return BivariateSeries(
            n, (self._coeffs[p] + other._coeffs[p] for p in range(n + 1))
        )

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries(self._order, (-c for c in self._coeffs))

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        return self + (-other)

    def __mul__(self, other) -> BivariateSeries:
        if isinstance(other, BivariateSeries):
            n = min(self._order, other._order)
            out = [ZERO] * (n + 1)
            for i in range(n + 1):
                a = self._coeffs[i]
                if a.is_zero:
                    continue
                for j in range(n + 1 - i):
                    b = other._coeffs[j]
                    if not b.is_zero:
                        out[i + j] = out[i + j] + a * b
            return BivariateSeries(n, out)
        if isinstance(other, (int, Fraction, ExactPolynomial)):
            return BivariateSeries(self._order, (c * other for c in self._coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def derivative_z(self) -> BivariateSeries:
        """Formal d/dz; the order drops by one."""
        if self._order == 0:
            return BivariateSeries(0, (ZERO,))
        return BivariateSeries(
            self._order - 1,
            (p * self._coeffs[p] for p in range(1, self._order + 1)),
        )

    def truncate(self, order: int) -> BivariateSeries:
        if order > self._order:
            raise ValueError("cannot extend a truncated series")
        return BivariateSeries(order, self._coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariateSeries):
            return self._order == other._order and self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._order, self._coeffs))

    def __repr__(self) -> str:
        inner = ", ".join(f"({c})z^{p}" for p, c in enumerate(self._coeffs))
        return f"BivariateSeries[{inner}]"


def series_one(order: int) -> BivariateSeries:
    return BivariateSeries(order, (ONE,))


def series_exp(g: BivariateSeries) -> BivariateSeries:
    """exp of a series with zero constant term, computed exactly.

    The result F is the unique series with F(0) = 1 satisfying F' = g'.F
    coefficient by coefficient:

        (p+1) F_{p+1} = sum_{i=0..p} (i+1) g_{i+1} F_{p-i}

    A nonzero constant term is rejected since exp of it is transcendental.
    """
    if not g.coefficient(0).is_zero:
        raise NonzeroConstantTermError(
            "series_exp needs a zero constant term, got %s" % (g.coefficient(0),)
        )
    n = g.order
    out = [ONE]
    for p in range(n):
        acc = ZERO
        for i in range(p + 1):
            gi = g.coefficient(i + 1)
            if not gi.is_zero:
                acc = acc + (i + 1) * gi * out[p - i]
        out.append(acc * Fraction(1, p + 1))
    return BivariateSeries(n, out)
