"""Differential-difference recurrence engine.

Advances polynomial sequences of the form

    P_n(x) = gamma(x) P_{n-1}(x) + m x P'_{n-1}(x)
             + sum over lag terms  w(n, s) kappa(x) P_{n-s}(x)

where the lag weight w(n, s) is C(n-1, s-1) for binomial-weighted terms and
1 otherwise.  Polynomials at indices below the start index are treated as
zero, so lag terms reaching below the start contribute nothing.  The module
also builds coefficient triangles, both from the polynomial recurrence and
directly from the linear entrywise recurrence

    T_{n,k} = u T_{n-1,k-1} + (a + b k) T_{n-1,k},   T_{0,0} = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import ONE, X, ZERO, ExactPolynomial, Scalar, as_fraction
from .errors import InvalidIndexError


@dataclass(frozen=True)
class LagTerm:
    """One lagged term of the recurrence.

    `s` is the lag depth (>= 1), `kappa` the x-dependent factor with any
    constant scaling pre-folded in, and `binom_weight` selects the
    n-dependent factor C(n-1, s-1) instead of 1.
    """

    s: int
    kappa: ExactPolynomial
    binom_weight: bool = False

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("lag depth s must be >= 1")

    def weight(self, n: int) -> int:
        return math.comb(n - 1, self.s - 1) if self.binom_weight else 1


@dataclass(frozen=True)
class RecurrenceSpec:
    """Full data of one recurrence instance."""

    gamma: ExactPolynomial
    m: Fraction
    lags: tuple[LagTerm, ...] = ()
    start_index: int = 0
    start_poly: ExactPolynomial = ONE
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "m", as_fraction(self.m))
        # keep lag order canonical so equality is order-insensitive
        object.__setattr__(self, "lags", tuple(sorted(self.lags, key=lambda t: t.s)))
        if self.m <= 0:
            raise ValueError("m must be > 0 (positive derivative weight)")
        if self.start_poly.is_zero:
            raise ValueError("start polynomial must be nonzero")
        if self.start_index < 0:
            raise ValueError("start index must be >= 0")
        depths = [lag.s for lag in self.lags]
        if len(set(depths)) != len(depths):
            raise ValueError("lag depths must be distinct")

    @property
    def max_lag(self) -> int:
        return max((lag.s for lag in self.lags), default=1)


def advance(
    spec: RecurrenceSpec, history: Sequence[ExactPolynomial], n: int
) -> ExactPolynomial:
    """Compute P_n from recent history.

    `history[i]` must be P_{n-1-i}; entries for indices below the start
    index may be anything (they are ignored, those polynomials are zero by
    convention), but every index in [start_index, n-1] that a term needs
    must be present.
    """
    if n <= spec.start_index:
        raise InvalidIndexError(
            f"advance needs n > start index {spec.start_index}, got {n}"
        )

    def lookup(idx: int) -> ExactPolynomial:
        if idx < spec.start_index:
            return ZERO
        pos = n - 1 - idx
        if pos >= len(history):
            raise InvalidIndexError(f"history does not reach back to index {idx}")
        return history[pos]

    prev = lookup(n - 1)
    result = spec.gamma * prev + spec.m * (X * prev.derivative())
    for lag in spec.lags:
        tail = lookup(n - lag.s)
        if tail.is_zero:
            continue
        w = lag.weight(n)
        if w:
            result = result + w * (lag.kappa * tail)
    return result


def generate(spec: RecurrenceSpec, upto: int) -> list[ExactPolynomial]:
    """All polynomials P_n for n = start_index .. upto (inclusive)."""
    if upto < spec.start_index:
        raise InvalidIndexError(
            f"upper index {upto} is below start index {spec.start_index}"
        )
    out = [spec.start_poly]
    window = spec.max_lag
    for n in range(spec.start_index + 1, upto + 1):
        history = out[-1 : -window - 1 : -1]
        out.append(advance(spec, history, n))
    return out


@dataclass(frozen=True)
class TriangleRow:
    """Coefficient vector of one generating polynomial, trailing zeros
    stripped (the zero polynomial gives an empty row)."""

    n: int
    coeffs: tuple[Fraction, ...] = field(default=())

    def row_sum(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))


def triangle(spec: RecurrenceSpec, upto: int) -> list[TriangleRow]:
    """Coefficient triangle of the polynomial sequence."""
    return [
        TriangleRow(n, p.coeffs)
        for n, p in enumerate(generate(spec, upto), start=spec.start_index)
    ]


def triangle_linear(
    u: Scalar, a: Scalar, b: Scalar, upto: int
) -> list[TriangleRow]:
    """Triangle computed directly from the entrywise recurrence
    T_{n,k} = u T_{n-1,k-1} + (a + b k) T_{n-1,k}, starting from T_{0,0}=1."""
    if upto < 0:
        raise InvalidIndexError("triangle_linear needs upto >= 0")
    u, a, b = as_fraction(u), as_fraction(a), as_fraction(b)
    rows = [TriangleRow(0, (Fraction(1),))]
    cur = [Fraction(1)]
    for n in range(1, upto + 1):
        nxt = [Fraction(0)] * (n + 1)
        for k, t in enumerate(cur):
            if t:
                nxt[k + 1] += u * t
                nxt[k] += (a + b * k) * t
        cur = nxt
        trimmed = list(cur)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        rows.append(TriangleRow(n, tuple(trimmed)))
    return rows
