"""Text format for recurrence specifications and family invocations.

Grammar, informally (every statement ends with a semicolon):

    spec     := stmt+
    stmt     := "gamma" ":" poly ";"
              | "m" ":" rational ";"
              | "lag" ":" "{" s / coeff / binom pairs "}" ";"
              | "start" ":" "{" index / poly pairs "}" ";"
              | "family" ":" name "(" [param "=" rational, ...] ")" ";"
    poly     := ["+"|"-"] term { ("+"|"-") term }
    term     := rational ["x" ["^" int]] | "x" ["^" int]
    rational := int ["/" int]

"family" cannot be combined with the other keys.  Defaults: start index 0,
start polynomial 1, no lags, binom false.  Coefficients are exact rationals;
floating literals are rejected.  Every rejection carries the 1-based
line:column of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .algebra import ONE, ExactPolynomial
from .errors import ParseError
from .families import FamilyDescriptor, catalog, catalog_names, family_parameters
from .recurrence import LagTerm, RecurrenceSpec

_SYMBOLS = ":;{}(),=^/+-"

_M_POSITIVITY = (
    "m must be > 0: the normal limit law requires a positive derivative weight"
)


@dataclass(frozen=True)
class SpecSource:
    """Raw spec text plus where it came from (for error rendering)."""

    text: str
    origin: str = "<inline>"


@dataclass(frozen=True)
class FamilyRequest:
    """A parsed catalog invocation, not yet built."""

    name: str
    params: dict[str, Union[int, Fraction]] = field(default_factory=dict)

    def build(self) -> FamilyDescriptor:
        return catalog(self.name, **self.params)


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "number", or the symbol itself
    text: str
    line: int
    column: int


def _tokenize(src: SpecSource) -> list[_Token]:
    tokens = []
    line, column = 1, 1
    i = 0
    text = src.text
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
            continue
        if ch.isspace():
            column += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("number", text[i:j], line, column))
            column += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, column))
            column += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, column))
            column += 1
            i += 1
            continue
        raise ParseError(src.origin, line, column, f"unexpected character {ch!r}")
    tokens.append(_Token("<eof>", "", line, column))
    return tokens


class _Parser:
    def __init__(self, src: SpecSource):
        self.origin = src.origin
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "<eof>":
            self.pos += 1
        return tok

    def fail(self, tok: _Token, message: str):
        raise ParseError(self.origin, tok.line, tok.column, message)

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = repr(tok.text) if tok.text else "end of input"
            self.fail(tok, f"expected {what}, found {found}")
        return self.next()

    # value parsers ----------------------------------------------------

    def rational(self) -> tuple[Fraction, _Token]:
        first = self.peek()
        sign = 1
        if first.kind == "-":
            self.next()
            sign = -1
        elif first.kind == "+":
            self.next()
        num_tok = self.expect("number", "a number")
        value = Fraction(sign * int(num_tok.text))
        if self.peek().kind == "/":
            self.next()
            den_tok = self.expect("number", "a denominator")
            if int(den_tok.text) == 0:
                self.fail(den_tok, "zero denominator")
            value /= int(den_tok.text)
        return value, first

    def integer(self, what: str, minimum: int) -> tuple[int, _Token]:
        tok = self.expect("number", f"{what} (a nonnegative integer)")
        value = int(tok.text)
        if value < minimum:
            self.fail(tok, f"{what} must be >= {minimum}, got {value}")
        return value, tok

    def polynomial(self) -> ExactPolynomial:
        coeffs: dict[int, Fraction] = {}
        first = True
        while True:
            tok = self.peek()
            sign = Fraction(1)
            if tok.kind in "+-":
                self.next()
                sign = Fraction(-1) if tok.kind == "-" else Fraction(1)
            elif not first:
                break
            term_tok = self.peek()
            if term_tok.kind == "number":
                coeff, _ = self.rational()
            elif term_tok.kind == "ident":
                coeff = Fraction(1)
            else:
                self.fail(term_tok, "expected a polynomial term")
            power = 0
            var = self.peek()
            if var.kind == "ident":
                if var.text != "x":
                    self.fail(var, f"unknown variable {var.text!r} (only x is allowed)")
                self.next()
                power = 1
                if self.peek().kind == "^":
                    self.next()
                    power, _ = self.integer("exponent", 0)
            coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coeff
            first = False
            if self.peek().kind not in "+-":
                break
        top = max(coeffs, default=0)
        return ExactPolynomial([coeffs.get(j, Fraction(0)) for j in range(top + 1)])

    def boolean(self) -> bool:
        tok = self.expect("ident", "true or false")
        if tok.text not in ("true", "false"):
            self.fail(tok, f"expected true or false, found {tok.text!r}")
        return tok.text == "true"

    def object_pairs(self, what: str, keys: dict) -> dict:
        """Parse { key: value, ... } with per-key sub-parsers."""
        self.expect("{", "'{'")
        seen: dict = {}
        while True:
            key_tok = self.expect("ident", f"a {what} field name")
            if key_tok.text not in keys:
                self.fail(
                    key_tok,
                    f"unknown {what} field {key_tok.text!r} "
                    f"(expected one of {', '.join(keys)})",
                )
            if key_tok.text in seen:
                self.fail(key_tok, f"duplicate {what} field {key_tok.text!r}")
            self.expect(":", "':'")
            seen[key_tok.text] = (keys[key_tok.text](), key_tok)
            tok = self.peek()
            if tok.kind == ",":
                self.next()
                continue
            self.expect("}", "',' or '}'")
            break
        return seen

    # statements --------------------------------------------------------

    def parse(self) -> Union[RecurrenceSpec, FamilyRequest]:
        gamma: Optional[tuple[ExactPolynomial, _Token]] = None
        m: Optional[tuple[Fraction, _Token]] = None
        start: Optional[tuple[int, ExactPolynomial]] = None
        lags: list[LagTerm] = []
        lag_positions: dict[int, _Token] = {}
        family: Optional[FamilyRequest] = None

        tok = self.peek()
        if tok.kind == "<eof>":
            self.fail(tok, "empty specification: expected at least one statement")
        while self.peek().kind != "<eof>":
            key = self.expect("ident", "a statement key")
            if family is not None or (
                key.text == "family" and (gamma or m or start or lags)
            ):
                self.fail(key, "family cannot be combined with other statements")
            self.expect(":", "':'")
            if key.text == "gamma":
                if gamma is not None:
                    self.fail(key, "duplicate key 'gamma'")
                gamma = (self.polynomial(), key)
            elif key.text == "m":
                if m is not None:
                    self.fail(key, "duplicate key 'm'")
                value, value_tok = self.rational()
                if value <= 0:
                    self.fail(value_tok, _M_POSITIVITY)
                m = (value, key)
            elif key.text == "lag":
                fields = self.object_pairs(
                    "lag",
                    {
                        "s": lambda: self.integer("lag depth s", 1)[0],
                        "coeff": self.polynomial,
                        "binom": self.boolean,
                    },
                )
                if "s" not in fields:
                    self.fail(key, "lag needs a depth field s")
                if "coeff" not in fields:
                    self.fail(key, "lag needs a coefficient field coeff")
                s_value, s_tok = fields["s"]
                if s_value in lag_positions:
                    self.fail(s_tok, f"duplicate lag depth {s_value}")
                lag_positions[s_value] = s_tok
                lags.append(
                    LagTerm(
                        s=s_value,
                        kappa=fields["coeff"][0],
                        binom_weight=fields["binom"][0] if "binom" in fields else False,
                    )
                )
            elif key.text == "start":
                if start is not None:
                    self.fail(key, "duplicate key 'start'")
                fields = self.object_pairs(
                    "start",
                    {
                        "index": lambda: self.integer("start index", 0)[0],
                        "poly": self.polynomial,
                    },
                )
                index = fields["index"][0] if "index" in fields else 0
                poly = fields["poly"][0] if "poly" in fields else ONE
                if poly.is_zero:
                    self.fail(
                        fields["poly"][1] if "poly" in fields else key,
                        "start polynomial must be nonzero",
                    )
                start = (index, poly)
            elif key.text == "family":
                family = self.family_value()
            else:
                self.fail(
                    key,
                    f"unknown key {key.text!r} "
                    "(expected gamma, m, lag, start, or family)",
                )
            self.expect(";", "';'")

        if family is not None:
            return family
        eof = self.peek()
        if gamma is None:
            self.fail(eof, "missing required key: gamma")
        if m is None:
            self.fail(eof, "missing required key: m")
        index, poly = start if start is not None else (0, ONE)
        return RecurrenceSpec(
            gamma=gamma[0],
            m=m[0],
            lags=tuple(lags),
            start_index=index,
            start_poly=poly,
        )

    def family_value(self) -> FamilyRequest:
        name_tok = self.expect("ident", "a family name")
        if name_tok.text not in catalog_names():
            self.fail(
                name_tok,
                f"unknown family {name_tok.text!r} "
                f"(known: {', '.join(catalog_names())})",
            )
        allowed = family_parameters(name_tok.text)
        params: dict[str, Union[int, Fraction]] = {}
        self.expect("(", "'('")
        if self.peek().kind != ")":
            while True:
                p_tok = self.expect("ident", "a parameter name")
                if p_tok.text not in allowed:
                    self.fail(
                        p_tok,
                        f"family {name_tok.text!r} has no parameter {p_tok.text!r} "
                        f"(expected {', '.join(allowed) or 'none'})",
                    )
                if p_tok.text in params:
                    self.fail(p_tok, f"duplicate parameter {p_tok.text!r}")
                self.expect("=", "'='")
                value, _ = self.rational()
                params[p_tok.text] = (
                    int(value) if value.denominator == 1 else value
                )
                if self.peek().kind == ",":
                    self.next()
                    continue
                break
        self.expect(")", "')'")
        return FamilyRequest(name=name_tok.text, params=params)


def parse(src: Union[SpecSource, str]) -> Union[RecurrenceSpec, FamilyRequest]:
    """Parse spec text into a RecurrenceSpec or a FamilyRequest."""
    if isinstance(src, str):
        src = SpecSource(src)
    return _Parser(src).parse()


def load(src: Union[SpecSource, str]) -> Union[RecurrenceSpec, FamilyDescriptor]:
    """Parse, and additionally build the descriptor for family requests."""
    parsed = parse(src)
    if isinstance(parsed, FamilyRequest):
        return parsed.build()
    return parsed


def format_spec(obj: Union[RecurrenceSpec, FamilyRequest, FamilyDescriptor]) -> str:
    """Canonical rendering; parse(format_spec(s)) reproduces s.

    Field order: gamma, m, lags (ascending depth), start (only when it is
    not the default).
    """
    if isinstance(obj, FamilyDescriptor):
        params = {k: obj.parameters[k] for k in family_parameters(obj.name)}
        obj = FamilyRequest(obj.name, params)
    if isinstance(obj, FamilyRequest):
        inner = ",".join(f"{k}={v}" for k, v in obj.params.items())
        return f"family: {obj.name}({inner});"
    parts = [f"gamma: {obj.gamma}", f"m: {obj.m}"]
    for lag in sorted(obj.lags, key=lambda t: t.s):
        parts.append(
            "lag: {s: %d, coeff: %s, binom: %s}"
            % (lag.s, lag.kappa, "true" if lag.binom_weight else "false")
        )
    if obj.start_index != 0 or obj.start_poly != ONE:
        parts.append(
            "start: {index: %d, poly: %s}" % (obj.start_index, obj.start_poly)
        )
    return "; ".join(parts) + ";"
