"""Truncated Laurent series over a finite field, with explicit error orders.

A series is stored as a window of coefficients starting at its lowest
exponent together with an error order N: the element is known modulo t^N.
Every arithmetic operation propagates error orders, so a valuation is
either exact (first nonzero stored coefficient) or only a lower bound
"at least N" when every stored coefficient vanishes.  Consumers must
branch on the two outcomes explicitly; an indeterminate valuation is never
silently promoted to infinity.

The text format round-trips bit-exactly:

    t^-2 + 3*t^0 + t^5 + O(t^8)

with coefficients in finite-field element syntax (plain integers for prime
fields, bracketed coefficient lists for extensions).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DescriptorMismatchError,
    IndeterminateValuationError,
    ParseError,
    PrecisionError,
    ValfieldError,
)
from .finite_field import FFElement, FiniteFieldDescriptor
from .value_group import Value


@dataclass(frozen=True)
class ValuationResult:
    """Either an exact valuation or a lower bound carrying the error order."""

    exact: bool
    value: Value

    @staticmethod
    def exactly(v: Value) -> "ValuationResult":
        return ValuationResult(True, v)

    @staticmethod
    def at_least(v: Value) -> "ValuationResult":
        return ValuationResult(False, v)

    def require_exact(self) -> Value:
        if not self.exact:
            raise IndeterminateValuationError(
                f"valuation only known to be >= {self.value.to_text()}"
            )
        return self.value

    def to_text(self) -> str:
        return self.value.to_text() if self.exact else f">={self.value.to_text()}"

    def __repr__(self) -> str:
        kind = "Exact" if self.exact else "AtLeast"
        return f"{kind}({self.value.to_text()})"


class LaurentField:
    """The field F_q((t)) as a context object: base field plus variable name."""

    def __init__(self, base: FiniteFieldDescriptor, var: str = "t", default_prec: int = 16):
        self.base = base
        self.var = var
        self.default_prec = default_prec

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentField)
            and self.base == other.base
            and self.var == other.var
        )

    def __hash__(self) -> int:
        return hash((self.base, self.var))

    def to_text(self) -> str:
        return f"{self.base.to_text()}(({self.var}))"

    def __repr__(self) -> str:
        return self.to_text()

    # -- constructors ------------------------------------------------------

    def make(self, low: int, coeffs: Sequence[FFElement], prec: int) -> "LaurentSeries":
        """Normalized series: leading/trailing zeros trimmed, clamped to prec."""
        cs = list(coeffs)
        while cs and cs[0].is_zero():
            cs.pop(0)
            low += 1
        # clamp to the error order
        if low + len(cs) > prec:
            cs = cs[: max(0, prec - low)]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            return LaurentSeries(self, prec, (), prec)
        return LaurentSeries(self, low, tuple(cs), prec)

    def zero(self, prec: Optional[int] = None) -> "LaurentSeries":
        n = self.default_prec if prec is None else prec
        return LaurentSeries(self, n, (), n)

    def one(self, prec: Optional[int] = None) -> "LaurentSeries":
        return self.t_power(0, prec)

    def t_power(self, e: int, prec: Optional[int] = None) -> "LaurentSeries":
        n = self.default_prec if prec is None else prec
        return self.make(e, [self.base.one()], n)

    def constant(self, c, prec: Optional[int] = None) -> "LaurentSeries":
        n = self.default_prec if prec is None else prec
        return self.make(0, [self.base.element(c)], n)

    def from_terms(self, terms: Dict[int, FFElement], prec: int) -> "LaurentSeries":
        if not terms:
            return self.zero(prec)
        low = min(terms)
        hi = max(terms)
        cs = [terms.get(e, self.base.zero()) for e in range(low, hi + 1)]
        return self.make(low, cs, prec)

    def from_int_terms(self, terms: Dict[int, int], prec: int) -> "LaurentSeries":
        return self.from_terms(
            {e: self.base.element(c) for e, c in terms.items()}, prec
        )

    # -- parsing -----------------------------------------------------------

    def parse(self, text: str, default_prec: Optional[int] = None) -> "LaurentSeries":
        return parse_series(self, text, default_prec)


class LaurentSeries:
    """An element of F_q((t)) known modulo t^prec."""

    __slots__ = ("field", "low", "coeffs", "prec")

    def __init__(self, field: LaurentField, low: int, coeffs: Tuple[FFElement, ...], prec: int):
        self.field = field
        self.low = low
        self.coeffs = coeffs
        self.prec = prec

    # -- basics ------------------------------------------------------------

    def is_zero_to_prec(self) -> bool:
        return not self.coeffs

    def valuation_floor(self) -> int:
        """Exact valuation, or the error order when indeterminate."""
        return self.low if self.coeffs else self.prec

    def valuation(self) -> ValuationResult:
        if self.coeffs:
            return ValuationResult.exactly(Value.rank1(self.low))
        return ValuationResult.at_least(Value.rank1(self.prec))

    def coeff_at(self, e: int) -> FFElement:
        if e >= self.prec:
            raise PrecisionError(f"coefficient at t^{e} is beyond error order {self.prec}")
        i = e - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.base.zero()

    def residue(self) -> FFElement:
        """Image in the residue field, for elements of the valuation ring."""
        if self.coeffs and self.low < 0:
            raise ValfieldError("residue of an element with negative valuation")
        if self.prec <= 0:
            raise PrecisionError("error order too small to read the residue")
        return self.coeff_at(0)

    def _check(self, other: "LaurentSeries") -> None:
        if self.field != other.field:
            raise DescriptorMismatchError("series over different fields")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return other.truncate(prec)
        if not other.coeffs:
            return self.truncate(prec)
        low = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        zero = self.field.base.zero()
        cs = [zero] * (hi - low)
        for i, c in enumerate(self.coeffs):
            cs[self.low - low + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.low - low + i
            cs[j] = cs[j] + c
        return self.field.make(low, cs, prec)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(
            self.field, self.low, tuple(-c for c in self.coeffs), self.prec
        )

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        prec = min(
            self.prec + other.valuation_floor(),
            other.prec + self.valuation_floor(),
        )
        if not self.coeffs or not other.coeffs:
            return self.field.zero(prec)
        low = self.low + other.low
        zero = self.field.base.zero()
        out_len = min(len(self.coeffs) + len(other.coeffs) - 1, max(0, prec - low))
        cs = [zero] * out_len
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            jmax = min(len(other.coeffs), out_len - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if not b.is_zero():
                    cs[i + j] = cs[i + j] + a * b
        return self.field.make(low, cs, prec)

    def scale(self, c: FFElement) -> "LaurentSeries":
        if c.is_zero():
            return self.field.zero(self.prec)
        return LaurentSeries(
            self.field, self.low, tuple(x * c for x in self.coeffs), self.prec
        )

    def shift(self, e: int) -> "LaurentSeries":
        """Exact multiplication by t^e."""
        return LaurentSeries(self.field, self.low + e, self.coeffs, self.prec + e)

    def __pow__(self, e: int) -> "LaurentSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one(self.prec + max(0, (e - 1)) * max(0, self.valuation_floor()))
        base = self
        first = True
        while e:
            if e & 1:
                result = base if first else result * base
                first = False
            e >>= 1
            if e:
                base = base * base
        if first:
            return self.field.one(self.prec)
        return result

    def frobenius(self, times: int = 1) -> "LaurentSeries":
        """p^times-th power; in characteristic p this acts coefficientwise."""
        q = self.field.base.p**times
        if not self.coeffs:
            return self.field.zero(self.prec * q)
        terms = {
            (self.low + i) * q: c.frobenius(times)
            for i, c in enumerate(self.coeffs)
        }
        return self.field.from_terms(terms, self.prec * q)

    def inverse(self) -> "LaurentSeries":
        if not self.coeffs:
            raise IndeterminateValuationError("division by a series of indeterminate valuation")
        v = self.low
        rel = self.prec - v  # digits of the unit part we know
        unit = self.coeffs
        inv = [self.coeffs[0].inverse()]
        zero = self.field.base.zero()
        for m in range(1, rel):
            s = zero
            for j in range(1, m + 1):
                uj = unit[j] if j < len(unit) else zero
                if not uj.is_zero():
                    s = s + uj * inv[m - j]
            inv.append(-(s * inv[0]))
        return self.field.make(-v, inv, self.prec - 2 * v)

    def __truediv__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        return self * other.inverse()

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise PrecisionError("cannot raise the error order of a series")
        return self.field.make(self.low, self.coeffs, prec)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.field == other.field
            and self.low == other.low
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self) -> int:
        return hash((self.low, self.coeffs, self.prec))

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        var = self.field.var
        one = self.field.base.one()
        parts = [
            (
                f"{var}^{self.low + i}"
                if c == one
                else f"{c.to_text()}*{var}^{self.low + i}"
            )
            for i, c in enumerate(self.coeffs)
            if not c.is_zero()
        ]
        parts.append(f"O({var}^{self.prec})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return self.to_text()


def series_arith(a: LaurentSeries, b: LaurentSeries, op: str) -> LaurentSeries:
    """Arithmetic dispatch; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValfieldError(f"unknown operation {op!r}")


def valuation(a: LaurentSeries) -> ValuationResult:
    return a.valuation()


# -- univariate polynomials over series ------------------------------------


def poly_eval(coeffs: Sequence[LaurentSeries], x: LaurentSeries) -> LaurentSeries:
    acc = x.field.zero(prec=10**9)
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence[LaurentSeries]) -> List[LaurentSeries]:
    out = []
    for i, c in enumerate(coeffs):
        if i == 0:
            continue
        scalar = c.field.base.element(i)
        out.append(c.scale(scalar))
    return out


def hensel_lift(
    coeffs: Sequence[LaurentSeries], x0: LaurentSeries, target_prec: int, max_iter: int = 64
) -> LaurentSeries:
    """Newton iteration x -> x - f(x)/f'(x) up to f(x) = 0 mod t^target_prec.

    Requires the Hensel condition v(f(x0)) > 2 v(f'(x0)) with both
    valuations exact; the iteration doubles the residual valuation gap per
    step.
    """
    coeffs = list(coeffs)
    deriv = poly_derivative(coeffs)
    fx = poly_eval(coeffs, x0)
    dfx = poly_eval(deriv, x0)
    if fx.is_zero_to_prec() and fx.prec >= target_prec:
        return x0
    vfx = fx.valuation().require_exact().first
    vdfx = dfx.valuation().require_exact().first
    if not vfx > 2 * vdfx:
        raise ValfieldError(
            f"Hensel condition fails: v(f(x0))={vfx} <= 2*v(f'(x0))={2 * vdfx}"
        )
    x = x0
    for _ in range(max_iter):
        fx = poly_eval(coeffs, x)
        if fx.is_zero_to_prec():
            if fx.prec >= target_prec:
                return x
            raise PrecisionError("input precision insufficient for the requested lift")
        if fx.low >= target_prec:
            return x
        dfx = poly_eval(deriv, x)
        x = x - fx / dfx
    raise PrecisionError("Newton iteration did not reach the target precision")


def artin_schreier_solve(a: LaurentSeries) -> Optional[LaurentSeries]:
    """Solve x^p - x = a in F_q((t)), to the precision of a.

    Returns None when no solution exists: at negative valuations not
    divisible by p, or when the residue equation y^p - y = res(a) has no
    root in F_q.  The input must have an exact valuation (or be zero to
    its error order).
    """
    field = a.field
    p = field.base.p
    if a.is_zero_to_prec():
        return field.zero(a.prec)
    if not a.valuation().exact:
        raise IndeterminateValuationError("cannot solve at indeterminate valuation")

    parts: List[LaurentSeries] = []
    current = a
    # peel leading terms of negative valuation
    while current.coeffs and current.low < 0:
        v = current.low
        if v % p != 0:
            return None
        lead = current.coeffs[0]
        m = field.make(v // p, [lead.frobenius_root()], current.prec)
        parts.append(m)
        current = current - (m.frobenius() - m)
    if current.coeffs and current.low == 0:
        r = current.residue()
        y = None
        for cand in field.base.elements():
            if (cand.frobenius() - cand) == r:
                y = cand
                break
        if y is None:
            return None
        m = field.make(0, [y], current.prec)
        parts.append(m)
        current = current - (m.frobenius() - m)
    # now v(current) > 0 (or zero to precision): Hensel from 0 on X^p - X - current
    if current.is_zero_to_prec():
        root = field.zero(current.prec)
    else:
        target = current.prec
        poly = [-current] + [field.zero(target)] * (p - 1) + [field.one(target)]
        poly[1] = poly[1] - field.one(target)
        root = hensel_lift(poly, field.zero(target), target)
    x = root
    for m in parts:
        x = x + m
    return x


# -- parsing ---------------------------------------------------------------

_TERM_RE = re.compile(r"\s*([+-])?\s*")


def parse_series(
    field: LaurentField, text: str, default_prec: Optional[int] = None
) -> LaurentSeries:
    """Parse the bit-exact text form produced by LaurentSeries.to_text()."""
    var = field.var
    s = text.strip()
    if not s:
        raise ParseError("empty series text")
    prec = None
    m = re.search(r"O\(\s*" + re.escape(var) + r"\^(-?\d+)\s*\)\s*$", s)
    if m:
        prec = int(m.group(1))
        s = s[: m.start()].rstrip()
        s = re.sub(r"\+\s*$", "", s).rstrip()
    if prec is None:
        prec = field.default_prec if default_prec is None else default_prec
    terms: Dict[int, FFElement] = {}
    if s:
        for sign, chunk in _split_terms(s, text):
            e, c = _parse_term(field, chunk, text)
            c = -c if sign == "-" else c
            terms[e] = terms.get(e, field.base.zero()) + c
    return field.from_terms(terms, prec)


def _split_terms(s: str, original: str):
    out = []
    sign = "+"
    depth = 0
    buf = []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch in "+-" and depth == 0 and buf and buf[-1] not in "^*":
            out.append((sign, "".join(buf).strip()))
            sign = ch
            buf = []
        else:
            buf.append(ch)
    if "".join(buf).strip():
        out.append((sign, "".join(buf).strip()))
    if not out:
        raise ParseError(f"cannot parse series {original!r}")
    return out


def _parse_term(field: LaurentField, chunk: str, original: str) -> Tuple[int, FFElement]:
    var = field.var
    coeff_text = None
    exp = 0
    if "*" in chunk:
        coeff_text, power = chunk.split("*", 1)
    else:
        power = chunk
    power = power.strip()
    if power.startswith(var):
        rest = power[len(var):].strip()
        if rest.startswith("^"):
            try:
                exp = int(rest[1:])
            except ValueError:
                raise ParseError(f"bad exponent in {original!r}") from None
        elif rest == "":
            exp = 1
        else:
            raise ParseError(f"cannot parse term {chunk!r} in {original!r}")
    elif coeff_text is None:
        coeff_text, exp = power, 0
    else:
        raise ParseError(f"cannot parse term {chunk!r} in {original!r}")
    if coeff_text is None:
        c = field.base.one()
    else:
        c = _parse_ff(field.base, coeff_text.strip(), original)
    return exp, c


def _parse_ff(base: FiniteFieldDescriptor, s: str, original: str) -> FFElement:
    if s.startswith("[") and s.endswith("]"):
        try:
            return base.element([int(x) for x in s[1:-1].split(",")])
        except ValueError:
            raise ParseError(f"bad coefficient {s!r} in {original!r}") from None
    try:
        return base.element(int(s))
    except ValueError:
        raise ParseError(f"bad coefficient {s!r} in {original!r}") from None
