"""Q_p at finite precision and finite extensions Q_p[X]/(f).

Numbers are stored as p^v * u with the whole number known modulo p^N
(absolute error order N, as in the Laurent module).  Extension elements are
representative polynomials modulo a monic defining polynomial; their
valuations come from the valuation of a resultant:

    v(g(gen)) = v(Res(f, g)) / deg f

which is the norm route and needs no uniformizer towers.  Irreducibility
over Q_p is certified through the Newton polygon only: a single segment
whose slope denominator equals the degree, or a unit polynomial whose
residue is irreducible over F_p.  Anything else must carry an external
irreducibility assertion, which is recorded downstream in certificates.

When a resultant valuation comes out indeterminate the ring rebuilds
itself at doubled precision and retries, at most three times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (
    CertificationError,
    DescriptorMismatchError,
    IndeterminateValuationError,
    PrecisionError,
    ValfieldError,
)
from .finite_field import prime_field
from .laurent import ValuationResult
from .polygon import NewtonPolygon, newton_polygon_from_valuations
from .value_group import Value


def vp_int(n: int, p: int) -> Optional[int]:
    """p-adic valuation of an integer; None for 0."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q: Fraction, p: int) -> Optional[int]:
    if q == 0:
        return None
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


class PAdicNumber:
    """An element of Q_p known modulo p^prec."""

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val: Optional[int], unit: int, prec: int):
        self.p = p
        self.prec = prec
        if val is None or val >= prec:
            self.val, self.unit = None, 0
            return
        rel = prec - val
        unit %= p**rel
        if unit == 0:
            self.val, self.unit = None, 0
            return
        shift = vp_int(unit, p)
        self.val = val + shift
        if self.val >= prec:
            self.val, self.unit = None, 0
            return
        self.unit = (unit // p**shift) % p ** (prec - self.val)

    @staticmethod
    def from_fraction(p: int, q: Union[int, Fraction], prec: int) -> "PAdicNumber":
        q = Fraction(q)
        if q == 0:
            return PAdicNumber(p, None, 0, prec)
        vn = vp_int(q.numerator, p)
        vd = vp_int(q.denominator, p)
        v = vn - vd
        num = q.numerator // p**vn
        den = q.denominator // p**vd
        rel = prec - v
        if rel <= 0:
            return PAdicNumber(p, None, 0, prec)
        unit = num * pow(den, -1, p**rel) % p**rel
        return PAdicNumber(p, v, unit, prec)

    # -- predicates --------------------------------------------------------

    def is_zero_to_prec(self) -> bool:
        return self.val is None

    def valuation_floor(self) -> int:
        return self.prec if self.val is None else self.val

    def valuation(self) -> ValuationResult:
        if self.val is None:
            return ValuationResult.at_least(Value.rank1(self.prec))
        return ValuationResult.exactly(Value.rank1(self.val))

    def _check(self, other: "PAdicNumber") -> None:
        if self.p != other.p:
            raise DescriptorMismatchError("numbers over different primes")

    def _as_int(self) -> int:
        """The value as an integer multiple of p^min(0, val), mod p^prec."""
        if self.val is None:
            return 0
        return self.unit * self.p ** max(self.val, 0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "PAdicNumber") -> "PAdicNumber":
        self._check(other)
        prec = min(self.prec, other.prec)
        shift = min(self.valuation_floor(), other.valuation_floor(), 0)
        a = 0 if self.val is None else self.unit * self.p ** (self.val - shift)
        b = 0 if other.val is None else other.unit * other.p ** (other.val - shift)
        return PAdicNumber(self.p, shift, a + b, prec)

    def __neg__(self) -> "PAdicNumber":
        if self.val is None:
            return self
        return PAdicNumber(self.p, self.val, -self.unit, self.prec)

    def __sub__(self, other: "PAdicNumber") -> "PAdicNumber":
        return self + (-other)

    def __mul__(self, other: "PAdicNumber") -> "PAdicNumber":
        self._check(other)
        prec = min(
            self.prec + other.valuation_floor(),
            other.prec + self.valuation_floor(),
        )
        if self.val is None or other.val is None:
            return PAdicNumber(self.p, None, 0, prec)
        return PAdicNumber(
            self.p, self.val + other.val, self.unit * other.unit, prec
        )

    def inverse(self) -> "PAdicNumber":
        if self.val is None:
            raise IndeterminateValuationError("division by an indeterminate number")
        rel = self.prec - self.val
        if rel <= 0:
            raise PrecisionError("no digits left to invert")
        inv = pow(self.unit, -1, self.p**rel)
        return PAdicNumber(self.p, -self.val, inv, self.prec - 2 * self.val)

    def __truediv__(self, other: "PAdicNumber") -> "PAdicNumber":
        return self * other.inverse()

    def residue(self):
        """Image in F_p, for elements of nonnegative valuation."""
        if self.val is not None and self.val < 0:
            raise ValfieldError("residue of an element with negative valuation")
        if self.prec <= 0:
            raise PrecisionError("error order too small to read the residue")
        base = prime_field(self.p)
        if self.val is None or self.val > 0:
            return base.zero()
        return base.element(self.unit % self.p)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PAdicNumber)
            and self.p == other.p
            and self.val == other.val
            and self.unit == other.unit
            and self.prec == other.prec
        )

    def __hash__(self) -> int:
        return hash((self.p, self.val, self.unit, self.prec))

    def to_text(self) -> str:
        if self.val is None:
            return f"O({self.p}^{self.prec})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.prec})"

    def __repr__(self) -> str:
        return self.to_text()


# -- polynomials over Q_p --------------------------------------------------


def poly_from_fractions(
    p: int, coeffs: Sequence[Union[int, Fraction]], prec: int
) -> List[PAdicNumber]:
    return [PAdicNumber.from_fraction(p, c, prec) for c in coeffs]


def newton_polygon(coeffs: Sequence[PAdicNumber]) -> NewtonPolygon:
    """Polygon of a polynomial over Q_p (index = degree)."""
    return newton_polygon_from_valuations([c.valuation() for c in coeffs])


def monicize(coeffs: Sequence[Fraction]) -> List[Fraction]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValfieldError("cannot monicize the zero polynomial")
    lead = cs[-1]
    return [c / lead for c in cs]


class PAdicExtRing:
    """Q_p[X]/(f) with f monic, at a fixed working precision."""

    def __init__(
        self,
        p: int,
        modulus: Sequence[Union[int, Fraction]],
        prec: Optional[int] = None,
        denominator_bound: Optional[int] = None,
        irreducible_asserted: bool = False,
    ):
        self.p = p
        mod = monicize([Fraction(c) for c in modulus])
        self.modulus_fractions = mod
        self.degree = len(mod) - 1
        if self.degree < 1:
            raise ValfieldError("modulus must have degree >= 1")
        db = denominator_bound if denominator_bound is not None else self.degree
        self.denominator_bound = db
        self.prec = prec if prec is not None else 4 * self.degree * db
        self.modulus = poly_from_fractions(p, mod, self.prec)
        self.irreducible_asserted = irreducible_asserted
        self._polygon: Optional[NewtonPolygon] = None

    def polygon(self) -> NewtonPolygon:
        if self._polygon is None:
            self._polygon = newton_polygon(self.modulus)
        return self._polygon

    def irreducibility_certified(self) -> bool:
        """Slope-denominator criterion (totally ramified case)."""
        slope = self.polygon().single_slope()
        if slope is None or self.polygon().start != 0:
            return False
        return slope.denominator == self.degree

    def _check_irreducible(self) -> None:
        if not (self.irreducibility_certified() or self.irreducible_asserted):
            raise CertificationError(
                "irreducibility not certifiable by the slope criterion; "
                "supply an external assertion"
            )

    # -- elements ----------------------------------------------------------

    def element(self, rep) -> "PAdicExtElement":
        if isinstance(rep, PAdicExtElement):
            if rep.ring is not self:
                raise DescriptorMismatchError("element from a different ring")
            return rep
        coeffs = [
            c if isinstance(c, PAdicNumber) else PAdicNumber.from_fraction(self.p, c, self.prec)
            for c in rep
        ]
        return PAdicExtElement(self, self._reduce(coeffs))

    def zero(self) -> "PAdicExtElement":
        return self.element([])

    def one(self) -> "PAdicExtElement":
        return self.element([1])

    def gen(self) -> "PAdicExtElement":
        return self.element([0, 1])

    def _reduce(self, coeffs: List[PAdicNumber]) -> Tuple[PAdicNumber, ...]:
        cs = list(coeffs)
        n = self.degree
        while len(cs) > n:
            lead = cs.pop()
            if lead.is_zero_to_prec():
                continue
            shift = len(cs) - n
            for i in range(n):
                cs[shift + i] = cs[shift + i] - lead * self.modulus[i]
        cs += [PAdicNumber(self.p, None, 0, self.prec)] * (n - len(cs))
        return tuple(cs)

    def at_precision(self, prec: int) -> "PAdicExtRing":
        return PAdicExtRing(
            self.p,
            self.modulus_fractions,
            prec=prec,
            denominator_bound=self.denominator_bound,
            irreducible_asserted=self.irreducible_asserted,
        )


class PAdicExtElement:
    """Representative polynomial of degree < deg f, modulo f."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: PAdicExtRing, rep: Tuple[PAdicNumber, ...]):
        self.ring = ring
        self.rep = rep

    def _check(self, other: "PAdicExtElement") -> None:
        if self.ring is not other.ring and (
            self.ring.p != other.ring.p
            or self.ring.modulus_fractions != other.ring.modulus_fractions
        ):
            raise DescriptorMismatchError("elements of different extension rings")

    def __add__(self, other: "PAdicExtElement") -> "PAdicExtElement":
        self._check(other)
        return PAdicExtElement(
            self.ring, tuple(a + b for a, b in zip(self.rep, other.rep))
        )

    def __neg__(self) -> "PAdicExtElement":
        return PAdicExtElement(self.ring, tuple(-a for a in self.rep))

    def __sub__(self, other: "PAdicExtElement") -> "PAdicExtElement":
        return self + (-other)

    def __mul__(self, other: "PAdicExtElement") -> "PAdicExtElement":
        self._check(other)
        n = self.ring.degree
        zero = PAdicNumber(self.ring.p, None, 0, self.ring.prec + 10 * n)
        prod = [zero] * (2 * n - 1) if n > 1 else [zero]
        for i, a in enumerate(self.rep):
            if a.is_zero_to_prec():
                continue
            for j, b in enumerate(other.rep):
                if not b.is_zero_to_prec():
                    prod[i + j] = prod[i + j] + a * b
        return PAdicExtElement(self.ring, self.ring._reduce(prod))

    def __pow__(self, e: int) -> "PAdicExtElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "PAdicExtElement":
        """Extended-gcd inverse against the modulus."""
        f = list(self.ring.modulus)
        g = list(self.rep)
        p = self.ring.p
        prec = self.ring.prec
        zero = PAdicNumber(p, None, 0, prec)
        one = PAdicNumber.from_fraction(p, 1, prec)
        # (r0, s0) and (r1, s1) with ri = si * g (mod f)
        r0, s0 = f, [zero]
        r1, s1 = g, [one]
        while True:
            r1 = _trim(r1)
            if len(r1) == 0:
                raise IndeterminateValuationError(
                    "element is zero (or not invertible) at current precision"
                )
            if len(r1) == 1:
                inv = r1[0].inverse()
                return self.ring.element([c * inv for c in s1])
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def is_zero_to_prec(self) -> bool:
        return all(c.is_zero_to_prec() for c in self.rep)

    def to_text(self) -> str:
        parts = [
            f"({c.to_text()})*X^{i}" for i, c in enumerate(self.rep)
            if not c.is_zero_to_prec()
        ]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return self.to_text()


def _trim(cs: List[PAdicNumber]) -> List[PAdicNumber]:
    cs = list(cs)
    while cs and cs[-1].is_zero_to_prec():
        cs.pop()
    return cs


def _poly_divmod(a: List[PAdicNumber], b: List[PAdicNumber]):
    a = list(a)
    b = _trim(b)
    inv_lead = b[-1].inverse()
    q = [None] * max(0, len(a) - len(b) + 1)
    zero = None
    while True:
        a = _trim(a)
        if len(a) < len(b):
            break
        c = a[-1] * inv_lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = a[shift + i] - c * bi
        a.pop()
    p = b[0].p
    prec = b[0].prec
    filler = PAdicNumber(p, None, 0, prec)
    q = [filler if x is None else x for x in q]
    return q, a


def _poly_mul(a: List[PAdicNumber], b: List[PAdicNumber]) -> List[PAdicNumber]:
    if not a or not b:
        return []
    p = (a + b)[0].p
    prec = max(x.prec for x in a + b)
    out = [PAdicNumber(p, None, 0, prec + 10**6)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_sub(a: List[PAdicNumber], b: List[PAdicNumber]) -> List[PAdicNumber]:
    n = max(len(a), len(b))
    if n == 0:
        return []
    p = (a + b)[0].p
    prec = max(x.prec for x in a + b)
    zero = PAdicNumber(p, None, 0, prec + 10**6)
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x - y)
    return out


def ext_arith(a: PAdicExtElement, b: PAdicExtElement, op: str) -> PAdicExtElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a * b.inverse()
    raise ValfieldError(f"unknown operation {op!r}")


# -- resultant-based valuation ---------------------------------------------


def _sylvester_det_valuation(
    f: List[PAdicNumber], g: List[PAdicNumber]
) -> ValuationResult:
    """Valuation of det(Sylvester(f, g)) by elimination with valuation pivoting."""
    m, n = len(f) - 1, len(g) - 1
    if n < 0:
        raise ValfieldError("resultant with the zero polynomial")
    if n == 0:
        # Res(f, c) = c^deg(f)
        acc = g[0].valuation()
        if not acc.exact:
            return acc
        return ValuationResult.exactly(acc.value.scale(m))
    size = m + n
    p = f[0].p
    prec = max(c.prec for c in f + g)
    zero = PAdicNumber(p, None, 0, prec + 10**6)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    total = Fraction(0)
    for col in range(size):
        pivot_row = None
        pivot_val = None
        for r in range(col, size):
            entry = rows[r][col]
            if entry.is_zero_to_prec():
                continue
            if pivot_val is None or entry.val < pivot_val:
                pivot_val = entry.val
                pivot_row = r
        if pivot_row is None:
            bound = min(rows[r][col].prec for r in range(col, size))
            return ValuationResult.at_least(Value.rank1(bound))
        rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        total += pivot_val
        pv = rows[col][col]
        for r in range(col + 1, size):
            entry = rows[r][col]
            if entry.is_zero_to_prec():
                continue
            factor = entry / pv
            rows[r] = [
                x - factor * y for x, y in zip(rows[r], rows[col])
            ]
    return ValuationResult.exactly(Value.rank1(total))


def ext_valuation(a: PAdicExtElement) -> Value:
    """v(a) = v(Res(f, a)) / deg f.

    Raises PrecisionError when the resultant valuation is indeterminate at
    the ring's working precision; use :func:`with_precision_retry` to rerun
    a whole construction at doubled precision.
    """
    ring = a.ring
    ring._check_irreducible()
    if a.is_zero_to_prec():
        raise IndeterminateValuationError("valuation of a zero-to-precision element")
    g = _trim(list(a.rep))
    res = _sylvester_det_valuation(list(ring.modulus), g)
    if not res.exact:
        raise PrecisionError("resultant valuation indeterminate at working precision")
    return res.value.scale(Fraction(1, ring.degree))


def with_precision_retry(compute, initial_prec: int, attempts: int = 3):
    """Run compute(prec), doubling precision on PrecisionError, capped retries."""
    prec = initial_prec
    last = None
    for _ in range(attempts + 1):
        try:
            return compute(prec)
        except PrecisionError as exc:
            last = exc
            prec *= 2
    raise PrecisionError(f"still indeterminate after {attempts} precision raises") from last


@dataclass(frozen=True)
class FundamentalEqualityData:
    n: int
    e: int
    f_res: Optional[int]
    certified_by: str
    equality_holds: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "fRes": self.f_res,
            "certifiedBy": self.certified_by,
            "equalityHolds": self.equality_holds,
        }


def fundamental_equality_data(ring: PAdicExtRing) -> FundamentalEqualityData:
    """Degree, ramification index and residue degree of Q_p[X]/(f).

    Certification routes: slope denominator equal to the degree (totally
    ramified), unit polynomial with irreducible residue (unramified), or an
    external irreducibility assertion combined with the slope data.
    """
    n = ring.degree
    polygon = ring.polygon()
    slope = polygon.single_slope()
    if slope is not None and polygon.start == 0 and slope.denominator == n:
        return FundamentalEqualityData(n, n, 1, "slope-denominator", True)
    if slope is not None and slope == 0 and polygon.start == 0:
        if _residue_irreducible(ring):
            return FundamentalEqualityData(n, 1, n, "residue-irreducible", True)
    if ring.irreducible_asserted:
        e = lcm(*[s.denominator for s, _ in polygon.segments])
        if n % e == 0:
            return FundamentalEqualityData(n, e, n // e, "asserted", True)
        return FundamentalEqualityData(n, e, None, "asserted", None)
    raise CertificationError(
        "cannot certify the extension data at this precision"
    )


def _residue_irreducible(ring: PAdicExtRing) -> bool:
    from .finite_field import _pmod_irreducible

    p = ring.p
    res = []
    for c in ring.modulus:
        res.append(c.residue().coeffs[0])
    return _pmod_irreducible(tuple(res), p)
