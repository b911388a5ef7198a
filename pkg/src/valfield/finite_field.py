"""Arithmetic in F_p and F_{p^k}, with exhaustive root scans.

Extensions are carried by explicit monic irreducible modulus polynomials.
When no modulus is supplied, one is found by trial search over monic
polynomials in lexicographic coefficient order, so the choice is
deterministic.  Root-finding is an exhaustive scan over the field; there is
no factorization machinery beyond trial division at desk scale.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import DescriptorMismatchError, ParseError, ValfieldError

MAX_SCAN_SIZE = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- dense polynomials over Z/p as int tuples (index = degree) -------------


def _ptrim(c: Sequence[int]) -> Tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmod_rem(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[int, ...]:
    """Remainder of a by b (b monic up to a unit) over Z/p."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    while len(a) - 1 >= db and _ptrim(a):
        da = len(a) - 1
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] * inv_lb % p
        shift = da - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - q * bi) % p
        a.pop()
    return _ptrim(a)


def _pmod_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial-division irreducibility test for a monic poly over F_p."""
    f = _ptrim(f)
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        # all monic divisors of degree d, lexicographic in (c0,...,c_{d-1})
        for code in range(p**d):
            g = []
            c = code
            for _ in range(d):
                g.append(c % p)
                c //= p
            g.append(1)
            if not _pmod_rem(f, g, p):
                return False
    return True


class FiniteFieldDescriptor:
    """F_p (k = 1) or F_{p^k} given by a monic irreducible modulus."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValfieldError(f"{p} is not prime")
        if k < 1:
            raise ValfieldError("extension degree must be >= 1")
        if k > 8:
            raise ValfieldError("extension degree beyond desk scale (k <= 8)")
        self.p = p
        self.k = k
        self.q = p**k
        if modulus is None:
            modulus = (0, 1) if k == 1 else self._find_modulus(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValfieldError("modulus must be monic of degree k")
        if k > 1 and not _pmod_irreducible(modulus, p):
            raise ValfieldError("modulus is reducible")
        self.modulus = modulus

    @staticmethod
    def _find_modulus(p: int, k: int) -> Tuple[int, ...]:
        for code in range(p**k):
            g = []
            c = code
            for _ in range(k):
                g.append(c % p)
                c //= p
            g.append(1)
            if _pmod_irreducible(g, p):
                return tuple(g)
        raise ValfieldError("no irreducible modulus found")  # unreachable

    # -- element construction ---------------------------------------------

    def element(self, coeffs) -> "FFElement":
        if isinstance(coeffs, FFElement):
            if coeffs.desc is not self and coeffs.desc != self:
                raise DescriptorMismatchError("element from a different field")
            return coeffs
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [x % self.p for x in coeffs]
        if len(c) > self.k:
            raise ValfieldError("coefficient vector longer than k")
        c += [0] * (self.k - len(c))
        return FFElement(self, tuple(c))

    def zero(self) -> "FFElement":
        return self.element(0)

    def one(self) -> "FFElement":
        return self.element(1)

    def gen(self) -> "FFElement":
        if self.k == 1:
            return self.one()
        return self.element([0, 1])

    def elements(self) -> Iterator["FFElement"]:
        for code in range(self.q):
            c, digits = code, []
            for _ in range(self.k):
                digits.append(c % self.p)
                c //= self.p
            yield FFElement(self, tuple(digits))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteFieldDescriptor)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def to_text(self) -> str:
        if self.k == 1:
            return f"F({self.p})"
        mods = ",".join(str(c) for c in self.modulus)
        return f"F({self.p}^{self.k}; modulus=[{mods}])"

    def __repr__(self) -> str:
        return self.to_text()


class FFElement:
    """A field element as a reduced coefficient vector of length k."""

    __slots__ = ("desc", "coeffs", "_hash")

    def __init__(self, desc: FiniteFieldDescriptor, coeffs: Tuple[int, ...]):
        self.desc = desc
        self.coeffs = coeffs
        self._hash = None

    def _check(self, other: "FFElement") -> None:
        if self.desc != other.desc:
            raise DescriptorMismatchError("elements of different fields")

    def __add__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        p = self.desc.p
        return FFElement(
            self.desc, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        p = self.desc.p
        return FFElement(
            self.desc, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "FFElement":
        p = self.desc.p
        return FFElement(self.desc, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        d = self.desc
        if d.k == 1:
            return FFElement(d, ((self.coeffs[0] * other.coeffs[0]) % d.p,))
        prod = [0] * (2 * d.k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] = (prod[i + j] + a * b) % d.p
        rem = _pmod_rem(prod, d.modulus, d.p)
        rem = list(rem) + [0] * (d.k - len(rem))
        return FFElement(d, tuple(rem))

    def inverse(self) -> "FFElement":
        if self.is_zero():
            raise ValfieldError("inverse of zero in finite field")
        return self ** (self.desc.q - 2)

    def __truediv__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "FFElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.desc.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, times: int = 1) -> "FFElement":
        return self ** (self.desc.p**times)

    def frobenius_root(self, times: int = 1) -> "FFElement":
        """The unique y with y^(p^times) = self."""
        e, r = self.desc.k, times % self.desc.k
        if r == 0:
            return self
        return self ** (self.desc.p ** (e - r))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FFElement)
            and self.desc == other.desc
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.coeffs, self.desc.p, self.desc.k))
        return self._hash

    def to_text(self) -> str:
        if self.desc.k == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"FF({self.to_text()} in {self.desc.to_text()})"


def ff_arith(a: FFElement, b: FFElement, op: str) -> FFElement:
    """Field arithmetic dispatch; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValfieldError(f"unknown operation {op!r}")


def poly_eval(coeffs: Sequence[FFElement], x: FFElement) -> FFElement:
    """Evaluate a dense polynomial (index = degree) by Horner's rule."""
    acc = x.desc.zero()
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def has_root(coeffs: Sequence[FFElement], desc: FiniteFieldDescriptor) -> Optional[FFElement]:
    """Some root of the polynomial in the field, by exhaustive scan."""
    cs = list(coeffs)
    if len(_ff_trim(cs)) <= 1:
        raise ValfieldError("root scan needs degree >= 1")
    if desc.q > MAX_SCAN_SIZE:
        raise ValfieldError("field too large for exhaustive root scan")
    for x in desc.elements():
        if poly_eval(cs, x).is_zero():
            return x
    return None


def _ff_trim(coeffs: Sequence[FFElement]) -> List[FFElement]:
    cs = list(coeffs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def artin_schreier_irreducible(c: FFElement) -> bool:
    """Whether X^p - X - c is irreducible over the prime field F_p.

    For prime fields the polynomial either splits completely or is
    irreducible, so a root scan decides.
    """
    desc = c.desc
    if desc.k != 1:
        raise ValfieldError("criterion only stated for prime fields (k = 1)")
    p = desc.p
    poly = [-c] + [desc.zero()] * (p - 1) + [desc.one()]
    poly[1] = poly[1] - desc.one()
    return has_root(poly, desc) is None


@lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteFieldDescriptor:
    return FiniteFieldDescriptor(p)


def parse_field(text: str) -> FiniteFieldDescriptor:
    """Parse ``F(p)`` or ``F(p^k; modulus=[c0,...,ck])``."""
    s = text.strip()
    if not (s.startswith("F(") and s.endswith(")")):
        raise ParseError(f"cannot parse finite field {text!r}")
    body = s[2:-1]
    mod = None
    if ";" in body:
        body, modpart = body.split(";", 1)
        modpart = modpart.strip()
        if not modpart.startswith("modulus="):
            raise ParseError(f"expected modulus=... in {text!r}")
        lst = modpart[len("modulus="):].strip()
        if not (lst.startswith("[") and lst.endswith("]")):
            raise ParseError(f"modulus must be a bracketed list in {text!r}")
        try:
            mod = tuple(int(x) for x in lst[1:-1].split(","))
        except ValueError:
            raise ParseError(f"bad modulus list in {text!r}") from None
    body = body.strip()
    try:
        if "^" in body:
            ps, ks = body.split("^", 1)
            p, k = int(ps), int(ks)
        else:
            q = int(body)
            p, k = _prime_power(q)
            if p is None:
                raise ParseError(f"{q} is not a prime power in {text!r}")
    except ValueError:
        raise ParseError(f"bad field size in {text!r}") from None
    return FiniteFieldDescriptor(p, k, mod)


def _prime_power(q: int):
    """(p, k) with q = p^k for prime p, or (None, None)."""
    if q < 2:
        return None, None
    d = 2
    while d * d <= q:
        if q % d == 0:
            k = 0
            while q % d == 0:
                q //= d
                k += 1
            return (d, k) if q == 1 else (None, None)
        d += 1
    return q, 1
