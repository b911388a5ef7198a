"""Sparse multivariate polynomials over an arbitrary coefficient ring.

Coefficients only need +, -, * and equality-with-zero via ``is_zero`` /
``is_zero_to_prec`` when available.  This is deliberately generic: the same
type carries polynomials over truncated Laurent series, over composite
(rank-2) elements, and over finite fields.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Sequence, Tuple

from .errors import ValfieldError

Monomial = Tuple[int, ...]


def _coeff_is_zero(c) -> bool:
    if hasattr(c, "is_zero_to_prec"):
        return c.is_zero_to_prec()
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


class MultiPoly:
    """Sparse polynomial: map from exponent tuples to ring coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Monomial, object]):
        self.nvars = nvars
        self.terms = {m: c for m, c in terms.items() if not _coeff_is_zero(c)}
        for m in self.terms:
            if len(m) != nvars:
                raise ValfieldError("monomial arity mismatch")

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, i: int, one) -> "MultiPoly":
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return MultiPoly(nvars, {m: one})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValfieldError("polynomials in different numbers of variables")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return MultiPoly(self.nvars, out)

    def scale(self, c) -> "MultiPoly":
        return MultiPoly(self.nvars, {m: x * c for m, x in self.terms.items()})

    def map_coeffs(self, fn: Callable) -> "MultiPoly":
        return MultiPoly(self.nvars, {m: fn(c) for m, c in self.terms.items()})

    def evaluate(self, args: Sequence) -> object:
        """Evaluate at ring elements; args must be nonempty (gives the zero)."""
        if len(args) != self.nvars:
            raise ValfieldError("wrong number of arguments")
        if not args:
            raise ValfieldError("evaluation needs at least one argument")
        acc = None
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term = term * _ring_pow(args[i], e)
            acc = term if acc is None else acc + term
        if acc is None:
            a = args[0]
            return a - a
        return acc

    def compose(self, inner: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute inner[i] for variable i; all inner share one arity."""
        if len(inner) != self.nvars:
            raise ValfieldError("wrong number of inner polynomials")
        nv = inner[0].nvars if inner else self.nvars
        acc = None
        for m, c in self.terms.items():
            term = MultiPoly.constant(nv, c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * inner[i]
            acc = term if acc is None else acc + term
        if acc is None:
            return MultiPoly(nv, {})
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def to_text(self, var_names: Sequence[str] = None) -> str:
        if not self.terms:
            return "0"
        names = var_names or [f"X{i + 1}" for i in range(self.nvars)]
        if self.nvars == 1 and var_names is None:
            names = ["X"]
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = [_coeff_text(c)]
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()})"


def _coeff_text(c) -> str:
    if hasattr(c, "to_text"):
        t = c.to_text()
        return f"({t})" if ("+" in t or " " in t) else t
    return str(c)


def _ring_pow(x, e: int):
    result = None
    base = x
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


def univariate(coeffs: Sequence, ring_zero_test=_coeff_is_zero) -> MultiPoly:
    """Dense univariate coefficient list (index = degree) as a MultiPoly."""
    return MultiPoly(1, {(i,): c for i, c in enumerate(coeffs) if not ring_zero_test(c)})
