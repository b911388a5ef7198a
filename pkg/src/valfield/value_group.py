"""Value groups of rank 1 and rank 2 (lexicographic), with a top element.

Elements are exact rationals; there is no floating point anywhere.  The top
element ``inf`` absorbs under addition and is greater than every group
element.  Rank-1 and rank-2 values never mix: cross-rank arithmetic or
comparison is a hard error, not a coercion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import ParseError, RankMismatchError, ValfieldError

Rational = Union[int, Fraction]

_RANK1 = 1
_RANK2 = 2
_INF = 0  # rank tag for the top element


@dataclass(frozen=True)
class Value:
    """An element of a rank-1 or rank-2 ordered value group, or ``inf``.

    Use the constructors :meth:`rank1`, :meth:`rank2` and the module-level
    :data:`INFINITY` instead of calling the dataclass directly.
    """

    tag: int
    first: Optional[Fraction] = None
    second: Optional[Fraction] = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rank1(q: Rational) -> "Value":
        return Value(_RANK1, Fraction(q))

    @staticmethod
    def rank2(a: Rational, b: Rational) -> "Value":
        return Value(_RANK2, Fraction(a), Fraction(b))

    @staticmethod
    def infinity() -> "Value":
        return INFINITY

    # -- predicates --------------------------------------------------------

    @property
    def is_infinity(self) -> bool:
        return self.tag == _INF

    @property
    def rank(self) -> Optional[int]:
        return None if self.tag == _INF else self.tag

    def _require_compatible(self, other: "Value") -> None:
        if self.tag == _INF or other.tag == _INF:
            return
        if self.tag != other.tag:
            raise RankMismatchError(
                f"cannot combine rank-{self.tag} and rank-{other.tag} values"
            )

    # -- group operations --------------------------------------------------

    def __add__(self, other: "Value") -> "Value":
        self._require_compatible(other)
        if self.tag == _INF or other.tag == _INF:
            return INFINITY
        if self.tag == _RANK1:
            return Value.rank1(self.first + other.first)
        return Value.rank2(self.first + other.first, self.second + other.second)

    def __neg__(self) -> "Value":
        if self.tag == _INF:
            raise ValfieldError("infinity has no additive inverse")
        if self.tag == _RANK1:
            return Value.rank1(-self.first)
        return Value.rank2(-self.first, -self.second)

    def __sub__(self, other: "Value") -> "Value":
        return self + (-other)

    def scale(self, n: Rational) -> "Value":
        """n-fold multiple inside the divisible hull (n a rational scalar)."""
        if self.tag == _INF:
            return INFINITY
        n = Fraction(n)
        if self.tag == _RANK1:
            return Value.rank1(self.first * n)
        return Value.rank2(self.first * n, self.second * n)

    # -- total order -------------------------------------------------------

    def _key(self):
        if self.tag == _RANK1:
            return (self.first,)
        return (self.first, self.second)

    def __lt__(self, other: "Value") -> bool:
        self._require_compatible(other)
        if self.tag == _INF:
            return False
        if other.tag == _INF:
            return True
        return self._key() < other._key()

    def __le__(self, other: "Value") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Value") -> bool:
        return other < self

    def __ge__(self, other: "Value") -> bool:
        return other <= self

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        if self.tag == _INF:
            return "inf"
        if self.tag == _RANK1:
            return str(self.first)
        return f"({self.first},{self.second})"

    @staticmethod
    def from_text(text: str) -> "Value":
        s = text.strip()
        if s == "inf":
            return INFINITY
        try:
            if s.startswith("(") and s.endswith(")"):
                parts = s[1:-1].split(",")
                if len(parts) != 2:
                    raise ValueError
                return Value.rank2(Fraction(parts[0]), Fraction(parts[1]))
            return Value.rank1(Fraction(s))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot parse value {text!r}") from None

    def __repr__(self) -> str:
        return f"Value({self.to_text()})"


INFINITY = Value(_INF)

ZERO_R1 = Value.rank1(0)
ZERO_R2 = Value.rank2(0, 0)


def value_add(a: Value, b: Value) -> Value:
    """Group sum with ``inf`` absorbing; cross-rank input is an error."""
    return a + b


def value_min(values: Iterable[Value]) -> Value:
    """Least element of a nonempty uniform-rank list of values."""
    vals = list(values)
    if not vals:
        raise ValfieldError("minimum over an empty list of values")
    best = vals[0]
    for v in vals[1:]:
        if v < best:
            best = v
    return best


@dataclass(frozen=True)
class ValueGroupDescriptor:
    """Context for a computation: group rank plus a denominator bound.

    The group is (1/d)Z for rank 1, or lexicographic pairs thereof for
    rank 2.  Every value produced under the descriptor must have
    denominators dividing ``denominator_bound``.
    """

    rank: int
    denominator_bound: int = 1

    def __post_init__(self):
        if self.rank not in (1, 2):
            raise ValfieldError(f"unsupported rank {self.rank}")
        if self.denominator_bound < 1:
            raise ValfieldError("denominator bound must be positive")

    def contains(self, v: Value) -> bool:
        if v.is_infinity:
            return True
        if v.rank != self.rank:
            return False
        d = self.denominator_bound
        parts = [v.first] if self.rank == 1 else [v.first, v.second]
        return all((q * d).denominator == 1 for q in parts)

    def grain(self) -> Value:
        """The smallest positive group element under this descriptor."""
        g = Fraction(1, self.denominator_bound)
        if self.rank == 1:
            return Value.rank1(g)
        return Value.rank2(0, g)
