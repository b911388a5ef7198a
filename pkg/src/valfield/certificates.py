"""Machine-checkable certificates.

Two certificate families:

* ``verify_tmcne(p)`` checks, step by step, the finite computations behind
  the mixed-characteristic non-equivalence counterexample built from the
  polynomial p(X^p - X)^2 - 1: Newton polygon and the valuation of the
  generator, certified irreducibility with the full degree/ramification/
  residue bookkeeping, the ring identity p*s^2 = 1 for s = gen^p - gen
  together with v(s) = -1/2, an exact rational ledger for the cross terms
  of the binomial expansion (b-a)^p - (b-a), and rootlessness of
  X^p - X - 1 over F_p.  The last two steps together force a residue that
  cannot exist, which is the contradiction the certificate records.

* ``verify_fundamental_equality`` reports (n, e, fRes) and whether
  n = e * fRes for a finite extension presented either over Q_p (by an
  integer polynomial) or over F_q((t)) (by a polynomial with series
  coefficients).

Certificates serialize to deterministic JSON: same parameters, byte-equal
output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import CertificationError, PrecisionError, ValfieldError
from .finite_field import artin_schreier_irreducible, prime_field
from .laurent import LaurentField, LaurentSeries
from .padic import (
    FundamentalEqualityData,
    PAdicExtRing,
    ext_valuation,
    fundamental_equality_data,
    with_precision_retry,
)
from .polygon import newton_polygon_from_valuations

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class StepRecord:
    name: str
    inputs: dict
    computed: dict
    expected: dict
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "computed": self.computed,
            "expected": self.expected,
            "pass": self.passed,
        }

    @staticmethod
    def from_dict(d: dict) -> "StepRecord":
        return StepRecord(
            d["name"], d["inputs"], d["computed"], d["expected"], d["pass"]
        )


@dataclass(frozen=True)
class TmcneCertificate:
    p: int
    steps: Tuple[StepRecord, ...]
    verdict: str

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "steps": [s.to_dict() for s in self.steps],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "TmcneCertificate":
        return TmcneCertificate(
            d["p"],
            tuple(StepRecord.from_dict(s) for s in d["steps"]),
            d["verdict"],
        )

    @staticmethod
    def from_json(text: str) -> "TmcneCertificate":
        return TmcneCertificate.from_dict(json.loads(text))


@dataclass(frozen=True)
class FundEqCertificate:
    polynomial: str
    n: int
    e: int
    f_res: Optional[int]
    certified_by: str
    equality_holds: Optional[bool]

    @property
    def verdict(self) -> str:
        if self.equality_holds is None:
            return INCONCLUSIVE
        return PASS if self.equality_holds else FAIL

    def to_dict(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "n": self.n,
            "e": self.e,
            "fRes": self.f_res,
            "certifiedBy": self.certified_by,
            "equalityHolds": self.equality_holds,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# -- binomial valuations (Legendre) ----------------------------------------


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def binomial_valuation(n: int, k: int, p: int) -> int:
    return (
        factorial_valuation(n, p)
        - factorial_valuation(k, p)
        - factorial_valuation(n - k, p)
    )


# -- the non-equivalence certificate ---------------------------------------


def _counterexample_coeffs(p: int) -> List[Fraction]:
    """p*(X^p - X)^2 - 1 as a dense coefficient list."""
    coeffs = [Fraction(0)] * (2 * p + 1)
    coeffs[2 * p] += p
    coeffs[p + 1] += -2 * p
    coeffs[2] += p
    coeffs[0] += -1
    return coeffs


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def verify_tmcne(p: int, prec: Optional[int] = None) -> TmcneCertificate:
    """Run all five steps of the non-equivalence check for an odd prime p."""
    if not _is_prime(p) or p == 2:
        raise CertificationError(
            f"p must be an odd prime (the sign trick a -> -a needs p odd); got {p}"
        )
    if p > 7:
        raise CertificationError("p <= 7 keeps the resultant degree 2p tractable")
    steps: List[StepRecord] = []
    coeffs = _counterexample_coeffs(p)
    poly_text = f"{p}*(X^{p} - X)^2 - 1"
    initial_prec = prec if prec is not None else 4 * (2 * p) * (2 * p)

    def build_and_check(work_prec: int) -> List[StepRecord]:
        out: List[StepRecord] = []
        ring = PAdicExtRing(
            p, coeffs, prec=work_prec, denominator_bound=2 * p
        )

        # S1: Newton polygon and the valuation of the generator
        polygon = ring.polygon()
        slope = polygon.single_slope()
        v_gen = None if slope is None else -slope
        expected_slope = Fraction(1, 2 * p)
        out.append(
            StepRecord(
                "S1-newton-polygon",
                {"polynomial": poly_text},
                {
                    "segments": len(polygon.segments),
                    "slope": None if slope is None else str(slope),
                    "vGenerator": None if v_gen is None else str(v_gen),
                },
                {
                    "segments": 1,
                    "slope": str(expected_slope),
                    "vGenerator": str(-expected_slope),
                },
                slope == expected_slope and len(polygon.segments) == 1,
            )
        )

        # S2: certified irreducibility and the fundamental equality chain
        try:
            data = fundamental_equality_data(ring)
            computed = data.to_dict()
            ok = (
                data.n == 2 * p
                and data.e == 2 * p
                and data.f_res == 1
                and data.equality_holds is True
            )
        except CertificationError as exc:
            computed = {"error": str(exc)}
            ok = False
        out.append(
            StepRecord(
                "S2-fundamental-equality",
                {"polynomial": poly_text},
                computed,
                {
                    "n": 2 * p,
                    "e": 2 * p,
                    "fRes": 1,
                    "certifiedBy": "slope-denominator",
                    "equalityHolds": True,
                },
                ok,
            )
        )

        # S3: ring identity p*s^2 = 1 and v(s) = -1/2 for s = gen^p - gen
        gen = ring.gen()
        s = gen**p - gen
        identity = ring.element([p]) * s * s - ring.one()
        identity_zero = identity.is_zero_to_prec()
        v_s = ext_valuation(s)
        out.append(
            StepRecord(
                "S3-ring-identity",
                {"s": "gen^p - gen"},
                {
                    "pTimesSSquaredMinusOneIsZero": identity_zero,
                    "vS": str(Fraction(v_s.first)),
                },
                {"pTimesSSquaredMinusOneIsZero": True, "vS": "-1/2"},
                identity_zero and Fraction(v_s.first) == Fraction(-1, 2),
            )
        )

        # S4: exact rational ledger for the cross terms of (b-a)^p - (b-a)
        va = vb = Fraction(-1, 2 * p)
        cross = []
        for i in range(1, p):
            vbinom = binomial_valuation(p, i, p)
            val = vbinom + i * vb + (p - i) * va
            cross.append(
                {
                    "i": i,
                    "vBinomial": vbinom,
                    "crossTermValuation": str(val),
                }
            )
        min_cross = min(
            Fraction(entry["crossTermValuation"]) for entry in cross
        )
        all_div = all(entry["vBinomial"] >= 1 for entry in cross)
        agree = Fraction(p) * va == Fraction(v_s.first) * 1  # symbolic route
        out.append(
            StepRecord(
                "S4-cross-term-ledger",
                {"vA": str(va), "vB": str(vb)},
                {
                    "crossTerms": cross,
                    "minCrossTermValuation": str(min_cross),
                    "sumInValuationIdeal": min_cross > 0,
                    "residueOfExpansion": 1,
                    "symbolicVSAgreesWithS3": agree,
                },
                {
                    "minCrossTermValuation": "1/2",
                    "sumInValuationIdeal": True,
                    "residueOfExpansion": 1,
                    "symbolicVSAgreesWithS3": True,
                },
                min_cross == Fraction(1, 2) and all_div and agree,
            )
        )

        # S5: X^p - X - 1 has no root in F_p
        base = prime_field(p)
        rootless = artin_schreier_irreducible(base.one())
        out.append(
            StepRecord(
                "S5-residue-rootless",
                {"polynomial": f"X^{p} - X - 1 over F({p})"},
                {"irreducibleOverPrimeField": rootless},
                {"irreducibleOverPrimeField": True},
                rootless,
            )
        )
        return out

    try:
        steps = with_precision_retry(build_and_check, initial_prec)
    except PrecisionError:
        return TmcneCertificate(p, tuple(steps), INCONCLUSIVE)
    verdict = PASS if all(s.passed for s in steps) else FAIL
    return TmcneCertificate(p, tuple(steps), verdict)


# -- fundamental equality --------------------------------------------------


def fundeq_padic(
    p: int,
    coeffs: Sequence[Union[int, Fraction]],
    prec: Optional[int] = None,
    irreducible_asserted: bool = False,
) -> FundEqCertificate:
    def run(work_prec: int) -> FundamentalEqualityData:
        ring = PAdicExtRing(
            p, coeffs, prec=work_prec,
            irreducible_asserted=irreducible_asserted,
        )
        return fundamental_equality_data(ring)

    deg = len([c for c in coeffs]) - 1
    initial = prec if prec is not None else 4 * deg * deg
    data = with_precision_retry(run, max(initial, 8))
    text = poly_text_from_coeffs(coeffs)
    return FundEqCertificate(
        f"{text} over Q_{p}",
        data.n,
        data.e,
        data.f_res,
        data.certified_by,
        data.equality_holds,
    )


def fundeq_laurent(
    field: LaurentField, coeffs: Sequence[Optional[LaurentSeries]]
) -> FundEqCertificate:
    """Extension of F_q((t)) presented by a defining polynomial.

    Certification routes mirror the p-adic side: slope denominator equal
    to the degree (totally ramified, Eisenstein-like), or slope zero with
    an irreducible residue polynomial (unramified); the residue route
    needs a prime base field.
    """
    vals = [None if c is None else c.valuation() for c in coeffs]
    polygon = newton_polygon_from_valuations(vals)
    n = len(coeffs) - 1
    text = " + ".join(
        f"({c.to_text()})*X^{i}"
        for i, c in enumerate(coeffs)
        if c is not None and not c.is_zero_to_prec()
    )
    text = f"{text} over {field.to_text()}"
    slope = polygon.single_slope()
    if slope is not None and polygon.start == 0 and slope.denominator == n:
        return FundEqCertificate(text, n, n, 1, "slope-denominator", True)
    if slope is not None and slope == 0 and polygon.start == 0:
        if field.base.k != 1:
            raise CertificationError(
                "residue irreducibility route needs a prime base field"
            )
        from .finite_field import _pmod_irreducible

        res = tuple(
            (c.residue().coeffs[0] if c is not None else 0) for c in coeffs
        )
        if _pmod_irreducible(res, field.base.p):
            return FundEqCertificate(text, n, 1, n, "residue-irreducible", True)
    raise CertificationError("cannot certify the extension data")


def verify_fundamental_equality(
    field,
    coeffs,
    prec: Optional[int] = None,
    irreducible_asserted: bool = False,
) -> FundEqCertificate:
    """Dispatch on the base: Q_p (integer p) or a Laurent-series field."""
    if isinstance(field, int):
        return fundeq_padic(field, coeffs, prec, irreducible_asserted)
    if isinstance(field, LaurentField):
        return fundeq_laurent(field, coeffs)
    raise ValfieldError("unsupported base for the fundamental equality check")


def poly_text_from_coeffs(coeffs: Sequence[Union[int, Fraction]]) -> str:
    parts = []
    for i in reversed(range(len(coeffs))):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(f"X^{i}")
        else:
            parts.append(f"{c}*X^{i}")
    return " + ".join(parts) if parts else "0"
