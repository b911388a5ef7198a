"""Additive polynomials over F_q((t)): decomposition, alpha bound, OAP solver.

An additive polynomial is a sparse map (variable, Frobenius power) ->
coefficient; a p-polynomial adds a constant.  The central operations:

* ``decompose`` rewrites f(X_1..X_n) as a sum of single-variable additive
  polynomials g_1..g_m of one common degree p^nu whose leading
  coefficients are valuation independent over the subfield of p^nu-th
  powers.  The construction expands each variable over the basis
  1, t, ..., t^(p^delta - 1) of K over K^(p^delta) and then merges any two
  polynomials whose leading coefficients lie in the same valuation class
  modulo p^nu; each merge strictly raises a leading valuation, so at a
  fixed error order the loop terminates.  Alongside each g_j the
  decomposition carries a section: single-variable additive maps back into
  the original variables with f(section_j(y)) = g_j(y), so any point of
  the decomposed image pulls back to an explicit input of f.

* ``alpha_bound`` computes the ball radius below which inputs can only
  make things worse: the minimum of 0 and all coefficient-gap valuations,
  lowered by one grain of the value group to make the inequality strict.

* ``oap_solve`` finds a best approximation of a target z by the image of
  f: it restricts the search to the alpha ball, enumerates digit vectors
  up to the horizon where further digits provably cannot change the
  residual below the working precision, and cross-checks against
  ``brute_force_max`` on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    BudgetExceededError,
    IndeterminateValuationError,
    PrecisionError,
    ValfieldError,
)
from .extremality import (
    Ball,
    SearchResult,
    ball_count,
    ball_representatives,
    check_budget,
    extremal_search,
    search_max,
    DEFAULT_BUDGET,
)
from .laurent import LaurentField, LaurentSeries, ValuationResult
from .polynomials import MultiPoly
from .value_group import Value


class AdditivePolynomial:
    """sum over (i, k) of c_{i,k} * X_i^(p^k); additive in every argument."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(
        self,
        field: LaurentField,
        nvars: int,
        terms: Dict[Tuple[int, int], LaurentSeries],
    ):
        self.field = field
        self.nvars = nvars
        self.terms = {}
        for (i, k), c in terms.items():
            if not (0 <= i < nvars) or k < 0:
                raise ValfieldError("bad term index")
            if not c.is_zero_to_prec():
                self.terms[(i, k)] = c

    def is_zero(self) -> bool:
        return not self.terms

    def height(self, var: Optional[int] = None) -> Optional[int]:
        ks = [k for (i, k) in self.terms if var is None or i == var]
        return max(ks) if ks else None

    def leading_coefficient(self) -> LaurentSeries:
        if self.nvars != 1 or self.is_zero():
            raise ValfieldError("leading coefficient needs a nonzero one-variable polynomial")
        return self.terms[(0, self.height())]

    def coefficient(self, var: int, k: int) -> Optional[LaurentSeries]:
        return self.terms.get((var, k))

    def evaluate(self, args: Sequence[LaurentSeries]) -> LaurentSeries:
        if len(args) != self.nvars:
            raise ValfieldError("arity mismatch")
        acc: Optional[LaurentSeries] = None
        for (i, k), c in self.terms.items():
            term = c * args[i].frobenius(k)
            acc = term if acc is None else acc + term
        if acc is None:
            prec = min([a.prec for a in args], default=self.field.default_prec)
            return self.field.zero(prec)
        return acc

    def restrict(self, var: int) -> "AdditivePolynomial":
        """The single-variable polynomial f(0, ..., X_var, ..., 0)."""
        return AdditivePolynomial(
            self.field,
            1,
            {(0, k): c for (i, k), c in self.terms.items() if i == var},
        )

    # -- one-variable algebra (used by the merging procedure) --------------

    def _require_single(self) -> None:
        if self.nvars != 1:
            raise ValfieldError("operation needs a one-variable polynomial")

    def __add__(self, other: "AdditivePolynomial") -> "AdditivePolynomial":
        if self.nvars != other.nvars or self.field != other.field:
            raise ValfieldError("mismatched additive polynomials")
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return AdditivePolynomial(self.field, self.nvars, out)

    def __neg__(self) -> "AdditivePolynomial":
        return AdditivePolynomial(
            self.field, self.nvars, {k: -c for k, c in self.terms.items()}
        )

    def __sub__(self, other: "AdditivePolynomial") -> "AdditivePolynomial":
        return self + (-other)

    def compose_single(self, inner: "AdditivePolynomial") -> "AdditivePolynomial":
        """self(inner(X)) for one-variable additive polynomials."""
        self._require_single()
        inner._require_single()
        p = self.field.base.p
        out: Dict[Tuple[int, int], LaurentSeries] = {}
        for (_, k), c in self.terms.items():
            for (_, l), d in inner.terms.items():
                key = (0, k + l)
                term = c * d.frobenius(k)
                out[key] = out[key] + term if key in out else term
        return AdditivePolynomial(self.field, 1, out)

    def to_multipoly(self) -> MultiPoly:
        p = self.field.base.p
        terms = {}
        for (i, k), c in self.terms.items():
            mono = tuple(p**k if j == i else 0 for j in range(self.nvars))
            terms[mono] = terms[mono] + c if mono in terms else c
        return MultiPoly(self.nvars, terms)

    def to_text(self) -> str:
        return ppolynomial_text(self, None)

    def __repr__(self) -> str:
        return f"AdditivePolynomial({self.to_text()})"


@dataclass(frozen=True)
class PPolynomial:
    """An additive polynomial plus a constant."""

    additive: AdditivePolynomial
    constant: Optional[LaurentSeries] = None

    def evaluate(self, args: Sequence[LaurentSeries]) -> LaurentSeries:
        v = self.additive.evaluate(args)
        if self.constant is not None:
            v = v + self.constant
        return v

    def to_text(self) -> str:
        return ppolynomial_text(self.additive, self.constant)


def ppolynomial_text(f: AdditivePolynomial, constant: Optional[LaurentSeries]) -> str:
    p = f.field.base.p
    var = f.field.var
    parts = []
    for (i, k) in sorted(f.terms, key=lambda ik: (ik[0], -ik[1])):
        c = f.terms[(i, k)]
        name = "X" if f.nvars == 1 else f"X{i + 1}"
        ct = c.to_text()
        parts.append(f"({ct})*{name}^{p**k}")
    if constant is not None and not constant.is_zero_to_prec():
        parts.append(f"({constant.to_text()})")
    return " + ".join(parts) if parts else "0"


def evaluate(h: PPolynomial, args: Sequence[LaurentSeries]) -> LaurentSeries:
    """Spec surface: evaluate a p-polynomial at a tuple of field elements."""
    return h.evaluate(args)


# -- conversion from generic polynomials -----------------------------------


def additive_from_multipoly(mp: MultiPoly, field: LaurentField) -> PPolynomial:
    """Validate and convert; rejects exponents that are not powers of p."""
    p = field.base.p
    terms: Dict[Tuple[int, int], LaurentSeries] = {}
    constant: Optional[LaurentSeries] = None
    for mono, c in mp.terms.items():
        nz = [(i, e) for i, e in enumerate(mono) if e]
        if not nz:
            constant = c if constant is None else constant + c
            continue
        if len(nz) > 1:
            raise ValfieldError("additive polynomials have single-variable monomials only")
        i, e = nz[0]
        k = 0
        while e % p == 0:
            e //= p
            k += 1
        if e != 1:
            raise ValfieldError(
                f"exponent of monomial must be a power of p={p}"
            )
        key = (i, k)
        terms[key] = terms[key] + c if key in terms else c
    return PPolynomial(AdditivePolynomial(field, mp.nvars, terms), constant)


# -- decomposition ---------------------------------------------------------


@dataclass
class Decomposition:
    """f(K^n) = g_1(K) + ... + g_m(K) with common degree p^nu.

    sections[j] maps an input y of g_j to the tuple of original arguments:
    f(sections[j][0](y), ..., sections[j][n-1](y)) = g_j(y).
    """

    nu: int
    polys: List[AdditivePolynomial]
    sections: List[List[AdditivePolynomial]]
    nvars: int

    @property
    def leading_coefficients(self) -> List[LaurentSeries]:
        return [g.leading_coefficient() for g in self.polys]

    def pullback(self, ys: Sequence[LaurentSeries], field: LaurentField) -> Tuple[LaurentSeries, ...]:
        """The f-input realizing sum g_j(ys[j])."""
        args = []
        for i in range(self.nvars):
            acc = field.zero(min([y.prec for y in ys], default=field.default_prec))
            for j, y in enumerate(ys):
                acc = acc + self.sections[j][i].evaluate([y])
            args.append(acc)
        return tuple(args)

    def sum_evaluate(self, ys: Sequence[LaurentSeries], field: LaurentField) -> LaurentSeries:
        acc = field.zero(min([y.prec for y in ys], default=field.default_prec))
        for g, y in zip(self.polys, ys):
            acc = acc + g.evaluate([y])
        return acc


def _expand_to_height(
    field: LaurentField,
    poly: AdditivePolynomial,
    section: List[AdditivePolynomial],
    nu: int,
) -> List[Tuple[AdditivePolynomial, List[AdditivePolynomial]]]:
    """Raise a one-variable polynomial to degree p^nu over the basis
    1, t, ..., t^(p^delta - 1) of K over its p^delta-th powers."""
    h = poly.height()
    delta = nu - h
    if delta == 0:
        return [(poly, section)]
    p = field.base.p
    out = []
    for j in range(p**delta):
        sub = AdditivePolynomial(
            field, 1, {(0, delta): field.t_power(j, _section_prec(field, section))}
        )
        out.append(
            (
                poly.compose_single(sub),
                [a.compose_single(sub) for a in section],
            )
        )
    return out


def _section_prec(field: LaurentField, section: List[AdditivePolynomial]) -> int:
    precs = [c.prec for a in section for c in a.terms.values()]
    return max(precs, default=field.default_prec)


def decompose(f: AdditivePolynomial, max_steps: int = 10000) -> Decomposition:
    """Single-variable decomposition with valuation-independent leaders."""
    field = f.field
    p = field.base.p
    work: List[Tuple[AdditivePolynomial, List[AdditivePolynomial]]] = []
    for i in range(f.nvars):
        g = f.restrict(i)
        if g.is_zero():
            continue
        ident = AdditivePolynomial(
            field, 1, {(0, 0): field.one(_poly_prec(field, g))}
        )
        zero = AdditivePolynomial(field, 1, {})
        section = [ident if j == i else zero for j in range(f.nvars)]
        work.append((g, section))
    if not work:
        return Decomposition(0, [], [], f.nvars)
    nu = max(g.height() for g, _ in work)
    # all results are claimed modulo the input's own error order; capping
    # intermediate coefficients here is what makes the merge loop terminate
    work_prec = max(_poly_prec(field, g) for g, _ in work)

    expanded: List[Tuple[AdditivePolynomial, List[AdditivePolynomial]]] = []
    for g, section in work:
        expanded.extend(
            (_truncate_poly(gg, work_prec), _truncate_section(ss, work_prec))
            for gg, ss in _expand_to_height(field, g, section, nu)
        )
    work = expanded

    for _ in range(max_steps):
        # normalize: drop dead polynomials, re-raise degree-dropped ones
        changed = False
        normalized = []
        for g, section in work:
            if g.is_zero():
                changed = True
                continue
            if g.height() < nu:
                normalized.extend(
                    (_truncate_poly(gg, work_prec), _truncate_section(ss, work_prec))
                    for gg, ss in _expand_to_height(field, g, section, nu)
                )
                changed = True
            else:
                normalized.append((g, section))
        work = normalized
        if changed:
            continue
        # group by valuation class of the leading coefficient mod p^nu
        classes: Dict[int, List[int]] = {}
        for idx, (g, _) in enumerate(work):
            v = g.leading_coefficient().low
            classes.setdefault(v % (p**nu), []).append(idx)
        clash = None
        for cls in sorted(classes):
            members = classes[cls]
            if len(members) > 1:
                members.sort(key=lambda idx: (work[idx][0].leading_coefficient().low, idx))
                clash = (members[0], members[1])
                break
        if clash is None:
            work.sort(key=lambda gs: gs[0].leading_coefficient().low)
            return Decomposition(
                nu,
                [g for g, _ in work],
                [s for _, s in work],
                f.nvars,
            )
        i, j = clash
        # Eliminate the leading term of the denser summand against the
        # sparser one: reducing against a monomial cannot introduce new
        # lower-degree terms, which is what keeps the loop from cycling
        # between a dropped-height remainder and its re-raised branches.
        if len(work[i][0].terms) > len(work[j][0].terms):
            target, other = i, j
        else:
            target, other = j, i
        gt, st = work[target]
        go, so = work[other]
        bt = gt.leading_coefficient()
        bo = go.leading_coefficient()
        lam = bt.coeffs[0] * bo.coeffs[0].inverse()
        mu = lam.frobenius_root(nu)
        shift = (bt.low - bo.low) // (p**nu)
        d = field.make(shift, [mu], _poly_prec(field, gt))
        sub = AdditivePolynomial(field, 1, {(0, 0): d})
        new_g = _truncate_poly(gt - go.compose_single(sub), work_prec)
        new_s = _truncate_section(
            [a - b.compose_single(sub) for a, b in zip(st, so)], work_prec
        )
        work[target] = (new_g, new_s)
    raise ValfieldError("decomposition did not stabilize within the step budget")


def _poly_prec(field: LaurentField, g: AdditivePolynomial) -> int:
    precs = [c.prec for c in g.terms.values()]
    return max(precs, default=field.default_prec)


def _truncate_section(
    section: List[AdditivePolynomial], prec: int
) -> List[AdditivePolynomial]:
    return [_truncate_poly(a, prec) for a in section]


def _truncate_poly(g: AdditivePolynomial, prec: int) -> AdditivePolynomial:
    """Cap every coefficient at the working precision; coefficients that
    become zero to precision drop out of the term dictionary."""
    return AdditivePolynomial(
        g.field,
        g.nvars,
        {key: c.truncate(min(c.prec, prec)) for key, c in g.terms.items()},
    )


# -- alpha bound -----------------------------------------------------------


def alpha_bound(
    h: PPolynomial, d: Decomposition, grain: Fraction = Fraction(1)
) -> Value:
    """Strict ball radius from the coefficient-gap minimum, minus one grain."""
    gaps = [Fraction(0)]
    vc = None
    if h.constant is not None and not h.constant.is_zero_to_prec():
        vc = Fraction(h.constant.valuation().require_exact().first)
    for g in d.polys:
        b = g.leading_coefficient()
        vb = Fraction(b.valuation().require_exact().first)
        if vc is not None:
            gaps.append(vc - vb)
        nu = g.height()
        for k in range(nu):
            c = g.coefficient(0, k)
            if c is not None:
                vck = Fraction(c.valuation().require_exact().first)
                gaps.append(vck - vb)
    return Value.rank1(min(gaps) - grain)


# -- the OAP solver and its oracle -----------------------------------------


@dataclass(frozen=True)
class OapResult:
    best_input: Tuple[LaurentSeries, ...]
    best_decomposed: Tuple[LaurentSeries, ...]
    value: ValuationResult
    alpha: Optional[Value]

    def to_dict(self) -> dict:
        return {
            "bestInput": [s.to_text() for s in self.best_input],
            "bestDecomposed": [s.to_text() for s in self.best_decomposed],
            "value": self.value.to_text(),
            "alpha": None if self.alpha is None else self.alpha.to_text(),
        }


def _digit_horizon(g: AdditivePolynomial, out_prec: int) -> int:
    """Digits at levels >= horizon move the value by valuation >= out_prec."""
    p = g.field.base.p
    h = 0
    for (_, k), c in g.terms.items():
        vc = c.low
        # need p^k * j + vc >= out_prec, i.e. j >= (out_prec - vc) / p^k
        need = -((vc - out_prec) // (p**k))  # ceil division
        h = max(h, need)
    return h


def oap_solve(
    f: AdditivePolynomial,
    z: LaurentSeries,
    prec: int,
    budget: int = DEFAULT_BUDGET,
) -> OapResult:
    """Maximize v(z - f(a)) over all field inputs.

    The image of f equals the image of its decomposition, so the search
    runs over the decomposition variables restricted to the alpha ball and
    maps the winner back through the sections.
    """
    field = f.field
    dec = decompose(f)
    m = len(dec.polys)
    if m == 0:
        val = z.truncate(min(z.prec, prec)).valuation()
        zeros = tuple(field.zero(prec) for _ in range(f.nvars))
        return OapResult(zeros, (), val, None)
    h = PPolynomial(f, -z)
    alpha_v = alpha_bound(h, dec)
    alpha = int(alpha_v.first)
    ranges = []
    total = 1
    for g in dec.polys:
        hi = max(_digit_horizon(g, prec), alpha + 1)
        ranges.append(list(range(alpha, hi)))
        total *= field.base.q ** len(ranges[-1])
    check_budget(total, budget)
    elems = list(field.base.elements())
    best_val: Optional[ValuationResult] = None
    best_key: Optional[Value] = None
    best_exact = False
    best_ys: Optional[Tuple[LaurentSeries, ...]] = None
    cap = Value.rank1(prec)
    work_prec = prec + max(0, -alpha) * (field.base.p ** dec.nu) + 4
    z_w = z if z.prec <= work_prec else z.truncate(work_prec)
    for digit_combo in itertools.product(
        *[itertools.product(elems, repeat=len(r)) for r in ranges]
    ):
        ys = tuple(
            field.from_terms(
                {e: d for e, d in zip(r, digits) if not d.is_zero()}, work_prec
            )
            for r, digits in zip(ranges, digit_combo)
        )
        residual = z_w - dec.sum_evaluate(ys, field)
        vr = residual.valuation()
        exact = vr.exact and vr.value < cap
        key = vr.value if (exact or vr.value < cap) else cap
        if best_key is None or key > best_key or (key == best_key and exact and not best_exact):
            best_key = key
            best_exact = exact
            best_ys = ys
    if best_exact:
        value = ValuationResult.exactly(best_key)
    else:
        value = ValuationResult.at_least(best_key)
    best_input = dec.pullback(best_ys, field)
    return OapResult(best_input, best_ys, value, alpha_v)


def brute_force_max(
    f: MultiPoly,
    field: LaurentField,
    ball: Ball,
    prec: int,
    budget: int = DEFAULT_BUDGET,
) -> Tuple[tuple, ValuationResult]:
    """Independent oracle: plain exhaustive maximum over ball representatives."""
    result = extremal_search(f, field, ball, prec, budget)
    return result.witness, result.value


# -- image sets at a truncation (Prop 3.4 style checks) --------------------


def _series_key(s: LaurentSeries, out_prec: int):
    t = s.truncate(min(s.prec, out_prec))
    return (t.low, t.coeffs) if t.coeffs else "0"


def truncated_image(
    f: AdditivePolynomial,
    out_prec: int,
    in_low: int = 0,
    out_low: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> frozenset:
    """{ f(a) mod t^out_prec : a_i over digits [in_low, horizon_i) }.

    The horizon per variable is where further digits provably stop
    mattering modulo t^out_prec, so this is the image of the whole
    valuation ring (shifted to in_low) at the truncation.  When out_low
    is given, outputs with valuation below it are discarded: the result
    is the part of the image falling in the window [out_low, out_prec).
    """
    field = f.field
    elems = list(field.base.elements())
    work_prec = out_prec + 8
    ranges = []
    total = 1
    for i in range(f.nvars):
        g = f.restrict(i)
        hi = max(_digit_horizon(g, out_prec), in_low) if not g.is_zero() else in_low
        ranges.append(list(range(in_low, hi)))
        total *= field.base.q ** len(ranges[-1])
    check_budget(total, budget)
    out = set()
    for combo in itertools.product(
        *[itertools.product(elems, repeat=len(r)) for r in ranges]
    ):
        args = [
            field.from_terms(
                {e: d for e, d in zip(r, digits) if not d.is_zero()}, work_prec
            )
            for r, digits in zip(ranges, combo)
        ]
        value = f.evaluate(args)
        if out_low is not None and not value.is_zero_to_prec():
            if value.valuation_floor() < out_low:
                continue
        out.add(_series_key(value, out_prec))
    return frozenset(out)


def decomposition_image(
    dec: Decomposition,
    field: LaurentField,
    out_prec: int,
    in_low: int = 0,
    out_low: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> frozenset:
    """Image of g_1(K) + ... + g_m(K) at the same truncation, built by
    summing per-variable image sets.  out_low filters as in
    truncated_image."""
    elems = list(field.base.elements())
    work_prec = out_prec + 8
    current: Dict[object, LaurentSeries] = {"0": field.zero(work_prec)}
    for g in dec.polys:
        hi = max(_digit_horizon(g, out_prec), in_low)
        levels = list(range(in_low, hi))
        check_budget(len(current) * field.base.q ** len(levels), budget)
        values = []
        for digits in itertools.product(elems, repeat=len(levels)):
            y = field.from_terms(
                {e: d for e, d in zip(levels, digits) if not d.is_zero()},
                work_prec,
            )
            values.append(g.evaluate([y]))
        nxt: Dict[object, LaurentSeries] = {}
        for s in current.values():
            for v in values:
                w = s + v
                nxt[_series_key(w, out_prec)] = w
        current = nxt
    if out_low is not None:
        kept = set()
        for key, s in current.items():
            if not s.is_zero_to_prec() and s.valuation_floor() < out_low:
                continue
            kept.add(key)
        return frozenset(kept)
    return frozenset(current.keys())


def image_generators(
    f: AdditivePolynomial, out_prec: int, in_low: int = 0
) -> List[LaurentSeries]:
    """Single-digit generators of the truncated image of f.

    By additivity, f(sum of digit monomials) = sum of f(digit monomials)
    and scalars from the prime field pass through f, so the image of the
    shifted valuation ring modulo t^out_prec is exactly the F_p-span of
    f(lambda * t^j * e_i) over variables i, levels j below the horizon,
    and lambda in an F_p-basis of the coefficient field.
    """
    field = f.field
    desc = field.base
    work_prec = out_prec + 8
    basis = [
        desc.element([1 if r == s else 0 for s in range(desc.k)])
        for r in range(desc.k)
    ]
    gens = []
    for i in range(f.nvars):
        g = f.restrict(i)
        if g.is_zero():
            continue
        hi = max(_digit_horizon(g, out_prec), in_low)
        for j in range(in_low, hi):
            for lam in basis:
                mono = field.from_terms({j: lam}, work_prec)
                gens.append(g.evaluate([mono]))
    return gens


def decomposition_generators(
    dec: Decomposition, field: LaurentField, out_prec: int, in_low: int = 0
) -> List[LaurentSeries]:
    """The same single-digit generators for sum g_1(K) + ... + g_m(K)."""
    phantom = AdditivePolynomial(
        field,
        len(dec.polys),
        {(j, k): c for j, g in enumerate(dec.polys) for (_, k), c in g.terms.items()},
    )
    return image_generators(phantom, out_prec, in_low)


def _fp_echelon(rows: List[List[int]], p: int) -> Tuple[Tuple[int, ...], ...]:
    """Canonical reduced row-echelon form over F_p (rows as int lists)."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, len(mat)):
            if mat[i][col] % p != 0:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] % p != 0:
                factor = mat[i][col]
                mat[i] = [(x - factor * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return tuple(tuple(row) for row in mat[:r])


def span_equal(
    gens_a: Sequence[LaurentSeries],
    gens_b: Sequence[LaurentSeries],
    field: LaurentField,
    out_prec: int,
) -> bool:
    """Whether two truncated images (as F_p-spans of generators) coincide."""
    desc = field.base
    lows = [s.valuation_floor() for s in gens_a] + [
        s.valuation_floor() for s in gens_b
    ]
    lo = min(lows + [out_prec])
    for s in list(gens_a) + list(gens_b):
        if s.prec < out_prec:
            raise PrecisionError(
                "generator known to lower order than the image truncation"
            )

    def vec(s: LaurentSeries) -> List[int]:
        out = []
        for e in range(lo, out_prec):
            out.extend(s.coeff_at(e).coeffs)
        return out

    a = _fp_echelon([vec(s) for s in gens_a], desc.p) if gens_a else ()
    b = _fp_echelon([vec(s) for s in gens_b], desc.p) if gens_b else ()
    return a == b


def windowed_image_span(
    gens: Sequence[LaurentSeries],
    field: LaurentField,
    out_prec: int,
    out_low: int,
) -> Tuple[Tuple[int, ...], ...]:
    """Canonical basis of the part of the generated image falling in the
    output window [out_low, out_prec).

    The span of all generators is echelonized over coordinates from the
    lowest generator valuation up to out_prec; rows whose pivot sits at a
    coordinate >= out_low automatically have zero entries below it, and
    exactly those rows span the subgroup of image elements with valuation
    at least out_low."""
    desc = field.base
    for s in gens:
        if s.prec < out_prec:
            raise PrecisionError(
                "generator known to lower order than the image truncation"
            )
    floor = min(
        [s.valuation_floor() for s in gens if not s.is_zero_to_prec()]
        + [out_low]
    )

    def vec(s: LaurentSeries) -> List[int]:
        out = []
        for e in range(floor, out_prec):
            out.extend(s.coeff_at(e).coeffs)
        return out

    rows = _fp_echelon([vec(s) for s in gens], desc.p) if gens else ()
    cut = (out_low - floor) * desc.k
    kept = []
    for row in rows:
        pivot = next(i for i, x in enumerate(row) if x % desc.p != 0)
        if pivot >= cut:
            kept.append(row[cut:])
    return tuple(kept)


def decomposition_image_agrees(
    f: AdditivePolynomial,
    dec: Decomposition,
    field: LaurentField,
    out_prec: int,
    out_low: int = 0,
    min_in_low: int = -24,
) -> bool:
    """Whether f and its decomposition have the same image in the output
    window [out_low, out_prec).

    Both images are spans of single-digit generators; the input window is
    lowered until both windowed spans stabilize for one more level, which
    saturates the window (inputs below it can no longer contribute
    elements of valuation >= out_low modulo t^out_prec)."""
    level = min(0, out_low)
    span_f = span_d = None
    while level >= min_in_low:
        nf = windowed_image_span(
            image_generators(f, out_prec, in_low=level), field, out_prec, out_low
        )
        nd = windowed_image_span(
            decomposition_generators(dec, field, out_prec, in_low=level),
            field,
            out_prec,
            out_low,
        )
        if (nf, nd) == (span_f, span_d):
            return span_f == span_d
        span_f, span_d = nf, nd
        level -= 1
    raise PrecisionError(
        "image comparison window did not saturate above the input floor"
    )


def valuation_independent(
    leaders: Sequence[LaurentSeries],
    field: LaurentField,
    nu: int,
    samples: Iterable[Sequence[LaurentSeries]],
) -> bool:
    """Sampled check: v(sum c_i b_i) = min v(c_i b_i) for c_i in K^(p^nu).

    Each sample is a tuple of raw series x_i; the test uses c_i = x_i^(p^nu).
    """
    for xs in samples:
        terms = []
        vals = []
        for x, b in zip(xs, leaders):
            c = x.frobenius(nu)
            prod = c * b
            terms.append(prod)
            vr = prod.valuation()
            if vr.exact:
                vals.append(vr.value)
        if not vals:
            continue
        total = terms[0]
        for u in terms[1:]:
            total = total + u
        vr = total.valuation()
        expected = min(vals)
        if not vr.exact or vr.value != expected:
            return False
    return True
