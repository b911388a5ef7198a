from fractions import Fraction

import pytest

from valfield.composite import CompositeField
from valfield.errors import BudgetExceededError, ValfieldError
from valfield.extremality import (
    INDETERMINATE,
    MAX_ATTAINED,
    Ball,
    ball_count,
    ball_representatives,
    ball_transfer,
    check_vexbarwex,
    composite_extremal_search,
    extremal_search,
    integral_composite_count,
    integral_composite_representatives,
    valuation_multiset,
)
from valfield.finite_field import prime_field
from valfield.laurent import LaurentField
from valfield.polynomials import MultiPoly
from valfield.sampling import Sampler
from valfield.value_group import Value


class TestRepresentatives:
    def test_ball_count_matches_enumeration(self, K2):
        ball = Ball(K2.zero(4), 0)
        reps = list(ball_representatives(K2, ball, 4))
        assert len(reps) == ball_count(K2, ball, 4) == 16
        assert len({r.to_text() for r in reps}) == 16

    def test_shifted_ball(self, K2):
        ball = Ball(K2.t_power(-1, 5), 1)
        for r in ball_representatives(K2, ball, 3):
            d = r - K2.t_power(-1, 5)
            assert d.is_zero_to_prec() or d.valuation_floor() >= 1

    def test_composite_count(self, C2):
        reps = list(integral_composite_representatives(C2))
        assert len(reps) == integral_composite_count(C2)
        for r in reps:
            vr = r.valuation()
            assert vr.value >= Value.rank2(0, 0)


class TestExtremalSearch:
    def test_square_plus_t_attains_one(self, K2):
        # v(X^2 + t) over O: maximum 1 at X = 0 (squares have even
        # valuation, so the t term always survives at level 1)
        f = MultiPoly(1, {(2,): K2.one(8), (0,): K2.t_power(1, 8)})
        res = extremal_search(f, K2, prec=4)
        assert res.verdict == MAX_ATTAINED
        assert res.value.exact
        assert res.value.value == Value.rank1(1)

    def test_t_times_square_indeterminate(self, K2):
        # v(t*X^2) over O is unbounded: at X = 0 only ">= prec" is known
        f = MultiPoly(1, {(2,): K2.t_power(1, 8)})
        res = extremal_search(f, K2, prec=4)
        assert res.verdict == INDETERMINATE
        assert not res.value.exact
        assert res.value.value == Value.rank1(4)

    def test_exact_value_at_cap_is_distrusted(self, K2):
        # a constant of valuation exactly prec is reported as a bound:
        # deeper digits were never enumerated
        f = MultiPoly(1, {(0,): K2.t_power(4, 8)})
        res = extremal_search(f, K2, prec=4)
        assert res.verdict == INDETERMINATE
        assert res.value.value == Value.rank1(4)

    def test_witness_realizes_value(self, K3):
        s = Sampler(17)
        for _ in range(10):
            f = s.multipoly(K3, nvars=1, max_deg=2, max_terms=3, prec=10)
            if all(c.is_zero_to_prec() for c in f.terms.values()):
                continue
            res = extremal_search(f, K3, prec=3)
            vr = f.evaluate(res.witness).valuation()
            if res.value.exact:
                assert vr.to_text() == res.value.to_text()
            else:
                # cap-at-horizon: the reported bound never overstates the
                # witness (an exact value at or beyond the cap is distrusted)
                assert vr.value >= res.value.value

    def test_budget_enforced(self, K2):
        f = MultiPoly(2, {(2, 1): K2.one(20)})
        with pytest.raises(BudgetExceededError):
            extremal_search(f, K2, prec=12, budget=100)


class TestBallTransfer:
    def test_affine_identity(self, K2):
        # g(y) = f(c(y-a)+b) pointwise
        f = MultiPoly(1, {(2,): K2.one(12), (0,): K2.t_power(1, 12)})
        a = K2.t_power(0, 12)
        b = K2.t_power(-1, 12)
        c = K2.t_power(-1, 12)  # v(c) = beta - alpha = -1 - 0
        g = ball_transfer(f, 0, a, -1, b, c)
        for y in ball_representatives(K2, Ball(a, 0), 4):
            x = c * (y - a) + b
            d = f.evaluate((x,)) - g.evaluate((y,))
            assert d.is_zero_to_prec()

    def test_scale_valuation_checked(self, K2):
        f = MultiPoly(1, {(1,): K2.one(8)})
        with pytest.raises(ValfieldError):
            ball_transfer(f, 0, K2.zero(8), -1, K2.zero(8), K2.one(8))

    def test_multiset_agreement_shifted_windows(self, K2):
        # values of f on B_beta(b) equal values of g on B_alpha(a) when
        # the source window is widened by beta - alpha and both sides cap
        # at the same precision
        s = Sampler(23)
        prec = 5
        for _ in range(6):
            f = s.multipoly(K2, nvars=1, max_deg=2, max_terms=3, prec=16)
            if all(c.is_zero_to_prec() for c in f.terms.values()):
                continue
            a = K2.zero(16)
            b = K2.t_power(1, 16)
            c = K2.t_power(1, 16)
            alpha, beta = 0, 1
            g = ball_transfer(f, alpha, a, beta, b, c)
            # digit level j of y maps to level j + (beta - alpha) of x, so
            # the f-side window is deeper by the shift; both sides share
            # one cap below which classes are trustworthy
            m_g = valuation_multiset(g, K2, Ball(a, alpha), prec, cap=prec)
            m_f = valuation_multiset(
                f, K2, Ball(b, beta), prec + (beta - alpha), cap=prec
            )
            assert m_f == m_g

    def test_multiset_caps_exact_values(self, K2):
        f = MultiPoly(1, {(0,): K2.t_power(5, 12)})
        m = valuation_multiset(f, K2, Ball(K2.zero(12), 0), 2, cap=3)
        assert set(m) == {">=3"}


class TestCompositeCheck:
    def test_confirmed_on_plain_poly(self, C2):
        inner = C2.inner
        g = MultiPoly(1, {(2,): inner.one(6), (0,): inner.t_power(1, 6)})
        report = check_vexbarwex(g, C2)
        assert report.conclusion == "Confirmed"

    def test_inconclusive_when_unbounded(self, C2):
        inner = C2.inner
        g = MultiPoly(1, {(2,): inner.t_power(1, 6)})
        report = check_vexbarwex(g, C2)
        assert report.conclusion == "Inconclusive"

    def test_sampled_lifts_never_counterexample(self, C2):
        s = Sampler(29)
        inner = C2.inner
        for _ in range(4):
            f = s.multipoly(inner, nvars=1, max_deg=2, max_terms=2, coeff_lo=0, prec=C2.prec_u)
            if all(c.is_zero_to_prec() for c in f.terms.values()):
                continue
            report = check_vexbarwex(f, C2)
            assert report.conclusion in ("Confirmed", "Inconclusive")

    def test_budget_enforced(self, C2):
        inner = C2.inner
        g = MultiPoly(2, {(1, 1): inner.one(6)})
        with pytest.raises(BudgetExceededError):
            check_vexbarwex(g, C2, budget=10)
