import json
from fractions import Fraction

import pytest

from valfield.cli import main
from valfield.composite import CompositeField
from valfield.errors import ParseError
from valfield.laurent import LaurentField
from valfield.parsing import (
    PAdicFieldRef,
    parse_any_field,
    parse_ball,
    parse_int_poly,
    parse_poly,
)


class TestFieldParsing:
    def test_laurent_field(self):
        K = parse_any_field("F(3)((t))")
        assert isinstance(K, LaurentField)
        assert K.base.p == 3

    def test_extension_base(self):
        K = parse_any_field("F(4)((t))")
        assert K.base.q == 4

    def test_composite_field(self):
        C = parse_any_field("F(2)((u))((t))", prec_t=3, prec_u=3)
        assert isinstance(C, CompositeField)
        assert (C.prec_t, C.prec_u) == (3, 3)

    def test_padic_ref(self):
        ref = parse_any_field("Q_5")
        assert isinstance(ref, PAdicFieldRef)
        assert ref.p == 5

    def test_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_any_field("R((t))")


class TestPolyParsing:
    def test_basic_poly(self):
        K = parse_any_field("F(2)((t))", prec=8)
        mp = parse_poly("X^2 + t*X + t^-1", K)
        assert mp.nvars == 1
        assert set(mp.terms) == {(2,), (1,), (0,)}

    def test_two_variables(self):
        K = parse_any_field("F(2)((t))", prec=8)
        mp = parse_poly("X1^2 + t*X2", K)
        assert mp.nvars == 2

    def test_int_poly(self):
        assert parse_int_poly("X^2 - 3*X + 2") == [
            Fraction(2),
            Fraction(-3),
            Fraction(1),
        ]
        assert parse_int_poly("3*(X^3 - X)^2 - 1")[0] == Fraction(-1)

    def test_int_poly_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_int_poly("X^^2")

    def test_ball(self):
        K = parse_any_field("F(2)((t))", prec=8)
        ball = parse_ball("v>=1 around t^-1", K)
        assert ball.radius == 1
        assert ball.center.low == -1

    def test_ball_zero_center(self):
        K = parse_any_field("F(2)((t))", prec=8)
        ball = parse_ball("v>=0 around 0", K)
        assert ball.center.is_zero_to_prec()


def run_cli(*argv):
    return main(list(argv))


class TestCliExitCodes:
    def test_tmcne_pass(self, capsys, tmp_path):
        out = tmp_path / "cert.json"
        assert run_cli("tmcne", "-p", "3", "--json", str(out)) == 0
        data = json.loads(out.read_text())
        assert data["verdict"] == "pass"

    def test_tmcne_rejects_even(self, capsys):
        assert run_cli("tmcne", "-p", "2") == 3

    def test_oap_with_oracle(self, capsys):
        code = run_cli(
            "oap",
            "--field",
            "F(3)((t))",
            "--poly",
            "X^3 - X",
            "--target",
            "t^-1",
            "--oracle",
            "--prec",
            "4",
        )
        assert code == 0
        assert "-1" in capsys.readouterr().out

    def test_decompose_with_oracle(self, capsys):
        code = run_cli(
            "decompose",
            "--field",
            "F(2)((t))",
            "--poly",
            "X1^2 + t*X2^2",
            "--oracle",
            "--prec",
            "4",
        )
        assert code == 0

    def test_alpha(self, capsys):
        code = run_cli(
            "alpha",
            "--field",
            "F(2)((t))",
            "--poly",
            "t*X1^4 + X2^2 + t^-3",
        )
        assert code == 0
        assert "alpha" in capsys.readouterr().out

    def test_extremal_attained(self, capsys):
        code = run_cli(
            "extremal",
            "--field",
            "F(2)((t))",
            "--poly",
            "X^2 + t",
            "--ball",
            "v>=0 around 0",
            "--prec",
            "4",
        )
        assert code == 0

    def test_extremal_indeterminate(self, capsys):
        code = run_cli(
            "extremal",
            "--field",
            "F(2)((t))",
            "--poly",
            "t*X^2",
            "--ball",
            "v>=0 around 0",
            "--prec",
            "4",
        )
        assert code == 3

    def test_transfer(self, capsys):
        code = run_cli(
            "transfer",
            "--field",
            "F(2)((t))",
            "--poly",
            "X^2 + t",
            "--alpha",
            "0",
            "--beta",
            "1",
            "--center-b",
            "t^1",
            "--scale",
            "t^1",
            "--prec",
            "4",
        )
        assert code == 0

    def test_compose(self, capsys):
        code = run_cli(
            "compose",
            "--field",
            "F(2)((u))((t))",
            "--poly",
            "X^2 + u",
            "--prec-t",
            "2",
            "--prec-u",
            "2",
        )
        assert code in (0, 3)

    def test_fundeq_padic(self, capsys):
        code = run_cli(
            "fundeq",
            "--field",
            "Q_3",
            "--poly",
            "3*(X^3 - X)^2 - 1",
        )
        assert code == 0
        assert "6" in capsys.readouterr().out

    def test_fundeq_uncertifiable(self, capsys):
        code = run_cli("fundeq", "--field", "Q_3", "--poly", "X^2 - 1")
        assert code == 3

    def test_selftest(self, capsys):
        assert run_cli("selftest", "--samples", "20") == 0

    def test_usage_error(self, capsys):
        assert run_cli("oap", "--field", "F(2)((t))") == 1

    def test_parse_error(self, capsys):
        code = run_cli(
            "extremal", "--field", "F(2)((t))", "--poly", "X^^2"
        )
        assert code == 1

    def test_budget_error(self, capsys):
        code = run_cli(
            "extremal",
            "--field",
            "F(2)((t))",
            "--poly",
            "X1*X2 + t",
            "--ball",
            "v>=0 around 0",
            "--prec",
            "10",
            "--budget",
            "100",
        )
        assert code == 4
