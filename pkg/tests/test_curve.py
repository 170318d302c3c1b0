from fractions import Fraction

import pytest

from t36mf.curve import (
    BadLambda, ExtSymbol, StripeKind, annihilator, branch_eval, branches, ext_basis, factored, make_curve,
    parse_lambda,
)
from t36mf.factor import load_fixture
from t36mf.poly import ZERO, PolyMatrix, X, Y, exact_div, parse
from t36mf.univariate import valuation
from t36mf.verify import to_upoly


def test_symbolic_F():
    c = make_curve()
    assert c.symbolic and c.lambda_mode == "symbolic"
    assert c.F == parse("x^3 - x^2*y^2 - l*x^2*y^2 + l*x*y^4")


def test_rational_mode():
    c = make_curve("2")
    assert c.zp == parse("x - 2*y^2")
    assert c.lambda_mode == "2"
    assert make_curve(Fraction(-1, 3)).lam == Fraction(-1, 3)


@pytest.mark.parametrize("bad", ["1", "0", 1, "0/5", "abc", "1/0"])
def test_bad_lambda(bad):
    with pytest.raises(BadLambda):
        make_curve(bad)


@pytest.mark.parametrize("text", [None, "symbolic", "l", "λ", ""])
def test_symbolic_spellings(text):
    assert parse_lambda(text) is None


@pytest.mark.parametrize("mode", [None, "2", "-1"])
def test_each_branch_kills_F(mode):
    c = make_curve(mode)
    for b in branches(c):
        assert branch_eval(PolyMatrix.identity(2, c.F), b) == PolyMatrix.zeros(2, 2)


def test_branch_examples():
    c = make_curve()
    b1, b2, b3 = branches(c)
    assert branch_eval(PolyMatrix.from_rows([[c.z]]), b2) == PolyMatrix.zeros(1, 1)
    Q, _, _ = load_fixture("a:2")
    on3 = make_curve("2").specialize_matrix(Q).substitute(branches(make_curve("2"))[2].bindings())
    vals = [valuation(to_upoly(on3[i, i])) for i in range(6)]
    # only the xz' diagonal block vanishes on branch 3
    assert vals[:3] == [2, 4, 4] and all(v == float("inf") for v in vals[3:])


def test_branch_eval_rejects_t():
    with pytest.raises(ValueError):
        branch_eval(PolyMatrix.from_rows([["t"]]), branches(make_curve())[0])


def test_ext_basis():
    assert [str(s) for s in ext_basis(StripeKind.R1)] == ["1_1", "t*1_1"]
    assert [str(s) for s in ext_basis(StripeKind.R12prime)] == ["1_12", "t_1", "t_2", "t_1^2"]
    assert [str(s) for s in ext_basis(StripeKind.R12)] == ["1_12", "t_12", "t_1^2", "t_1^3"]
    assert [len(k.ext_basis) for k in StripeKind] == [2, 2, 4, 4]
    assert all(s.stripe is k for k in StripeKind for s in k.ext_basis)
    assert ExtSymbol.T1CU_12.degree == 3


@pytest.mark.parametrize("k", list(StripeKind))
def test_annihilators_divide_F(k):
    c = make_curve()
    assert exact_div(c.F, annihilator(k)) != ZERO


def test_factored_display():
    c = make_curve()
    assert factored(-(X * c.z * c.zp), c) == "-x*z*z'"
    assert factored(-(Y * c.z), c) == "-y*z"
    assert factored(c.zp ** 2, c) == "z'^2"
    assert factored(X * c.zp, c, latex=True) == "xz'"
    assert factored(c.zp ** 2, c, latex=True) == "z'^{2}"
    assert factored(X + 1, c) == str(X + 1)
    assert factored(ZERO, c) == "0"
