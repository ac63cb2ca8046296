from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from veechladder.numeric import (
    InvalidParameters,
    QuadExt,
    RadicandMismatch,
    parse_quadext,
    sign,
    solve_lambda,
    sqrt_exact,
    squarefree_split,
    to_decimal,
)

from .conftest import field_elements, nonzero_field_elements

SQRT5 = QuadExt.sqrt(5)
GOLDEN = QuadExt(Fraction(-1, 2), Fraction(1, 2), 5)


def to_sympy(x: QuadExt):
    return sp.Rational(x.a.numerator, x.a.denominator) + sp.Rational(
        x.b.numerator, x.b.denominator
    ) * sp.sqrt(x.D)


# -- construction and normalization -------------------------------------------

def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(9) == (3, 1)
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(2 * 3 * 5 * 7 * 49) == (7, 210)
    with pytest.raises(ValueError):
        squarefree_split(0)


@given(st.integers(1, 5000))
def test_squarefree_split_reassembles(n):
    s, f = squarefree_split(n)
    assert s * s * f == n
    assert all(f % (p * p) for p in range(2, int(f**0.5) + 2))


def test_radicand_normalized():
    assert QuadExt(0, 1, 12) == QuadExt(0, 2, 3)
    assert QuadExt(0, 1, 12).D == 3
    assert QuadExt(1, 1, 9) == 4 and QuadExt(1, 1, 9).is_rational()


def test_immutable():
    with pytest.raises(AttributeError):
        GOLDEN.a = 3


# -- worked examples ------------------------------------------------------------

def test_conjugate_product():
    assert (1 + SQRT5) * (1 - SQRT5) == -4


def test_golden_inverse_and_square():
    assert GOLDEN.inverse() == QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
    assert GOLDEN * GOLDEN.inverse() == 1
    assert GOLDEN**2 == 1 - GOLDEN == QuadExt(Fraction(3, 2), Fraction(-1, 2), 5)


def test_sign_examples():
    assert sign(QuadExt(0, 0, 5)) == 0
    assert sign(-1 + SQRT5) == 1
    assert sign(QuadExt(Fraction(9, 4), -1, 5)) == 1
    assert sign(QuadExt(Fraction(-9, 4), 1, 5)) == -1
    assert sign(QuadExt(Fraction(11, 5), -1, 5)) == -1  # 121/25 < 5


def test_to_decimal_examples():
    assert to_decimal(GOLDEN, 10) == "0.6180339887"
    assert to_decimal(QuadExt(0), 6) == "0.000000"
    assert to_decimal(2 + 2 * GOLDEN, 10) == "3.2360679774"
    assert to_decimal(-GOLDEN, 4) == "-0.6180"
    with pytest.raises(ValueError):
        to_decimal(GOLDEN, 0)


@given(field_elements(7), st.integers(1, 30))
def test_to_decimal_truncates_against_mpmath(x, digits):
    s = to_decimal(x, digits)
    # independent high-precision evaluation, truncated toward zero
    ref = sp.N(to_sympy(x), digits + 30)
    scaled = sp.Abs(ref) * sp.Integer(10) ** digits
    expect = int(sp.floor(scaled))
    got = int(s.replace("-", "").replace(".", ""))
    assert got == expect
    assert s.startswith("-") == (x < 0 and expect != 0)


# -- arithmetic versus a sympy oracle -----------------------------------------

@given(field_elements(5), field_elements(5))
def test_ring_ops_match_sympy(x, y):
    for got, ref in (
        (x + y, to_sympy(x) + to_sympy(y)),
        (x - y, to_sympy(x) - to_sympy(y)),
        (x * y, to_sympy(x) * to_sympy(y)),
    ):
        assert sp.simplify(to_sympy(got) - ref) == 0


@given(field_elements(3), nonzero_field_elements(3))
def test_division_matches_sympy(x, y):
    assert sp.simplify(to_sympy(x / y) - to_sympy(x) / to_sympy(y)) == 0


@given(field_elements(2), field_elements(2), field_elements(2))
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x + (-x) == 0
    assert (x * y).norm() == x.norm() * y.norm()
    if x != 0:
        assert x * x.inverse() == 1


@given(field_elements(5), field_elements(5))
def test_order_agrees_with_floats(x, y):
    assume(abs(float(x) - float(y)) > 1e-9)
    assert (x < y) == (float(x) < float(y))
    assert sign(x - y) == (1 if float(x) > float(y) else -1)


@given(field_elements(6))
def test_floor_is_exact(x):
    n = x.__floor__()
    assert n <= x < n + 1
    assert int(sp.floor(to_sympy(x))) == n


@given(nonzero_field_elements(5), st.integers(-6, 6))
def test_integer_powers(x, n):
    ref = to_sympy(x) ** n
    assert sp.simplify(to_sympy(x**n) - ref) == 0


@given(field_elements(5))
def test_hash_and_eq_consistent(x):
    y = QuadExt(x.a, x.b, 5)
    assert x == y and hash(x) == hash(y)


def test_rationals_embed_in_any_field():
    assert QuadExt(2) + SQRT5 == QuadExt(2, 1, 5)
    assert QuadExt(3, 0, 5) == QuadExt(3, 0, 7) == 3
    assert hash(QuadExt(3, 0, 5)) == hash(QuadExt(3))


def test_radicand_mismatch():
    with pytest.raises(RadicandMismatch):
        SQRT5 + QuadExt.sqrt(2)
    with pytest.raises(RadicandMismatch):
        SQRT5 < QuadExt.sqrt(3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        SQRT5 / QuadExt(0)


@given(field_elements(5))
def test_sqrt_exact_of_squares(x):
    r = sqrt_exact(x * x)
    assert r is not None and r == abs(x)


def test_sqrt_exact_misses():
    assert sqrt_exact(QuadExt(2)) is None
    assert sqrt_exact(SQRT5) is None
    assert sqrt_exact(QuadExt(-1)) is None
    assert sqrt_exact(QuadExt(5, 0, 5)) == SQRT5


# -- text and JSON ----------------------------------------------------------------

def test_canonical_text():
    assert str(GOLDEN) == "-1/2 + 1/2*sqrt(5)"
    assert GOLDEN.pretty() == "(-1 + sqrt(5))/2"
    assert str(QuadExt(0, -2, 3)) == "-2*sqrt(3)"
    assert str(QuadExt(Fraction(3, 4))) == "3/4"


@given(field_elements(5))
def test_text_round_trip(x):
    assert parse_quadext(str(x)) == x
    assert parse_quadext(x.pretty()) == x


@given(field_elements(13))
def test_json_round_trip(x):
    assert QuadExt.from_json(x.to_json()) == x


def test_parse_syntax():
    assert parse_quadext("(-1 + sqrt(5))/2") == GOLDEN
    assert parse_quadext("2^-1 * (sqrt(20)/2 - 1)") == GOLDEN
    assert parse_quadext("lambda^2 + lambda", GOLDEN) == 1
    assert parse_quadext("λ", GOLDEN) == GOLDEN
    for bad in ("x", "sqrt(-2)", "2**sqrt(5)", "1 +", "lambda", "sqrt(1/2)"):
        with pytest.raises(ValueError):
            parse_quadext(bad)


# -- solve_lambda ----------------------------------------------------------------

# frozen from a sympy root-finding oracle
LAMBDAS = {
    (2, 1): ("-1/2 + 1/2*sqrt(5)", 5, "0.618033988749"),
    (3, 1): ("-1/2 + 1/2*sqrt(3)", 3, "0.366025403784"),
    (5, 1): ("-1/2 + 1/2*sqrt(2)", 2, "0.207106781186"),
    (5, 2): ("-1/2 + 1/6*sqrt(33)", 33, "0.457427107756"),
    (7, 2): ("-1/2 + 1/10*sqrt(65)", 65, "0.306225774829"),
    (7, 3): ("1/2", 1, "0.500000000000"),
    (13, 4): ("1/3", 1, "0.333333333333"),
}


@pytest.mark.parametrize("kl", sorted(LAMBDAS))
def test_solve_lambda_frozen(kl):
    text, D, dec = LAMBDAS[kl]
    p = solve_lambda(*kl)
    assert str(p.lam) == text
    assert p.radicand == D
    assert to_decimal(p.lam, 12) == dec
    assert p.residual() == 0


@given(st.integers(2, 60), st.integers(1, 40))
def test_solve_lambda_defining_equation(k, l):
    from math import gcd

    assume(k > l and gcd(k, l) == 1 and 2 * k > 3 * l)
    p = solve_lambda(k, l)
    lam = p.lam
    assert 0 < lam < 1
    assert k * (lam + 1) == l * (1 / lam + 1 + lam)


@pytest.mark.parametrize("k,l", [(1, 1), (2, 2), (1, 2), (0, -1), (4, 2), (3, 2), (5, 4)])
def test_solve_lambda_rejects(k, l):
    with pytest.raises(InvalidParameters):
        solve_lambda(k, l)


def test_solve_lambda_rejects_non_integers():
    with pytest.raises(InvalidParameters):
        solve_lambda(2.0, 1)


def test_three_two_gives_one():
    # the defining equation has the rational root 1, outside (0, 1)
    with pytest.raises(InvalidParameters, match="not in"):
        solve_lambda(3, 2)
