from fractions import Fraction
from functools import reduce
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from veechladder.cylinders import (
    Cylinder,
    CylinderDecomposition,
    Direction,
    NonIntegerTwist,
    NotCommensurable,
    NotCommensurableError,
    commensurability,
    cylinder_area,
    decompose,
    decomposition_json,
    synthesize_parabolic,
    twist_counts,
    widest_cylinder,
)
from veechladder.fuchsian import generators
from veechladder.moebius import Kind, MoebiusElement, classify, eigen_slope, fixed_points
from veechladder.numeric import QuadExt, parse_quadext, solve_lambda
from veechladder.surface import area, build_surface

GOLD = solve_lambda(2, 1)
LAM = GOLD.lam


def horizontal(p, depth=20):
    return decompose(build_surface(p, depth), Direction.HORIZONTAL)


def test_moduli_golden():
    dec = horizontal(GOLD)
    assert dec[0].modulus == 1 + LAM
    for c in dec.cylinders[1:]:
        assert c.modulus == 1 / LAM + 1 + LAM
    assert dec[1].circumference == 2


def test_heights_and_circumferences(params):
    dec = horizontal(params, 12)
    lam = params.lam
    assert (dec[0].height, dec[0].circumference) == (1, 1 + lam)
    for n in range(1, 13):
        assert dec[n].height == lam ** n
        assert dec[n].circumference == lam ** (n - 1) * (1 + lam + lam * lam)
    assert len(dec) == 13


def test_non_bottom_moduli_ratio(params):
    dec = horizontal(params, 12)
    for c in dec.cylinders[1:]:
        assert c.modulus == Fraction(params.k, params.l) * (1 + params.lam)


@pytest.mark.parametrize("direction", list(Direction))
def test_all_directions_share_moduli(direction):
    s = build_surface(GOLD, 10)
    dec = decompose(s, direction)
    ref = decompose(s, Direction.HORIZONTAL)
    assert [c.modulus for c in dec.cylinders] == [c.modulus for c in ref.cylinders]
    assert all(c.direction is direction for c in dec.cylinders)


def test_commensurability_golden():
    comm = commensurability(horizontal(GOLD))
    assert comm.m == 1 / (2 * (1 + LAM))
    assert comm.multipliers == (2,) + (1,) * 20


def test_commensurability_general(params):
    comm = commensurability(horizontal(params, 10))
    assert comm.m == 1 / (params.k * (1 + params.lam))
    assert comm.multipliers == (params.k,) + (params.l,) * 10


def test_commensurability_single_cylinder():
    cyl = Cylinder(0, QuadExt(2), QuadExt(3), Direction.HORIZONTAL)
    comm = commensurability(CylinderDecomposition(Direction.HORIZONTAL, (cyl,)))
    assert comm.m == Fraction(2, 3) and comm.multipliers == (1,)


def test_not_commensurable_synthetic():
    cyls = (
        Cylinder(0, QuadExt(1), QuadExt(1), Direction.HORIZONTAL),
        Cylinder(1, QuadExt(1), QuadExt.sqrt(5), Direction.HORIZONTAL),
    )
    dec = CylinderDecomposition(Direction.HORIZONTAL, cyls)
    res = commensurability(dec)
    assert isinstance(res, NotCommensurable) and not res
    assert res.index == 0 and not res.ratio.is_rational()
    with pytest.raises(NotCommensurableError):
        synthesize_parabolic(dec)


@given(st.lists(st.tuples(st.integers(1, 30), st.integers(1, 30)), min_size=1, max_size=6))
def test_commensurability_of_rational_moduli(pairs):
    cyls = tuple(
        Cylinder(i, QuadExt(h), QuadExt(w), Direction.HORIZONTAL) for i, (h, w) in enumerate(pairs)
    )
    comm = commensurability(CylinderDecomposition(Direction.HORIZONTAL, cyls))
    # every inverse modulus is its multiplier times m, and m is the largest such
    for c, mult in zip(cyls, comm.multipliers):
        assert c.inverse_modulus == mult * comm.m
    assert reduce(gcd, comm.multipliers) == 1


def test_synthesize_parabolic(params):
    s = build_surface(params, 10)
    t = synthesize_parabolic(decompose(s, Direction.HORIZONTAL))
    assert t == MoebiusElement(1, params.shear, 0, 1) == generators(params)["T"]
    v = synthesize_parabolic(decompose(s, Direction.VERTICAL))
    assert v == MoebiusElement(1, 0, params.shear, 1)
    a = synthesize_parabolic(decompose(s, Direction.ANTIDIAGONAL))
    assert classify(a).kind is Kind.PARABOLIC
    assert eigen_slope(a) == -1
    assert fixed_points(a) == [-1]


def test_golden_shear():
    assert synthesize_parabolic(horizontal(GOLD)).b == 1 + QuadExt.sqrt(5)


def test_twist_counts(params):
    dec = horizontal(params, 10)
    assert twist_counts(dec, params.shear) == [params.k] + [params.l] * 10
    assert twist_counts(dec, 2 * params.shear) == [2 * params.k] + [2 * params.l] * 10


def test_non_integer_twist():
    with pytest.raises(NonIntegerTwist) as info:
        twist_counts(horizontal(GOLD), QuadExt(1))
    assert info.value.index == 0
    with pytest.raises(ValueError):
        twist_counts(horizontal(GOLD), QuadExt(-1))


def test_widest_cylinder():
    w = widest_cylinder(horizontal(GOLD))
    assert w.index == 1 and w.circumference == 2
    p = solve_lambda(3, 1)
    w = widest_cylinder(horizontal(p))
    assert w.index == 1 and w.circumference == 1 + p.lam + p.lam ** 2


def test_cylinder_area_matches_closed_form(params):
    for depth in (2, 5, 30):
        assert cylinder_area(horizontal(params, depth)) == area(params)


def test_cylinder_rejects_degenerate():
    with pytest.raises(ValueError):
        Cylinder(0, QuadExt(0), QuadExt(1), Direction.HORIZONTAL)


def test_json_rows():
    rows = decomposition_json(horizontal(GOLD, 4), digits=8)
    assert rows[0]["modulus"] == "1/2 + 1/2*sqrt(5)"
    assert rows[0]["approx"]["modulus"] == "1.61803398"
    for row in rows:
        h, w = parse_quadext(row["height"]), parse_quadext(row["circumference"])
        assert w / h == parse_quadext(row["modulus"])
