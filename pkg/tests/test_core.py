import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rfa import (
    AlphaBand,
    BasisNumber,
    LcNumber,
    LcSpace,
    alpha_cut,
    conjugate,
    d_infty,
    from_polar,
    is_asymmetric,
    norm_phi,
    nth_root,
    pow_int,
    to_polar,
)
from helpers import as_complex, assert_components, assert_matches_complex

coords = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)
elements = st.builds(LcNumber, coords, coords)


# ---------------------------------------------------------------------------
# basis numbers and asymmetry

def test_asymmetry_examples():
    assert is_asymmetric(BasisNumber.triangular(-0.5, 0, 0.51), 11, 1e-12)
    assert not is_asymmetric(BasisNumber.triangular(-1, 0, 1), 11, 1e-12)
    assert is_asymmetric(BasisNumber.triangular(-2, 0, 4), 11, 1e-12)


def test_asymmetry_trapezoidal_and_tabulated():
    assert is_asymmetric(BasisNumber.trapezoidal(-1, 0, 0.5, 1))
    assert not is_asymmetric(BasisNumber.trapezoidal(-1, -0.5, 0.5, 1))
    table = BasisNumber.tabulated([(0.0, -0.5, 1.0), (0.5, -0.25, 0.5), (1.0, 0.0, 0.0)])
    assert is_asymmetric(table)
    symmetric = BasisNumber.tabulated([(0.0, -1.0, 1.0), (1.0, 0.0, 0.0)])
    assert not is_asymmetric(symmetric)


def test_basis_validation():
    with pytest.raises(ValueError):
        BasisNumber.triangular(1, 0, 2)
    with pytest.raises(ValueError):
        BasisNumber.trapezoidal(0, 2, 1, 3)
    with pytest.raises(ValueError):
        BasisNumber.tabulated([(0.0, 1.0, 0.0), (1.0, 0.0, 0.0)])
    with pytest.raises(ValueError):
        # levels must nest
        BasisNumber.tabulated([(0.0, 0.0, 0.5), (1.0, -1.0, 1.0)])
    with pytest.raises(ValueError):
        is_asymmetric(BasisNumber.triangular(-1, 0, 2), grid_size=2)


def test_tabulated_interpolation_is_linear():
    table = BasisNumber.tabulated([(0.0, -2.0, 4.0), (1.0, 0.0, 0.0)])
    tri = BasisNumber.triangular(-2, 0, 4)
    for alpha in (0.0, 0.3, 0.5, 0.77, 1.0):
        assert table.level(alpha) == pytest.approx(tri.level(alpha))


def test_one_level_value():
    assert BasisNumber.triangular(-1, 0.25, 2).one_level_value() == 0.25
    with pytest.raises(ValueError):
        BasisNumber.trapezoidal(0, 1, 2, 3).one_level_value()


def test_space_rejects_symmetric_basis():
    with pytest.raises(ValueError):
        LcSpace(BasisNumber.triangular(-1, 0, 1))
    space = LcSpace(BasisNumber.triangular(-0.5, 0, 0.51))
    assert space.a1 == 0.0
    bands = space.bands(LcNumber(2, 3), [0.0, 1.0])
    assert (bands[0].lower, bands[0].upper) == (0.5, 2 + 3 * 0.51)
    assert bands[1].lower == bands[1].upper == 2.0
    assert space.d_infty(space.number(1), space.number(4)) == 3.0


# ---------------------------------------------------------------------------
# field operations: pinned examples

def test_add_sub_examples():
    assert LcNumber(1, 2) + LcNumber(2, 3) == LcNumber(3, 5)
    z = LcNumber(4.25, -1.5)
    assert z + LcNumber(0, 0) == z
    assert LcNumber(1, 1) + LcNumber(-1, -1) == LcNumber(0, 0)
    assert LcNumber(3, 5) - LcNumber(2, 3) == LcNumber(1, 2)
    assert z - z == LcNumber(0, 0)
    assert LcNumber(0, 0) - LcNumber(2.5, -3) == LcNumber(-2.5, 3)


def test_mul_examples():
    assert LcNumber(1, 2) * LcNumber(2, 3) == LcNumber(-4, 7)
    # a crisp left factor acts as the scalar product
    assert LcNumber(2.5, 0) * LcNumber(3, 4) == LcNumber(7.5, 10)
    z = LcNumber(-1.25, 0.75)
    assert z * LcNumber(1, 0) == z


def test_div_examples():
    assert_components(LcNumber(1, 0) / LcNumber(2, 3), 2 / 13, -3 / 13)
    p2x = LcNumber(0.18, 0.003) / LcNumber(0.007, 0)
    assert_components(p2x, 0.18 / 0.007, 0.003 / 0.007)
    assert abs(p2x.re - 25.714) < 1e-3 and abs(p2x.fu - 0.4286) < 1e-3
    z = LcNumber(3, -4)
    assert_components(z / z, 1.0, 0.0)
    with pytest.raises(ZeroDivisionError):
        LcNumber(1, 1) / LcNumber(0, 0)


def test_norm_examples():
    assert norm_phi(LcNumber(3, 4)) == 5.0
    assert norm_phi(LcNumber(0, 0)) == 0.0
    assert norm_phi(LcNumber(1, math.sqrt(3))) == pytest.approx(2.0, abs=1e-15)


def test_conjugate_examples():
    assert conjugate(LcNumber(1, 2)) == LcNumber(1, -2)
    assert conjugate(LcNumber(5, 0)) == LcNumber(5, 0)
    assert LcNumber(1, 2) * conjugate(LcNumber(1, 2)) == LcNumber(5, 0)


def test_polar_examples():
    p = to_polar(LcNumber(1, math.sqrt(3)))
    assert p.modulus == pytest.approx(2.0, abs=1e-15)
    assert p.argument == pytest.approx(math.pi / 3, abs=1e-15)
    assert to_polar(LcNumber(1, 0)) == to_polar(LcNumber(1, 0))
    assert to_polar(LcNumber(1, 0)).argument == 0.0
    assert to_polar(LcNumber(0, 1)).argument == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        to_polar(LcNumber(0, 0))


def test_argument_principal_range():
    for z in (LcNumber(-1, 0), LcNumber(-1, -0.0), LcNumber(-2, 1e-300)):
        arg = to_polar(z).argument
        assert -math.pi < arg <= math.pi


def test_pow_int_examples():
    root = nth_root(LcNumber(1, math.sqrt(3)), 2, 0)
    assert_components(root, math.sqrt(2) * math.sqrt(3) / 2, math.sqrt(2) / 2)
    cube = pow_int(LcNumber(1, 1), 3)
    assert_components(cube, -2.0, 2.0)
    z = LcNumber(0.3, -0.7)
    assert pow_int(z, 1) == z
    assert pow_int(z, 0) == LcNumber(1, 0)
    assert pow_int(LcNumber(0, 0), 5) == LcNumber(0, 0)
    with pytest.raises(ZeroDivisionError):
        pow_int(LcNumber(0, 0), -1)


def test_pow_int_negative_matches_reciprocal():
    z = LcNumber(1.5, -2.0)
    expected = as_complex(z) ** -3
    assert_matches_complex(pow_int(z, -3), expected, rel=1e-12)


def test_nth_root_branches():
    z = LcNumber(-3, 4)
    for n in (2, 3, 5):
        for k in range(n):
            back = pow_int(nth_root(z, n, k), n)
            assert_matches_complex(back, as_complex(z), rel=1e-12)
    assert nth_root(z, 3, 4) == nth_root(z, 3, 1)
    with pytest.raises(ValueError):
        nth_root(LcNumber(0, 0), 2)
    with pytest.raises(ValueError):
        nth_root(z, 0)


def test_alpha_cut_examples():
    basis = BasisNumber.triangular(-0.5, 0, 1)
    band1 = alpha_cut(LcNumber(2, 3), basis, 1.0)
    assert (band1.lower, band1.upper) == (2.0, 2.0)
    band0 = alpha_cut(LcNumber(2, 3), basis, 0.0)
    assert (band0.lower, band0.upper) == (0.5, 5.0)
    crisp = alpha_cut(LcNumber(-7.5, 0), basis, 0.4)
    assert (crisp.lower, crisp.upper) == (-7.5, -7.5)
    with pytest.raises(ValueError):
        alpha_cut(LcNumber(1, 1), basis, 1.5)


def test_alpha_cut_negative_coefficient_swaps_endpoints():
    basis = BasisNumber.triangular(-0.5, 0, 1)
    band = alpha_cut(LcNumber(0, -2), basis, 0.0)
    assert (band.lower, band.upper) == (-2.0, 1.0)


def test_d_infty_examples():
    basis = BasisNumber.triangular(-0.5, 0, 1)
    z = LcNumber(1.25, -3)
    assert d_infty(z, z, basis, 11) == 0.0
    assert d_infty(LcNumber(4, 0), LcNumber(1.5, 0), basis, 11) == 2.5
    assert d_infty(LcNumber(0, 1), LcNumber(0, 0), basis, 11) == 1.0


# ---------------------------------------------------------------------------
# oracle equivalence and field axioms

def test_field_operations_match_complex_oracle():
    rng = random.Random(987123)
    for _ in range(1000):
        b = LcNumber(rng.uniform(-10, 10), rng.uniform(-10, 10))
        c = LcNumber(rng.uniform(-10, 10), rng.uniform(-10, 10))
        zb, zc = as_complex(b), as_complex(c)
        assert_matches_complex(b + c, zb + zc, rel=1e-12)
        assert_matches_complex(b - c, zb - zc, rel=1e-12)
        assert_matches_complex(b * c, zb * zc, rel=1e-12)
        if abs(zc) > 1e-3:
            assert_matches_complex(b / c, zb / zc, rel=1e-12)


@settings(deadline=None, max_examples=200)
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    tol = 1e-10

    def close(u, v):
        return norm_phi(u - v) <= tol * max(1.0, norm_phi(u), norm_phi(v))

    assert close(a + b, b + a)
    assert close((a + b) + c, a + (b + c))
    assert close(a * b, b * a)
    assert close((a * b) * c, a * (b * c))
    assert close(a * (b + c), a * b + a * c)


@settings(deadline=None, max_examples=200)
@given(elements)
def test_reciprocal(z):
    if norm_phi(z) < 1e-6:
        return
    residual = (LcNumber(1, 0) / z) * z - LcNumber(1, 0)
    assert norm_phi(residual) < 1e-10


@settings(deadline=None, max_examples=200)
@given(elements, elements)
def test_polar_product_law(z1, z2):
    if norm_phi(z1) < 1e-6 or norm_phi(z2) < 1e-6:
        return
    prod = z1 * z2
    n1, n2, np_ = norm_phi(z1), norm_phi(z2), norm_phi(prod)
    assert math.isclose(np_, n1 * n2, rel_tol=1e-12)
    if np_ < 1e-6:
        return
    total = to_polar(z1).argument + to_polar(z2).argument
    diff = (to_polar(prod).argument - total) % (2 * math.pi)
    assert min(diff, 2 * math.pi - diff) < 1e-9


@settings(deadline=None, max_examples=100)
@given(elements, st.integers(min_value=0, max_value=10))
def test_alpha_band_nesting(z, steps):
    basis = BasisNumber.triangular(-0.5, 0, 0.51)
    alphas = [i / 10 for i in range(11)]
    bands = [alpha_cut(z, basis, a) for a in alphas]
    for outer, inner in zip(bands, bands[1:]):
        assert outer.contains(inner)


def test_polar_round_trip_over_magnitudes():
    rng = random.Random(5150)
    for _ in range(500):
        mag = 10 ** rng.uniform(-6, 6)
        ang = rng.uniform(-math.pi, math.pi)
        z = LcNumber(mag * math.cos(ang), mag * math.sin(ang))
        back = from_polar(to_polar(z))
        assert norm_phi(back - z) <= 1e-12 * norm_phi(z)


def test_alpha_band_validation():
    with pytest.raises(ValueError):
        AlphaBand(1.2, 0.0, 1.0)
    with pytest.raises(ValueError):
        AlphaBand(0.5, 1.0, 0.0)
