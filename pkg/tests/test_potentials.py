import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cell24.potentials import (
    Exp,
    Poly,
    PotentialDomainError,
    PowPlus,
    Riesz,
    format_potential,
    parse_potential,
)

FAMILIES = [PowPlus(8), PowPlus(2), Riesz(1.0), Riesz(2.5), Exp(6.0),
            Poly([Fraction(1), Fraction(-1, 2), Fraction(3)])]


def test_riesz_at_minus_one():
    assert Riesz(1.0).eval(-1.0) == 0.5


def test_powplus_example():
    assert PowPlus(8).eval(0.5) == 25.62890625


def test_exp_derivative_at_zero():
    assert Exp(6.0).eval(0.0, 1) == 6.0


def test_powplus_second_derivative_edge_cases():
    assert PowPlus(0).eval(0.3, 1) == 0.0
    assert PowPlus(1).eval(0.3, 2) == 0.0
    assert PowPlus(2).eval(-1.0, 2) == 2.0  # (1+t)^0 == 1 even at t = -1


def test_riesz_domain_error():
    with pytest.raises(PotentialDomainError):
        Riesz(1.0).eval(1.0)
    with pytest.raises(PotentialDomainError):
        Riesz(1.0).eval(np.array([0.0, 1.0]))


def test_order_validation():
    with pytest.raises(ValueError):
        PowPlus(3).eval(0.0, 3)


def test_poly_exact_coefficients():
    p = Poly(["1/3", 2])
    assert p.coeffs == (Fraction(1, 3), Fraction(2))
    assert p.eval(0.5) == pytest.approx(1 / 3 + 1.0)
    assert p.eval(0.5, 1) == pytest.approx(2.0)
    assert p.eval(0.5, 2) == 0.0


@pytest.mark.parametrize("f", FAMILIES, ids=format_potential)
def test_finite_difference_consistency(f):
    rng = np.random.default_rng(17)
    h = 1e-5
    for t in rng.uniform(-0.9, 0.9, 20):
        fd1 = (f.eval(t + h) - f.eval(t - h)) / (2 * h)
        assert abs(f.eval(t, 1) - fd1) <= 1e-6 * (1 + abs(fd1))
        fd2 = (f.eval(t + h, 1) - f.eval(t - h, 1)) / (2 * h)
        assert abs(f.eval(t, 2) - fd2) <= 1e-6 * (1 + abs(fd2))


@pytest.mark.parametrize("f", [PowPlus(8), PowPlus(0), Riesz(1.0), Riesz(3.0),
                               Exp(6.0), Exp(0.5)], ids=format_potential)
def test_absolute_monotonicity_spot_check(f):
    grid = np.linspace(-1.0, 0.99, 100)
    assert f.absolutely_monotonic
    for order in (0, 1, 2):
        assert np.all(f.eval(grid, order) >= 0)


def test_powplus_large_k_stable():
    # exercised up to k = 200 by the exact tail criterion cross-checks
    f = PowPlus(200)
    t = 0.5485837703548636
    assert f.eval(t) == pytest.approx(1.5485837703548636 ** 200, rel=1e-12)


def test_array_evaluation_matches_scalar():
    ts = np.linspace(-0.95, 0.95, 7)
    for f in FAMILIES:
        arr = f.eval(ts, 1)
        for t, v in zip(ts, arr):
            assert v == pytest.approx(f.eval(float(t), 1), rel=1e-14)


@given(st.sampled_from(FAMILIES), st.floats(-0.9, 0.9))
def test_eval_finite(f, t):
    for order in (0, 1, 2):
        assert math.isfinite(float(f.eval(t, order)))


@pytest.mark.parametrize(
    "spec,expected",
    [
        ("pow1:8", PowPlus(8)),
        ("riesz:1", Riesz(1.0)),
        ("exp:6", Exp(6.0)),
        ("poly:1,0,3/2", Poly([1, 0, Fraction(3, 2)])),
    ],
)
def test_parse_potential(spec, expected):
    assert parse_potential(spec) == expected


def test_parse_format_round_trip():
    for f in FAMILIES:
        assert parse_potential(format_potential(f)) == f


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_potential("riesz")
    with pytest.raises(ValueError):
        parse_potential("gauss:1")
