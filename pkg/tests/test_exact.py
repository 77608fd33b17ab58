import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cell24.energy import energy_d4_closed, energy_theta_closed
from cell24.exact import (
    CUBIC_Y,
    SEXTIC,
    Q7,
    RatFn,
    RatPoly,
    attains_positive,
    attains_positive_on_y_interval,
    d4_energy_exact,
    energy_diff_rational,
    family_energy_poly_y,
    proposition_check,
    proposition_sweep,
    refine_root,
    sturm_real_roots,
    tail_criterion,
    tail_first_true,
    tail_growth_certificate,
    three_design_roots,
    verify_k3_identity,
)
from cell24.potentials import PowPlus

U = RatPoly.x()


# --- polynomial arithmetic ---------------------------------------------------

def test_gcd_common_root():
    a = RatPoly((-1, 0, 1))          # u^2 - 1
    b = RatPoly((1, -2, 1))          # (u-1)^2
    assert a.gcd(b) == RatPoly((-1, 1)).monic()


def test_square_free_part_removes_multiplicity():
    p = (RatPoly((-2, 1)) ** 3) * RatPoly((1, 1))
    sf = p.square_free_part()
    expected = RatPoly((-2, 1)) * RatPoly((1, 1))
    assert sf.monic() == expected.monic()


def test_derivative_of_sextic():
    assert SEXTIC.derivative() == RatPoly((0, 6, -36, -24, 0, 6))


def test_divmod_reconstructs():
    a = RatPoly((3, -1, 0, 2, 5))
    b = RatPoly((1, 2, 1))
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_division_by_zero_poly():
    with pytest.raises(ZeroDivisionError):
        RatPoly((1, 1)).divmod(RatPoly.zero())


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6),
       st.lists(st.integers(-9, 9), min_size=1, max_size=6))
def test_mul_degree_and_commutativity(ca, cb):
    a, b = RatPoly(ca), RatPoly(cb)
    assert a * b == b * a
    if not a.is_zero and not b.is_zero:
        assert (a * b).degree == a.degree + b.degree


# --- Sturm ------------------------------------------------------------------

def test_sturm_sextic_two_real_roots():
    count, intervals = sturm_real_roots(SEXTIC)
    assert count == 2
    spans = [(float(a), float(b)) for a, b in intervals]
    assert any(a <= -0.51171 <= b for a, b in spans)
    assert any(a <= 3.09594 <= b for a, b in spans)


def test_sturm_no_real_roots():
    count, intervals = sturm_real_roots(RatPoly((1, 0, 1)))
    assert count == 0
    assert intervals == []


def test_sturm_zero_poly_rejected():
    with pytest.raises(ValueError):
        sturm_real_roots(RatPoly.zero())


def grid_root_count(coeffs, grid=20_001) -> int:
    """Independent root counter: sign changes of the square-free part on a
    dense grid (plus exact endpoint zero handling via the polynomial value)."""
    p = RatPoly(coeffs).square_free_part()
    lead = abs(p.leading)
    bound = float(1 + max(abs(c) for c in p.coeffs) / lead) + 1
    xs = np.linspace(-bound, bound, grid)
    vals = np.array([p(float(x)) for x in xs])
    count = 0
    prev = 0.0
    for v in vals:
        if v == 0.0:
            count += 1
            prev = 0.0
            continue
        if prev != 0.0 and (v > 0) != (prev > 0):
            count += 1
        prev = v
    return count


@settings(max_examples=100)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=9).filter(
    lambda c: any(x != 0 for x in c[1:]) and any(c)))
def test_sturm_count_matches_grid_oracle(coeffs):
    count, _ = sturm_real_roots(RatPoly(coeffs))
    assert count == grid_root_count(coeffs)


def test_refine_root_sextic():
    _, intervals = sturm_real_roots(SEXTIC)
    roots = sorted(refine_root(SEXTIC, iv, 1e-8) for iv in intervals)
    assert roots[0] == pytest.approx(-0.51171, abs=1e-5)
    assert roots[1] == pytest.approx(3.09594, abs=1e-5)


def test_refine_root_cubic_identity():
    y = refine_root(CUBIC_Y, (Fraction(-1), Fraction(0)), 1e-8)
    # with y = sin + cos, sin^3 + cos^3 = (3y - y^3)/2
    assert (3 * y - y ** 3) / 2 == pytest.approx(-1.0 / 3.0, abs=1e-8)


def test_refine_root_linear():
    assert refine_root(RatPoly((Fraction(-1, 2), 1)), (0, 1), 1e-12) == pytest.approx(0.5)


def test_refine_root_requires_sign_change():
    with pytest.raises(ValueError, match="no sign change"):
        refine_root(RatPoly((1, 0, 1)), (0, 1), 1e-6)


# --- positivity -------------------------------------------------------------

def test_attains_positive_trivial_cases():
    assert attains_positive(RatPoly((1, 0, 1)))          # u^2 + 1
    assert not attains_positive(RatPoly((-1, 0, -1)))    # -(u^2 + 1)
    assert attains_positive(RatPoly((0, 1)))             # odd degree
    assert not attains_positive(RatPoly.zero())
    assert attains_positive(RatPoly((Fraction(1, 7),)))
    assert not attains_positive(RatPoly((-3,)))


def test_attains_positive_negative_square():
    p = (SEXTIC * SEXTIC).scale(-18)
    assert not attains_positive(p)


def test_attains_positive_bump_between_roots():
    # -(u-1)^2 (u+1)^2 + small positive bump has a positive window
    p = (RatPoly((-1, 0, 1)) ** 2).scale(-1) + RatPoly((Fraction(1, 2),))
    assert attains_positive(p)


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=7),
       st.fractions(min_value=Fraction(1, 5), max_value=Fraction(5)))
def test_attains_positive_scaling(coeffs, c):
    p = RatPoly(coeffs)
    assert attains_positive(p.scale(c)) == attains_positive(p)
    if not p.is_zero:
        flipped = attains_positive(p.scale(-c))
        # sign flip changes the answer unless both signs occur or p <= 0 <= ...
        assert flipped == attains_positive(-p)


# --- energy difference as a rational function --------------------------------

def test_k3_identity():
    assert verify_k3_identity()


def test_k3_identity_sensitive_to_perturbation():
    wrong = SEXTIC + RatPoly((1,))
    lhs = energy_diff_rational(3)
    rhs = RatFn((wrong * wrong).scale(-18), RatPoly((1, 0, 1)) ** 6, reduce=False)
    assert lhs != rhs


def test_k3_sides_agree_at_u_equals_2():
    lhs = energy_diff_rational(3)
    val = lhs.num(Fraction(2)) / lhs.den(Fraction(2))
    sext = SEXTIC(Fraction(2))
    expected = Fraction(-18) * sext * sext / Fraction(5) ** 6
    assert val == expected


def test_energy_diff_zero_for_low_k():
    for k in (0, 1, 2):
        assert energy_diff_rational(k).is_zero


@pytest.mark.parametrize("k", [4, 8, 13])
def test_energy_diff_matches_float_closed_forms(k):
    fn = energy_diff_rational(k)
    f = PowPlus(k)
    rng = np.random.default_rng(2)
    done = 0
    while done < 10:
        th = rng.uniform(-math.pi + 0.2, math.pi - 0.2)
        if min(abs(math.sin(2 * th)), abs(math.sin(th) - math.cos(th))) < 1e-2:
            continue
        u = math.tan(th / 2)
        expected = energy_d4_closed(f) - energy_theta_closed(th, f)
        got = fn.num(u) / fn.den(u)
        assert got == pytest.approx(expected, abs=1e-6 * (1 + abs(expected)))
        done += 1


def test_energy_diff_self_consistency_at_rational_points():
    fn = energy_diff_rational(5)
    for u in (Fraction(0), Fraction(1, 3), Fraction(-2)):
        s = 2 * u / (1 + u * u)
        c = (1 - u * u) / (1 + u * u)
        vals = [
            (Fraction(0), 18), (2 * s * c, 18), (s, 36), (c, 36),
            (s * s - c * c / 2, 36), (c * c - s * s / 2, 36),
            (-s / 2, 72), (-c / 2, 72), (s * c / 2, 72), (-s * c, 72),
            (Fraction(-1, 2), 84),
        ]
        e_theta = sum(m * (1 + v) ** 5 for v, m in vals)
        assert fn.num(u) / fn.den(u) == d4_energy_exact(5) - e_theta


# --- the y-form and the full sweep -------------------------------------------

def test_family_poly_y_matches_closed_form():
    for k in (3, 8, 11):
        p = family_energy_poly_y(k)
        f = PowPlus(k)
        for th in (0.7, 1.9, 2.6):
            y = math.sin(th) + math.cos(th)
            assert p(y) == pytest.approx(
                energy_theta_closed(th, f), rel=1e-12
            )


@pytest.mark.parametrize("k", list(range(0, 13)))
def test_proposition_matches_u_route(k):
    via_u = attains_positive(energy_diff_rational(k).num)
    via_y = proposition_check(k)
    assert via_u == via_y


def test_proposition_small_range():
    for k in range(16):
        assert proposition_check(k) == (8 <= k <= 13)


def test_proposition_sweep_records():
    rows = proposition_sweep(7, 9)
    assert [r["k"] for r in rows] == [7, 8, 9]
    assert [r["attains_positive"] for r in rows] == [False, True, True]
    assert all(r["numerator_degree"] <= 2 * r["k"] for r in rows)
    assert all(r["wall_time_ms"] >= 0 for r in rows)


def test_y_interval_endpoint_handling():
    # positive only near y = +-sqrt(2): q = y^2 - 1.9
    assert attains_positive_on_y_interval(RatPoly((Fraction(-19, 10), 0, 1)))
    # negative everywhere on the interval but positive outside |y| > sqrt(2):
    # q = (y^2 - 2) * 1 -> zero at endpoints, negative inside
    assert not attains_positive_on_y_interval(RatPoly((-2, 0, 1)))
    # scaled (2 - y^2): positive strictly inside
    assert attains_positive_on_y_interval(RatPoly((2, 0, -1)))
    # (2 - y^2)^2 * (-1): negative inside
    assert not attains_positive_on_y_interval((RatPoly((2, 0, -1)) ** 2).scale(-1))


# --- Q(sqrt 7) tail ----------------------------------------------------------

def test_tail_criterion_values():
    assert tail_criterion(75)
    assert not tail_criterion(10)
    assert not tail_criterion(74)


def test_tail_first_true_is_75():
    assert tail_first_true(100) == 75


def test_tail_criterion_75_to_200():
    assert all(tail_criterion(k) for k in range(75, 201))


def test_tail_growth_certificate():
    cert = tail_growth_certificate(200)
    assert cert["lhs_ratio_exceeds_3_over_2"]
    assert cert["rhs_step_bounded_by_3_over_2"]
    assert cert["criterion_at_k_verified"]


@given(st.fractions(min_value=-10, max_value=10),
       st.fractions(min_value=-10, max_value=10))
def test_q7_sign_matches_float(a, b):
    x = Q7(a, b)
    approx = float(a) + float(b) * math.sqrt(7)
    if abs(approx) > 1e-9:
        assert x.sign() == (1 if approx > 0 else -1)


def test_q7_pow():
    x = Q7(Fraction(2), Fraction(1)) ** 3
    # (2 + sqrt7)^3 = 8 + 12 sqrt7 + 42 + 7 sqrt7 = 50 + 19 sqrt7
    assert x == Q7(Fraction(50), Fraction(19))


# --- three-design data -------------------------------------------------------

def test_three_design_roots_values():
    data = three_design_roots()
    roots = sorted(data.sextic_roots)
    assert roots[0] == pytest.approx(-0.51171, abs=1e-4)
    assert roots[1] == pytest.approx(3.09594, abs=1e-4)


def test_three_design_sin_cos_pair():
    data = three_design_roots()
    for pair in data.sin_cos_pairs:
        assert sorted(pair) == pytest.approx(
            sorted([0.58498, -0.81105]), abs=1e-4
        )
    assert data.same_unordered_pair


def test_three_design_cube_sum():
    data = three_design_roots()
    assert data.cubic_identity_residual < 1e-8
    for s, c in data.sin_cos_pairs:
        assert s ** 3 + c ** 3 == pytest.approx(-1.0 / 3.0, abs=1e-8)
