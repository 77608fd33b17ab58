import math
from fractions import Fraction

import numpy as np
import pytest

from cell24.constructions import (
    DegenerateThetaError,
    HexFamilyAngles,
    c_theta,
    d4,
    hex_design,
    hexagons,
)
from cell24.energy import (
    best_theta_vs_d4,
    energy,
    energy_d4_closed,
    energy_theta_closed,
    energy_theta_dtheta,
    hex_design_energy_closed,
    hexpair_energy,
    lemma_genfun_check,
    lemma_sum,
    refine_family_minimum,
    refine_lemma_min,
    scan_t_max,
    scan_theta,
    within_hexagon_energy,
)
from cell24.geometry import Code
from cell24.potentials import Exp, Poly, PotentialDomainError, PowPlus, Riesz

ALL_FAMILIES = [PowPlus(8), Riesz(1.0), Exp(6.0), Poly([1, Fraction(1, 2), 2])]


def valid_thetas(n, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        th = rng.uniform(0, 2 * math.pi)
        try:
            c_theta(th)
        except DegenerateThetaError:
            continue
        out.append(th)
    return out


# --- brute force and closed forms -------------------------------------------

def test_energy_d4_riesz_is_668():
    assert energy(d4(), Riesz(1.0)) == pytest.approx(668.0, abs=1e-9)


def test_energy_d4_pow8():
    assert energy(d4(), PowPlus(8)) == pytest.approx(5065.5, abs=1e-9)


def test_energy_single_point_zero():
    assert energy(Code(np.array([[1.0, 0, 0, 0]])), Riesz(1.0)) == 0.0


def test_energy_riesz_coincident_points_domain_error():
    code = Code(np.array([[1.0, 0, 0, 0], [1.0, 0, 0, 0]]))
    with pytest.raises(PotentialDomainError):
        energy(code, Riesz(1.0))


def test_d4_closed_riesz():
    assert energy_d4_closed(Riesz(1.0)) == pytest.approx(668.0, abs=1e-12)


def test_d4_closed_pow3_matches_brute_force():
    brute = energy(d4(), PowPlus(3))
    assert energy_d4_closed(PowPlus(3)) == pytest.approx(brute, abs=1e-9)
    assert energy_d4_closed(PowPlus(3)) == pytest.approx(816.0, abs=1e-9)


def test_d4_closed_constant_counts_ordered_pairs():
    assert energy_d4_closed(Poly([1])) == 552.0


def test_theta_closed_at_reported_minimum():
    assert energy_theta_closed(2.529367746, PowPlus(8)) == pytest.approx(
        5064.9533, abs=1e-3
    )


@pytest.mark.parametrize("f", ALL_FAMILIES, ids=str)
def test_theta_closed_matches_brute_force(f):
    for th in valid_thetas(20, seed=3):
        e_closed = energy_theta_closed(th, f)
        e_brute = energy(c_theta(th), f)
        assert abs(e_closed - e_brute) <= 1e-8 * (1 + abs(e_closed))


def test_theta_closed_constant_potential():
    for th in (0.3, 1.0, 2.6):
        assert energy_theta_closed(th, Poly([1])) == pytest.approx(552.0, abs=1e-12)


def test_theta_derivative_matches_finite_difference():
    h = 1e-6
    for f in ALL_FAMILIES:
        for th in valid_thetas(5, seed=8):
            fd = (energy_theta_closed(th + h, f) - energy_theta_closed(th - h, f)) / (2 * h)
            assert energy_theta_dtheta(th, f) == pytest.approx(fd, rel=1e-4, abs=1e-4)


# --- scans ------------------------------------------------------------------

def test_scan_pow8_global_minimum():
    scan = scan_theta(PowPlus(8), 10_000, 1e-9)
    gm = scan.global_minimum()
    assert abs(gm.theta - 2.529367746) < 1e-6
    assert gm.energy == pytest.approx(5064.9533, abs=1e-3)


def test_scan_minima_below_grid_neighbors():
    scan = scan_theta(Riesz(1.0), 2000, 1e-9)
    for m in scan.minima:
        i = int(np.argmin(np.abs(scan.thetas - m.theta)))
        lo, hi = (i - 1) % len(scan.thetas), (i + 1) % len(scan.thetas)
        assert m.energy <= scan.energies[lo] + 1e-12
        assert m.energy <= scan.energies[hi] + 1e-12


def test_scan_riesz_three_minimum_levels():
    scan = scan_theta(Riesz(1.0), 10_000, 1e-9)
    expected = [
        (2.5371, 668.1920),
        (2 * math.pi - 2.0231, 721.7796),
        (0.5320, 926.3218),
    ]
    for th_exp, e_exp in expected:
        hits = [m for m in scan.minima
                if abs(m.theta - th_exp) < 1e-3 and abs(m.energy - e_exp) < 1e-3]
        assert hits, f"no minimum near theta={th_exp}"
    levels = sorted({round(m.energy, 3) for m in scan.minima})
    assert levels == [668.192, 721.780, 926.322]


def test_scan_pow2_energy_constant():
    scan = scan_theta(PowPlus(2), 1000, 1e-9)
    assert np.max(scan.energies) - np.min(scan.energies) < 1e-9


def test_best_theta_pow8():
    th, margin = best_theta_vs_d4(PowPlus(8))
    assert abs(th - 2.52937) < 1e-3
    assert margin == pytest.approx(0.5467, abs=1e-3)


def test_best_theta_pow13():
    th, margin = best_theta_vs_d4(PowPlus(13))
    assert margin > 0
    assert abs(th - 2.54122) < 1e-3


def test_best_theta_exp6():
    th, margin = best_theta_vs_d4(Exp(6.0))
    assert margin > 0
    assert abs(th - 2.53719) < 1e-3


def test_scan_t_max_reaches_sqrt7_bound():
    t0, args = scan_t_max(grid_points=20_000, refine_tol=1e-9)
    assert t0 == pytest.approx((math.sqrt(7) - 1) / 3, abs=1e-6)
    assert any(abs(a - 2.56092) < 1e-3 for a in args)
    assert any(abs(a - 5.29305) < 1e-3 for a in args)


# --- hexagon decomposition ---------------------------------------------------

def test_within_hexagon_energy_counting():
    assert within_hexagon_energy(Poly([1])) == 30.0


def test_within_hexagon_energy_riesz():
    h0 = hexagons()[0]
    brute = energy(Code(h0.points), Riesz(1.0))
    val = within_hexagon_energy(Riesz(1.0))
    assert val == pytest.approx(brute, abs=1e-9)
    assert val == pytest.approx(35.0, abs=1e-9)


def test_within_hexagon_energy_rotation_invariant():
    rng = np.random.default_rng(4)
    for m, h in enumerate(hexagons()):
        a = np.exp(1j * rng.uniform(0, 2 * math.pi))
        brute = energy(Code(h.scaled(a)), Riesz(1.0))
        assert abs(brute - within_hexagon_energy(Riesz(1.0))) < 1e-12


def test_hexpair_counting():
    angles = HexFamilyAngles(0.2, 0.4, 0.6)
    for m in range(4):
        for mp in range(4):
            if m == mp:
                continue
            assert hexpair_energy(m, mp, angles, Poly([1])) == pytest.approx(72.0)


def test_hexpair_rejects_equal_indices():
    with pytest.raises(ValueError):
        hexpair_energy(1, 1, (0.1, 0.2, 0.3), Riesz(1.0))


def test_hexagon_decomposition_reconstructs_d4_energy():
    angles = (math.pi / 6, math.pi / 6, math.pi / 6)
    total = hex_design_energy_closed(angles, Riesz(1.0))
    assert total == pytest.approx(energy_d4_closed(Riesz(1.0)), abs=1e-9)
    brute = energy(hex_design(*angles), Riesz(1.0))
    assert total == pytest.approx(brute, abs=1e-9)


@pytest.mark.parametrize("f", ALL_FAMILIES, ids=str)
def test_hexagon_decomposition_random_angles(f):
    rng = np.random.default_rng(11)
    for _ in range(5):
        angles = tuple(rng.uniform(0, math.pi / 3, 3))
        closed = hex_design_energy_closed(angles, f)
        brute = energy(hex_design(*angles), f)
        assert abs(closed - brute) <= 1e-9 * (1 + abs(closed))


def test_hexpair_periodic_mod_pi_over_3():
    f = Riesz(1.0)
    a1 = HexFamilyAngles(0.15, 0.4, 0.99)
    a2 = HexFamilyAngles(0.15 + math.pi / 3, 0.4, 0.99)
    assert hexpair_energy(0, 1, a1, f) == pytest.approx(
        hexpair_energy(0, 1, a2, f), abs=1e-12
    )


def test_design_energy_constant_for_low_degree():
    rng = np.random.default_rng(23)
    for k in range(6):
        f = PowPlus(k)
        vals = [
            hex_design_energy_closed(tuple(rng.uniform(0, math.pi / 3, 3)), f)
            for _ in range(8)
        ]
        assert max(vals) - min(vals) < 1e-9 * (1 + abs(vals[0]))


def test_family_minimum_at_pi_over_6():
    for k in (6, 8, 12):
        f = PowPlus(k)
        start = (0.5, 0.55, 0.5)
        angles = refine_family_minimum(f, start)
        for a in angles:
            assert abs(a - math.pi / 6) < 1e-6


# --- six-term power sums -----------------------------------------------------

def test_lemma_sum_k2_constant_seven():
    for th in np.linspace(0, math.pi / 3, 50):
        assert lemma_sum(2, th) == pytest.approx(7.0, abs=1e-12)


def test_lemma_sum_value_at_pi_over_6():
    expected = 2 * 1.5 ** 6 + 2 * 0.5 ** 6 + 2
    assert lemma_sum(6, math.pi / 6) == pytest.approx(expected, abs=1e-12)
    assert expected == 24.8125


def test_lemma_sum_unique_minimum_at_pi_over_6():
    grid = np.linspace(0, math.pi / 3, 1001)
    vals = np.array([lemma_sum(6, t) for t in grid])
    i = int(np.argmin(vals))
    assert abs(grid[i] - math.pi / 6) < 2e-3
    # away from pi/6 every grid value sits strictly above the minimum level
    vmin = lemma_sum(6, math.pi / 6)
    far = np.abs(grid - math.pi / 6) > 2e-3
    assert np.min(vals[far]) > vmin
    th = refine_lemma_min(6, math.pi / 6 - 0.2, math.pi / 6 + 0.2)
    assert abs(th - math.pi / 6) < 1e-8


def test_genfun_check_small_discrepancy():
    assert lemma_genfun_check(1.0, 20) < 1e-10


def test_genfun_lhs_vanishes_for_low_degree():
    for th in (0.3, 1.2, 2.0):
        for k in range(6):
            assert abs(lemma_sum(k, th) - lemma_sum(k, math.pi / 6)) < 1e-12


def test_genfun_exact_zero_at_pi_over_6():
    # the direct coefficients are a value minus itself, hence exactly zero;
    # the closed form contributes only the rounding residue of cos(pi/6)^2
    for k in range(13):
        assert lemma_sum(k, math.pi / 6) - lemma_sum(k, math.pi / 6) == 0.0
    assert lemma_genfun_check(math.pi / 6, 12) < 1e-29


def test_genfun_prefactor_vanishes_only_at_pi_over_6_mod():
    for th in np.linspace(0.001, math.pi - 0.001, 400):
        pref = math.cos(th) ** 2 * (4 * math.cos(th) ** 2 - 3) ** 2
        near = min(abs((th - math.pi / 6) % (math.pi / 3)),
                   abs((math.pi / 6 - th) % (math.pi / 3)))
        if near > 1e-2:
            assert pref > 1e-6
