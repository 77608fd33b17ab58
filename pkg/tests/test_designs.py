import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cell24.constructions import c_theta, d4, hex_design
from cell24.designs import (
    c_theta_cubic_invariant,
    cubic_sum,
    design_defect,
    design_strength,
    gegenbauer_s3,
)
from cell24.exact import three_design_roots
from cell24.geometry import Code, random_code


def test_gegenbauer_base_case():
    for t in np.linspace(-1, 1, 7):
        assert gegenbauer_s3(0, t) == 1.0


def test_gegenbauer_degree_two_at_half():
    assert gegenbauer_s3(2, 0.5) == 0.0


def test_gegenbauer_at_one():
    for k in range(9):
        assert gegenbauer_s3(k, 1.0) == k + 1


def test_d4_is_5_design():
    for k in range(1, 6):
        assert design_defect(d4(), k) < 1e-10


def test_d4_not_6_design():
    assert design_defect(d4(), 6) > 0.1


@given(st.integers(0, 100_000), st.integers(1, 8))
def test_defect_nonnegative(seed, k):
    code = random_code(10, seed)
    assert design_defect(code, k) >= -1e-12


def test_defect_rotation_invariant(rot):
    code = random_code(15, 3)
    for s in range(4):
        rotated = Code(code.points @ rot(s).T)
        for k in (1, 3, 5):
            assert design_defect(code, k) == pytest.approx(
                design_defect(rotated, k), abs=1e-10
            )


def test_design_strength_d4():
    assert design_strength(d4(), 8, 1e-8).strength == 5


def test_design_strength_hex_designs():
    for angles in [(0.11, 0.57, 0.93), (0.4, 0.1, 0.9), (1.0, 0.2, 0.55)]:
        assert design_strength(hex_design(*angles), 8, 1e-8).strength == 5


def test_design_strength_c_theta_generic():
    assert design_strength(c_theta(1.0), 8, 1e-8).strength == 2


def test_three_design_angle_has_strength_3():
    data = three_design_roots()
    s, c = data.sin_cos_pairs[0]
    theta = math.atan2(s, c)
    rep = design_strength(c_theta(theta), 8, 1e-8)
    assert rep.strength == 3
    assert abs(c_theta_cubic_invariant(theta)) < 1e-6
    assert dict(rep.defects)[4] > 1e-8


def test_cubic_invariant_zero_iff_sum_of_cubes():
    # 6 + 18 x = 0  <=>  x = -1/3
    th = 2.1
    s, c = math.sin(th), math.cos(th)
    val = c_theta_cubic_invariant(th)
    assert val == pytest.approx(6 + 18 * (s ** 3 + c ** 3), abs=1e-12)


def test_cubic_invariant_near_reported_angle():
    # sin = 0.58498, cos = -0.81105 up to the 5 digits reported
    th = math.atan2(0.58498, -0.81105)
    assert abs(c_theta_cubic_invariant(th)) < 1e-3


def test_cubic_invariant_matches_brute_force():
    rng = np.random.default_rng(1)
    done = 0
    while done < 10:
        th = rng.uniform(0, 2 * math.pi)
        try:
            code = c_theta(th)
        except Exception:
            continue
        assert cubic_sum(code) == pytest.approx(
            c_theta_cubic_invariant(th), abs=1e-9
        )
        done += 1


def test_random_code_defect_not_trivially_small():
    # a uniform 600-point cloud has defect(1) of order 1/sqrt(N), far above
    # the design tolerance; guards against a vacuous tolerance
    code = random_code(600, 77)
    assert design_defect(code, 1) > 1e-6


def test_report_consistency():
    rep = design_strength(hex_design(0.3, 0.8, 0.14), 8, 1e-8)
    for k, d in rep.defects:
        if k <= rep.strength:
            assert d <= rep.tol
    assert dict(rep.defects)[rep.strength + 1] > rep.tol
    assert set(rep.to_dict()) == {"defects", "strength", "tol"}
