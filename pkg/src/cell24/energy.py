"""Pair-potential energies of codes.

The energy of a code C under a potential f is the sum of f(<c, c'>) over
ordered pairs of distinct points, so each unordered pair counts twice.
Closed forms are provided for the 24-cell and the mixing family C_theta,
along with scans over the mixing angle and the hexagon-pair decomposition
of the rotating-hexagon designs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructions import HexFamilyAngles, theta_is_valid
from .geometry import Code, off_diagonal_products
from .potentials import Potential

SQRT3 = math.sqrt(3.0)
TWO_PI = 2.0 * math.pi

# Multiplicities of the 11 inner products of C_theta, in the fixed order
# produced by theta_inner_products().
THETA_MULTIPLICITIES = (18, 18, 36, 36, 36, 36, 72, 72, 72, 72, 84)


def energy(code: Code, f: Potential) -> float:
    """Sum of f over the N(N-1) ordered pairs of distinct points."""
    if len(code) < 2:
        return 0.0
    vals = off_diagonal_products(code)
    return float(np.sum(f.eval(vals, 0)))


def energy_d4_closed(f: Potential) -> float:
    """24 f(-1) + 192 (f(1/2) + f(-1/2)) + 144 f(0)."""
    return float(
        24 * f.eval(-1.0) + 192 * (f.eval(0.5) + f.eval(-0.5)) + 144 * f.eval(0.0)
    )


def theta_inner_products(theta: float) -> list[tuple[float, int]]:
    """The 11 inner products of C_theta with their ordered-pair multiplicities."""
    s, c = math.sin(theta), math.cos(theta)
    s2 = math.sin(2 * theta)
    vals = (
        0.0, s2, s, c,
        s * s - 0.5 * c * c, c * c - 0.5 * s * s,
        -0.5 * s, -0.5 * c, 0.25 * s2, -0.5 * s2,
        -0.5,
    )
    return list(zip(vals, THETA_MULTIPLICITIES))


def _theta_inner_products_dtheta(theta: float) -> list[float]:
    s, c = math.sin(theta), math.cos(theta)
    c2 = math.cos(2 * theta)
    return [
        0.0, 2 * c2, c, -s,
        3 * s * c, -3 * s * c,
        -0.5 * c, 0.5 * s, 0.5 * c2, -c2,
        0.0,
    ]


def energy_theta_closed(theta: float, f: Potential) -> float:
    """Closed-form energy of C_theta from its 11 inner products."""
    return float(sum(m * f.eval(v) for v, m in theta_inner_products(theta)))


def energy_theta_dtheta(theta: float, f: Potential) -> float:
    """d/dtheta of energy_theta_closed, term by term."""
    dv = _theta_inner_products_dtheta(theta)
    return float(
        sum(m * f.eval(v, 1) * d for (v, m), d in zip(theta_inner_products(theta), dv))
    )


def _golden_min(fun, a: float, b: float, tol: float) -> float:
    """Golden-section argmin of fun on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = fun(x1), fun(x2)
    while b - a > tol:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = fun(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = fun(x2)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class ThetaMinimum:
    theta: float
    energy: float


@dataclass(frozen=True)
class ThetaScanResult:
    """Grid of (theta, energy) over [0, 2 pi) plus refined local minima."""

    thetas: np.ndarray
    energies: np.ndarray
    minima: tuple[ThetaMinimum, ...]

    def to_csv(self) -> str:
        lines = ["theta,energy"]
        lines += [f"{t!r},{e!r}" for t, e in zip(self.thetas, self.energies)]
        return "\n".join(lines) + "\n"

    def global_minimum(self) -> ThetaMinimum:
        if not self.minima:
            i = int(np.argmin(self.energies))
            return ThetaMinimum(float(self.thetas[i]), float(self.energies[i]))
        return min(self.minima, key=lambda m: m.energy)


def scan_theta(f: Potential, grid_points: int = 10_000,
               refine_tol: float = 1e-9) -> ThetaScanResult:
    """Evaluate the closed-form energy on a uniform theta grid over [0, 2 pi),
    skipping degenerate angles, and refine each local minimum by
    golden-section search to refine_tol in theta."""
    if grid_points < 100:
        raise ValueError("grid_points must be >= 100")
    if refine_tol <= 0:
        raise ValueError("refine_tol must be positive")
    thetas, energies, valid = [], [], []
    for j in range(grid_points):
        th = TWO_PI * j / grid_points
        if theta_is_valid(th):
            thetas.append(th)
            energies.append(energy_theta_closed(th, f))
            valid.append(True)
        else:
            thetas.append(th)
            energies.append(math.inf)
            valid.append(False)
    e = np.array(energies)
    n = grid_points
    minima = []
    for i in range(n):
        if not valid[i]:
            continue
        lo, hi = (i - 1) % n, (i + 1) % n
        if e[i] < e[lo] and e[i] < e[hi]:
            a = thetas[i] - TWO_PI / n
            b = thetas[i] + TWO_PI / n
            th_star = _golden_min(lambda t: energy_theta_closed(t % TWO_PI, f),
                                  a, b, refine_tol)
            # golden section bottoms out near sqrt(eps) in theta; polishing
            # on the analytic derivative recovers the full refine_tol
            da = energy_theta_dtheta(a % TWO_PI, f)
            db = energy_theta_dtheta(b % TWO_PI, f)
            if da < 0 < db:
                lo_t, hi_t = a, b
                while hi_t - lo_t > refine_tol:
                    mid = 0.5 * (lo_t + hi_t)
                    if energy_theta_dtheta(mid % TWO_PI, f) <= 0:
                        lo_t = mid
                    else:
                        hi_t = mid
                th_star = 0.5 * (lo_t + hi_t)
            th_star %= TWO_PI
            if theta_is_valid(th_star):
                minima.append(ThetaMinimum(th_star, energy_theta_closed(th_star, f)))
    arr_t = np.array([t for t, v in zip(thetas, valid) if v])
    arr_e = np.array([ev for ev, v in zip(energies, valid) if v])
    return ThetaScanResult(arr_t, arr_e, tuple(minima))


def best_theta_vs_d4(f: Potential, grid_points: int = 10_000,
                     refine_tol: float = 1e-9) -> tuple[float, float]:
    """(theta*, margin) where margin = E(D4) - min_theta E(C_theta).

    A positive margin certifies numerically that some C_theta beats the
    24-cell for this potential.  Among equal-energy global minima the
    smallest theta in [0, 2 pi) is reported.
    """
    scan = scan_theta(f, grid_points, refine_tol)
    if scan.minima:
        e_star = min(m.energy for m in scan.minima)
        ties = [m for m in scan.minima
                if m.energy <= e_star + 1e-12 * (1.0 + abs(e_star))]
        theta_star = min(m.theta for m in ties)
    else:
        # angle-independent energy (design degeneracy): report the grid argmin
        i = int(np.argmin(scan.energies))
        theta_star, e_star = float(scan.thetas[i]), float(scan.energies[i])
    return theta_star, energy_d4_closed(f) - e_star


def t_max_theta(theta: float) -> float:
    """Largest inner product of C_theta, from the 11 closed-form values."""
    return max(v for v, _ in theta_inner_products(theta))


def scan_t_max(grid_points: int = 100_000,
               refine_tol: float = 1e-9) -> tuple[float, list[float]]:
    """Minimize t_max(C_theta) over theta.

    Returns the minimal value and every angle in [0, 2 pi) attaining it
    (within 10 * refine_tol in value).
    """
    best = []
    n = grid_points
    vals = np.full(n, np.inf)
    ths = np.array([TWO_PI * j / n for j in range(n)])
    for j in range(n):
        if theta_is_valid(ths[j]):
            vals[j] = t_max_theta(ths[j])
    for i in range(n):
        lo, hi = (i - 1) % n, (i + 1) % n
        if np.isfinite(vals[i]) and vals[i] < vals[lo] and vals[i] < vals[hi]:
            th = _golden_min(lambda t: t_max_theta(t % TWO_PI),
                             ths[i] - TWO_PI / n, ths[i] + TWO_PI / n, refine_tol)
            best.append((t_max_theta(th % TWO_PI), th % TWO_PI))
    t0 = min(v for v, _ in best)
    args = sorted(float(th) for v, th in best if v <= t0 + 10 * refine_tol)
    return float(t0), args


# --- hexagon-pair decomposition -------------------------------------------

def within_hexagon_energy(f: Potential) -> float:
    """Ordered-pair energy internal to one hexagon: 6 (2 f(1/2) + 2 f(-1/2) + f(-1)).

    Independent of the hexagon and of its rotation scalar.
    """
    return float(6 * (2 * f.eval(0.5) + 2 * f.eval(-0.5) + f.eval(-1.0)))


def _hexpair_products(m: int, mprime: int, angles: HexFamilyAngles) -> np.ndarray:
    """The six cross inner products between hexagons m and mprime, each of
    which occurs with ordered-pair multiplicity 12."""
    th = (0.0,) + angles.as_tuple()
    j = np.arange(6)
    if m == 0 or mprime == 0:
        delta = th[m + mprime]  # the nonzero index
        return np.cos(delta + j * math.pi / 3) / SQRT3
    delta = 1.5 * math.pi + th[m] - th[mprime]
    return np.cos(delta + j * math.pi / 3) / SQRT3


def hexpair_energy(m: int, mprime: int, angles: HexFamilyAngles | tuple,
                   f: Potential) -> float:
    """Ordered-pair energy between hexagons m and mprime of the design.

    Each of the six cross inner products repeats six times per direction,
    hence the factor 12 = 6 repetitions x 2 orderings.
    """
    if m == mprime:
        raise ValueError("m and mprime must differ; use within_hexagon_energy")
    if not (0 <= m <= 3 and 0 <= mprime <= 3):
        raise ValueError("hexagon indices lie in 0..3")
    if not isinstance(angles, HexFamilyAngles):
        angles = HexFamilyAngles(*angles)
    prods = _hexpair_products(m, mprime, angles)
    return float(12 * np.sum(f.eval(prods, 0)))


def hex_design_energy_closed(angles: HexFamilyAngles | tuple, f: Potential) -> float:
    """Total design energy via the decomposition: four internal hexagon
    energies plus the six hexagon-pair energies."""
    if not isinstance(angles, HexFamilyAngles):
        angles = HexFamilyAngles(*angles)
    total = 4 * within_hexagon_energy(f)
    for m in range(4):
        for mp in range(m + 1, 4):
            total += hexpair_energy(m, mp, angles, f)
    return total


def _hex_design_energy_grad(angles: tuple[float, float, float],
                            f: Potential) -> np.ndarray:
    """Analytic gradient of hex_design_energy_closed in (theta, phi, psi)."""
    th = (0.0,) + tuple(angles)
    g = np.zeros(3)
    jarr = np.arange(6)
    for m in range(4):
        for mp in range(m + 1, 4):
            if m == 0:
                delta = th[mp]
                darg = np.zeros(3)
                darg[mp - 1] = 1.0
            else:
                delta = 1.5 * math.pi + th[m] - th[mp]
                darg = np.zeros(3)
                darg[m - 1] = 1.0
                darg[mp - 1] = -1.0
            args = delta + jarr * math.pi / 3
            dsum = float(np.sum(f.eval(np.cos(args) / SQRT3, 1) * (-np.sin(args) / SQRT3)))
            g += 12 * dsum * darg
    return g


def refine_family_minimum(f: Potential, start: tuple[float, float, float],
                          gtol: float = 1e-12, max_iter: int = 60) -> tuple[float, float, float]:
    """Newton refinement of a critical point of the design energy, using the
    analytic gradient and a finite-difference Jacobian."""
    x = np.array(start, dtype=float)
    h = 1e-6
    for _ in range(max_iter):
        g = _hex_design_energy_grad(tuple(x), f)
        if np.linalg.norm(g) < gtol:
            break
        jac = np.zeros((3, 3))
        for i in range(3):
            e = np.zeros(3)
            e[i] = h
            jac[:, i] = (_hex_design_energy_grad(tuple(x + e), f)
                         - _hex_design_energy_grad(tuple(x - e), f)) / (2 * h)
        try:
            step = np.linalg.solve(jac, g)
        except np.linalg.LinAlgError:
            step = g
        # plain gradient fallback when Newton overshoots
        if np.linalg.norm(step) > 0.5:
            step = g
        x = x - step
    return tuple(float(v % (math.pi / 3)) for v in x)


# --- six-term cosine power sums and their generating function --------------

def lemma_sum(k: int, theta: float) -> float:
    """sum_{j=0..5} (1 + cos(theta + j pi/3)/sqrt(3))^k.

    Up to the factor 12 this is the hexagon-pair energy kernel for the
    potential (1+t)^k.  Constant in theta for k <= 5; for k >= 6 it has a
    unique minimum mod pi/3, at pi/6.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    args = theta + np.arange(6) * math.pi / 3
    return float(np.sum((1.0 + np.cos(args) / SQRT3) ** k))


def lemma_sum_dtheta(k: int, theta: float) -> float:
    """d/dtheta of lemma_sum; used to refine its minimum beyond the limits of
    direct function comparison in double precision."""
    if k == 0:
        return 0.0
    args = theta + np.arange(6) * math.pi / 3
    base = 1.0 + np.cos(args) / SQRT3
    return float(np.sum(k * base ** (k - 1) * (-np.sin(args) / SQRT3)))


def refine_lemma_min(k: int, a: float, b: float, tol: float = 1e-12) -> float:
    """Argmin of lemma_sum(k, .) inside [a, b] by bisection on the derivative."""
    ga, gb = lemma_sum_dtheta(k, a), lemma_sum_dtheta(k, b)
    if ga > 0 or gb < 0:
        raise ValueError("interval does not bracket a minimum")
    while b - a > tol:
        m = 0.5 * (a + b)
        if lemma_sum_dtheta(k, m) <= 0:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


def lemma_genfun_check(theta: float, max_order: int) -> float:
    """Maximum absolute discrepancy, over orders k <= max_order, between

      * the direct coefficients lemma_sum(k, theta) - lemma_sum(k, pi/6), and
      * the power-series coefficients of the closed-form product
        y^6 cos^2(theta) (4 cos^2(theta) - 3)^2 / 216
        * (1/(1-y) + 2/(2-y) + 2/(2-3y))
        * prod_j 1/(1 - y (1 + cos(theta + j pi/3)/sqrt(3))).

    Series coefficients come from the geometric-factor recurrence; no
    symbolic algebra.
    """
    if max_order < 6:
        raise ValueError("max_order must be >= 6")
    lhs = np.array([lemma_sum(k, theta) - lemma_sum(k, math.pi / 6)
                    for k in range(max_order + 1)])
    n = max_order + 1
    # product over the six geometric factors 1/(1 - lambda_j y)
    lambdas = 1.0 + np.cos(theta + np.arange(6) * math.pi / 3) / SQRT3
    prod = np.zeros(n)
    prod[0] = 1.0
    for lam in lambdas:
        for i in range(1, n):
            prod[i] += lam * prod[i - 1]
    # 1/(1-y) + 2/(2-y) + 2/(2-3y) has coefficients 1 + (1/2)^n + (3/2)^n
    ks = np.arange(n)
    fac = 1.0 + 0.5 ** ks + 1.5 ** ks
    conv = np.convolve(fac, prod)[:n]
    c2 = math.cos(theta) ** 2
    pref = c2 * (4 * c2 - 3) ** 2 / 216.0
    rhs = np.zeros(n)
    rhs[6:] = pref * conv[: n - 6]
    return float(np.max(np.abs(lhs - rhs)))
