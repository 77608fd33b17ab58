"""Spherical t-design verification on S^3 via positive-definite kernel sums.

A finite code is a t-design exactly when, for every degree k = 1..t, the
average of the degree-k ultraspherical kernel over all ordered point pairs
vanishes.  For S^3 the kernels are the Chebyshev polynomials of the second
kind.  Including the diagonal pairs makes each kernel sum a perfect square,
so the defects are nonnegative and true designs sit many orders of
magnitude below any reasonable tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Code, gram_matrix

DEFAULT_DESIGN_TOL = 1e-8


def gegenbauer_s3(k: int, t):
    """Degree-k ultraspherical polynomial for S^3 (Chebyshev second kind):
    U_0 = 1, U_1 = 2t, U_{k+1} = 2t U_k - U_{k-1}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t = np.asarray(t, dtype=float) if np.ndim(t) else t
    prev = np.ones_like(t) if np.ndim(t) else 1.0
    if k == 0:
        return prev
    cur = 2 * t
    for _ in range(k - 1):
        prev, cur = cur, 2 * t * cur - prev
    return cur


def design_defect(code: Code, k: int) -> float:
    """(1/N^2) sum over all ordered pairs (diagonal included) of U_k(<x, y>).

    Nonnegative; zero exactly when the code has no degree-k harmonic
    component.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    g = gram_matrix(code)
    vals = np.clip(g.ravel(), -1.0, 1.0)
    n = len(code)
    return float(np.sum(gegenbauer_s3(k, vals)) / (n * n))


@dataclass(frozen=True)
class DesignReport:
    """Defects per degree and the resulting design strength at a tolerance."""

    defects: tuple[tuple[int, float], ...]
    strength: int
    tol: float

    def to_dict(self) -> dict:
        return {
            "defects": [{"k": k, "defect": d} for k, d in self.defects],
            "strength": self.strength,
            "tol": self.tol,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def design_strength(code: Code, k_max: int = 8,
                    tol: float = DEFAULT_DESIGN_TOL) -> DesignReport:
    """Defects for k = 1..k_max and the largest t with defects(1..t) <= tol."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    defects = tuple((k, design_defect(code, k)) for k in range(1, k_max + 1))
    strength = 0
    for k, d in defects:
        if d <= tol:
            strength = k
        else:
            break
    return DesignReport(defects, strength, tol)


def c_theta_cubic_invariant(theta: float) -> float:
    """Sum over C_theta of the symmetry-invariant cubic Re(w1^3) + Re(w2^3),
    in closed form: 6 + 18 (sin^3 theta + cos^3 theta).

    Vanishes exactly at the unique mixing angle where C_theta is a 3-design.
    """
    s, c = math.sin(theta), math.cos(theta)
    return 6.0 + 18.0 * (s ** 3 + c ** 3)


def cubic_sum(code: Code) -> float:
    """Direct sum of Re(w1^3) + Re(w2^3) over the code's points."""
    w = code.complex_view
    return float(np.sum((w[:, 0] ** 3).real + (w[:, 1] ** 3).real))
