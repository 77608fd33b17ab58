"""Potential function families with closed-form first and second derivatives.

Four families cover every potential used by the verification suite:
powers (1+t)^k, inverse powers (1-t)^(-s), exponentials e^(ct), and
polynomials in t with exact rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np


class PotentialDomainError(ValueError):
    """Evaluation outside the domain of the potential (e.g. Riesz at t >= 1)."""


def _check_order(order: int) -> None:
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")


def _powi(x, k: int):
    """x**k for integer k >= 0 by repeated squaring; 0**0 == 1."""
    result = np.ones_like(np.asarray(x, dtype=float)) if np.ndim(x) else 1.0
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


@dataclass(frozen=True)
class PowPlus:
    """f(t) = (1+t)^k for a nonnegative integer k; absolutely monotonic."""

    k: int

    def __post_init__(self):
        if self.k < 0 or self.k != int(self.k):
            raise ValueError("k must be a nonnegative integer")

    def eval(self, t, order: int = 0):
        _check_order(order)
        k = self.k
        base = 1.0 + np.asarray(t, dtype=float) if np.ndim(t) else 1.0 + t
        if order == 0:
            return _powi(base, k)
        if order == 1:
            return 0.0 * base if k == 0 else k * _powi(base, k - 1)
        if k < 2:
            return 0.0 * base
        return k * (k - 1) * _powi(base, k - 2)

    @property
    def absolutely_monotonic(self) -> bool:
        return True


@dataclass(frozen=True)
class Riesz:
    """f(t) = (1-t)^(-s) with s > 0, defined on [-1, 1); absolutely monotonic."""

    s: float

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError("s must be positive")

    def eval(self, t, order: int = 0):
        _check_order(order)
        t = np.asarray(t, dtype=float) if np.ndim(t) else t
        if np.any(np.asarray(t) >= 1.0):
            raise PotentialDomainError("Riesz potential requires t < 1")
        base = 1.0 - t
        s = self.s
        if order == 0:
            return base ** (-s)
        if order == 1:
            return s * base ** (-s - 1)
        return s * (s + 1) * base ** (-s - 2)

    @property
    def absolutely_monotonic(self) -> bool:
        return True


@dataclass(frozen=True)
class Exp:
    """f(t) = e^(ct); absolutely monotonic when c > 0."""

    c: float

    def eval(self, t, order: int = 0):
        _check_order(order)
        t = np.asarray(t, dtype=float) if np.ndim(t) else t
        return self.c ** order * np.exp(self.c * t)

    @property
    def absolutely_monotonic(self) -> bool:
        return self.c > 0


@dataclass(frozen=True)
class Poly:
    """f(t) = sum coeffs[j] * t^j with exact rational coefficients.

    Exactness matters for the low-degree potentials where design properties
    make energies angle-independent; evaluation is in floats.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in coeffs)
        )

    def _float_coeffs(self, order: int) -> list[float]:
        cs = [Fraction(c) for c in self.coeffs]
        for _ in range(order):
            cs = [j * cs[j] for j in range(1, len(cs))]
        return [float(c) for c in cs]

    def eval(self, t, order: int = 0):
        _check_order(order)
        t = np.asarray(t, dtype=float) if np.ndim(t) else t
        cs = self._float_coeffs(order)
        if not cs:
            return 0.0 * t if np.ndim(t) else 0.0
        acc = cs[-1] * np.ones_like(t) if np.ndim(t) else cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc * t + c
        return acc

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    @property
    def absolutely_monotonic(self) -> bool:
        return all(c >= 0 for c in self.coeffs)


Potential = Union[PowPlus, Riesz, Exp, Poly]


def parse_potential(spec: str) -> Potential:
    """Parse a text potential spec: pow1:<k>, riesz:<s>, exp:<c>, poly:<c0>,<c1>,..."""
    name, sep, arg = spec.partition(":")
    if not sep:
        raise ValueError(f"malformed potential spec {spec!r}")
    if name == "pow1":
        return PowPlus(int(arg))
    if name == "riesz":
        return Riesz(float(arg))
    if name == "exp":
        return Exp(float(arg))
    if name == "poly":
        return Poly([Fraction(c) for c in arg.split(",")])
    raise ValueError(f"unknown potential family {name!r}")


def format_potential(f: Potential) -> str:
    if isinstance(f, PowPlus):
        return f"pow1:{f.k}"
    if isinstance(f, Riesz):
        return f"riesz:{f.s:g}"
    if isinstance(f, Exp):
        return f"exp:{f.c:g}"
    if isinstance(f, Poly):
        return "poly:" + ",".join(str(c) for c in f.coeffs)
    raise TypeError(f"not a potential: {f!r}")
