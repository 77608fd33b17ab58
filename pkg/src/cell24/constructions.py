"""Builders for the 24-point code families on S^3.

Covers the D4 root system (the vertices of the regular 24-cell), the
one-parameter mixing family C_theta built from cube roots of unity, the
partition of the 24-cell into four coplanar hexagons, the three-parameter
rotating-hexagon designs, and the finite symmetry combinatorics that
connects them (automorphism groups, order-3 fixed-point-free actions and
the hexagon partitions they induce).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .geometry import Code, DegenerateCodeError, from_complex, gram_matrix

THETA_COLLISION_TOL = 1e-9

# Sixth roots of unity and the primitive cube root r = e^(2 pi i/3).
MU6 = np.exp(1j * np.pi * np.arange(6) / 3)
CUBE_ROOTS = np.exp(2j * np.pi * np.arange(3) / 3)
R3 = np.exp(2j * np.pi / 3)

# Radii of the two complex coordinates in the hexagon coordinates below.
_U = math.sqrt(1.0 / 3.0)
_T = math.sqrt(2.0 / 3.0)


class DegenerateThetaError(ValueError):
    """Mixing angle at which the C_theta construction collapses points."""


@dataclass(frozen=True)
class ThetaParam:
    """Mixing angle in radians, meaningful mod 2*pi.

    Valid when sin(2*theta) != 0 and sin(theta) != cos(theta); at those
    angles the construction produces coincident points.
    """

    theta: float

    @property
    def is_valid(self) -> bool:
        th = self.theta
        return (
            abs(math.sin(2 * th)) > THETA_COLLISION_TOL
            and abs(math.sin(th) - math.cos(th)) > THETA_COLLISION_TOL
        )


def theta_is_valid(theta: float) -> bool:
    return ThetaParam(theta).is_valid


@dataclass(frozen=True, eq=False)
class Hexagon:
    """Six coplanar unit vectors forming a regular hexagon centered at 0.

    Closed under negation; consecutive vertices have inner product 1/2.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (6, 4):
            raise ValueError("a hexagon has six points in R^4")
        g = pts @ pts.T
        for row in range(6):
            vals = np.sort(np.delete(g[row], row))
            if np.max(np.abs(vals - np.array([-1.0, -0.5, -0.5, 0.5, 0.5]))) > 1e-9:
                raise ValueError("not a regular hexagon (inner-product pattern)")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def scaled(self, a: complex) -> np.ndarray:
        """Points with both complex coordinates multiplied by the unit scalar a."""
        if abs(abs(a) - 1.0) > 1e-12:
            raise ValueError("scalar must lie on the unit circle")
        p = self.points
        w1 = (p[:, 0] + 1j * p[:, 1]) * a
        w2 = (p[:, 2] + 1j * p[:, 3]) * a
        return np.stack([w1.real, w1.imag, w2.real, w2.imag], axis=1)


@lru_cache(maxsize=1)
def hexagons() -> tuple[Hexagon, Hexagon, Hexagon, Hexagon]:
    """The four hexagons H0..H3 whose union is the 24-cell.

    In complex coordinates, with u = sqrt(1/3), t = sqrt(2/3), r = e^(2 pi i/3)
    and w running over the sixth roots of unity:

        H0 = {(w, 0)},  H1 = {(u i w, t i w)},
        H2 = {(u i w, r t i w)},  H3 = {(u i w, conj(r) t i w)}.
    """
    h0 = np.array([from_complex(w, 0) for w in MU6])
    h1 = np.array([from_complex(_U * 1j * w, _T * 1j * w) for w in MU6])
    h2 = np.array([from_complex(_U * 1j * w, R3 * _T * 1j * w) for w in MU6])
    h3 = np.array([from_complex(_U * 1j * w, np.conj(R3) * _T * 1j * w) for w in MU6])
    return Hexagon(h0), Hexagon(h1), Hexagon(h2), Hexagon(h3)


def hex_design_units(a0: complex, a1: complex, a2: complex, a3: complex,
                     label: str | None = None) -> Code:
    """The 24-point code a0*H0 u a1*H1 u a2*H2 u a3*H3 for unit scalars a_m."""
    hs = hexagons()
    pts = np.vstack([h.scaled(a) for h, a in zip(hs, (a0, a1, a2, a3))])
    return Code(pts, label=label)


@dataclass(frozen=True)
class HexFamilyAngles:
    """Rotation angles (theta, phi, psi) of hexagons H1, H2, H3.

    Each angle is meaningful mod pi/3 (sixfold symmetry of a hexagon); the
    canonical representative in [0, pi/3) is stored.
    """

    theta: float
    phi: float
    psi: float

    def __post_init__(self):
        period = math.pi / 3
        for name in ("theta", "phi", "psi"):
            v = getattr(self, name) % period
            object.__setattr__(self, name, v)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.theta, self.phi, self.psi)


def hex_design(theta: float, phi: float, psi: float) -> Code:
    """Rotating-hexagon design with a0 = 1 and a_m = i*e^(i*angle).

    hex_design(pi/6, pi/6, pi/6) reproduces the 24-cell.
    """
    a1 = 1j * np.exp(1j * theta)
    a2 = 1j * np.exp(1j * phi)
    a3 = 1j * np.exp(1j * psi)
    return hex_design_units(
        1.0, a1, a2, a3, label=f"hex:{theta:.6g},{phi:.6g},{psi:.6g}"
    )


@lru_cache(maxsize=1)
def d4() -> Code:
    """The D4 root system (vertices of the regular 24-cell) as hex_design_units(1,1,1,1).

    Realizing it from the hexagon coordinates keeps the hexagon bookkeeping
    exact by construction; congruence with the conventional coordinates
    {+-e_i} u {(+-1,+-1,+-1,+-1)/2} is checked in the test suite.
    """
    code = hex_design_units(1.0, 1.0, 1.0, 1.0, label="D4")
    return code


def d4_conventional() -> Code:
    """24-cell in the conventional coordinates {+-e_i} u {(+-1+-1+-1+-1)/2}."""
    pts = []
    for i in range(4):
        for s in (1.0, -1.0):
            v = np.zeros(4)
            v[i] = s
            pts.append(v)
    for signs in np.ndindex(2, 2, 2, 2):
        v = np.array([0.5 if s == 0 else -0.5 for s in signs])
        pts.append(v)
    return Code(np.array(pts), label="D4-conventional")


def c_theta(theta: float | ThetaParam) -> Code:
    """The 24-point code {(z,0), (0,w), (z sin t, w cos t), (z cos t, w sin t)}
    with z, w running over the cube roots of unity.

    Point order: 3 points (z, 0), then 3 points (0, w), then the 9 points
    (z sin, w cos), then the 9 points (z cos, w sin).
    """
    p = theta if isinstance(theta, ThetaParam) else ThetaParam(float(theta))
    if not p.is_valid:
        raise DegenerateThetaError(f"degenerate theta {p.theta!r}")
    s, c = math.sin(p.theta), math.cos(p.theta)
    pts = [from_complex(z, 0) for z in CUBE_ROOTS]
    pts += [from_complex(0, w) for w in CUBE_ROOTS]
    pts += [from_complex(z * s, w * c) for z in CUBE_ROOTS for w in CUBE_ROOTS]
    pts += [from_complex(z * c, w * s) for z in CUBE_ROOTS for w in CUBE_ROOTS]
    return Code(np.array(pts), label=f"ctheta:{p.theta:.9g}")


@dataclass(frozen=True, eq=False)
class Automorphism:
    """An orthogonal map realizing a permutation of the code's points."""

    perm: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "perm", tuple(int(i) for i in self.perm))


def automorphisms(code: Code, tol: float = 1e-9) -> list[Automorphism]:
    """All orthogonal transformations mapping the code onto itself.

    Candidate maps are seeded from images of a linearly independent 4-point
    subset, pruned by Gram compatibility, then verified to permute the whole
    code.  The result is closed under composition (it is the full setwise
    stabilizer in O(4)).
    """
    pts = code.points
    n = len(code)
    g = gram_matrix(code)
    base: list[int] = []
    for i in range(n):
        cand = base + [i]
        if np.linalg.matrix_rank(pts[cand], tol=1e-8) == len(cand):
            base.append(i)
        if len(base) == 4:
            break
    if len(base) < 4:
        raise DegenerateCodeError("degenerate span")
    b_inv = np.linalg.inv(pts[base])
    found: list[Automorphism] = []

    def extend(imgs: list[int]) -> None:
        d = len(imgs)
        if d == 4:
            # images of the base determine the linear map
            m = pts[imgs].T @ b_inv.T
            if np.max(np.abs(m.T @ m - np.eye(4))) > 1e-7:
                return
            mapped = pts @ m.T
            match = mapped @ pts.T
            perm = np.argmax(match, axis=1)
            if np.max(np.abs(match[np.arange(n), perm] - 1.0)) > 1e-7:
                return
            if len(set(perm.tolist())) != n:
                return
            found.append(Automorphism(tuple(perm.tolist()), m))
            return
        row = g[base[d]]
        for c in range(n):
            if all(abs(g[imgs[k], c] - row[base[k]]) <= tol for k in range(d)):
                extend(imgs + [c])

    extend([])
    return found


def compose_perms(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation applying q first, then p."""
    return tuple(p[q[i]] for i in range(len(q)))


@lru_cache(maxsize=1)
def _d4_automorphisms() -> tuple[Automorphism, ...]:
    return tuple(automorphisms(d4()))


@dataclass(frozen=True)
class HexPartition:
    """Partition of the 24-cell's points into four disjoint hexagons.

    Parts are index sets into the point order of d4().
    """

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        cover = set().union(*self.parts)
        if len(self.parts) != 4 or any(len(p) != 6 for p in self.parts) or len(cover) != 24:
            raise ValueError("partition must be four disjoint 6-sets covering 24 points")
        ordered = tuple(sorted(self.parts, key=lambda s: sorted(s)))
        object.__setattr__(self, "parts", ordered)

    def as_index_lists(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


def find_hexagons(code: Code | None = None) -> list[frozenset[int]]:
    """All regular-hexagon 6-subsets of the code, as index sets.

    Seeded from 60-degree neighbor pairs (p, q): the hexagon containing the
    edge p-q is {p, q, q-p} and their negatives, which also guarantees
    coplanarity.  An inner-product pattern alone does not: the 24-cell
    contains negation-closed 6-sets with the hexagon Gram pattern that span
    more than a plane.
    """
    code = code if code is not None else d4()
    pts = code.points
    n = len(code)
    g = gram_matrix(code)

    def index_of(v: np.ndarray) -> int | None:
        d = pts @ v
        j = int(np.argmax(d))
        return j if abs(d[j] - 1.0) <= 1e-9 else None

    neg = {}
    for i in range(n):
        j = index_of(-pts[i])
        if j is None:
            return []  # not negation-closed, no hexagons of this kind
        neg[i] = j

    found: set[frozenset[int]] = set()
    for i in range(n):
        for j in range(n):
            if abs(g[i, j] - 0.5) <= 1e-9:
                k = index_of(pts[j] - pts[i])
                if k is None:
                    continue
                hexa = frozenset([i, j, k, neg[i], neg[j], neg[k]])
                if len(hexa) == 6:
                    found.add(hexa)
    return sorted(found, key=sorted)


def _order3_fixed_point_free(auts) -> list[Automorphism]:
    ident = tuple(range(24))
    out = []
    for a in auts:
        if a.perm == ident:
            continue
        if compose_perms(a.perm, compose_perms(a.perm, a.perm)) != ident:
            continue
        # no eigenvalue 1 on R^4
        if abs(np.linalg.det(a.matrix - np.eye(4))) > 1e-6:
            out.append(a)
    return out


@lru_cache(maxsize=1)
def eisenstein_partitions() -> tuple[HexPartition, ...]:
    """Hexagon partitions of the 24-cell induced by order-3 fixed-point-free
    automorphisms g: the orbits of the group generated by {-I, g}."""
    auts = _d4_automorphisms()
    ident = tuple(range(24))
    neg = None
    for a in auts:
        if np.max(np.abs(a.matrix + np.eye(4))) < 1e-9:
            neg = a.perm
            break
    if neg is None:
        raise RuntimeError("negation is always an automorphism of the 24-cell")
    partitions: set[tuple] = set()
    for a in _order3_fixed_point_free(auts):
        seen = [False] * 24
        parts = []
        for i in range(24):
            if seen[i]:
                continue
            orbit = set()
            stack = [i]
            while stack:
                x = stack.pop()
                if x in orbit:
                    continue
                orbit.add(x)
                stack.append(a.perm[x])
                stack.append(neg[x])
            for x in orbit:
                seen[x] = True
            parts.append(frozenset(orbit))
        partitions.add(HexPartition(tuple(parts)).parts)
    return tuple(sorted((HexPartition(p) for p in partitions),
                        key=lambda hp: hp.as_index_lists()))


@dataclass(frozen=True)
class DisjointHexagonReport:
    """Witness report: every disjoint hexagon pair and a partition containing both."""

    holds: bool
    hexagons: tuple[frozenset[int], ...]
    partitions: tuple[HexPartition, ...]
    pairs: tuple[tuple[int, int, int | None], ...]  # (hex index, hex index, partition index)

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "hexagons": [sorted(h) for h in self.hexagons],
            "partitions": [p.as_index_lists() for p in self.partitions],
            "disjoint_pairs": [
                {"hexagons": [i, j], "witness_partition": w} for i, j, w in self.pairs
            ],
        }


def disjoint_hexagon_claim() -> DisjointHexagonReport:
    """Check that every pair of disjoint hexagons in the 24-cell lies in a
    common induced partition, and report a witness per pair."""
    hexes = tuple(find_hexagons())
    partitions = eisenstein_partitions()
    part_sets = [set(p.parts) for p in partitions]
    pairs = []
    ok = True
    for i, j in combinations(range(len(hexes)), 2):
        if hexes[i] & hexes[j]:
            continue
        witness = None
        for pi, ps in enumerate(part_sets):
            if hexes[i] in ps and hexes[j] in ps:
                witness = pi
                break
        if witness is None:
            ok = False
        pairs.append((i, j, witness))
    return DisjointHexagonReport(ok, hexes, partitions, tuple(pairs))
