"""Points and codes on the unit sphere S^3 in R^4.

Coordinate convention used throughout the package: a point
(x0, x1, x2, x3) in R^4 is identified with the pair of complex numbers
(w1, w2) = (x0 + i*x1, x2 + i*x3), so that S^3 is the set of (w1, w2)
with |w1|^2 + |w2|^2 = 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12
COLLISION_TOL = 1e-9
DEFAULT_CLUSTER_TOL = 1e-9


class DegenerateCodeError(ValueError):
    """Raised when an operation needs more structure than the code has."""


def unit_vector(x0: float, x1: float, x2: float, x3: float) -> np.ndarray:
    """Normalize the 4-vector (x0, x1, x2, x3) to unit length."""
    v = np.array([x0, x1, x2, x3], dtype=float)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def from_complex(w1: complex, w2: complex) -> np.ndarray:
    return np.array([w1.real, w1.imag, w2.real, w2.imag], dtype=float)


@dataclass(frozen=True, eq=False)
class Code:
    """An ordered list of unit vectors on S^3.

    Points are stored as the rows of an (N, 4) float array.  The ordering
    is significant (gradients and Hessians index into it); all energy and
    spectrum operations are order-invariant.
    """

    points: np.ndarray
    label: str | None = None

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 4:
            raise ValueError(f"points must be an (N, 4) array, got {pts.shape}")
        norms = np.linalg.norm(pts, axis=1)
        if pts.shape[0] and np.max(np.abs(norms - 1.0)) > UNIT_TOL:
            raise ValueError("points must be unit vectors within 1e-12")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points, label: str | None = None,
                    normalize: bool = False) -> "Code":
        pts = np.asarray(points, dtype=float)
        if normalize:
            pts = pts / np.linalg.norm(pts, axis=1)[:, None]
        return cls(pts, label)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def complex_view(self) -> np.ndarray:
        """(N, 2) complex array (w1, w2) per the module convention."""
        p = self.points
        return np.stack([p[:, 0] + 1j * p[:, 1], p[:, 2] + 1j * p[:, 3]], axis=1)

    def is_valid(self, collision_tol: float = COLLISION_TOL) -> bool:
        """True if no two points have inner product above 1 - collision_tol."""
        if len(self) < 2:
            return True
        g = gram_matrix(self)
        off = g[~np.eye(len(self), dtype=bool)]
        return bool(np.max(off) < 1.0 - collision_tol)

    def to_json(self) -> str:
        return json.dumps(
            {"label": self.label, "points": [list(row) for row in self.points]}
        )

    @classmethod
    def from_json(cls, text: str) -> "Code":
        obj = json.loads(text)
        return cls(np.array(obj["points"], dtype=float), obj.get("label"))


@dataclass(frozen=True)
class GramSpectrum:
    """Clustered multiset of off-diagonal inner products of a code.

    Entries are (value, multiplicity) pairs sorted by value; multiplicities
    count ordered pairs, so they sum to N(N-1).  The ambiguous flag is set
    when two cluster means are closer than twice the clustering tolerance.
    """

    entries: tuple[tuple[float, int], ...]
    cluster_tol: float
    ambiguous: bool = False

    @property
    def values(self) -> list[float]:
        return [v for v, _ in self.entries]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.entries]

    def max_value(self) -> float:
        return self.entries[-1][0]

    def to_csv(self) -> str:
        lines = ["value,multiplicity"]
        lines += [f"{v!r},{m}" for v, m in self.entries]
        return "\n".join(lines) + "\n"


def gram_matrix(code: Code) -> np.ndarray:
    """N x N matrix of pairwise inner products (symmetric, unit diagonal)."""
    if len(code) == 0:
        raise DegenerateCodeError("empty code")
    return code.points @ code.points.T


def off_diagonal_products(code: Code) -> np.ndarray:
    """Flat array of the N(N-1) inner products over ordered pairs c != c'."""
    n = len(code)
    g = gram_matrix(code)
    return g[~np.eye(n, dtype=bool)]


def t_max(code: Code) -> float:
    """Largest inner product between distinct points (cosine of min distance)."""
    if len(code) < 2:
        raise DegenerateCodeError("degenerate code")
    return float(np.max(off_diagonal_products(code)))


def inner_product_multiset(code: Code,
                           cluster_tol: float = DEFAULT_CLUSTER_TOL) -> GramSpectrum:
    """Cluster the off-diagonal inner products into (value, multiplicity) pairs.

    Values within cluster_tol of their neighbor join the same cluster; each
    cluster is reported by its mean.
    """
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    vals = np.sort(off_diagonal_products(code))
    entries: list[tuple[float, int]] = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > cluster_tol:
            chunk = vals[start:i]
            entries.append((float(np.mean(chunk)), len(chunk)))
            start = i
    ambiguous = any(
        b - a < 2 * cluster_tol for (a, _), (b, _) in zip(entries, entries[1:])
    )
    return GramSpectrum(tuple(entries), cluster_tol, ambiguous)


def hopf_project(code: Code) -> np.ndarray:
    """Image of the code on S^2 under the Hopf map.

    Each point (w1, w2) maps to the ratio z = w1/w2 in C u {inf} and then
    stereographically to the unit 2-sphere centered at the origin, with
    z = x+iy -> (2x, 2y, |z|^2 - 1)/(|z|^2 + 1) and inf -> (0, 0, 1).
    For unit (w1, w2) this is (2 Re(w1 conj(w2)), 2 Im(w1 conj(w2)),
    |w1|^2 - |w2|^2), which needs no division.
    """
    w = code.complex_view
    cross = w[:, 0] * np.conj(w[:, 1])
    out = np.stack(
        [2 * cross.real, 2 * cross.imag, np.abs(w[:, 0]) ** 2 - np.abs(w[:, 1]) ** 2],
        axis=1,
    )
    return out


def random_code(n: int, seed: int) -> Code:
    """n points drawn independently and uniformly on S^3; deterministic in seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n, 4))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    return Code(pts, label=f"random:{n}:{seed}")


def spectrum_distance(a: Code, b: Code) -> float:
    """L-infinity distance between the sorted inner-product multisets.

    Zero on congruent (rotated/reflected) codes; a pseudometric on codes of
    equal size.
    """
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    sa = np.sort(off_diagonal_products(a))
    sb = np.sort(off_diagonal_products(b))
    if sa.size == 0:
        return 0.0
    return float(np.max(np.abs(sa - sb)))
