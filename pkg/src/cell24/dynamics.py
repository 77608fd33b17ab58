"""Riemannian gradients, Hessians, and descent dynamics on (S^3)^N.

The configuration space is the product of N copies of S^3.  Gradients are
tangent fields (one 4-vector per point, orthogonal to it); the Hessian is
taken along geodesics with respect to a fixed orthonormal tangent basis at
each point, giving a symmetric 3N x 3N matrix.  The energy is the
ordered-pair sum, which is where the factors of 2 below come from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructions import CUBE_ROOTS, c_theta, d4, from_complex, theta_is_valid
from .energy import energy, energy_theta_dtheta, scan_theta
from .geometry import Code, spectrum_distance
from .potentials import Potential, PotentialDomainError

TWO_PI = 2.0 * math.pi


def tangent_basis(code: Code) -> np.ndarray:
    """(N, 3, 4) array: for each point, three orthonormal vectors spanning
    the tangent space of S^3 there.

    Deterministic: the three standard basis vectors with the largest
    residual against the point are Gram-Schmidt orthogonalized (ties broken
    by index), so Hessian coordinates are reproducible across runs.
    """
    pts = code.points
    n = len(code)
    out = np.zeros((n, 3, 4))
    for i in range(n):
        x = pts[i]
        order = sorted(range(4), key=lambda a: (-(1.0 - x[a] ** 2), a))
        basis = []
        for a in order[:3]:
            v = np.zeros(4)
            v[a] = 1.0
            v -= (v @ x) * x
            for b in basis:
                v -= (v @ b) * b
            v /= np.linalg.norm(v)
            basis.append(v)
        out[i] = np.array(basis)
    return out


def _pair_data(code: Code, f: Potential, order: int) -> np.ndarray:
    """Matrix of f^(order)(t_ij) with zeroed diagonal."""
    g = code.points @ code.points.T
    np.fill_diagonal(g, -1.0)  # harmless placeholder inside every domain
    vals = f.eval(g, order)
    np.fill_diagonal(vals, 0.0)
    return vals


def riemannian_gradient(code: Code, f: Potential) -> np.ndarray:
    """(N, 4) tangent field: g_i is the projection onto the tangent space at
    x_i of 2 sum_j f'(t_ij) x_j (the 2 from the ordered-pair energy)."""
    pts = code.points
    fp = _pair_data(code, f, 1)
    w = 2.0 * (fp @ pts)
    w -= np.sum(w * pts, axis=1)[:, None] * pts
    return w


def gradient_norm(code: Code, f: Potential) -> float:
    return float(np.linalg.norm(riemannian_gradient(code, f)))


def riemannian_hessian(code: Code, f: Potential,
                       basis: np.ndarray | None = None) -> np.ndarray:
    """Symmetric 3N x 3N geodesic Hessian of the energy.

    Off-diagonal blocks (i != j):
        H[(i,a),(j,b)] = 2 [ f''(t_ij) (e_ia . x_j)(e_jb . x_i)
                             + f'(t_ij) (e_ia . e_jb) ]
    Diagonal blocks:
        H[(i,a),(i,b)] = 2 sum_{j != i} [ f''(t_ij)(e_ia . x_j)(e_ib . x_j)
                                          - delta_ab t_ij f'(t_ij) ]
    """
    pts = code.points
    n = len(code)
    if basis is None:
        basis = tangent_basis(code)
    g = pts @ pts.T
    fp = _pair_data(code, f, 1)
    fpp = _pair_data(code, f, 2)
    # A[i, a, j] = e_ia . x_j
    a_mat = np.einsum("iad,jd->iaj", basis, pts)
    # off-diagonal blocks (f' and f'' vanish on the zeroed diagonal)
    h = 2.0 * (
        np.einsum("ij,iaj,jbi->iajb", fpp, a_mat, a_mat)
        + np.einsum("ij,iad,jbd->iajb", fp, basis, basis)
    )
    # diagonal blocks
    for i in range(n):
        h[i, :, i, :] = 2.0 * (
            np.einsum("j,aj,bj->ab", fpp[i], a_mat[i], a_mat[i])
            - np.eye(3) * float(np.sum(g[i] * fp[i]))
        )
    h = h.reshape(3 * n, 3 * n)
    return 0.5 * (h + h.T)


def jacobi_eigh(h: np.ndarray, tol_factor: float = 1e-13,
                max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Dimension here is at most 72, so robustness beats speed; the sweep
    stops when every off-diagonal entry is below tol_factor * ||H||_F.
    """
    a = np.array(h, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    thresh = tol_factor * np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = np.max(np.abs(a - np.diag(np.diag(a)))) if n > 1 else 0.0
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp, rq = a[p].copy(), a[q].copy()
                a[p], a[q] = c * rp - s * rq, s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * cp - s * cq, s * cp + c * cq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    w = np.diag(a).copy()
    idx = np.argsort(w)
    return w[idx], v[:, idx]


@dataclass(frozen=True)
class HessianSpectrum:
    """Eigenvalues of the configuration Hessian with zero/negative counts.

    zero_tol is absolute, derived from the stated relative tolerance times
    the spectral radius.
    """

    eigenvalues: np.ndarray
    zero_tol: float
    negative_count: int
    zero_count: int

    @property
    def positive_count(self) -> int:
        return len(self.eigenvalues) - self.negative_count - self.zero_count

    def clustered(self, tol: float = 1e-6) -> list[tuple[float, int]]:
        out: list[tuple[float, int]] = []
        scale = max(1.0, float(np.max(np.abs(self.eigenvalues))))
        for lam in self.eigenvalues:
            if out and abs(lam - out[-1][0]) <= tol * scale:
                val, m = out[-1]
                out[-1] = ((val * m + lam) / (m + 1), m + 1)
            else:
                out.append((float(lam), 1))
        return out

    def to_csv(self) -> str:
        return "eigenvalue\n" + "\n".join(f"{x!r}" for x in self.eigenvalues) + "\n"


def hessian_spectrum(code: Code, f: Potential,
                     zero_tol_rel: float = 1e-6) -> HessianSpectrum:
    h = riemannian_hessian(code, f)
    w, _ = jacobi_eigh(h)
    radius = float(np.max(np.abs(w))) if len(w) else 0.0
    ztol = zero_tol_rel * radius
    zero = int(np.sum(np.abs(w) < ztol))
    neg = int(np.sum(w <= -ztol))
    return HessianSpectrum(w, ztol, neg, zero)


def d4_hessian_closed_form(f: Potential) -> list[tuple[float, int]]:
    """Closed-form eigenvalues of the 24-cell's 72 x 72 energy Hessian.

    Eight eigenvalues: 0 (from the O(4) action) and seven combinations of
    f' and f'' at the inner products {1/2, 0, -1/2, -1}, with
    multiplicities 6, 9, 16, 8, 12, 4, 9, 8 summing to 72.  The eigenspaces
    do not depend on the potential; only these values do.
    """
    fp = {v: float(f.eval(v, 1)) for v in (0.5, 0.0, -0.5, -1.0)}
    fpp = {v: float(f.eval(v, 2)) for v in (0.5, 0.0, -0.5)}
    return [
        (0.0, 6),
        (2 * fpp[0.5] + 8 * fpp[0.0] + 2 * fpp[-0.5]
         - 12 * fp[0.5] + 12 * fp[-0.5], 9),
        (2 * fpp[0.5] + 4 * fpp[0.0] + 6 * fpp[-0.5]
         - 8 * fp[0.5] - 4 * fp[0.0] + 8 * fp[-0.5] + 4 * fp[-1.0], 16),
        (5 * fpp[0.5] + 4 * fpp[0.0] + 3 * fpp[-0.5]
         - 14 * fp[0.5] + 8 * fp[0.0] + 2 * fp[-0.5] + 4 * fp[-1.0], 8),
        (6 * fpp[0.5] + 6 * fpp[-0.5] - 12 * fp[0.5] + 12 * fp[-0.5], 12),
        (2 * fpp[0.5] + 4 * fpp[0.0] + 6 * fpp[-0.5]
         + 4 * fp[0.5] + 8 * fp[0.0] + 20 * fp[-0.5] + 4 * fp[-1.0], 4),
        (6 * fpp[0.5] + 8 * fpp[0.0] + 6 * fpp[-0.5]
         - 4 * fp[0.5] + 4 * fp[-0.5], 9),
        (8 * fpp[0.5] + 4 * fpp[0.0]
         - 8 * fp[0.5] - 4 * fp[0.0] + 8 * fp[-0.5] + 4 * fp[-1.0], 8),
    ]


# ---------------------------------------------------------------------------
# descent
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DescentOptions:
    initial_step: float = 1e-3
    backtrack: float = 0.5
    grow: float = 1.3
    armijo: float = 1e-4
    gtol: float = 1e-10
    max_iters: int = 50_000
    track_energies: bool = False


@dataclass(frozen=True)
class DescentResult:
    code: Code
    energy: float
    iterations: int
    grad_norm: float
    stop_reason: str  # "converged" | "max_iters" | "stalled"
    label: str | None = None
    energies: tuple[float, ...] | None = None


def _energy_or_none(pts: np.ndarray, f: Potential) -> float | None:
    g = pts @ pts.T
    vals = g[~np.eye(len(pts), dtype=bool)]
    try:
        return float(np.sum(f.eval(vals, 0)))
    except PotentialDomainError:
        return None


def descend(start: Code, f: Potential,
            opts: DescentOptions = DescentOptions()) -> DescentResult:
    """Projected gradient descent with Armijo backtracking.

    Each step moves every point along its negative tangent gradient and
    renormalizes to S^3; a step is accepted when it decreases the energy by
    at least armijo * step * |g|^2, so the energy sequence is
    non-increasing.  Domain violations (point collisions under an inverse
    potential) reject the step like any failed decrease.
    """
    pts = start.points.copy()
    e = _energy_or_none(pts, f)
    if e is None:
        raise PotentialDomainError("starting code outside the potential's domain")
    step = opts.initial_step
    history = [e] if opts.track_energies else None
    w = riemannian_gradient(Code(pts), f)
    it = 0
    reason = "max_iters"
    for it in range(opts.max_iters):
        g2 = float(np.sum(w * w))
        if math.sqrt(g2) < opts.gtol:
            reason = "converged"
            break
        accepted = False
        while step >= 1e-18:
            cand = pts - step * w
            cand /= np.linalg.norm(cand, axis=1)[:, None]
            e_new = _energy_or_none(cand, f)
            if e_new is not None and e_new <= e - opts.armijo * step * g2:
                pts, e = cand, e_new
                w = riemannian_gradient(Code(pts), f)
                step *= opts.grow
                accepted = True
                break
            step *= opts.backtrack
        if history is not None:
            history.append(e)
        if not accepted:
            reason = "stalled"
            break
    final = Code(pts, label=start.label)
    return DescentResult(
        final, e, it, gradient_norm(final, f), reason,
        energies=tuple(history) if history is not None else None,
    )


def classify(code: Code, refs: list[tuple[str, Code]], tol: float = 1e-3) -> str:
    """Label of the first reference whose inner-product spectrum is within
    tol of the code's; "other" when none matches."""
    if not refs:
        raise ValueError("refs must be nonempty")
    for label, ref in refs:
        if spectrum_distance(code, ref) < tol:
            return label
    return "other"


@dataclass(frozen=True)
class BasinStatistics:
    trials: int
    seed: int
    counts: dict
    fractions: dict
    final_energies: tuple[float, ...]
    classify_tol: float

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "counts": self.counts,
            "fractions": self.fractions,
            "final_energies": list(self.final_energies),
            "classify_tol": self.classify_tol,
        }


def default_references(f: Potential) -> list[tuple[str, Code]]:
    """The 24-cell plus one representative per distinct-energy local minimum
    of the mixing family under f (mirror copies are congruent and dropped)."""
    refs: list[tuple[str, Code]] = [("D4", d4())]
    scan = scan_theta(f, grid_points=4000, refine_tol=1e-10)
    for m in sorted(scan.minima, key=lambda m: m.energy):
        code = c_theta(m.theta)
        if all(spectrum_distance(code, r) > 1e-6 for _, r in refs):
            refs.append((f"ctheta(E={m.energy:.4f})", code))
    return refs


def basin_experiment(f: Potential, trials: int, seed: int,
                     opts: DescentOptions | None = None,
                     refs: list[tuple[str, Code]] | None = None,
                     classify_tol: float = 1e-3,
                     threads: int = 1) -> BasinStatistics:
    """Run descents from seeded uniform random 24-point starts and bucket
    the outcomes by spectrum against the reference codes.

    Per-trial seeds are spawned from the master seed, so results do not
    depend on scheduling or thread count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if opts is None:
        opts = DescentOptions(gtol=1e-7, max_iters=20_000)
    if refs is None:
        refs = default_references(f)
    child_seeds = np.random.SeedSequence(seed).spawn(trials)

    def run(i: int) -> tuple[str, float]:
        rng = np.random.default_rng(child_seeds[i])
        pts = rng.standard_normal((24, 4))
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        res = descend(Code(pts), f, opts)
        return classify(res.code, refs, classify_tol), res.energy

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(run, range(trials)))
    else:
        results = [run(i) for i in range(trials)]
    counts: dict[str, int] = {}
    for label, _ in results:
        counts[label] = counts.get(label, 0) + 1
    fractions = {k: v / trials for k, v in counts.items()}
    return BasinStatistics(
        trials, seed, counts, fractions,
        tuple(e for _, e in results), classify_tol,
    )


# ---------------------------------------------------------------------------
# critical points of the mixing family
# ---------------------------------------------------------------------------

# poles/degeneracies of the family in [0, 2 pi): multiples of pi/2 and
# the two angles with sin = cos
_THETA_EXCLUDED = tuple(
    [j * math.pi / 2 for j in range(4)] + [math.pi / 4, math.pi / 4 + math.pi]
)


def _interval_contains_excluded(a: float, b: float) -> bool:
    return any(a < p < b for p in _THETA_EXCLUDED)


@dataclass(frozen=True)
class ThetaCriticalPoint:
    theta: float
    energy: float
    negative_count: int
    zero_count: int
    grad_norm: float
    kind: str  # "min" | "max" in theta

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "energy": self.energy,
            "negative_count": self.negative_count,
            "zero_count": self.zero_count,
            "grad_norm": self.grad_norm,
            "kind": self.kind,
        }


def theta_critical_points(f: Potential, grid_points: int = 10_000,
                          tol: float = 1e-10,
                          zero_tol_rel: float = 1e-6) -> list[ThetaCriticalPoint]:
    """All zeros of d/dtheta of the family energy on [0, 2 pi), each with the
    full 72 x 72 configuration-Hessian eigenvalue counts at that code.

    Sign changes straddling a degenerate angle are discarded: there the
    derivative flips sign through a pole rather than a critical point.
    """
    n = grid_points
    ths, ders = [], []
    for j in range(n + 1):
        th = TWO_PI * j / n
        if theta_is_valid(th):
            ths.append(th)
            ders.append(energy_theta_dtheta(th, f))
    crits = []
    for (a, da), (b, db) in zip(zip(ths, ders), zip(ths[1:], ders[1:])):
        if da == 0.0:
            crits.append(a)
            continue
        if da * db < 0 and not _interval_contains_excluded(a, b):
            lo, hi, dlo = a, b, da
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                dm = energy_theta_dtheta(mid, f)
                if dm == 0.0:
                    lo = hi = mid
                    break
                if (dm > 0) == (dlo > 0):
                    lo, dlo = mid, dm
                else:
                    hi = mid
            crits.append(0.5 * (lo + hi))
    out = []
    h = 1e-6
    for th in crits:
        code = c_theta(th)
        spec = hessian_spectrum(code, f, zero_tol_rel)
        second = (energy_theta_dtheta(th + h, f) - energy_theta_dtheta(th - h, f)) / (2 * h)
        out.append(
            ThetaCriticalPoint(
                th % TWO_PI,
                energy(code, f),
                spec.negative_count,
                spec.zero_count,
                gradient_norm(code, f),
                "min" if second > 0 else "max",
            )
        )
    return sorted(out, key=lambda cp: cp.theta)


def c_theta_velocity(theta: float) -> np.ndarray:
    """(24, 4) derivative of the C_theta point coordinates in theta, in the
    fixed point order of c_theta()."""
    s, c = math.sin(theta), math.cos(theta)
    rows = [from_complex(0, 0) for _ in range(6)]
    rows += [from_complex(z * c, -w * s) for z in CUBE_ROOTS for w in CUBE_ROOTS]
    rows += [from_complex(-z * s, w * c) for z in CUBE_ROOTS for w in CUBE_ROOTS]
    return np.array(rows)


def rotation_fields(code: Code) -> np.ndarray:
    """(6, N, 4) tangent fields generated by a basis of the antisymmetric
    4 x 4 matrices (the rotation Lie algebra acting on the code)."""
    pts = code.points
    fields = []
    for i in range(4):
        for j in range(i + 1, 4):
            a = np.zeros((4, 4))
            a[i, j], a[j, i] = 1.0, -1.0
            fields.append(pts @ a.T)
    return np.array(fields)


def family_gradient_residual(theta: float, f: Potential) -> float:
    """Relative norm of the energy gradient at C_theta outside the span of
    the family velocity field and the six rotation fields.

    Zero (to rounding) for every valid angle and smooth potential: the
    full-configuration gradient points along the family.  Reported as 0
    when the gradient itself is negligible.
    """
    code = c_theta(theta)
    g = riemannian_gradient(code, f).ravel()
    gn = float(np.linalg.norm(g))
    if gn < 1e-6:  # critical point: the ratio would be pure rounding noise
        return 0.0
    span = [c_theta_velocity(theta).ravel()]
    span += [fld.ravel() for fld in rotation_fields(code)]
    a = np.array(span).T  # 96 x 7
    coef, *_ = np.linalg.lstsq(a, g, rcond=None)
    res = g - a @ coef
    return float(np.linalg.norm(res) / gn)


def family_distance(code: Code, grid_points: int = 2000) -> float:
    """Distance from the code to the mixing family: the minimum over theta of
    the spectrum distance to C_theta (grid plus golden refinement)."""
    best_th, best = None, math.inf
    for j in range(grid_points):
        th = TWO_PI * j / grid_points
        if not theta_is_valid(th):
            continue
        dist = spectrum_distance(code, c_theta(th))
        if dist < best:
            best, best_th = dist, th
    from .energy import _golden_min

    span = TWO_PI / grid_points
    th = _golden_min(
        lambda t: spectrum_distance(code, c_theta(t % TWO_PI))
        if theta_is_valid(t % TWO_PI) else math.inf,
        best_th - span, best_th + span, 1e-10,
    )
    return min(best, spectrum_distance(code, c_theta(th % TWO_PI)))
