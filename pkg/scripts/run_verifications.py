#!/usr/bin/env python3
"""Run the full verification pipeline end to end and print a summary table.

Each row is a claim about the 24-cell / mixing-family energy landscape that
the library checks, from floating-point reproductions to the exact Sturm
verdicts.  Exits nonzero if any check fails.  The heavy exact sweep can be
trimmed with --quick.
"""

import argparse
import math
import sys
import time

import numpy as np

from cell24 import (
    Exp,
    PowPlus,
    Riesz,
    automorphisms,
    basin_experiment,
    best_theta_vs_d4,
    c_theta,
    d4,
    design_strength,
    disjoint_hexagon_claim,
    energy,
    find_hexagons,
    hex_design,
    proposition_sweep,
    scan_t_max,
    tail_criterion,
    theta_critical_points,
    three_design_roots,
    verify_k3_identity,
)
from cell24.dynamics import d4_hessian_closed_form, hessian_spectrum
from cell24.energy import lemma_genfun_check


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true",
                    help="smaller exact sweep and basin sample")
    ap.add_argument("--seed", type=int, default=20240)
    args = ap.parse_args()

    checks: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        checks.append((name, bool(ok), detail))
        mark = "ok " if ok else "FAIL"
        print(f"[{mark}] {name}" + (f"  ({detail})" if detail else ""))

    t_start = time.time()

    e668 = energy(d4(), Riesz(1.0))
    check("riesz energy of the 24-cell is 668", abs(e668 - 668) < 1e-9,
          f"{e668!r}")

    th8, margin8 = best_theta_vs_d4(PowPlus(8))
    check("(1+t)^8 counterexample", margin8 > 0,
          f"theta*={th8:.9f}, margin={margin8:.4f}")

    the, margine = best_theta_vs_d4(Exp(6.0))
    check("e^(6t) counterexample", margine > 0,
          f"theta*={the:.5f}, margin={margine:.4f}")

    k_hi = 20 if args.quick else 74
    rows = proposition_sweep(0, k_hi)
    positives = sorted(r["k"] for r in rows if r["attains_positive"])
    check(f"exact positivity verdicts for k=0..{k_hi}",
          positives == list(range(8, 14)), f"positives={positives}")

    tail_hi = 100 if args.quick else 200
    check(f"sqrt(7) tail criterion for k=75..{tail_hi}",
          all(tail_criterion(k) for k in range(75, tail_hi + 1)))

    check("k=3 sextic factorization (exact)", verify_k3_identity())

    data = three_design_roots()
    check("3-design angle data", data.same_unordered_pair
          and data.cubic_identity_residual < 1e-8,
          f"sextic roots {tuple(round(r, 5) for r in data.sextic_roots)}")

    s, c = data.sin_cos_pairs[0]
    strengths = {
        "d4": design_strength(d4()).strength,
        "generic mixing code": design_strength(c_theta(1.0)).strength,
        "3-design angle": design_strength(c_theta(math.atan2(s, c))).strength,
        "rotating hexagons": design_strength(hex_design(0.11, 0.57, 0.93)).strength,
    }
    check("design strengths (5 / 2 / 3 / 5)",
          (strengths["d4"], strengths["generic mixing code"],
           strengths["3-design angle"], strengths["rotating hexagons"])
          == (5, 2, 3, 5), str(strengths))

    worst = max(lemma_genfun_check(th, 20)
                for th in np.random.default_rng(1).uniform(0, 2 * math.pi, 5))
    check("power-sum generating function", worst < 1e-10, f"worst {worst:.2e}")

    ok_hess = True
    for f in (Riesz(1.0), PowPlus(6), Exp(6.0)):
        table = d4_hessian_closed_form(f)
        spec = hessian_spectrum(d4(), f)
        closed = np.sort(np.repeat([v for v, _ in table], [m for _, m in table]))
        radius = float(np.max(np.abs(spec.eigenvalues)))
        ok_hess &= bool(np.max(np.abs(closed - spec.eigenvalues)) < 1e-6 * radius)
    check("24-cell Hessian table vs numeric spectrum", ok_hess)

    cps = theta_critical_points(Riesz(1.0))
    sig = sorted({(round(cp.energy, 3), cp.negative_count) for cp in cps})
    check("family critical points (energies and saddle indices)",
          sig == [(668.192, 0), (721.780, 22), (926.322, 36)], str(sig))

    t0, t_args = scan_t_max()
    check("minimal min-distance cosine (sqrt(7)-1)/3",
          abs(t0 - (math.sqrt(7) - 1) / 3) < 1e-6,
          f"t0={t0:.7f} at theta={[round(a, 5) for a in t_args]}")

    check("16 hexagons / 1152 symmetries",
          len(find_hexagons()) == 16 and len(automorphisms(d4())) == 1152)
    check("disjoint hexagon pairs all witnessed", disjoint_hexagon_claim().holds)

    trials = 30 if args.quick else 200
    stats = basin_experiment(Riesz(1.0), trials=trials, seed=args.seed)
    frac = sum(v for k, v in stats.fractions.items()
               if k.startswith("ctheta(E=668.1920"))
    check(f"basin dominance over {trials} seeded descents", frac > 0.8,
          f"fraction {frac:.2f}, counts {stats.counts}")

    print(f"\n{sum(ok for _, ok, _ in checks)}/{len(checks)} checks passed "
          f"in {time.time() - t_start:.1f} s")
    return 0 if all(ok for _, ok, _ in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
