"""Energy computations, design checks, and exact verifications for 24-point
spherical codes on S^3: the D4 root system (24-cell), the one-parameter
mixing family that beats it for some potentials, and the three-parameter
rotating-hexagon designs."""

__version__ = "0.1.0"

from .geometry import (
    Code,
    GramSpectrum,
    gram_matrix,
    hopf_project,
    inner_product_multiset,
    random_code,
    spectrum_distance,
    t_max,
)
from .potentials import Exp, Poly, Potential, PowPlus, Riesz, parse_potential
from .constructions import (
    Automorphism,
    HexFamilyAngles,
    Hexagon,
    HexPartition,
    ThetaParam,
    automorphisms,
    c_theta,
    d4,
    disjoint_hexagon_claim,
    eisenstein_partitions,
    find_hexagons,
    hex_design,
    hex_design_units,
    hexagons,
)
from .energy import (
    ThetaScanResult,
    best_theta_vs_d4,
    energy,
    energy_d4_closed,
    energy_theta_closed,
    hexpair_energy,
    lemma_genfun_check,
    lemma_sum,
    scan_t_max,
    scan_theta,
    within_hexagon_energy,
)
from .designs import (
    DesignReport,
    c_theta_cubic_invariant,
    design_defect,
    design_strength,
    gegenbauer_s3,
)
from .exact import (
    BigRat,
    Q7,
    RatFn,
    RatPoly,
    attains_positive,
    energy_diff_rational,
    proposition_check,
    proposition_sweep,
    refine_root,
    sturm_real_roots,
    tail_criterion,
    three_design_roots,
    verify_k3_identity,
)
from .dynamics import (
    BasinStatistics,
    DescentOptions,
    DescentResult,
    HessianSpectrum,
    basin_experiment,
    classify,
    d4_hessian_closed_form,
    descend,
    family_gradient_residual,
    hessian_spectrum,
    riemannian_gradient,
    riemannian_hessian,
    tangent_basis,
    theta_critical_points,
)
