"""BPS structures, their wall-crossing automorphisms, and explicit solutions of the
associated Riemann-Hilbert problems in the finite uncoupled case."""

from .errors import BpsError
from .lattice import (
    BpsStructure,
    ClassificationFlags,
    Ray,
    active_rays,
    classify,
    double,
    dt_from_omega,
    make_bps_structure,
    omega_from_dt,
)
from .special import (
    bernoulli,
    lambda_fn,
    log_barnes_g,
    log_gamma,
    polylog_neg,
    stirling_series,
    upsilon_fn,
    upsilon_series,
    zeta_prime_minus_one,
)
from .torus import (
    SectorDomain,
    TorusPoint,
    birational_wall_auto,
    eval_twisted,
    hamiltonian_flow,
    in_domain,
    involution_sigma,
    quadratic_refinement,
)
from .formal import (
    TruncatedAutomorphism,
    TruncatedSeries,
    compose,
    dt_generating,
    factorize,
    kronecker_wallcross,
    ray_automorphism,
    sector_product,
)
from .rh import (
    RhSolution,
    TauEvaluator,
    solve_phi,
    solve_psi,
    tau_asymptotic_coeff,
    tau_eval,
    tau_pde_residual,
    verify_jump,
    verify_limits,
)
from .gw import gw_degenerate_series

__version__ = "0.1.0"

__all__ = [
    "BpsError",
    "BpsStructure",
    "ClassificationFlags",
    "Ray",
    "RhSolution",
    "SectorDomain",
    "TauEvaluator",
    "TorusPoint",
    "TruncatedAutomorphism",
    "TruncatedSeries",
    "active_rays",
    "bernoulli",
    "birational_wall_auto",
    "classify",
    "compose",
    "double",
    "dt_from_omega",
    "dt_generating",
    "eval_twisted",
    "factorize",
    "gw_degenerate_series",
    "hamiltonian_flow",
    "in_domain",
    "involution_sigma",
    "kronecker_wallcross",
    "lambda_fn",
    "log_barnes_g",
    "log_gamma",
    "make_bps_structure",
    "omega_from_dt",
    "polylog_neg",
    "quadratic_refinement",
    "ray_automorphism",
    "sector_product",
    "solve_phi",
    "solve_psi",
    "stirling_series",
    "tau_asymptotic_coeff",
    "tau_eval",
    "tau_pde_residual",
    "upsilon_fn",
    "upsilon_series",
    "verify_jump",
    "verify_limits",
    "zeta_prime_minus_one",
]
