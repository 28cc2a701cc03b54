"""Heat-kernel renormalized two-body delta interactions on 2D model manifolds.

Bosons with attractive contact interactions on the plane, square torus, round
sphere and hyperbolic plane, made finite through a heat-kernel coupling
prescription.  The package evaluates the renormalized two-boson principal
eigenvalue, solves for bound-state energies, samples eigenvalue flow curves,
carries the exact coupling-constant flow with its beta function, bounds the
n-body ground state, and cross-validates everything against the exactly
solvable one-dimensional problem.
"""

from .errors import (
    BracketingError,
    ExtrapolationError,
    NumericalError,
    QuadratureError,
)
from .manifolds import (
    HeatKernelValue,
    Hyperbolic,
    Line,
    Plane,
    SpectralBasis,
    Sphere,
    Torus,
    cheeger_yau_check,
    dump_spectral_basis_csv,
    heat_kernel,
    heat_trace,
    is_compact,
    kernel_diagonal,
    kernel_diagonal_excess,
    mckean_h2_diagonal,
    semigroup_residual,
    short_time_u1,
    spectral_basis,
    stochastic_completeness_residual,
    volume,
)
from .meanfield2d import (
    CHAIN_GROWTH_RATE,
    PAPER_GROWTH_RATE,
    MeanFieldProblem,
    RadialProfile,
    SobolevConstants,
    TorusProfile,
    aubin_constant,
    gaussian_radial,
    kdq,
    maximize_ratio,
    meanfield_bound,
    meanfield_residual,
    meanfield_sweep,
    profile_integral,
    profile_kinetic,
    saturating_pair_profile,
)
from .onedim import (
    comparison_rows,
    exact_ground_energy,
    hartree_ground_energy,
    hartree_profile,
    meanfield_1d_solve,
    sobolev_1d,
    two_body_phi_1d,
)
from .principal import (
    BoundStateResult,
    PrincipalCurve,
    curves_to_csv,
    divergence_demo,
    divergence_fit,
    domega_de_check,
    flow_curves,
    hyperbolic_estar,
    nbody_upper_bound,
    omega0,
    omega_mode,
    solve_two_body,
    torus_modes,
)
from .renorm import (
    BoundState,
    Coupling,
    bare_coupling,
    beta,
    flow,
    flow_ode,
    scheme_convert,
)

__version__ = "0.1.0"
