"""shockscope: a numerical laboratory for viscous conservation laws.

Evaluates entire Burgers solutions represented by compactly supported
measures, classifies their backward-in-time limits in moving frames,
integrates viscous shock profiles for general convex fluxes, runs a
monotone finite-difference solver, and reproduces the repeated
shock-merger construction with exact log-domain erfc arithmetic.
"""

__version__ = "0.1.0"

from .ancient import (
    FrameLimit,
    WindowFn,
    ancient_report,
    atom_probe,
    classify_frame,
    frame_limit_error,
    shift_field,
    shift_fixed_point,
)
from .entire import (
    EntireSolution,
    appell_residual,
    closed_lebesgue_atom0_u,
    closed_lebesgue_u,
    cole_hopf,
    grid_values,
    poisson_eval,
    psi_gamma,
)
from .flux import (
    Flux,
    ShockProfile,
    burgers_flux,
    convexity_constant,
    flux_from_json,
    flux_to_json,
    oleinik_bound,
    poly_flux,
    rankine_hugoniot,
    shock_profile,
)
from .logreal import LogReal, log_sum
from .measure import (
    Atom,
    Measure,
    Piece,
    SupportGap,
    act_galilean,
    act_scale,
    act_timeshift,
    act_translate,
    combine,
    dirac,
    lebesgue,
    measure_from_json,
    measure_to_json,
    normalize,
    restrict,
    support,
    support_gap,
)
from .merger import (
    MergerSchedule,
    MergerSolution,
    bump_slope,
    bump_value,
    check_long_bounds,
    check_short_bounds,
    default_schedule,
    inter_asymptotic,
    merger_diag,
    merger_u,
    repair_diag,
)
from .solver import (
    Grid,
    ShiftTrace,
    SolverConfig,
    aux_v,
    check_oleinik,
    extract_shift,
    run_advection_diffusion,
    run_conservation,
    shock_error,
)
from .special import dawson, erfc, gauss_integral, heat_kernel, log_erfc
