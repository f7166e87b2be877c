"""Resonant-state expansion of quantum tunneling decay.

A particle initially confined by an s-wave delta-shell potential
V(r) = lambda delta(r - a) decays by tunneling.  Expanding the evolving
wavefunction over the full set of resonant states (fourth-quadrant
poles and their third-quadrant mirrors) together with transient
functions yields an exact, square-integrable solution whose integrated
probability density stays unity at every time, unlike the single-pole
Gamow solution that grows exponentially with distance.

Natural units hbar = 2m = 1 throughout: wavenumbers carry 1/length,
energies 1/length^2, times length^2.
"""

from .errors import (
    BasinJumpError,
    ConfigError,
    DecompositionUnavailableError,
    DegenerateStateError,
    DomainError,
    FaddeyevaOverflowError,
    QuadratureError,
    ResdecayError,
    SolverError,
)
from .pole_solver import (
    Pole,
    PotentialSpec,
    initial_guess,
    mirror_pole,
    pole_equation,
    pole_equation_prime,
    residual_floor,
    solve_poles,
)
from .resonant_states import (
    ExpansionCoefficients,
    InitialState,
    ResonantState,
    expansion_coefficients,
    eval_state,
    eval_state_grid,
    normalize_state,
    overlap_coefficient,
    sum_rule_check,
)
from .special_functions import (
    TransientArgument,
    faddeyeva,
    flip_argument,
    transient_argument,
    transient_m,
    transient_m_asymptotic,
    transient_m_values,
)
from .wavefunction import (
    DecaySolution,
    build_solution,
    psi_asymptotic,
    psi_external,
    psi_external_decomposed,
    psi_external_grid,
    psi_gamow,
    psi_internal,
    psi_internal_decomposed,
    psi_internal_grid,
)
from .observables import (
    DensitySnapshot,
    QuadratureConfig,
    SurvivalResult,
    external_tail_estimate,
    flux_conservation_scan,
    integrate_external,
    integrate_internal,
    survival_amplitude,
    unitarity_check,
    wavefront_positions,
)

__version__ = "0.1.0"
