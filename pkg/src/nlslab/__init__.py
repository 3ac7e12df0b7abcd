"""Numerical laboratory for blow-up and scattering thresholds of focusing NLS."""

from .constants import (SharpConstants, gn_constant, interpolation_constant,
                        plateau_constant_D, sobolev_best_constant,
                        sobolev_W_quantities)
from .criteria import (CriterionRecord, CriterionReport, ParticleReduction,
                       Verdict, VerdictKind, barrier, classify, classify_data,
                       collapse_conditions, collapse_merged, dichotomy_classify,
                       gaussian_blowup_thresholds, gaussian_energy_threshold_roots,
                       gaussian_me_roots, gaussian_zero_energy_threshold,
                       interpolation_blowup_check, mass_energy, negative_energy_check,
                       particle_reduction, real_data_crossover, renorm_lp1,
                       signed_barrier, subthreshold_classify,
                       uncertainty_blowup_check, virial_curvature_threshold)
from .errors import (ConsistencyError, GridResolutionWarning, InstabilityError,
                     NonConvergenceError, NotApplicableError, OutOfRegimeError)
from .functionals import (FieldGrid, Functionals, InitialData, ParamsContext,
                          build_context, gaussian_functionals, gn_uncertainty_gap,
                          grid_functionals, ground_state_functionals,
                          initial_functionals, modulate_quadratic_phase,
                          uncertainty_gap)
from .gammafn import beta_fn, gamma_fn, sphere_surface
from .groundstate import (GroundStateData, energy_critical_ground_state,
                          shoot_ground_state, soliton_closed_form)
from .params import EquationParams, critical_exponent, make_params
from .solver import (EvolutionOutcome, SolverConfig, Trajectory, detect_blowup,
                     evolve, verify_verdict, virial_residual)

__version__ = "0.1.0"
