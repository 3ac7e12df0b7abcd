"""Classification of initial data: every explicit blow-up / scattering criterion.

The verdict logic follows the finite-variance theory: the sub-threshold
dichotomy, the above-threshold virial dichotomy gated by the combined
mass-energy condition, the potential-well (uncertainty-principle) blow-up
criterion, and its sharp-interpolation refinement.  All recorded inequality
sides are scale-invariant under u -> lambda^(2/(p-1)) u(lambda x).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from scipy.optimize import minimize_scalar

from .constants import interpolation_constant
from .errors import NonConvergenceError, NotApplicableError, OutOfRegimeError
from .functionals import (Functionals, InitialData, ParamsContext,
                          gaussian_moments, initial_functionals)
from .gammafn import gamma_fn, sphere_surface
from .params import EquationParams
from .rootfind import grow_bracket, solve_bracketed

_RADICAND_SLACK = -1e-12


class VerdictKind(enum.Enum):
    BLOWS_UP_FORWARD = "blows_up_forward"
    BOUNDED_LP1_FORWARD = "bounded_lp1_forward"
    SCATTERS_FORWARD = "scatters_forward"
    SCATTERS_BOTH_DIRECTIONS = "scatters_both_directions"
    BLOWS_UP_BOTH_DIRECTIONS = "blows_up_both_directions"
    UNKNOWN = "unknown"


_VERDICT_STRENGTH = {
    VerdictKind.BLOWS_UP_BOTH_DIRECTIONS: 5,
    VerdictKind.SCATTERS_BOTH_DIRECTIONS: 4,
    VerdictKind.BLOWS_UP_FORWARD: 3,
    VerdictKind.SCATTERS_FORWARD: 2,
    VerdictKind.BOUNDED_LP1_FORWARD: 2,
    VerdictKind.UNKNOWN: 0,
}

_RADIAL_CAVEAT = ("scattering at the critical index in dimensions 3 and 4 "
                  "requires radial data")


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    caveats: tuple = ()
    bound: float | None = None  # L^{p+1} comparison level carried by bounded verdicts

    def __str__(self):
        return self.kind.value


@dataclass(frozen=True)
class CriterionRecord:
    """One fired criterion with its evaluated, scale-invariant sides."""

    ident: str
    lhs: float
    rhs: float
    op: str

    def holds(self) -> bool:
        return {"<": self.lhs < self.rhs,
                "<=": self.lhs <= self.rhs,
                ">": self.lhs > self.rhs,
                ">=": self.lhs >= self.rhs}[self.op]

    def to_dict(self) -> dict:
        return {"id": self.ident, "lhs": self.lhs, "rhs": self.rhs, "op": self.op}


@dataclass(frozen=True)
class CriterionReport:
    verdict: Verdict
    fired: tuple
    mass_energy: float | None
    renorm_lp1: float | None
    sigma_m: float | None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.kind.value,
            "caveats": list(self.verdict.caveats),
            "bound": self.verdict.bound,
            "fired": [rec.to_dict() for rec in self.fired],
            "mass_energy": self.mass_energy,
            "renorm_lp1": self.renorm_lp1,
            "sigma_m": self.sigma_m,
        }


@dataclass(frozen=True)
class ParticleReduction:
    """Exponents and scales of the variance-to-particle reduction."""

    k: float
    alpha_sub: float
    gamma_exp: float
    delta_exp: float
    omega: float
    U_max: float
    B_max: float
    a_rate: float
    V_max: float


def particle_reduction(params: EquationParams, C_pN: float,
                       f: Functionals) -> ParticleReduction:
    np1 = params.N * (params.p - 1.0)
    gamma_exp = (np1 - 4.0) / (np1 + 4.0)
    delta_exp = (np1 - 12.0) / (np1 + 4.0)
    omega = 64.0 / (np1 * (np1 + 4.0))
    u_max = 1.0 / (delta_exp + 1.0) - 1.0 / (gamma_exp + 1.0)
    m, e = f.mass, f.energy
    if e > 0.0:
        b_max = (params.N * params.s_c * m * m / (4.0 * e)) ** ((np1 + 4.0) / 8.0)
        a_rate = 8.0 * math.sqrt(2.0 / (params.N * params.s_c)) * e / m
        v_max = ((params.s_c * (params.p - 1.0) / (2.0 * (params.p + 1.0))) ** (4.0 / np1)
                 * m ** (1.0 + 2.0 * (params.p + 1.0) / np1)
                 / (C_pN ** (2.0 + 4.0 * (params.p + 1.0) / np1) * e ** (4.0 / np1)))
    else:
        b_max = a_rate = v_max = math.nan
    return ParticleReduction(k=params.k, alpha_sub=params.k / 2.0,
                             gamma_exp=gamma_exp, delta_exp=delta_exp,
                             omega=omega, U_max=u_max, B_max=b_max,
                             a_rate=a_rate, V_max=v_max)


# ---------------------------------------------------------------------------
# barrier functions of the potential-well reduction


def barrier(x: float, k: float) -> float:
    """sqrt(1/(k x^k) + x - (1 + 1/k)); vanishes at x = 1, positive elsewhere."""
    if not (x > 0.0 and k > 0.0):
        raise ValueError("barrier needs x > 0 and k > 0")
    expo = -math.log(k) - k * math.log(x)
    lead = math.inf if expo > 709.0 else math.exp(expo)
    radicand = lead + x - (1.0 + 1.0 / k)
    if radicand < 0.0:
        if radicand < _RADICAND_SLACK:
            raise ValueError(f"barrier radicand {radicand:g} below the roundoff slack")
        radicand = 0.0
    return math.sqrt(radicand)


def signed_barrier(x: float, k: float) -> float:
    """+barrier left of 1, -barrier right of 1; continuous and zero at x = 1."""
    value = barrier(x, k)
    return value if x <= 1.0 else -value


# ---------------------------------------------------------------------------
# mechanical reduction: trap conditions for the rescaled variance particle


def collapse_conditions(v0: float, vs0: float, k: float) -> bool:
    """Particle-in-a-well test: trapped left of the bump, or pushed through it.

    Evaluates the three sufficient conditions (under-barrier left of the
    bump; over-barrier moving inward; exactly on the barrier moving inward)
    through the particle energy and the barrier top.
    """
    if not (v0 > 0.0 and k > 0.0):
        raise ValueError("collapse conditions need v0 > 0 and k > 0")
    a = k / 2.0
    u_max = (a + 1.0) / (2.0 * a * (2.0 * a + 1.0))
    v_pow = v0 ** (2.0 * a)
    energy = ((a + 1.0) / (2.0 * a + 1.0) * vs0 * vs0 * v_pow
              + (a + 1.0) / (2.0 * a) * v_pow
              - (a + 1.0) / (2.0 * a + 1.0) * v_pow * v0)
    cond_a = energy < u_max and v0 < 1.0
    cond_b = energy > u_max and vs0 < 0.0
    cond_c = energy == u_max and vs0 < 0.0 and v0 < 1.0
    return cond_a or cond_b or cond_c


def collapse_merged(v0: float, vs0: float, k: float) -> bool:
    """Single-inequality form of the trap conditions through the barrier."""
    if not (v0 > 0.0 and k > 0.0):
        raise ValueError("collapse conditions need v0 > 0 and k > 0")
    edge = barrier(v0, k)
    return vs0 < (edge if v0 < 1.0 else -edge)


# ---------------------------------------------------------------------------
# scale-invariant report quantities


def mass_energy(f: Functionals, ctx: ParamsContext) -> float:
    """M^((1-s_c)/s_c) E normalized by its ground-state value (E/E_W at s_c=1)."""
    s = ctx.params.s_c
    if s > 1.0:
        raise NotApplicableError("mass-energy is undefined for s_c > 1")
    if ctx.params.energy_critical:
        return f.energy / ctx.gs.energy
    return f.mass ** ((1.0 - s) / s) * f.energy / ctx.reference_mass_energy


def renorm_lp1(f: Functionals, ctx: ParamsContext) -> float:
    """M^(1-s_c) (int |u|^{p+1})^(s_c) normalized by its ground-state value."""
    s = ctx.params.s_c
    if s > 1.0:
        raise NotApplicableError("renormalized L^{p+1} level is undefined for s_c > 1")
    if ctx.params.energy_critical:
        return f.lp1 / ctx.gs.lp1
    return f.mass ** (1.0 - s) * f.lp1 ** s / ctx.reference_lp1_quantity


def virial_curvature_threshold(f: Functionals, ctx: ParamsContext) -> float:
    """The V_tt level sigma with (M/M_Q)^(1-s_c) ((E - sigma/16)/E_Q)^(s_c) = 1.

    Nonnegative exactly when the mass-energy is at or above the threshold.
    """
    s = ctx.params.s_c
    if s > 1.0:
        raise NotApplicableError("threshold curvature is undefined for s_c > 1")
    if ctx.params.energy_critical:
        return 16.0 * (f.energy - ctx.gs.energy)
    ref = ctx.gs.energy * (ctx.gs.require_mass() / f.mass) ** ((1.0 - s) / s)
    return 16.0 * (f.energy - ref)


# ---------------------------------------------------------------------------
# individual criteria


def negative_energy_check(f: Functionals) -> bool:
    """Classical convexity criterion: nonpositive energy, nonzero datum."""
    return f.energy <= 0.0 and f.mass > 0.0


def uncertainty_blowup_sides(f: Functionals, params: EquationParams):
    """(lhs, rhs) of the potential-well criterion V_t/M < sqrt(8 N s_c) g(...)."""
    if params.energy_supercritical and not params.well_posed:
        raise OutOfRegimeError("local theory unavailable: the regularity "
                               "condition on p fails for this (p, N)")
    if not f.variance > 0.0:
        raise ValueError("criterion needs positive variance")
    if not f.energy > 0.0:
        raise ValueError("criterion is stated for positive energy")
    n, s = params.N, params.s_c
    x = 4.0 / (n * s) * f.energy * f.variance / f.mass ** 2
    return (f.variance_rate / f.mass,
            math.sqrt(8.0 * n * s) * signed_barrier(x, params.k))


def uncertainty_blowup_check(f: Functionals, params: EquationParams) -> bool:
    lhs, rhs = uncertainty_blowup_sides(f, params)
    return lhs < rhs


def _criterion_constant_power(params: EquationParams, C_pN: float) -> float:
    """C_pN^(N(p-1)/2 + p + 1) in the normalization the criterion uses.

    In radial dimensions the criterion constant absorbs the surface-measure
    power sigma_N^((p-3)/2); on the line there is no radial reduction and
    the sharp constant enters unchanged.  This normalization is what the
    reference threshold values (kappa_T2 tables) are computed with.
    """
    cpow = C_pN ** (params.N * (params.p - 1.0) / 2.0 + params.p + 1.0)
    if params.N >= 2:
        cpow = cpow / sphere_surface(params.N) ** ((params.p - 3.0) / 2.0)
    return cpow


def interpolation_criterion_constant(params: EquationParams, C_pN: float) -> float:
    """The combined constant C entering the sharp-interpolation criterion."""
    np1 = params.N * (params.p - 1.0)
    return (2.0 * (params.p + 1.0) / (params.s_c * (params.p - 1.0))
            * _criterion_constant_power(params, C_pN)) ** (2.0 / np1)


def interpolation_blowup_sides(f: Functionals, params: EquationParams, C_pN: float):
    """(lhs, rhs) of the interpolation-based criterion."""
    if params.energy_supercritical and not params.well_posed:
        raise OutOfRegimeError("local theory unavailable: the regularity "
                               "condition on p fails for this (p, N)")
    if not f.variance > 0.0:
        raise ValueError("criterion needs positive variance")
    if not f.energy > 0.0:
        raise ValueError("criterion is stated for positive energy")
    n, s, np1 = params.N, params.s_c, params.N * (params.p - 1.0)
    cc = interpolation_criterion_constant(params, C_pN)
    arg = (cc * cc * f.energy ** (4.0 / np1) * f.variance
           / f.mass ** (1.0 + 2.0 * (params.p + 1.0) / np1))
    pref = 4.0 * math.sqrt(2.0) * (f.mass ** (1.0 - s) * f.energy ** s) ** (1.0 / n) / cc
    return f.variance_rate / f.mass, pref * signed_barrier(arg, params.k)


def interpolation_blowup_check(f: Functionals, params: EquationParams,
                               C_pN: float) -> bool:
    lhs, rhs = interpolation_blowup_sides(f, params, C_pN)
    return lhs < rhs


# ---------------------------------------------------------------------------
# dichotomy classification (0 < s_c <= 1)


def _critical_radial_caveats(ctx: ParamsContext) -> tuple:
    if ctx.params.energy_critical and ctx.params.N in (3, 4):
        return (_RADIAL_CAVEAT,)
    return ()


def _subthreshold(f: Functionals, ctx: ParamsContext):
    me = mass_energy(f, ctx)
    if not 0.0 < me < 1.0:
        raise NotApplicableError(
            f"sub-threshold dichotomy needs 0 < mass-energy < 1, got {me:g}")
    rn = renorm_lp1(f, ctx)
    records = [CriterionRecord("subthreshold_mass_energy", me, 1.0, "<")]
    if rn < 1.0:
        records.append(CriterionRecord("subthreshold_scattering", rn, 1.0, "<"))
        verdict = Verdict(VerdictKind.SCATTERS_BOTH_DIRECTIONS,
                          caveats=_critical_radial_caveats(ctx),
                          bound=ctx.reference_lp1_quantity)
    elif rn > 1.0:
        records.append(CriterionRecord("subthreshold_blowup", rn, 1.0, ">"))
        verdict = Verdict(VerdictKind.BLOWS_UP_BOTH_DIRECTIONS)
    else:
        verdict = Verdict(VerdictKind.UNKNOWN)
    return verdict, records


def subthreshold_classify(f: Functionals, ctx: ParamsContext) -> Verdict:
    """Below the mass-energy threshold: scattering or blow-up in both directions."""
    return _subthreshold(f, ctx)[0]


def _dichotomy(f: Functionals, ctx: ParamsContext):
    if not 0.0 < ctx.params.s_c <= 1.0:
        raise NotApplicableError("dichotomy classification needs 0 < s_c <= 1")
    if not (math.isfinite(f.variance) and f.variance > 0.0):
        raise ValueError("dichotomy classification needs finite positive variance")
    me = mass_energy(f, ctx)
    if me < 1.0:
        if me <= 0.0:
            # outside the sub-threshold theory; nonpositive energy is the
            # business of the convexity criterion
            return Verdict(VerdictKind.UNKNOWN), []
        return _subthreshold(f, ctx)
    vt = f.variance_rate
    cond1 = me * (1.0 - vt * vt / (32.0 * f.energy * f.variance))
    records = []
    if not cond1 <= 1.0:
        return Verdict(VerdictKind.UNKNOWN), records
    records.append(CriterionRecord("dichotomy_gate", cond1, 1.0, "<="))
    rn = renorm_lp1(f, ctx)
    vt_over_m = vt / f.mass
    if me == 1.0 and vt == 0.0:
        # exactly at the threshold with time-symmetric data
        if rn < 1.0:
            records.append(CriterionRecord("threshold_scattering", rn, 1.0, "<"))
            return Verdict(VerdictKind.SCATTERS_BOTH_DIRECTIONS,
                           caveats=_critical_radial_caveats(ctx),
                           bound=ctx.reference_lp1_quantity), records
        if rn > 1.0:
            records.append(CriterionRecord("threshold_blowup", rn, 1.0, ">"))
            return Verdict(VerdictKind.BLOWS_UP_BOTH_DIRECTIONS), records
        return Verdict(VerdictKind.UNKNOWN), records[:-1]
    if rn > 1.0 and vt <= 0.0:
        records.append(CriterionRecord("dichotomy_blowup_lp1", rn, 1.0, ">"))
        records.append(CriterionRecord("dichotomy_blowup_vt", vt_over_m, 0.0, "<="))
        return Verdict(VerdictKind.BLOWS_UP_FORWARD), records
    if rn < 1.0 and vt >= 0.0:
        records.append(CriterionRecord("dichotomy_scattering_lp1", rn, 1.0, "<"))
        records.append(CriterionRecord("dichotomy_scattering_vt", vt_over_m, 0.0, ">="))
        return Verdict(VerdictKind.SCATTERS_FORWARD,
                       caveats=_critical_radial_caveats(ctx),
                       bound=ctx.reference_lp1_quantity), records
    return Verdict(VerdictKind.UNKNOWN), records[:1]


def dichotomy_classify(f: Functionals, ctx: ParamsContext) -> Verdict:
    """Above-threshold virial dichotomy, falling through to the sub-threshold one."""
    return _dichotomy(f, ctx)[0]


# ---------------------------------------------------------------------------
# composition


def _stronger(a: Verdict, b: Verdict) -> Verdict:
    return b if _VERDICT_STRENGTH[b.kind] > _VERDICT_STRENGTH[a.kind] else a


def classify(f: Functionals, ctx: ParamsContext,
             data: InitialData | None = None) -> CriterionReport:
    """Evaluate every applicable criterion and compose the strongest verdict.

    Order: convexity (E <= 0) short-circuit, phased-ground-state special
    case, the (sub)threshold dichotomies when s_c <= 1, then the two
    potential-well criteria.  Unknown is a valid outcome; every fired
    criterion is recorded with its evaluated sides.
    """
    params = ctx.params
    p = params.p
    sub = params.s_c <= 1.0
    me = rn = sig = None
    if sub and f.mass > 0.0:
        me = mass_energy(f, ctx)
        rn = renorm_lp1(f, ctx)
        sig = virial_curvature_threshold(f, ctx)

    if f.mass <= 0.0:
        return CriterionReport(Verdict(VerdictKind.UNKNOWN), (), None, None, None)

    records: list[CriterionRecord] = []
    if negative_energy_check(f):
        records.append(CriterionRecord(
            "negative_energy", 2.0 * f.lp1 / ((p + 1.0) * f.grad_sq), 1.0, ">="))
        if f.energy < 0.0 or f.variance_rate == 0.0:
            verdict = Verdict(VerdictKind.BLOWS_UP_BOTH_DIRECTIONS)
        elif f.variance_rate < 0.0:
            verdict = Verdict(VerdictKind.BLOWS_UP_FORWARD)
        else:
            verdict = Verdict(VerdictKind.UNKNOWN,
                              caveats=("zero energy with outgoing virial rate: "
                                       "only backward blow-up follows",))
        return CriterionReport(verdict, tuple(records), me, rn, sig)

    if (data is not None and data.kind == "ground_state"
            and data.phase_gamma != 0.0 and sub):
        gamma = data.phase_gamma
        if gamma > 0.0:
            records.append(CriterionRecord("ground_state_phase", gamma, 0.0, ">"))
            verdict = Verdict(VerdictKind.SCATTERS_FORWARD,
                              caveats=("blows up backward in time",)
                              + _critical_radial_caveats(ctx),
                              bound=ctx.reference_lp1_quantity)
        else:
            records.append(CriterionRecord("ground_state_phase", gamma, 0.0, "<"))
            verdict = Verdict(VerdictKind.BLOWS_UP_FORWARD,
                              caveats=("scatters backward in time",))
        return CriterionReport(verdict, tuple(records), me, rn, sig)

    verdict = Verdict(VerdictKind.UNKNOWN)
    if sub:
        v, recs = _dichotomy(f, ctx)
        records.extend(recs)
        verdict = _stronger(verdict, v)

    can_run_well = (f.energy > 0.0 and f.variance > 0.0
                    and (not params.energy_supercritical or params.well_posed))
    if can_run_well:
        lhs, rhs = interpolation_blowup_sides(f, params, ctx.sharp.C_pN)
        if lhs < rhs:
            records.append(CriterionRecord("interpolation_blowup", lhs, rhs, "<"))
            verdict = _stronger(verdict, Verdict(VerdictKind.BLOWS_UP_FORWARD))
        lhs, rhs = uncertainty_blowup_sides(f, params)
        if lhs < rhs:
            records.append(CriterionRecord("uncertainty_blowup", lhs, rhs, "<"))
            verdict = _stronger(verdict, Verdict(VerdictKind.BLOWS_UP_FORWARD))
    elif params.energy_supercritical and not params.well_posed:
        verdict = Verdict(verdict.kind,
                          caveats=verdict.caveats
                          + ("potential-well criteria skipped: the regularity "
                             "condition on p fails",),
                          bound=verdict.bound)

    return CriterionReport(verdict, tuple(records), me, rn, sig)


def classify_data(init: InitialData, ctx: ParamsContext) -> CriterionReport:
    """Classify an InitialData descriptor (enables the phased-ground-state case)."""
    f = initial_functionals(init, ctx)
    return classify(f, ctx, data=init)


# ---------------------------------------------------------------------------
# Gaussian-family thresholds


def gaussian_zero_energy_threshold(params: EquationParams) -> float:
    """beta/alpha^(1/(p-1)) above which the Gaussian datum has negative energy."""
    p, n = params.p, params.N
    return ((n / 4.0) * (p + 1.0) ** (n / 2.0 + 1.0) / 2.0 ** (n / 2.0)) \
        ** (1.0 / (p - 1.0))


def gaussian_energy_threshold_roots(N: int) -> tuple[float, float]:
    """The two positive energy-threshold amplitudes of the critical Gaussian family.

    Roots of (N/4) x^2 - (1/2)((N-2)/N)^((N+2)/2) x^(2N/(N-2)) = E_W / pi^(N/2),
    bracketed on either side of the stationary point of the left side.
    """
    if N < 3:
        raise OutOfRegimeError(f"critical-index family needs N >= 3, got {N}")
    q = 2.0 * N / (N - 2.0)
    c = ((N - 2.0) / N) ** ((N + 2.0) / 2.0)
    d = N ** ((N - 2.0) / 2.0) * (N - 2.0) ** (N / 2.0) \
        * gamma_fn(N / 2.0) / gamma_fn(float(N))

    def h(x):
        return N / 4.0 * x * x - 0.5 * c * x ** q - d

    x_peak = (N / (q * c)) ** (1.0 / (q - 2.0))
    if not h(x_peak) > 0.0:
        raise NonConvergenceError("the family never crosses the energy threshold")
    lo_bracket = grow_bracket(h, x_peak, factor=2.0, upward=False)
    hi_bracket = grow_bracket(h, x_peak, factor=2.0, upward=True)
    return (solve_bracketed(h, *lo_bracket), solve_bracketed(h, *hi_bracket))


def gaussian_me_roots(params: EquationParams, ctx: ParamsContext) -> tuple[float, float]:
    """The two amplitudes where the Gaussian family crosses mass-energy 1."""
    if params.s_c > 1.0:
        raise NotApplicableError("mass-energy roots are undefined for s_c > 1")

    def me_of(x):
        m = gaussian_moments(1.0, x, params.p, params.N)
        if params.energy_critical:
            return m["energy"] / ctx.gs.energy
        return (m["mass"] ** ((1.0 - params.s_c) / params.s_c) * m["energy"]
                / ctx.reference_mass_energy)

    def h(x):
        return me_of(x) - 1.0

    x_e0 = gaussian_zero_energy_threshold(params)
    res = minimize_scalar(lambda x: -me_of(x),
                          bounds=(1e-6 * x_e0, x_e0 * (1.0 - 1e-9)),
                          method="bounded",
                          options={"xatol": 1e-13 * x_e0})
    x_peak = res.x
    if not me_of(x_peak) > 1.0:
        raise NonConvergenceError("the family never crosses the mass-energy threshold")
    lo_bracket = grow_bracket(h, x_peak, factor=2.0, upward=False)
    return (solve_bracketed(h, *lo_bracket),
            solve_bracketed(h, x_peak, x_e0 * (1.0 - 1e-12)))


def gaussian_blowup_thresholds(params: EquationParams,
                               C_pN: float | None = None) -> tuple[float, float]:
    """Real-Gaussian blow-up thresholds of the two potential-well criteria.

    Returns the beta/alpha^(1/(p-1)) values at which the uncertainty-principle
    criterion and the sharp-interpolation criterion start to fire for the
    real Gaussian family; both are roots of the barrier argument crossing 1.
    """
    p, n, s = params.p, params.N, params.s_c
    if C_pN is None:
        C_pN = interpolation_constant(params)
    x_e0 = gaussian_zero_energy_threshold(params)
    np1 = n * (p - 1.0)
    cc = interpolation_criterion_constant(params, C_pN)

    def t1_margin(x):
        m = gaussian_moments(1.0, x, p, n)
        return 4.0 / (n * s) * m["energy"] * m["variance"] / m["mass"] ** 2 - 1.0

    def t2_margin(x):
        m = gaussian_moments(1.0, x, p, n)
        return (cc * cc * m["energy"] ** (4.0 / np1) * m["variance"]
                / m["mass"] ** (1.0 + 2.0 * (p + 1.0) / np1)) - 1.0

    lo = 1e-9 * x_e0
    hi = x_e0 * (1.0 - 1e-12)
    return (solve_bracketed(t1_margin, lo, hi), solve_bracketed(t2_margin, lo, hi))


def real_data_crossover(params: EquationParams, C_pN: float) -> float:
    """M^(1-s_c) E^(s_c) level above which the interpolation criterion is wider.

    For real data both criteria reduce to variance bounds; this is the exact
    crossover of the two bounds.
    """
    p, n, s = params.p, params.N, params.s_c
    return ((n * s / 4.0) ** (n / 2.0)
            * (2.0 * (p + 1.0) / (s * (p - 1.0))
               * _criterion_constant_power(params, C_pN)) ** (2.0 / (p - 1.0)))


def real_data_variance_bounds(params: EquationParams, C_pN: float,
                              mass: float, energy: float) -> tuple[float, float]:
    """The two real-data variance bounds (uncertainty, interpolation) at (M, E)."""
    p, n, s = params.p, params.N, params.s_c
    np1 = n * (p - 1.0)
    bound1 = n * s / 4.0 * mass ** 2 / energy
    kk = (s * (p - 1.0) / (2.0 * (p + 1.0))
          / _criterion_constant_power(params, C_pN)) ** (4.0 / np1)
    bound2 = kk * mass ** (2.0 * (p + 1.0) / np1 + 1.0) / energy ** (4.0 / np1)
    return bound1, bound2
