"""Initial data, conserved functionals, and the two quadratic inequalities."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .constants import SharpConstants, gn_constant
from .errors import GridResolutionWarning, NotApplicableError
from .groundstate import GroundStateData, energy_critical_ground_state, shoot_ground_state
from .params import EquationParams, make_params
from .quadrature import radial_derivative, radial_integral


@dataclass(frozen=True)
class Functionals:
    """Conserved and initial quantities of one datum.

    variance_rate is the virial derivative 4 Im int x . grad(u) conj(u);
    momentum is identically zero for the radial data handled here.
    """

    mass: float
    energy: float
    variance: float
    variance_rate: float
    lp1: float
    grad_sq: float
    dim: int
    momentum: tuple = ()

    def __post_init__(self):
        if not self.momentum:
            object.__setattr__(self, "momentum", (0.0,) * self.dim)


@dataclass(frozen=True)
class FieldGrid:
    """Complex radial samples: ascending radii starting at 0."""

    radii: np.ndarray
    values: np.ndarray
    N: int

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)
        if radii.ndim != 1 or radii.size < 4 or radii[0] != 0.0:
            raise ValueError("radii must be a 1-d grid starting at 0")
        if np.any(np.diff(radii) <= 0.0):
            raise ValueError("radii must be strictly ascending")
        if values.shape != radii.shape:
            raise ValueError("values and radii must have matching shapes")
        if not np.all(np.isfinite(values)):
            raise ValueError("field samples must be finite")
        peak = np.abs(values).max()
        if peak > 0.0 and np.abs(values[-1]) > 1e-8 * peak:
            raise ValueError("field must decay below 1e-8 of its peak at the boundary")


@dataclass(frozen=True)
class InitialData:
    """Descriptor of a datum: analytic family or sampled grid, plus e^{i gamma |x|^2}."""

    kind: str  # "gaussian" | "ground_state" | "grid"
    alpha: float | None = None
    beta: float | None = None
    scale: float = 1.0
    field: FieldGrid | None = None
    phase_gamma: float = 0.0

    @staticmethod
    def gaussian(alpha: float, beta: float, phase_gamma: float = 0.0) -> "InitialData":
        if not (alpha > 0.0 and beta > 0.0):
            raise ValueError("gaussian data needs alpha > 0 and beta > 0")
        return InitialData(kind="gaussian", alpha=float(alpha), beta=float(beta),
                           phase_gamma=float(phase_gamma))

    @staticmethod
    def ground_state(scale: float = 1.0, phase_gamma: float = 0.0) -> "InitialData":
        if not scale > 0.0:
            raise ValueError("ground-state scale must be positive")
        return InitialData(kind="ground_state", scale=float(scale),
                           phase_gamma=float(phase_gamma))

    @staticmethod
    def grid(field: FieldGrid, phase_gamma: float = 0.0) -> "InitialData":
        return InitialData(kind="grid", field=field, phase_gamma=float(phase_gamma))


@dataclass(frozen=True)
class ParamsContext:
    """Equation parameters with the ground state and sharp constants attached."""

    params: EquationParams
    gs: GroundStateData | None
    sharp: SharpConstants

    @property
    def reference_lp1_quantity(self) -> float:
        """M[Q]^(1-s_c) (int Q^(p+1))^(s_c), the comparison level of the criteria."""
        s = self.params.s_c
        if self.params.energy_critical:
            return self.gs.lp1
        return self.gs.require_mass() ** (1.0 - s) * self.gs.lp1 ** s

    @property
    def reference_mass_energy(self) -> float:
        """M[Q]^((1-s_c)/s_c) E[Q] (E[W] at the critical index)."""
        s = self.params.s_c
        if self.params.energy_critical:
            return self.gs.energy
        return self.gs.require_mass() ** ((1.0 - s) / s) * self.gs.energy


@lru_cache(maxsize=32)
def _cached_context(p: float, N: int, tol: float, points: int) -> ParamsContext:
    params = make_params(p, N)
    if params.energy_supercritical:
        from .constants import interpolation_constant, plateau_constant_D
        sharp = SharpConstants(c_gn=math.nan, c_Q=math.nan,
                               C_pN=interpolation_constant(params),
                               D_pN=plateau_constant_D(params))
        return ParamsContext(params=params, gs=None, sharp=sharp)
    if params.energy_critical:
        gs = energy_critical_ground_state(N)
    else:
        gs = shoot_ground_state(params, tol=tol, points=points)
    return ParamsContext(params=params, gs=gs, sharp=gn_constant(params, gs))


def build_context(p: float, N: int, tol: float = 1e-10,
                  points: int = 16384) -> ParamsContext:
    """Assemble the ParamsContext for (p, N), caching the shot ground state."""
    return _cached_context(float(p), int(N), float(tol), int(points))


def gaussian_moments(alpha: float, beta: float, p: float, N: int) -> dict:
    """Closed-form norms of beta exp(-alpha |x|^2 / 2) in R^N."""
    mass = beta ** 2 * (math.pi / alpha) ** (N / 2.0)
    variance = N * mass / (2.0 * alpha)
    grad_sq = alpha ** 2 * variance
    lp1 = beta ** (p + 1.0) * (2.0 * math.pi / ((p + 1.0) * alpha)) ** (N / 2.0)
    return {"mass": mass, "variance": variance, "grad_sq": grad_sq, "lp1": lp1,
            "energy": 0.5 * grad_sq - lp1 / (p + 1.0)}


def gaussian_functionals(alpha: float, beta: float, ctx: ParamsContext) -> Functionals:
    """Functionals of the real Gaussian datum beta exp(-alpha |x|^2 / 2)."""
    if not (alpha > 0.0 and beta > 0.0):
        raise ValueError("gaussian data needs alpha > 0 and beta > 0")
    m = gaussian_moments(alpha, beta, ctx.params.p, ctx.params.N)
    return Functionals(mass=m["mass"], energy=m["energy"], variance=m["variance"],
                       variance_rate=0.0, lp1=m["lp1"], grad_sq=m["grad_sq"],
                       dim=ctx.params.N)


def ground_state_functionals(ctx: ParamsContext, scale: float = 1.0) -> Functionals:
    """Functionals of scale^(2/(p-1)) Q(scale x); scale-free ratios are unchanged."""
    gs = ctx.gs
    if gs is None:
        raise NotApplicableError("no ground state is defined for s_c > 1")
    p = ctx.params.p
    sig = -2.0 * ctx.params.s_c  # mass scaling exponent under the NLS scaling
    lam = float(scale)
    mass = gs.require_mass() * lam ** sig
    variance = gs.require_variance() * lam ** (sig - 2.0)
    lp1 = gs.lp1 * lam ** (sig + 2.0)
    grad_sq = gs.grad_sq * lam ** (sig + 2.0)
    return Functionals(mass=mass, energy=0.5 * grad_sq - lp1 / (p + 1.0),
                       variance=variance, variance_rate=0.0, lp1=lp1,
                       grad_sq=grad_sq, dim=ctx.params.N)


def modulate_quadratic_phase(f: Functionals, gamma: float) -> Functionals:
    """Functionals after multiplying the datum by e^{i gamma |x|^2}.

    Mass, variance, and the L^{p+1} norm are untouched; the virial rate
    gains 8 gamma V, the kinetic term expands accordingly, and the combined
    quantity E - V_t^2 / (32 V) is left exactly invariant.
    """
    if gamma == 0.0:
        return f
    if not f.variance > 0.0:
        raise ValueError("phase modulation needs positive variance")
    grad_sq = f.grad_sq + gamma * f.variance_rate + 4.0 * gamma ** 2 * f.variance
    variance_rate = f.variance_rate + 8.0 * gamma * f.variance
    # the potential part of the energy is untouched by a pure phase
    energy = f.energy + 0.5 * (grad_sq - f.grad_sq)
    return replace(f, grad_sq=grad_sq, variance_rate=variance_rate, energy=energy)


def grid_functionals(field: FieldGrid, ctx: ParamsContext) -> Functionals:
    """All functionals of a sampled radial field by weighted quadrature."""
    p, n_dim = ctx.params.p, ctx.params.N
    if field.N != n_dim:
        raise ValueError(f"field dimension {field.N} != context dimension {n_dim}")

    def compute(r, u):
        du = radial_derivative(u, r)
        absu2 = np.abs(u) ** 2
        mass = radial_integral(absu2, r, n_dim)
        variance = radial_integral(r ** 2 * absu2, r, n_dim)
        lp1 = radial_integral(np.abs(u) ** (p + 1.0), r, n_dim)
        grad_sq = radial_integral(np.abs(du) ** 2, r, n_dim)
        vrate = 4.0 * radial_integral(r * np.imag(du * np.conj(u)), r, n_dim)
        return mass, variance, lp1, grad_sq, vrate

    mass, variance, lp1, grad_sq, vrate = compute(field.radii, field.values)
    coarse = compute(field.radii[::2], field.values[::2])
    for fine_v, coarse_v, name in zip((mass, variance, lp1, grad_sq),
                                      coarse[:4],
                                      ("mass", "variance", "lp1", "grad_sq")):
        scale = max(abs(fine_v), 1e-300)
        if abs(fine_v - coarse_v) > 1e-4 * scale * 4.0:
            # coarsening doubles h; a second-order rule grows the error 4x
            warnings.warn(
                f"grid functional {name} changed by more than 1e-4 under "
                "coarsening; the grid is under-resolved",
                GridResolutionWarning, stacklevel=2)
    return Functionals(mass=mass, energy=0.5 * grad_sq - lp1 / (p + 1.0),
                       variance=variance, variance_rate=vrate, lp1=lp1,
                       grad_sq=grad_sq, dim=n_dim)


def initial_functionals(init: InitialData, ctx: ParamsContext) -> Functionals:
    """Functionals of any InitialData descriptor.

    The quadratic phase is applied analytically for the Gaussian and
    ground-state families and numerically (sample-wise) for grids.
    """
    if init.kind == "gaussian":
        base = gaussian_functionals(init.alpha, init.beta, ctx)
        return modulate_quadratic_phase(base, init.phase_gamma)
    if init.kind == "ground_state":
        base = ground_state_functionals(ctx, init.scale)
        return modulate_quadratic_phase(base, init.phase_gamma)
    if init.kind == "grid":
        field = init.field
        if init.phase_gamma != 0.0:
            values = field.values * np.exp(1j * init.phase_gamma * field.radii ** 2)
            field = FieldGrid(radii=field.radii, values=values, N=field.N)
        return grid_functionals(field, ctx)
    raise ValueError(f"unknown initial-data kind {init.kind!r}")


def uncertainty_gap(f: Functionals) -> float:
    """V ||grad u||^2 - (N^2/4) M^2 - (V_t/4)^2, nonnegative up to roundoff."""
    if not f.variance > 0.0:
        raise ValueError("uncertainty gap needs positive variance")
    return (f.variance * f.grad_sq - f.dim ** 2 / 4.0 * f.mass ** 2
            - (f.variance_rate / 4.0) ** 2)


def gn_uncertainty_gap(data, ctx: ParamsContext) -> float:
    """Gagliardo-Nirenberg-sharpened uncertainty gap.

    V [ ||grad f||^2 - (c_Q M^kappa)^{-1} (int |f|^{p+1})^{4/(N(p-1))} ]
    minus (Im int x.grad f conj f)^2; zero exactly on the quadratic-phase
    orbit of the ground state.  Accepts a FieldGrid or a Functionals record.
    """
    f = data if isinstance(data, Functionals) else grid_functionals(data, ctx)
    p, n_dim, kappa = ctx.params.p, ctx.params.N, ctx.params.kappa
    denom = ctx.sharp.c_Q
    if kappa != 0.0:
        denom = denom * f.mass ** kappa
    bracket = f.grad_sq - f.lp1 ** (4.0 / (n_dim * (p - 1.0))) / denom
    return f.variance * bracket - (f.variance_rate / 4.0) ** 2
