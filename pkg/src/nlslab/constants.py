"""Sharp constants of the equation: interpolation, Gagliardo-Nirenberg, Sobolev."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConsistencyError, OutOfRegimeError
from .gammafn import gamma_fn
from .groundstate import GroundStateData, energy_critical_ground_state
from .params import EquationParams


@dataclass(frozen=True)
class SharpConstants:
    """Sharp constants attached to one (p, N) pair.

    ``E_W`` and ``gradW_sq`` are populated only at the energy-critical index,
    where the explicit Sobolev extremizer is available.
    """

    c_gn: float
    c_Q: float
    C_pN: float
    D_pN: float
    E_W: float | None = None
    gradW_sq: float | None = None


def _unpack(params_or_p, n=None) -> tuple[float, int]:
    # the sharp constants exist for every p > 1, including the regimes that
    # make_params rejects, so a bare (p, N) pair is accepted as well
    if n is None:
        return params_or_p.p, params_or_p.N
    p = float(params_or_p)
    if not p > 1.0 or int(n) < 1:
        raise ValueError(f"need p > 1 and N >= 1, got p={p!r}, N={n!r}")
    return p, int(n)


def interpolation_constant(params: EquationParams | float, N: int | None = None) -> float:
    """Sharp constant of ||u||_2 <= C (||xu||_2^(N(p-1)/2) ||u||_{p+1}^{p+1})^(1/(N(p-1)/2+p+1)).

    Valid for every p > 1, N >= 1; the closed form mixes Gamma ratios with
    the plateau volume of the extremizer (1-|x|^2)^(1/(p-1)).
    """
    p, n = _unpack(params, N)
    a = (p + 1.0) / (p - 1.0)
    exponent = n * (p - 1.0) / 2.0 + (p + 1.0)
    value = (n / (2.0 * math.pi)
             * ((p - 1.0) / (p + 1.0))
             * (math.pi * (1.0 + 2.0 * (p + 1.0) / (n * (p - 1.0)))) ** (n * (p - 1.0) / 4.0 + 1.0)
             * (gamma_fn(a) / gamma_fn(a + n / 2.0)) ** ((p - 1.0) / 2.0))
    return value ** (1.0 / exponent)


def plateau_constant_D(params: EquationParams | float, N: int | None = None) -> float:
    """L^((p+1)/(p-1)) mass of the unit plateau (1-|x|^2) over the ball, normalized."""
    p, n = _unpack(params, N)
    b = 2.0 * p / (p - 1.0)
    return (math.pi ** (n / 2.0) * gamma_fn(b) / gamma_fn(b + n / 2.0)) ** ((p - 1.0) / (p + 1.0))


def sobolev_W_quantities(N: int) -> dict:
    """Gradient norm and energy of the explicit energy-critical ground state."""
    if N < 3:
        raise OutOfRegimeError(f"Sobolev extremizer quantities need N >= 3, got {N}")
    grad_sq = (N * (N - 2.0) * math.pi) ** (N / 2.0) * gamma_fn(N / 2.0) / gamma_fn(float(N))
    return {"grad_sq": grad_sq, "energy": grad_sq / N}


def sobolev_best_constant(N: int) -> float:
    """Best constant of the critical Sobolev embedding in R^N."""
    if N < 3:
        raise OutOfRegimeError(f"critical Sobolev constant needs N >= 3, got {N}")
    return (gamma_fn(float(N)) / gamma_fn(N / 2.0)) ** (1.0 / N) \
        / math.sqrt(N * (N - 2.0) * math.pi)


def gn_constant(params: EquationParams, gs: GroundStateData | None) -> SharpConstants:
    """Sharp Gagliardo-Nirenberg constant and friends for one (p, N) pair.

    For 0 < s_c < 1 the constant is evaluated from the ground-state norms in
    two independent rearrangements (the defining ratio and the energy form);
    disagreement beyond 1e-6 relative raises ConsistencyError.  At s_c = 1
    the mass exponent vanishes and the constant is the squared Sobolev best
    constant.
    """
    p, n = params.p, params.N
    four_np = 4.0 / (n * (p - 1.0))
    c_pn = interpolation_constant(params)
    d_pn = plateau_constant_D(params)

    if params.energy_critical:
        w = sobolev_W_quantities(n)
        c_q = sobolev_best_constant(n) ** 2
        c_q_alt = w["grad_sq"] ** four_np / w["grad_sq"]  # lp1 = grad_sq for W
        if abs(c_q - c_q_alt) > 1e-10 * c_q:
            raise ConsistencyError(
                f"Sobolev-constant forms disagree: {c_q:.15g} vs {c_q_alt:.15g}")
        return SharpConstants(c_gn=c_q ** (1.0 / four_np), c_Q=c_q,
                              C_pN=c_pn, D_pN=d_pn,
                              E_W=w["energy"], gradW_sq=w["grad_sq"])

    if params.energy_supercritical:
        raise OutOfRegimeError("no ground state is used for s_c > 1")
    if gs is None:
        raise ValueError("ground-state data is required for 0 < s_c < 1")

    mass_k = gs.require_mass() ** params.kappa
    c_q = gs.lp1 ** four_np / (mass_k * gs.grad_sq)
    checks = [("Pohozaev", 2.0 * (p + 1.0) / (n * (p - 1.0))
               * gs.lp1 ** (four_np - 1.0) / mass_k)]
    if params.s_c > 0.0:
        # the energy rearrangement degenerates at the mass-critical index,
        # where A = 0 and the ground-state energy vanishes
        checks.append(("energy", (8.0 * (p + 1.0) / params.A) ** four_np
                       * params.s_c / n * gs.energy ** (four_np - 1.0) / mass_k))
    for label, other in checks:
        if abs(c_q - other) > 1e-6 * abs(c_q):
            raise ConsistencyError(
                f"Gagliardo-Nirenberg constant from the {label} form disagrees: "
                f"{c_q:.12g} vs {other:.12g}")
    return SharpConstants(c_gn=c_q ** (1.0 / four_np), c_Q=c_q,
                          C_pN=c_pn, D_pN=d_pn)
