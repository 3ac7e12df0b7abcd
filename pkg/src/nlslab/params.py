"""Equation parameters and the scaling exponents derived from (p, N)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfRegimeError


@dataclass(frozen=True)
class EquationParams:
    """Nonlinearity p, dimension N, and every derived scaling exponent.

    s_c is the criticality index of the scale-invariant Sobolev norm,
    k the barrier exponent of the potential-well reduction, A the virial
    constant 2(N(p-1)-4), and kappa the mass exponent of the sharp
    Gagliardo-Nirenberg inequality.
    """

    p: float
    N: int
    s_c: float
    k: float
    A: float
    kappa: float
    well_posed: bool

    @property
    def energy_subcritical(self) -> bool:
        return self.s_c < 1.0

    @property
    def energy_critical(self) -> bool:
        return self.s_c == 1.0

    @property
    def energy_supercritical(self) -> bool:
        return self.s_c > 1.0


def _technical_condition(p: float, N: int) -> bool:
    # local well-posedness in the critical Sobolev space for s_c > 1 needs
    # the nonlinearity smooth enough: p an odd integer, or N <= 7, or
    # p > (N + 2 + sqrt(N^2 - 4N - 28)) / 4
    if p == round(p) and int(round(p)) % 2 == 1:
        return True
    if N <= 7:
        return True
    return p > (N + 2 + math.sqrt(N * N - 4 * N - 28)) / 4.0


def make_params(p: float, N: int, allow_mass_critical: bool = False) -> EquationParams:
    """Build EquationParams, rejecting anything at or below the s_c = 0 line.

    ``allow_mass_critical`` admits s_c = 0 exactly, which the ground-state
    machinery supports even though every classification criterion needs
    s_c > 0.
    """
    if not isinstance(N, (int,)) or isinstance(N, bool):
        raise ValueError(f"dimension N must be an integer, got {N!r}")
    p = float(p)
    if not p > 1.0 or N < 1:
        raise ValueError(f"need p > 1 and N >= 1, got p={p!r}, N={N!r}")
    s_c = N / 2.0 - 2.0 / (p - 1.0)
    floor_ok = s_c == 0.0 and allow_mass_critical
    if not s_c > 0.0 and not floor_ok:
        raise OutOfRegimeError(
            f"p={p:g}, N={N} gives s_c={s_c:g} <= 0; only p > 1 + 4/N is supported")
    k = (p - 1.0) * s_c / 2.0
    A = 2.0 * (N * (p - 1.0) - 4.0)
    kappa = 2.0 * (p + 1.0) / (N * (p - 1.0)) - 1.0
    well_posed = s_c <= 1.0 or _technical_condition(p, N)
    return EquationParams(p=p, N=N, s_c=s_c, k=k, A=A, kappa=kappa,
                          well_posed=well_posed)


def critical_exponent(N: int) -> float:
    """The p with s_c = 1 in dimension N (defined for N >= 3)."""
    if N < 3:
        raise OutOfRegimeError(f"no energy-critical exponent in dimension {N}")
    return (N + 2.0) / (N - 2.0)
