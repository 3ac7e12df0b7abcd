"""Radial quadrature and differentiation on [0, R] sample grids."""

from __future__ import annotations

import numpy as np

from .gammafn import sphere_surface

_trapz = getattr(np, "trapezoid", None) or np.trapz


def radial_integral(values, radii, n_dim: int) -> float:
    """Integrate a radial function over R^n by composite trapezoid.

    ``values`` holds the plain integrand w(r); the r^(n-1) weight and the
    spherical surface factor are applied here.  For n = 2 the weighted
    integrand has a nonzero slope at r = 0 and the trapezoid rule drops to
    O(h^2) there, so an Euler-Maclaurin endpoint term restores the accuracy.
    """
    r = np.asarray(radii, dtype=float)
    w = np.asarray(values)
    f = w * r ** (n_dim - 1)
    total = _trapz(f, r)
    if n_dim == 2 and r.size > 1:
        h = r[1] - r[0]
        total = total + h * h / 12.0 * w[0]
    return sphere_surface(n_dim) * total


def radial_derivative(values, radii):
    """d/dr of radial samples with the regularity condition u'(0) = 0.

    Uniform grids get a fourth-order centered stencil, closed at the origin
    by even reflection (which makes u'(0) vanish exactly) and by one-sided
    second-order differences at the outer edge, where the data has decayed.
    Nonuniform grids fall back to second-order ``np.gradient``.
    """
    r = np.asarray(radii, dtype=float)
    u = np.asarray(values)
    n = r.size
    if n < 8:
        du = np.gradient(u, r, edge_order=1)
        du[0] = 0.0
        return du
    h = r[1] - r[0]
    if not np.allclose(np.diff(r), h, rtol=1e-9, atol=1e-12):
        du = np.gradient(u, r, edge_order=2)
        du[0] = 0.0
        return du
    ext = np.concatenate((u[2:0:-1], u))  # two ghost samples, even reflection
    du = np.empty(n, dtype=u.dtype)
    du[: n - 2] = (-ext[4:] + 8.0 * ext[3:-1] - 8.0 * ext[1:-3] + ext[:-4]) / (12.0 * h)
    du[n - 2] = (u[n - 1] - u[n - 3]) / (2.0 * h)
    du[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h)
    return du
