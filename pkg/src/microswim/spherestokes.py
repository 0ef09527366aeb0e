"""Axisymmetric exterior Stokes flow around a sphere as Legendre mode sums.

The general decaying axisymmetric solution outside a sphere of radius ``a``
is, per mode m >= 1,

    u_r     = [X_m (a/r)^m + Y_m (a/r)^(m+2)] P_m(mu)
    u_theta = -[(m-2) X_m (a/r)^m + m Y_m (a/r)^(m+2)] P_m^1(mu) / (m (m+1))
    p       = (eta/a) X_m (4m-2)/(m+1) (a/r)^(m+1) P_m(mu)

with mu = cos(theta) and P_m^1 the order-1 associated Legendre function
(Condon-Shortley phase).  X_m multiplies the pressure-carrying part (the
m=1 term of which is the Stokeslet, so X_1 = 0 for a force-free swimmer)
and Y_m the potential part.  An optional source term u_r = y0 (a/r)^2
absorbs net volume flux.

Boundary conditions are specified by coefficients (p_m, q_m) of the surface
velocity,

    u_r(a)     = sum p_m P_m(mu)
    u_theta(a) = sum q_m V_m(mu),      V_m = P_m^1 / (m+1)

which invert to X_m = m (p_m + q_m)/2, Y_m = p_m - X_m.  For a force-free
body the m=1 Stokeslet is suppressed and the body translates at

    U = -(p_1 + q_1) / 3

along +z, the classic result for tangential squirmers (u_theta = v sin
theta gives U = 2v/3 and hydrodynamic efficiency 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .errors import InvalidParameterError

__all__ = [
    "legendre_table",
    "theta_quadrature",
    "project_boundary",
    "SphereModeFlow",
    "mode_power_quadform",
]


def legendre_table(nmax: int, x: np.ndarray):
    """P_n(x) and dP_n/dx for n = 0..nmax by the standard recurrences.

    Returns arrays of shape (nmax+1,) + x.shape.
    """
    x = np.asarray(x, dtype=float)
    P = np.zeros((nmax + 1,) + x.shape)
    dP = np.zeros_like(P)
    P[0] = 1.0
    if nmax >= 1:
        P[1] = x
        dP[1] = 1.0
    for n in range(1, nmax):
        P[n + 1] = ((2 * n + 1) * x * P[n] - n * P[n - 1]) / (n + 1)
        dP[n + 1] = dP[n - 1] + (2 * n + 1) * P[n]
    return P, dP


@dataclass(frozen=True)
class LegendreBasis:
    """Tables of P_m, P_m^1, V_m and their theta-derivatives on a grid."""

    mu: np.ndarray
    P: np.ndarray        # P_m(mu)
    dP: np.ndarray       # dP_m/dmu
    P1: np.ndarray       # P_m^1(cos theta) = -sin(theta) dP/dmu
    V: np.ndarray        # P_m^1 / (m+1)
    dP_dth: np.ndarray   # d P_m(cos theta)/d theta = P_m^1
    dP1_dth: np.ndarray  # d P_m^1(cos theta)/d theta = mu dP/dmu - m(m+1) P


def legendre_basis(nmax: int, mu: np.ndarray) -> LegendreBasis:
    mu = np.asarray(mu, dtype=float)
    P, dP = legendre_table(nmax, mu)
    sin_th = np.sqrt(np.clip(1.0 - mu * mu, 0.0, None))
    P1 = -sin_th[None, :] * dP
    orders = np.arange(nmax + 1, dtype=float)[:, None]
    V = P1 / (orders + 1.0)
    dP1_dth = mu[None, :] * dP - orders * (orders + 1.0) * P
    return LegendreBasis(mu=mu, P=P, dP=dP, P1=P1, V=V, dP_dth=P1, dP1_dth=dP1_dth)


def theta_quadrature(n_per_panel: int, breakpoints=()):
    """Composite Gauss-Legendre rule in theta with the sin(theta) weight.

    Returns (theta, w) such that sum w * h(cos theta) approximates
    integral of h(mu) d mu over [-1, 1]; panels split at ``breakpoints``.
    """
    x, w = roots_legendre(n_per_panel)
    edges = [0.0] + sorted(b for b in breakpoints if 0.0 < b < math.pi) + [math.pi]
    thetas, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo < 1e-15:
            continue
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        nodes = mid + half * x
        thetas.append(nodes)
        weights.append(half * w * np.sin(nodes))
    return np.concatenate(thetas), np.concatenate(weights)


def project_boundary(u_r, u_th, theta, w, nmax: int):
    """Mode coefficients (p_m, q_m) of sampled surface velocities.

    ``u_r`` and ``u_th`` are samples on a theta quadrature grid (theta, w)
    from :func:`theta_quadrature`.  Uses the orthogonality relations
    int P_m^2 dmu = 2/(2m+1) and int (P_m^1)^2 dmu = 2 m (m+1)/(2m+1).
    """
    basis = legendre_basis(nmax, np.cos(theta))
    m = np.arange(nmax + 1, dtype=float)
    p = (m + 0.5) * (basis.P * (w * np.asarray(u_r))).sum(axis=1)
    q = np.zeros(nmax + 1)
    mm = np.arange(1, nmax + 1, dtype=float)
    norm = (2.0 * mm + 1.0) * (mm + 1.0) / (2.0 * mm)
    q[1:] = norm * (basis.V[1:] * (w * np.asarray(u_th))).sum(axis=1)
    return p, q


def mode_power_quadform(a: float, eta: float, X: np.ndarray, Y: np.ndarray) -> float:
    """Power the sphere delivers to the exterior fluid, -int u . t dS at r=a.

    Quadratic form in the mode coefficients; reproduces 6 pi eta a U^2 for
    rigid translation and (16/3) pi eta a v^2 for the sin(theta) squirmer.
    """
    total = 0.0
    for m in range(1, len(X)):
        Xm, Ym = X[m], Y[m]
        if Xm == 0.0 and Ym == 0.0:
            continue
        Cr = (2.0 * m * m + 6.0 * m - 2.0) / (m + 1.0) * Xm + 2.0 * (m + 2.0) * Ym
        Ct = (2.0 * m - 2.0) / m * Xm + (2.0 * m + 4.0) / (m + 1.0) * Ym
        total += (4.0 * math.pi * eta * a / (2.0 * m + 1.0)) * (
            (Xm + Ym) * Cr + ((m - 2.0) * Xm + m * Ym) * Ct
        )
    return total


class SphereModeFlow:
    """Exterior flow defined by mode coefficient arrays X, Y (and a source).

    Arrays are indexed by mode number m (entry 0 unused); ``y0`` is the
    strength of the radial source term u_r = y0 (a/r)^2.
    """

    def __init__(self, a: float, eta: float, X, Y, y0: float = 0.0):
        if a <= 0.0 or eta <= 0.0:
            raise InvalidParameterError(f"need a > 0 and eta > 0, got a={a!r}, eta={eta!r}")
        self.a = float(a)
        self.eta = float(eta)
        self.X = np.asarray(X, dtype=float)
        self.Y = np.asarray(Y, dtype=float)
        if self.X.shape != self.Y.shape or self.X.ndim != 1:
            raise InvalidParameterError("X and Y must be 1-d arrays of equal length")
        self.y0 = float(y0)

    @property
    def nmax(self) -> int:
        return len(self.X) - 1

    @classmethod
    def from_boundary_modes(cls, a: float, eta: float, p, q, force_free: bool = True,
                            y0: float = 0.0):
        """Build the flow for surface-velocity coefficients (p_m, q_m).

        With ``force_free`` the Stokeslet mode is suppressed and the implied
        rigid translation U = -(p_1 + q_1)/3 is returned alongside the flow;
        otherwise the boundary data are matched exactly (resistance problem)
        and U is None.
        """
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        nmax = len(p) - 1
        m = np.arange(nmax + 1, dtype=float)
        X = np.zeros(nmax + 1)
        Y = np.zeros(nmax + 1)
        X[1:] = m[1:] * (p[1:] + q[1:]) / 2.0
        Y[1:] = p[1:] - X[1:]
        U = None
        if force_free:
            U = -(p[1] + q[1]) / 3.0
            X[1] = 0.0
            Y[1] = (2.0 * p[1] - q[1]) / 3.0
        return cls(a, eta, X, Y, y0=y0), U

    def _radial_powers(self, r):
        r = np.asarray(r, dtype=float)
        m = np.arange(self.nmax + 1, dtype=float)
        ratio = self.a / r
        RX = ratio[..., None] ** m          # (a/r)^m
        RY = ratio[..., None] ** (m + 2.0)  # (a/r)^(m+2)
        return RX, RY

    def velocity(self, r, theta):
        """(u_r, u_theta) at points (r, theta); r and theta broadcast."""
        r, theta = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        if np.any(r < self.a * (1.0 - 1e-12)):
            raise InvalidParameterError("field point inside the sphere")
        basis = legendre_basis(self.nmax, np.cos(theta.ravel()))
        RX, RY = self._radial_powers(r.ravel())
        cr = RX * self.X + RY * self.Y                    # (npts, nmax+1)
        u_r = np.einsum("pm,mp->p", cr, basis.P)
        u_r += self.y0 * (self.a / r.ravel()) ** 2
        m = np.arange(self.nmax + 1, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = np.where(m > 0, m * (m + 1.0), 1.0)
        ct = -((m - 2.0) * self.X * RX + m * self.Y * RY) / denom
        ct[:, 0] = 0.0
        u_th = np.einsum("pm,mp->p", ct, basis.P1)
        return u_r.reshape(r.shape), u_th.reshape(r.shape)

    def pressure(self, r, theta):
        """Pressure deviation from ambient at (r, theta)."""
        r, theta = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        if np.any(r < self.a * (1.0 - 1e-12)):
            raise InvalidParameterError("field point inside the sphere")
        basis = legendre_basis(self.nmax, np.cos(theta.ravel()))
        m = np.arange(self.nmax + 1, dtype=float)
        ratio = (self.a / r.ravel())[:, None] ** (m + 1.0)
        coef = self.X * (4.0 * m - 2.0) / (m + 1.0)
        vals = (self.eta / self.a) * np.einsum("pm,mp->p", ratio * coef, basis.P)
        return vals.reshape(r.shape)

    def surface_traction(self, theta):
        """(t_r, t_theta) of the exterior stress on r = a (normal out of body)."""
        theta = np.asarray(theta, dtype=float)
        basis = legendre_basis(self.nmax, np.cos(theta.ravel()))
        m = np.arange(self.nmax + 1, dtype=float)
        cr = -((2.0 * m * m + 6.0 * m - 2.0) / (m + 1.0) * self.X
               + 2.0 * (m + 2.0) * self.Y)
        with np.errstate(divide="ignore", invalid="ignore"):
            ct = np.where(m > 0,
                          (2.0 * m - 2.0) / np.where(m > 0, m, 1.0) * self.X
                          + (2.0 * m + 4.0) / (m + 1.0) * self.Y,
                          0.0)
        t_r = (self.eta / self.a) * np.einsum("m,mp->p", cr, basis.P)
        t_r += -4.0 * self.eta * self.y0 / self.a * np.ones(theta.size)
        t_th = (self.eta / self.a) * np.einsum("m,mp->p", ct, basis.P1)
        return t_r.reshape(theta.shape), t_th.reshape(theta.shape)

    def surface_fields(self, mu: np.ndarray):
        """Velocity and its first derivatives on r = a, for expansion work.

        Returns a dict with u_r, u_th, du_r/dr, du_r/dth, du_th/dr,
        du_th/dth evaluated at cos(theta) = mu.
        """
        basis = legendre_basis(self.nmax, np.asarray(mu, float))
        m = np.arange(self.nmax + 1, dtype=float)
        a = self.a
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = np.where(m > 0, m * (m + 1.0), 1.0)
        c_ut = -((m - 2.0) * self.X + m * self.Y) / denom
        c_ut[0] = 0.0
        c_dut_dr = np.where(m > 0,
                            ((m - 2.0) * self.X + (m + 2.0) * self.Y) / ((m + 1.0) * a),
                            0.0)
        return {
            "u_r": np.einsum("m,mp->p", self.X + self.Y, basis.P)
                   + self.y0 * np.ones(len(basis.mu)),
            "u_th": np.einsum("m,mp->p", c_ut, basis.P1),
            "du_r_dr": np.einsum("m,mp->p", -(m * self.X + (m + 2.0) * self.Y) / a,
                                 basis.P) - 2.0 * self.y0 / a * np.ones(len(basis.mu)),
            "du_r_dth": np.einsum("m,mp->p", self.X + self.Y, basis.P1),
            "du_th_dr": np.einsum("m,mp->p", c_dut_dr, basis.P1),
            "du_th_dth": np.einsum("m,mp->p", c_ut, basis.dP1_dth),
        }

    def power(self) -> float:
        """Power delivered to the exterior fluid across r = a."""
        # The source mode dissipates 16 pi eta a y0^2.
        return mode_power_quadform(self.a, self.eta, self.X, self.Y) \
            + 16.0 * math.pi * self.eta * self.a * self.y0 ** 2

    def stokeslet_force(self) -> float:
        """Net force the flow applies to the fluid (z component), 4 pi eta a X_1."""
        return 4.0 * math.pi * self.eta * self.a * self.X[1]
