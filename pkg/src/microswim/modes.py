"""Small-amplitude surface-oscillation propulsion of a sphere.

A stroke is a set of oscillation modes n >= 2.  Material points labelled by
their undistorted polar angle ``vartheta`` move as

    r     = a (1 + eps sum_n alpha_n(t) P_n(cos vartheta))
    theta = vartheta + eps sum_n beta_n(t) V_n(cos vartheta)

with V_n = P_n^1/(n+1), alpha_n(t) = A_n cos(omega t - gamma_n) and
beta_n(t) = B_n cos(omega t - eta_n).  Amplitudes are normalized so the
largest first-order material-point displacement over a period is a*eps.

Swimming emerges at second order in eps: at each instant the boundary
velocity is transferred to the undistorted sphere with a first-order
Taylor correction in the displacement, the instantaneous exterior Stokes
problem is solved mode-by-mode with the force-free condition, and the
translation is averaged over a period.  Time-averaged speed scales as
a eps^2 omega and power as a^3 eps^2 eta omega^2.
"""

from __future__ import annotations

import functools
import json
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize
from scipy.special import roots_legendre

from .errors import InvalidParameterError, NumericalError, UnsupportedInputError
from .scenarios import PerformanceRecord, Scenario, drag_power, stokes_drag
from .spherestokes import SphereModeFlow, legendre_basis, legendre_table, theta_quadrature

__all__ = [
    "Mode",
    "ModeSpectrum",
    "SurfaceState",
    "QuasistaticCheck",
    "legendre_pair",
    "optimal_spectrum",
    "surface_state",
    "normalize_spectrum",
    "quasistatic_validity",
    "oscillation_performance",
    "performance_coefficients",
]


@dataclass(frozen=True)
class Mode:
    """One oscillation mode: amplitudes A (radial), B (tangential), phases."""

    n: int
    A: float
    B: float
    gamma: float
    eta: float

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameterError(f"mode order must be >= 2, got {self.n}")
        if self.A < 0.0 or self.B < 0.0:
            raise InvalidParameterError("mode amplitudes must be nonnegative")


@dataclass(frozen=True)
class ModeSpectrum:
    """A set of oscillation modes with overall scale eps and frequency omega."""

    modes: tuple[Mode, ...]
    epsilon: float
    omega: float
    normalized: bool = False

    def __post_init__(self):
        orders = [m.n for m in self.modes]
        if len(set(orders)) != len(orders):
            raise InvalidParameterError("mode orders must be distinct")
        if self.epsilon < 0.0:
            raise InvalidParameterError(f"epsilon must be >= 0, got {self.epsilon!r}")
        if self.omega <= 0.0:
            raise InvalidParameterError(f"omega must be > 0, got {self.omega!r}")

    @property
    def nmax(self) -> int:
        return max((m.n for m in self.modes), default=0)

    def arrays(self):
        """(n, A, B, gamma, eta) as numpy arrays over the active modes."""
        n = np.array([m.n for m in self.modes], dtype=int)
        A = np.array([m.A for m in self.modes])
        B = np.array([m.B for m in self.modes])
        g = np.array([m.gamma for m in self.modes])
        e = np.array([m.eta for m in self.modes])
        return n, A, B, g, e

    def scaled(self, factor: float, normalized: bool | None = None) -> "ModeSpectrum":
        modes = tuple(replace(m, A=m.A * factor, B=m.B * factor) for m in self.modes)
        return ModeSpectrum(modes, self.epsilon, self.omega,
                            self.normalized if normalized is None else normalized)

    def phase_reversed(self) -> "ModeSpectrum":
        """Flip all phase angles, reversing the traveling-wave direction."""
        modes = tuple(replace(m, gamma=-m.gamma, eta=-m.eta) for m in self.modes)
        return ModeSpectrum(modes, self.epsilon, self.omega, self.normalized)

    def to_json(self) -> str:
        return json.dumps({
            "epsilon": self.epsilon,
            "omega": self.omega,
            "modes": [{"n": m.n, "A": m.A, "B": m.B, "gamma": m.gamma, "eta": m.eta}
                      for m in self.modes],
        })

    @classmethod
    def from_json(cls, text: str) -> "ModeSpectrum":
        data = json.loads(text)
        modes = tuple(Mode(int(m["n"]), float(m["A"]), float(m["B"]),
                           float(m["gamma"]), float(m["eta"]))
                      for m in data["modes"])
        return cls(modes, float(data["epsilon"]), float(data["omega"]))


@dataclass(frozen=True)
class SurfaceState:
    """Position and velocity of one material point of the oscillating surface."""

    reference_angle: float
    r: float
    theta: float
    velocity: tuple[float, float]  # (radial, tangential) components, m/s


@dataclass(frozen=True)
class QuasistaticCheck:
    """Viscous damping length and Womersley number for an oscillation."""

    delta: float
    womersley: float


def legendre_pair(n: int, x):
    """(P_n(x), V_n(x)) with V_n = P_n^1/(n+1), Condon-Shortley phase.

    Evaluated by the stable three-term recurrences; |x| <= 1 required.
    """
    if n < 0:
        raise InvalidParameterError(f"need n >= 0, got {n}")
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0 + 1e-15):
        raise InvalidParameterError("Legendre argument must lie in [-1, 1]")
    arr = np.clip(arr, -1.0, 1.0)
    P, dP = legendre_table(n, np.atleast_1d(arr))
    sin_th = np.sqrt(np.clip(1.0 - arr * arr, 0.0, None))
    Vn = -sin_th * dP[n] / (n + 1.0)
    Pn = P[n]
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(Pn[0] if Pn.ndim else Pn), float(Vn[0] if Vn.ndim else Vn)
    return Pn, Vn


def optimal_spectrum(k: int, p: int, epsilon: float = 0.05,
                     omega: float = 2.0 * math.pi * 2000.0) -> ModeSpectrum:
    """Near-optimal traveling-wave stroke on modes n = k .. k+p.

    For j = n - k + 1 and psi = pi/(p+2):

        A_n = (1 + sqrt 2) sin(j psi),  B_n = sin(j psi),
        gamma_n = eta_n = -(pi/2)(j - 1)

    The amplitudes are unnormalized; apply :func:`normalize_spectrum`.
    """
    if k < 2:
        raise InvalidParameterError(f"need k >= 2, got {k}")
    if p < 0:
        raise InvalidParameterError(f"need p >= 0, got {p}")
    psi = math.pi / (p + 2)
    modes = []
    for n in range(k, k + p + 1):
        j = n - k + 1
        s = math.sin(j * psi)
        phase = -0.5 * math.pi * (j - 1)
        modes.append(Mode(n=n, A=(1.0 + math.sqrt(2.0)) * s, B=s,
                          gamma=phase, eta=phase))
    return ModeSpectrum(tuple(modes), epsilon=epsilon, omega=omega)


def _displacement_fields(spec: ModeSpectrum, mu: np.ndarray, tau: float):
    """Dimensionless first-order displacement fields (f, g) and d/dtau rates.

    r - a = a eps f, theta - vartheta = eps g.
    """
    n, A, B, gam, eta = spec.arrays()
    basis = legendre_basis(spec.nmax, mu)
    al = A * np.cos(tau - gam)
    be = B * np.cos(tau - eta)
    dal = -A * np.sin(tau - gam)
    dbe = -B * np.sin(tau - eta)
    f = np.einsum("i,ij->j", al, basis.P[n])
    g = np.einsum("i,ij->j", be, basis.V[n])
    fdot = np.einsum("i,ij->j", dal, basis.P[n])
    gdot = np.einsum("i,ij->j", dbe, basis.V[n])
    return f, g, fdot, gdot


def _linear_displacement(spec: ModeSpectrum, mu: np.ndarray, tau: float) -> np.ndarray:
    """First-order displacement magnitude in units of a*eps: sqrt(f^2 + g^2)."""
    f, g, _, _ = _displacement_fields(spec, mu, tau)
    return np.hypot(f, g)


def surface_state(spec: ModeSpectrum, a: float, vartheta: float, t: float) -> SurfaceState:
    """Position and exact velocity of the material point labelled ``vartheta``."""
    if a <= 0.0:
        raise InvalidParameterError(f"need a > 0, got {a!r}")
    tau = spec.omega * t
    mu = np.array([math.cos(vartheta)])
    f, g, fdot, gdot = _displacement_fields(spec, mu, tau)
    eps = spec.epsilon
    r = a * (1.0 + eps * float(f[0]))
    theta = vartheta + eps * float(g[0])
    v_r = a * eps * float(fdot[0]) * spec.omega
    v_t = r * eps * float(gdot[0]) * spec.omega
    return SurfaceState(reference_angle=vartheta, r=r, theta=theta,
                        velocity=(v_r, v_t))


def normalize_spectrum(spec: ModeSpectrum, a: float,
                       n_theta: int = 512, n_tau: int = 256) -> ModeSpectrum:
    """Rescale amplitudes so the peak material-point displacement is a*eps.

    Displacement is measured to first order in eps (components a*eps*f
    radially and a*eps*g along the surface), which keeps the normalization
    scale independent of eps and the eps-scaling of all averaged
    quantities exact.  The maximum over (vartheta, t) is located on a
    grid of >= 512 Gauss nodes x >= 256 uniform times and polished by a
    local search to 1e-6 relative.
    """
    if a <= 0.0:
        raise InvalidParameterError(f"need a > 0, got {a!r}")
    if not spec.modes or all(m.A == 0.0 and m.B == 0.0 for m in spec.modes):
        raise InvalidParameterError("cannot normalize an all-zero spectrum")

    mu, _ = roots_legendre(max(n_theta, 512))
    taus = np.linspace(0.0, 2.0 * math.pi, max(n_tau, 256), endpoint=False)
    best_val, best_mu, best_tau = -1.0, 0.0, 0.0
    for tau in taus:
        d = _linear_displacement(spec, mu, tau)
        i = int(np.argmax(d))
        if d[i] > best_val:
            best_val, best_mu, best_tau = float(d[i]), float(mu[i]), float(tau)

    def neg_disp(z):
        m = math.tanh(z[0])  # keep mu in (-1, 1)
        return -float(_linear_displacement(spec, np.array([m]), z[1])[0])

    z0 = np.array([math.atanh(np.clip(best_mu, -0.999999, 0.999999)), best_tau])
    res = minimize(neg_disp, z0, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12 * best_val, "maxiter": 400})
    peak = max(best_val, -float(res.fun))
    return spec.scaled(1.0 / peak, normalized=True)


def quasistatic_validity(scenario: Scenario, omega: float) -> QuasistaticCheck:
    """Viscous damping length delta = sqrt(2 nu / omega) and Womersley number."""
    if omega <= 0.0:
        raise InvalidParameterError(f"need omega > 0, got {omega!r}")
    delta = math.sqrt(2.0 * scenario.nu / omega)
    womersley = scenario.a * math.sqrt(omega / scenario.nu)
    return QuasistaticCheck(delta=delta, womersley=womersley)


def _engine(spec: ModeSpectrum, a: float, eta: float, n_tau: int = 64):
    """Period-averaged swimming speed and power of the O(eps^2) expansion.

    Returns (U_mean, P_mean).  The integrands are low-order trigonometric
    polynomials of tau, so 64 Gauss points per period are ample; the caller
    doubles the grid as a convergence check.
    """
    omega = spec.omega
    eps = spec.epsilon
    nmax = spec.nmax
    n, A, B, gam, etap = spec.arrays()

    theta_q, w_q = theta_quadrature(max(64, 2 * (nmax + 8)))
    mu = np.cos(theta_q)
    basis = legendre_basis(nmax, mu)
    V1 = basis.V[1]

    xt, wt = roots_legendre(n_tau)
    taus = math.pi * (xt + 1.0)
    wtau = wt / 2.0  # mean over the period

    U_sum = 0.0
    P_sum = 0.0
    for tau, wt_i in zip(taus, wtau):
        al = A * np.cos(tau - gam)
        be = B * np.cos(tau - etap)
        dal = -A * np.sin(tau - gam)
        dbe = -B * np.sin(tau - etap)

        f = np.einsum("i,ij->j", al, basis.P[n])
        g = np.einsum("i,ij->j", be, basis.V[n])
        gdot = omega * np.einsum("i,ij->j", dbe, basis.V[n])

        p = np.zeros(nmax + 1)
        q = np.zeros(nmax + 1)
        p[n] = a * omega * dal
        q[n] = a * omega * dbe
        flow, _ = SphereModeFlow.from_boundary_modes(a, eta, p, q, force_free=True)

        s = flow.surface_fields(mu)
        u2r = -a * f * s["du_r_dr"] - g * s["du_r_dth"]
        u2t = a * f * gdot - a * f * s["du_th_dr"] - g * s["du_th_dth"]

        p1 = 1.5 * np.sum(w_q * u2r * mu)
        q1 = 3.0 * np.sum(w_q * u2t * V1)
        U_sum += wt_i * (-(p1 + q1) / 3.0)
        P_sum += wt_i * flow.power()

    return eps * eps * U_sum, eps * eps * P_sum


def oscillation_performance(spec: ModeSpectrum, scenario: Scenario,
                            internal_power: float = 0.0,
                            n_tau: int = 64) -> PerformanceRecord:
    """Period-averaged performance of a normalized oscillation stroke.

    ``speed`` in the returned record is the signed velocity along +z.
    Efficiency compares the Stokes drag power at the mean speed with the
    mean propulsion power; thrust is the Stokes force at the mean speed.
    """
    if not spec.normalized:
        raise InvalidParameterError(
            "spectrum must be normalized first (normalize_spectrum)"
        )
    check = quasistatic_validity(scenario, spec.omega)
    if check.womersley >= 0.5:
        raise UnsupportedInputError(
            f"Womersley number {check.womersley:.3g} >= 0.5: the quasi-static "
            f"model does not apply"
        )
    if check.womersley > 0.2:
        warnings.warn(
            f"Womersley number {check.womersley:.3g} > 0.2: quasi-static "
            f"corrections may be noticeable",
            stacklevel=2,
        )

    a, eta = scenario.a, scenario.eta
    if spec.epsilon == 0.0:
        return PerformanceRecord(0.0, 0.0, internal_power, 0.0, 0.0)

    U, P = _engine(spec, a, eta, n_tau=n_tau)
    U2, P2 = _engine(spec, a, eta, n_tau=2 * n_tau)
    scale_U = abs(a * spec.epsilon ** 2 * spec.omega)
    scale_P = abs(a ** 3 * spec.epsilon ** 2 * eta * spec.omega ** 2)
    if abs(U2 - U) > 1e-9 * scale_U or abs(P2 - P) > 1e-9 * scale_P:
        raise NumericalError(
            "oscillation expansion did not converge under time-grid refinement"
        )

    efficiency = drag_power(a, eta, abs(U2)) / P2 if P2 > 0.0 else 0.0
    return PerformanceRecord(
        speed=U2,
        propulsion_power=P2,
        internal_power=internal_power,
        efficiency=efficiency,
        thrust=stokes_drag(a, eta, abs(U2)),
    )


@functools.lru_cache(maxsize=8)
def performance_coefficients(k: int = 10, p: int = 10) -> tuple[float, float, float, float]:
    """Dimensionless performance constants (c_U, c_P, c_eff, c_T) of a stroke.

    Defined by U = c_U a eps^2 omega, P = c_P a^3 eps^2 eta omega^2,
    efficiency = c_eff eps^2 and thrust = c_T a^2 eps^2 eta omega for the
    normalized near-optimal spectrum on modes k .. k+p.  These emerge from
    the expansion engine; they are not stored constants.
    """
    spec = normalize_spectrum(optimal_spectrum(k, p, epsilon=1e-2, omega=1.0), a=1.0)
    U, P = _engine(spec, a=1.0, eta=1.0)
    eps2 = spec.epsilon ** 2
    c_U = U / eps2
    c_P = P / eps2
    c_eff = 6.0 * math.pi * c_U ** 2 / c_P
    c_T = 6.0 * math.pi * abs(c_U)
    return c_U, c_P, c_eff, c_T
