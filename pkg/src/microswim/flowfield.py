"""Analytic exterior fluid velocity and pressure around a spherical robot.

Three motion modes are compared, all in the rest frame of the far fluid:

* DRAGGED: the classical Stokes solution past a translating rigid sphere
  (velocity decays like 1/r, the Stokeslet of the applied force).
* TANGENTIAL_BAND: the steady force-free squirmer flow for an equatorial
  band, built by projecting the band's tangential surface velocity onto
  Legendre modes (decays like 1/r^2 and faster).
* OSCILLATING: the quasi-static instantaneous flow matching the
  oscillation-stroke boundary velocity at a given time, force-free; the
  leading field is first order in the oscillation scale eps.

Fluid speed versus distance from the three modes, and the radial gradient
of that envelope (reported as shear), quantify how much each propulsion
method disturbs nearby cells.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NumericalError
from .modes import ModeSpectrum, normalize_spectrum, optimal_spectrum, performance_coefficients
from .scenarios import Scenario
from .spherestokes import SphereModeFlow, project_boundary, theta_quadrature
from .tangential import BandActuation, Profile, required_band_speed

__all__ = [
    "MotionKind",
    "MotionMode",
    "FlowSample",
    "exterior_flow",
    "max_speed_vs_distance",
    "shear_and_stress",
    "decay_exponent",
]

SERIES_CAP = 200


class MotionKind(enum.Enum):
    DRAGGED = "dragged"
    TANGENTIAL_BAND = "tangential_band"
    OSCILLATING = "oscillating"


@dataclass(frozen=True)
class FlowSample:
    """Fluid state at one point: (d, theta) position, velocity, pressure.

    ``velocity`` holds the (radial, polar) components at the sample point;
    ``pressure`` is the deviation from ambient.
    """

    d: float
    theta: float
    velocity: tuple[float, float]
    pressure: float

    @property
    def speed(self) -> float:
        return math.hypot(*self.velocity)


@dataclass(frozen=True)
class MotionMode:
    """A locomotion mode with its scenario and actuation payload."""

    kind: MotionKind
    scenario: Scenario
    band: BandActuation | None = None
    spectrum: ModeSpectrum | None = None

    def __post_init__(self):
        if self.kind is MotionKind.TANGENTIAL_BAND and self.band is None:
            raise InvalidParameterError("TANGENTIAL_BAND requires a band payload")
        if self.kind is MotionKind.OSCILLATING and self.spectrum is None:
            raise InvalidParameterError("OSCILLATING requires a spectrum payload")
        if self.kind is MotionKind.DRAGGED and (self.band or self.spectrum):
            raise InvalidParameterError("DRAGGED takes no actuation payload")

    @classmethod
    def dragged(cls, scenario: Scenario) -> "MotionMode":
        """Sphere dragged by an external force at the scenario speed."""
        return cls(MotionKind.DRAGGED, scenario)

    @classmethod
    def tangential_band(cls, scenario: Scenario, gamma: float = math.pi / 3.0,
                        band: BandActuation | None = None) -> "MotionMode":
        """Band squirmer; defaults to the 60 degree band at the scenario speed."""
        if band is None:
            band = BandActuation(gamma, required_band_speed(scenario.U, gamma))
        return cls(MotionKind.TANGENTIAL_BAND, scenario, band=band)

    @classmethod
    def oscillating(cls, scenario: Scenario, epsilon: float = 0.05,
                    k: int = 10, p: int = 10,
                    spectrum: ModeSpectrum | None = None) -> "MotionMode":
        """Oscillation stroke with frequency chosen to reach the scenario speed."""
        if spectrum is None:
            c_U = performance_coefficients(k, p)[0]
            omega = scenario.U / (c_U * scenario.a * epsilon ** 2)
            spectrum = normalize_spectrum(
                optimal_spectrum(k, p, epsilon=epsilon, omega=omega), scenario.a
            )
        return cls(MotionKind.OSCILLATING, scenario, spectrum=spectrum)


def _band_mode_flow(mode: MotionMode) -> SphereModeFlow:
    """Force-free squirmer flow for the band payload (lab frame)."""
    band = mode.band
    a, eta = mode.scenario.a, mode.scenario.eta
    if band.profile is not Profile.CONSTANT_MERIDIONAL:
        raise InvalidParameterError("flow fields support CONSTANT_MERIDIONAL bands")
    psi = band.psi
    theta_q, w_q = theta_quadrature(96, breakpoints=(psi, math.pi - psi))
    u_th = np.where((theta_q >= psi) & (theta_q <= math.pi - psi), band.v, 0.0)
    p, q = project_boundary(np.zeros_like(u_th), u_th, theta_q, w_q, SERIES_CAP)
    flow, _ = SphereModeFlow.from_boundary_modes(a, eta, p, q, force_free=True)
    return flow


def _check_series_tail(flow: SphereModeFlow, r: float, what: str) -> None:
    """Raise if the mode series has a non-negligible tail at radius r.

    Coefficients of a band profile decay only algebraically, so right at
    the surface a Gibbs zone within about 1% of the radius is accepted;
    beyond it the (a/r)^m damping makes the series converge rapidly.
    """
    a = flow.a
    # Gibbs oscillation of discontinuous band profiles is confined to a thin
    # layer at the surface; convergence is only enforced beyond it.
    if r <= a * 1.05 or flow.nmax < 30:
        return
    m = np.arange(flow.nmax + 1, dtype=float)
    damp = (a / r) ** m
    terms = (np.abs(flow.X) + np.abs(flow.Y)) * damp
    total = float(np.sum(terms))
    tail = float(np.sum(terms[-10:]))
    if total > 0.0 and tail > 1e-3 * total:
        raise NumericalError(
            f"{what}: mode series not converged at r/a = {r / a:.3g} "
            f"(tail fraction {tail / total:.2e} over the last 10 of "
            f"{flow.nmax} modes)"
        )


def _oscillating_flow(mode: MotionMode, t: float) -> SphereModeFlow:
    """Instantaneous first-order flow for the oscillation payload at time t."""
    spec = mode.spectrum
    a, eta = mode.scenario.a, mode.scenario.eta
    n, A, B, gam, etap = spec.arrays()
    tau = spec.omega * t
    scale = spec.epsilon * a * spec.omega
    p = np.zeros(spec.nmax + 1)
    q = np.zeros(spec.nmax + 1)
    p[n] = scale * (-A * np.sin(tau - gam))
    q[n] = scale * (-B * np.sin(tau - etap))
    flow, _ = SphereModeFlow.from_boundary_modes(a, eta, p, q, force_free=True)
    return flow


def _mode_flow(mode: MotionMode, t: float) -> SphereModeFlow:
    a, eta, U = mode.scenario.a, mode.scenario.eta, mode.scenario.U
    if mode.kind is MotionKind.DRAGGED:
        X = np.array([0.0, 1.5 * U])
        Y = np.array([0.0, -0.5 * U])
        return SphereModeFlow(a, eta, X, Y)
    if mode.kind is MotionKind.TANGENTIAL_BAND:
        return _band_mode_flow(mode)
    return _oscillating_flow(mode, t)


def exterior_flow(mode: MotionMode, point: tuple[float, float], t: float = 0.0) -> FlowSample:
    """Velocity and pressure at distance ``d`` from the surface, angle theta.

    ``point`` is (d, theta) with d >= 0 measured from the undistorted
    sphere surface.  All fields are in the rest frame of the far fluid.
    """
    d, theta = point
    a = mode.scenario.a
    if d < -1e-12 * a:
        raise InvalidParameterError("field point inside the sphere")
    r = a + max(d, 0.0)
    flow = _mode_flow(mode, t)
    _check_series_tail(flow, r, "exterior_flow")
    u_r, u_th = flow.velocity(r, theta)
    pressure = flow.pressure(r, theta)
    return FlowSample(d=d, theta=theta,
                      velocity=(float(u_r), float(u_th)),
                      pressure=float(pressure))


def _speed_envelope(flow: SphereModeFlow, r: float, thetas: np.ndarray) -> float:
    u_r, u_th = flow.velocity(np.full_like(thetas, r), thetas)
    return float(np.max(np.hypot(u_r, u_th)))


def max_speed_vs_distance(mode: MotionMode, d: float,
                          n_theta: int = 361, n_phase: int = 64) -> float:
    """Largest fluid speed at surface distance ``d``.

    The maximum is taken over the polar angle and, for the oscillating
    mode, also over one oscillation period.
    """
    if d < 0.0:
        raise InvalidParameterError(f"need d >= 0, got {d!r}")
    a = mode.scenario.a
    r = a + d
    thetas = np.linspace(0.0, math.pi, n_theta)
    if mode.kind is MotionKind.OSCILLATING:
        period = 2.0 * math.pi / mode.spectrum.omega
        return max(
            _speed_envelope(_mode_flow(mode, t), r, thetas)
            for t in np.linspace(0.0, period, n_phase, endpoint=False)
        )
    flow = _mode_flow(mode, 0.0)
    _check_series_tail(flow, r, "max_speed_vs_distance")
    return _speed_envelope(flow, r, thetas)


def shear_and_stress(mode: MotionMode, d: float, eta: float) -> dict[str, float]:
    """Radial decay rate of the speed envelope and the viscous stress scale.

    shear_rate = |d/dd of max_speed_vs_distance| by central difference with
    step d/100; stress = eta * shear_rate.
    """
    if d <= 0.0:
        raise InvalidParameterError(f"need d > 0, got {d!r}")
    h = d / 100.0
    v_plus = max_speed_vs_distance(mode, d + h)
    v_minus = max_speed_vs_distance(mode, d - h)
    shear = abs(v_plus - v_minus) / (2.0 * h)
    return {"shear_rate": shear, "stress": eta * shear}


def decay_exponent(mode: MotionMode, r_lo_over_a: float = 10.0,
                   r_hi_over_a: float = 100.0, n: int = 9) -> float:
    """Log-log slope of the max-speed envelope over r in [r_lo, r_hi].

    Around -1 for a dragged sphere (Stokeslet) and -2 or steeper for
    force-free swimmers.
    """
    a = mode.scenario.a
    rr = np.geomspace(r_lo_over_a * a, r_hi_over_a * a, n)
    vv = np.array([max_speed_vs_distance(mode, float(r - a)) for r in rr])
    slope, _ = np.polyfit(np.log(rr), np.log(vv), 1)
    return float(slope)
