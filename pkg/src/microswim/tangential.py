"""Propulsion of a sphere by steady tangential surface motion.

For a sphere of radius ``a`` with tangential surface velocity u(theta, phi)
the rigid-body response is

    U     = -1/(4 pi a^2) * surface integral of u
    Omega = -3/(8 pi a^3) * surface integral of (n x u)

and, for axisymmetric motion, the power delivered to the fluid is
(2 eta / a) * surface integral of |u|^2.  Closed forms for an equatorial
band of angular width gamma moving at constant meridional speed v:

    U          = v (gamma + sin gamma) / 4
    P          = 8 pi a eta v^2 sin(gamma/2)
    efficiency = (3/64) (gamma + sin gamma)^2 / sin(gamma/2)

Vectors are reported in the body frame with the propulsion axis as +z.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_legendre

from .errors import InvalidParameterError, NumericalError, UnsupportedInputError
from .scenarios import PerformanceRecord, Scenario, drag_power, stokes_drag

__all__ = [
    "Profile",
    "BandActuation",
    "SurfaceVelocityField",
    "band_field",
    "sine_field",
    "locomotion_velocity",
    "angular_velocity",
    "propulsion_power",
    "band_performance",
    "required_band_speed",
]


class Profile(enum.Enum):
    """Band surface-motion profiles."""

    CONSTANT_MERIDIONAL = "constant_meridional"
    COS_PHI_ROTATION = "cos_phi_rotation"


@dataclass(frozen=True)
class BandActuation:
    """Equatorial band of angular width ``gamma`` moving at surface speed ``v``.

    The band spans polar angles psi <= theta <= pi - psi with
    psi = (pi - gamma)/2.  CONSTANT_MERIDIONAL moves material along
    meridians (north to south for v > 0, propelling the body toward +z);
    COS_PHI_ROTATION modulates the meridional speed by cos(phi), which
    spins the body about the -y axis.
    """

    gamma: float
    v: float
    profile: Profile = Profile.CONSTANT_MERIDIONAL

    def __post_init__(self):
        if not (0.0 < self.gamma <= math.pi):
            raise InvalidParameterError(
                f"band angle gamma must be in (0, pi], got {self.gamma!r}"
            )
        if self.v < 0.0:
            raise InvalidParameterError(f"band speed must be >= 0, got {self.v!r}")

    @property
    def psi(self) -> float:
        """Co-latitude of the band's upper edge."""
        return 0.5 * (math.pi - self.gamma)

    @property
    def area_fraction(self) -> float:
        """Fraction of the sphere surface covered by the band: sin(gamma/2)."""
        return math.sin(0.5 * self.gamma)


@dataclass(frozen=True)
class SurfaceVelocityField:
    """Tangential surface velocity on a sphere.

    ``evaluator(theta, phi)`` returns the (u_theta, u_phi) components in the
    local (theta_hat, phi_hat) basis; both arguments are broadcastable numpy
    arrays.  The radial component is zero by construction.  If
    ``axisymmetric`` is set the evaluator must not depend on phi.
    ``theta_breakpoints`` lists polar angles where the field is
    discontinuous, so quadrature panels can be split there.
    """

    evaluator: Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]
    axisymmetric: bool = False
    theta_breakpoints: tuple[float, ...] = field(default=())


def band_field(band: BandActuation) -> SurfaceVelocityField:
    """Surface velocity field for an equatorial band actuation."""
    psi = band.psi
    v = band.v

    if band.profile is Profile.CONSTANT_MERIDIONAL:

        def evaluator(theta, phi):
            theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
            inside = (theta >= psi) & (theta <= math.pi - psi)
            return np.where(inside, v, 0.0), np.zeros_like(theta)

        return SurfaceVelocityField(evaluator, axisymmetric=True,
                                    theta_breakpoints=(psi, math.pi - psi))

    def evaluator(theta, phi):
        theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
        inside = (theta >= psi) & (theta <= math.pi - psi)
        return np.where(inside, v * np.cos(phi), 0.0), np.zeros_like(theta)

    return SurfaceVelocityField(evaluator, axisymmetric=False,
                                theta_breakpoints=(psi, math.pi - psi))


def sine_field(v: float) -> SurfaceVelocityField:
    """Full-sphere meridional field u_theta = v sin(theta).

    This is the maximally efficient tangential stroke (hydrodynamic
    efficiency 1/2, swimming speed 2v/3).
    """

    def evaluator(theta, phi):
        theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
        return v * np.sin(theta), np.zeros_like(theta)

    return SurfaceVelocityField(evaluator, axisymmetric=True)


def _quadrature_grid(field_: SurfaceVelocityField, n_theta: int, n_phi: int):
    """Gauss-Legendre nodes in theta per smooth panel x uniform phi grid.

    The sin(theta) area factor is folded into the weights, which integrate
    over the unit-sphere solid angle (weights sum to 4 pi).  Gauss nodes in
    theta rather than cos(theta) keep the rule spectrally accurate for
    bands whose edges touch the poles, where tangential components carry a
    sqrt(1 - cos^2) factor.
    """
    breaks = sorted(b for b in field_.theta_breakpoints if 0.0 < b < math.pi)
    edges = [0.0] + breaks + [math.pi]
    th_nodes = []
    th_weights = []
    x, w = roots_legendre(n_theta)
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo < 1e-15:
            continue
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        nodes = mid + half * x
        th_nodes.append(nodes)
        th_weights.append(half * w * np.sin(nodes))
    theta = np.concatenate(th_nodes)
    wth = np.concatenate(th_weights)

    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    wphi = np.full(n_phi, 2.0 * math.pi / n_phi)

    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(wth, wphi)
    return TH.ravel(), PH.ravel(), W.ravel()


def _surface_average(field_: SurfaceVelocityField, integrand, n_theta: int, n_phi: int):
    """Integrate ``integrand(theta, phi, u_theta, u_phi)`` over solid angle."""
    theta, phi, w = _quadrature_grid(field_, n_theta, n_phi)
    u_t, u_p = field_.evaluator(theta, phi)
    values = integrand(theta, phi, np.asarray(u_t, float), np.asarray(u_p, float))
    return np.tensordot(values, w, axes=([-1], [0]))


def _refined(field_: SurfaceVelocityField, integrand, n_theta: int, n_phi: int,
             scale: float, what: str):
    """Evaluate with one refinement doubling and check convergence."""
    coarse = _surface_average(field_, integrand, n_theta, n_phi)
    fine = _surface_average(field_, integrand, 2 * n_theta, 2 * n_phi)
    denom = max(float(np.max(np.abs(fine))), scale, 1e-300)
    change = float(np.max(np.abs(fine - coarse))) / denom
    if change > 1e-10:
        raise NumericalError(
            f"{what}: quadrature did not converge (relative change {change:.3e} "
            f"between refinement levels); check the field for unregistered "
            f"discontinuities"
        )
    return fine


def _field_scale(field_: SurfaceVelocityField) -> float:
    """Rough magnitude of the surface speed, for relative convergence checks."""
    theta = np.linspace(0.05, math.pi - 0.05, 41)
    phi = np.linspace(0.0, 2.0 * math.pi, 17, endpoint=False)
    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    u_t, u_p = field_.evaluator(TH, PH)
    return float(np.max(np.hypot(u_t, u_p)))


def locomotion_velocity(field_: SurfaceVelocityField, a: float,
                        n_theta: int = 64, n_phi: int = 128) -> np.ndarray:
    """Rigid-body translation velocity induced by a tangential surface field.

    Evaluates -1/(4 pi a^2) times the surface integral of u by Gauss
    quadrature in cos(theta) and a trapezoid rule in phi, with one
    refinement doubling as a convergence check.
    """
    if a <= 0.0:
        raise InvalidParameterError(f"need a > 0, got {a!r}")

    def integrand(theta, phi, u_t, u_p):
        sin_t, cos_t = np.sin(theta), np.cos(theta)
        sin_p, cos_p = np.sin(phi), np.cos(phi)
        ux = u_t * cos_t * cos_p - u_p * sin_p
        uy = u_t * cos_t * sin_p + u_p * cos_p
        uz = -u_t * sin_t
        return np.stack([ux, uy, uz])

    scale = _field_scale(field_)
    integral = _refined(field_, integrand, n_theta, n_phi, scale, "locomotion_velocity")
    return -integral / (4.0 * math.pi)


def angular_velocity(field_: SurfaceVelocityField, a: float,
                     n_theta: int = 64, n_phi: int = 128) -> np.ndarray:
    """Rigid-body angular velocity: -3/(8 pi a^3) * integral of n x u.

    Zero for any axisymmetric field.
    """
    if a <= 0.0:
        raise InvalidParameterError(f"need a > 0, got {a!r}")

    def integrand(theta, phi, u_t, u_p):
        # n x u = n x (u_t theta_hat + u_p phi_hat) = u_t phi_hat - u_p theta_hat
        sin_t, cos_t = np.sin(theta), np.cos(theta)
        sin_p, cos_p = np.sin(phi), np.cos(phi)
        wx = -u_t * sin_p - u_p * cos_t * cos_p
        wy = u_t * cos_p - u_p * cos_t * sin_p
        wz = u_p * sin_t
        return np.stack([wx, wy, wz])

    scale = _field_scale(field_)
    integral = _refined(field_, integrand, n_theta, n_phi, scale, "angular_velocity")
    return -(3.0 / (8.0 * math.pi * a)) * integral


def propulsion_power(field_: SurfaceVelocityField, a: float, eta: float,
                     n_theta: int = 64, n_phi: int = 128) -> float:
    """Power to sustain an axisymmetric tangential surface motion.

    Evaluates (2 eta / a) * surface integral of |u|^2.  Restricted to
    axisymmetric fields; for general fields use the boundary-element
    solver (bem.solve_swim).
    """
    if a <= 0.0 or eta <= 0.0:
        raise InvalidParameterError(f"need a > 0 and eta > 0, got a={a!r}, eta={eta!r}")
    if not field_.axisymmetric:
        raise UnsupportedInputError(
            "propulsion_power handles axisymmetric fields only; use "
            "bem.solve_swim for general surface motion"
        )

    def integrand(theta, phi, u_t, u_p):
        return u_t * u_t + u_p * u_p

    scale = _field_scale(field_) ** 2
    integral = _refined(field_, integrand, n_theta, n_phi, scale, "propulsion_power")
    return 2.0 * eta * a * float(integral)


def band_performance(band: BandActuation, scenario: Scenario,
                     internal_power: float = 0.0) -> PerformanceRecord:
    """Closed-form performance of a constant-speed equatorial band.

    ``internal_power`` lets the caller attach an actuator dissipation model
    (see actuators.sliding_friction_power); it defaults to zero.
    """
    if band.profile is not Profile.CONSTANT_MERIDIONAL:
        raise UnsupportedInputError(
            "band_performance applies to CONSTANT_MERIDIONAL bands; "
            "rotation profiles have no translation closed form"
        )
    gamma, v = band.gamma, band.v
    a, eta = scenario.a, scenario.eta
    speed = 0.25 * v * (gamma + math.sin(gamma))
    power = 8.0 * math.pi * a * eta * v * v * math.sin(0.5 * gamma)
    if power > 0.0:
        efficiency = drag_power(a, eta, speed) / power
    else:
        efficiency = 0.0
    thrust = stokes_drag(a, eta, speed)
    return PerformanceRecord(
        speed=speed,
        propulsion_power=power,
        internal_power=internal_power,
        efficiency=efficiency,
        thrust=thrust,
    )


def required_band_speed(U_target: float, gamma: float) -> float:
    """Surface speed achieving locomotion speed ``U_target`` for a band.

    Inverse of the band speed closed form: v = 4 U / (gamma + sin gamma).
    """
    if not (0.0 < gamma <= math.pi):
        raise InvalidParameterError(f"band angle gamma must be in (0, pi], got {gamma!r}")
    if U_target < 0.0:
        raise InvalidParameterError(f"need U_target >= 0, got {U_target!r}")
    return 4.0 * U_target / (gamma + math.sin(gamma))


def band_rotation_rate(band: BandActuation, a: float) -> float:
    """Angular speed of the COS_PHI_ROTATION band: (3/4)(v/a) sin(gamma/2).

    The rotation axis is -y for the band orientation used here.
    """
    if band.profile is not Profile.COS_PHI_ROTATION:
        raise UnsupportedInputError("band_rotation_rate applies to COS_PHI_ROTATION bands")
    if a <= 0.0:
        raise InvalidParameterError(f"need a > 0, got {a!r}")
    return 0.75 * (band.v / a) * math.sin(0.5 * band.gamma)


def rotation_time(angle: float, omega: float) -> float:
    """Time to turn through ``angle`` radians at angular speed ``omega``."""
    if omega <= 0.0:
        raise InvalidParameterError(f"need omega > 0, got {omega!r}")
    return angle / omega
