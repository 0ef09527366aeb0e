"""Brownian motion of a propelled particle and dead-reckoning limits.

Translation diffuses with D = k_B T / (6 pi a eta); the heading of a
sphere decorrelates with time constant tau = 4 pi a^3 eta / (k_B T), and
D * tau = (2/3) a^2 identically.  A self-propelled particle whose heading
randomizes over tau behaves diffusively at long times with motile
coefficient D_m = tau U^2 / 3.  Over shorter stretches the rms heading
error sqrt(t / tau) limits dead reckoning: covering distance d with rms
angle at most alpha requires speed U >= d / (tau alpha^2).

For spheroids, heading loss is rotation about the transverse axes (spin
about the symmetry axis leaves the heading unchanged); the transverse
rotational friction uses the classical ellipsoid integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import K_B
from .errors import InvalidParameterError

__all__ = [
    "BrownianRecord",
    "translational_diffusion",
    "orientation_time",
    "spheroid_orientation_time",
    "rms_displacement",
    "motile_diffusion",
    "dead_reckoning_speed",
    "brownian_record",
    "prolate_transverse_rotation_friction",
    "prolate_axial_rotation_friction",
    "prolate_alpha_integrals",
]


@dataclass(frozen=True)
class BrownianRecord:
    """Diffusion coefficient, orientation time, and motile diffusion."""

    D: float
    tau: float
    D_m: float


def _require_positive(**kwargs):
    for name, value in kwargs.items():
        if value <= 0.0:
            raise InvalidParameterError(f"need {name} > 0, got {value!r}")


def translational_diffusion(a: float, eta: float, T: float) -> float:
    """Stokes-Einstein diffusion coefficient k_B T / (6 pi a eta)."""
    _require_positive(a=a, eta=eta, T=T)
    return K_B * T / (6.0 * math.pi * a * eta)


def orientation_time(a: float, eta: float, T: float) -> float:
    """Heading decorrelation time of a sphere, 4 pi a^3 eta / (k_B T)."""
    _require_positive(a=a, eta=eta, T=T)
    return 4.0 * math.pi * a ** 3 * eta / (K_B * T)


def prolate_alpha_integrals(a: float, b: float) -> tuple[float, float]:
    """Ellipsoid shape integrals (alpha_a, alpha_b) for a prolate spheroid.

    alpha_a = int_0^inf ds / ((a^2+s)^(3/2) (b^2+s)) and
    alpha_b = int_0^inf ds / ((b^2+s)^2 sqrt(a^2+s)), in closed form via
    L = ln((a + c)/b) with c = sqrt(a^2 - b^2); both reduce to 2/(3 a^3)
    for the sphere.
    """
    _require_positive(a=a, b=b)
    if b > a:
        raise InvalidParameterError(f"prolate spheroid needs a >= b, got a={a!r} b={b!r}")
    c = math.sqrt(max(a * a - b * b, 0.0))
    if c < 1e-6 * a:
        # sphere limit with the O(c^2/a^2) series terms (cancellation kills
        # the closed form here)
        e2 = (c / a) ** 2
        alpha_a = 2.0 / (3.0 * a ** 3) * (1.0 + 0.6 * e2)
        alpha_b = 2.0 / (3.0 * a ** 3) * (1.0 + 1.2 * e2)
        return alpha_a, alpha_b
    L = math.log((a + c) / b)
    alpha_a = (2.0 / c ** 3) * (L - c / a)
    alpha_b = a / (c * c * b * b) - L / c ** 3
    return alpha_a, alpha_b


def prolate_transverse_rotation_friction(a: float, b: float, eta: float) -> float:
    """Rotational friction about a transverse axis, C = T/Omega.

    Classical ellipsoid result (16 pi eta / 3)(a^2 + b^2) /
    (b^2 alpha_b + a^2 alpha_a); equals 8 pi eta a^3 for a sphere.
    """
    _require_positive(eta=eta)
    alpha_a, alpha_b = prolate_alpha_integrals(a, b)
    return (16.0 * math.pi * eta / 3.0) * (a * a + b * b) / (
        b * b * alpha_b + a * a * alpha_a
    )


def prolate_axial_rotation_friction(a: float, b: float, eta: float) -> float:
    """Rotational friction for spin about the symmetry axis.

    (16 pi eta / 3) / alpha_b; equals 8 pi eta a^3 for a sphere.
    """
    _require_positive(eta=eta)
    _, alpha_b = prolate_alpha_integrals(a, b)
    return (16.0 * math.pi * eta / 3.0) / alpha_b


def spheroid_orientation_time(shape, eta: float, T: float) -> float:
    """Heading decorrelation time of a prolate spheroid.

    Heading is lost through rotation about the transverse axes, so
    tau = C_transverse / (2 k_B T); reduces to the sphere formula at a = b.
    ``shape`` is any object with semi-axes attributes ``a`` and ``b``.
    """
    _require_positive(eta=eta, T=T)
    C = prolate_transverse_rotation_friction(shape.a, shape.b, eta)
    return C / (2.0 * K_B * T)


def rms_displacement(D: float, t: float) -> float:
    """Root-mean-square displacement sqrt(6 D t) after time t."""
    if D < 0.0 or t < 0.0:
        raise InvalidParameterError(f"need D, t >= 0, got D={D!r}, t={t!r}")
    return math.sqrt(6.0 * D * t)


def motile_diffusion(tau: float, U: float) -> float:
    """Long-time diffusion coefficient tau U^2 / 3 of a self-propelled body."""
    if tau < 0.0 or U < 0.0:
        raise InvalidParameterError(f"need tau, U >= 0, got tau={tau!r}, U={U!r}")
    return tau * U * U / 3.0


def dead_reckoning_speed(d: float, tau: float, alpha_rms: float) -> float:
    """Minimum speed to cover ``d`` before the rms heading error exceeds alpha.

    U = d / (tau alpha^2), alpha in radians.
    """
    _require_positive(d=d, tau=tau)
    if alpha_rms <= 0.0:
        raise InvalidParameterError(
            f"alpha_rms must be > 0 (zero would require infinite speed), "
            f"got {alpha_rms!r}"
        )
    return d / (tau * alpha_rms * alpha_rms)


def brownian_record(a: float, eta: float, T: float, U: float) -> BrownianRecord:
    """Brownian summary for a sphere moving at speed U."""
    tau = orientation_time(a, eta, T)
    return BrownianRecord(
        D=translational_diffusion(a, eta, T),
        tau=tau,
        D_m=motile_diffusion(tau, U),
    )
