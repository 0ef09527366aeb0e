"""Internal-power and structural models for the propulsion hardware.

Smooth stiff surfaces separated by atomic-scale gaps dissipate by phonon
scattering, P = k_friction * S * v^2, with k_friction below about
1000 kg/(m^2 s); that bound is the default here, making the internal-power
figures upper-bound estimates.  Treadmills, surface wheels, oscillating
rod arrays, and piezoelectric slabs are parameterized just far enough to
estimate their dissipation and structural margins.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidParameterError

__all__ = [
    "Duty",
    "FrictionModel",
    "TreadmillDesign",
    "RodArrayDesign",
    "sliding_friction_power",
    "treadmill_analysis",
    "wheel_rim_stress",
    "rod_array_for_modes",
    "piezo_requirements",
    "TREAD_AREA_SCALE",
    "REFERENCE_TREADMILL",
]

#: Default phonon-scattering friction coefficient, kg/(m^2 s).
DEFAULT_K_FRICTION = 1000.0

#: Sliding area per unit band area for the treadmill implementation,
#: calibrated from the reference sphere design: 20 um^2 of tread+bearing
#: sliding surface serving a 6.28 um^2 equatorial band.
TREAD_AREA_SCALE = 20e-12 / 6.283185307179586e-12


class Duty(enum.Enum):
    """Time-average factor of v^2 over the motion cycle."""

    STEADY = 1.0
    SINUSOIDAL = 0.5


@dataclass(frozen=True)
class FrictionModel:
    """Phonon-scattering sliding friction with a duty factor."""

    k_friction: float = DEFAULT_K_FRICTION
    duty: Duty = Duty.STEADY

    def __post_init__(self):
        if self.k_friction <= 0.0:
            raise InvalidParameterError(
                f"k_friction must be > 0, got {self.k_friction!r}"
            )


@dataclass(frozen=True)
class TreadmillDesign:
    """A set of treadmills covering an equatorial band.

    Geometry of one tread (width W, exposed length L, thickness h, Young's
    modulus E, bearing radius r) plus the total sliding area of all treads
    and bearings against their housings.
    """

    W: float = 100e-9
    L: float = 1e-6
    h: float = 1e-9
    E: float = 1000e9
    r: float = 50e-9
    count: int = 50
    sliding_area: float = 20e-12

    def __post_init__(self):
        if self.h >= self.r:
            raise InvalidParameterError("tread thickness must be below bearing radius")
        if self.count < 1:
            raise InvalidParameterError("need at least one treadmill")
        if self.sliding_area <= 0.0:
            raise InvalidParameterError("sliding area must be positive")


@dataclass(frozen=True)
class RodArrayDesign:
    """Radially actuated rods under a flexible surface."""

    rod_radius: float
    rod_length: float
    rod_count: int
    sliding_area: float
    max_displacement: float

    def __post_init__(self):
        if not math.isclose(self.rod_length, 5.0 * self.max_displacement, rel_tol=1e-9):
            raise InvalidParameterError(
                "rod length is sized as 5x the maximum displacement"
            )
        expected = self.rod_count * 2.0 * math.pi * self.rod_radius * self.rod_length
        if not math.isclose(self.sliding_area, expected, rel_tol=1e-9):
            raise InvalidParameterError(
                f"sliding area {self.sliding_area!r} inconsistent with "
                f"rod_count*2*pi*r*l = {expected!r}"
            )


#: Treadmill parameters of the worked example (tread speed set per scenario).
REFERENCE_TREADMILL = TreadmillDesign()


def sliding_friction_power(model: FrictionModel, S: float, v: float) -> float:
    """Friction power duty * k * S * v^2 for peak sliding speed ``v``."""
    if S < 0.0 or v < 0.0:
        raise InvalidParameterError(f"need S, v >= 0, got S={S!r}, v={v!r}")
    return model.duty.value * model.k_friction * S * v * v


def treadmill_analysis(design: TreadmillDesign, eta: float, v: float,
                       d: float) -> dict[str, float]:
    """Rates, strains, and forces for a tread pulled at speed ``v``.

    ``d`` is the distance to the nearest wall used for the fluid-drag
    estimate F = eta (v/d) L W.  Bending the tread of thickness h around a
    bearing of radius r strains it by h/r (stress E h / r).
    """
    if d <= 0.0:
        raise InvalidParameterError(f"need wall distance d > 0, got {d!r}")
    if v < 0.0:
        raise InvalidParameterError(f"need v >= 0, got {v!r}")
    drag = eta * (v / d) * design.L * design.W
    return {
        "rotation_rate": v / (2.0 * math.pi * design.r),
        "angular_velocity": v / design.r,
        "bend_strain": design.h / design.r,
        "bend_stress": design.E * design.h / design.r,
        "fluid_drag": drag,
        "tread_tension": drag / (design.h * design.W),
    }


def wheel_rim_stress(rho: float, v: float) -> float:
    """Centrifugal stress scale rho v^2 on a spinning disk rim."""
    if rho < 0.0 or v < 0.0:
        raise InvalidParameterError(f"need rho, v >= 0, got rho={rho!r}, v={v!r}")
    return rho * v * v


def rod_array_for_modes(n_max: int, a: float, rod_radius: float,
                        max_disp: float) -> RodArrayDesign:
    """Rod array able to drive surface waves up to mode ``n_max``.

    Modes up to n_max need independent actuation at spacing pi*a/n_max,
    hence about 4*pi*a^2 / spacing^2 rods over the sphere.
    """
    if n_max < 2:
        raise InvalidParameterError(f"need n_max >= 2, got {n_max}")
    if a <= 0.0 or rod_radius <= 0.0 or max_disp <= 0.0:
        raise InvalidParameterError("rod geometry must be positive")
    spacing = math.pi * a / n_max
    count = round(4.0 * math.pi * a * a / spacing ** 2)
    length = 5.0 * max_disp
    return RodArrayDesign(
        rod_radius=rod_radius,
        rod_length=length,
        rod_count=count,
        sliding_area=count * 2.0 * math.pi * rod_radius * length,
        max_displacement=max_disp,
    )


def piezo_requirements(epsilon: float, a: float, d_per_volt: float) -> dict[str, float]:
    """Voltage and field to drive displacement a*eps piezoelectrically.

    The field is taken across a slab of thickness equal to the robot
    radius ``a`` (an equatorial slab spanning the robot center); using the
    full diameter 2a would halve it.
    """
    if d_per_volt <= 0.0:
        raise InvalidParameterError(f"need d_per_volt > 0, got {d_per_volt!r}")
    if epsilon < 0.0 or a <= 0.0:
        raise InvalidParameterError("need epsilon >= 0 and a > 0")
    voltage = a * epsilon / d_per_volt
    return {"voltage": voltage, "field": voltage / a}
