"""Fluid/robot parameter bundles and the externally forced sphere baseline.

All quantities are SI base units internally; unit conversion happens only at
I/O boundaries (CLI flags, file output).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, InvalidParameterError

__all__ = [
    "Scenario",
    "PerformanceRecord",
    "stokes_drag",
    "drag_power",
    "reynolds",
    "make_scenario",
    "load_scenario_file",
    "LOW",
    "HIGH",
]


@dataclass(frozen=True)
class Scenario:
    """Fluid and robot parameters for one operating environment.

    Attributes
    ----------
    name : str
        Label for the scenario.
    c : float
        Speed of sound in the fluid, m/s.
    rho : float
        Fluid density, kg/m^3.
    T_body : float
        Ambient temperature, K.
    eta : float
        Dynamic viscosity, Pa*s.
    nu : float
        Kinematic viscosity eta/rho, m^2/s.
    a : float
        Robot radius, m.
    U : float
        Target locomotion speed, m/s.
    """

    name: str
    c: float
    rho: float
    T_body: float
    eta: float
    nu: float
    a: float
    U: float

    def __post_init__(self):
        for field in ("c", "rho", "T_body", "eta", "nu", "a", "U"):
            value = getattr(self, field)
            if not (value > 0.0) or not math.isfinite(value):
                raise InvalidParameterError(
                    f"scenario field {field!r} must be strictly positive, got {value!r}"
                )
        if not math.isclose(self.nu, self.eta / self.rho, rel_tol=1e-12):
            raise InvalidParameterError(
                f"kinematic viscosity inconsistent: nu={self.nu!r} but eta/rho="
                f"{self.eta / self.rho!r}"
            )

    @property
    def reynolds(self) -> float:
        """Reynolds number a*U/nu at the target speed."""
        return reynolds(self.a, self.U, self.nu)

    @property
    def drag_force(self) -> float:
        """Stokes drag force at the target speed, N."""
        return stokes_drag(self.a, self.eta, self.U)

    @property
    def drag_power(self) -> float:
        """Power to drag the sphere at the target speed, W."""
        return drag_power(self.a, self.eta, self.U)


@dataclass(frozen=True)
class PerformanceRecord:
    """Locomotion performance of one (design, scenario) pair.

    ``speed`` is the signed velocity component along the propulsion axis
    (+z); the remaining fields are nonnegative.
    """

    speed: float
    propulsion_power: float
    internal_power: float
    efficiency: float
    thrust: float

    def __post_init__(self):
        for field in ("propulsion_power", "internal_power", "efficiency", "thrust"):
            value = getattr(self, field)
            if value < 0.0 or not math.isfinite(value):
                raise InvalidParameterError(
                    f"performance field {field!r} must be >= 0, got {value!r}"
                )

    @property
    def total_power(self) -> float:
        return self.propulsion_power + self.internal_power


def stokes_drag(a: float, eta: float, U: float) -> float:
    """Force to drag a sphere of radius ``a`` at speed ``U``: 6*pi*eta*a*U.

    Valid at low Reynolds number.  The drag power is the returned force
    times ``U``.
    """
    if a <= 0.0 or eta <= 0.0:
        raise InvalidParameterError(f"need a > 0 and eta > 0, got a={a!r}, eta={eta!r}")
    if U < 0.0:
        raise InvalidParameterError(f"need U >= 0, got {U!r}")
    return 6.0 * math.pi * eta * a * U


def drag_power(a: float, eta: float, U: float) -> float:
    """Power dissipated dragging a sphere at speed ``U``, W."""
    return stokes_drag(a, eta, U) * U


def reynolds(a: float, U: float, nu: float) -> float:
    """Reynolds number a*U/nu."""
    if a <= 0.0 or nu <= 0.0:
        raise InvalidParameterError(f"need a > 0 and nu > 0, got a={a!r}, nu={nu!r}")
    return a * U / nu


# Preset scenarios: water-like and mucus/cytoplasm-like fluids.  The robot
# moves 100x slower in the viscous fluid so both presets dissipate the same
# external drag power.
LOW = Scenario(
    name="low",
    c=1500.0,
    rho=1000.0,
    T_body=310.0,
    eta=1e-3,
    nu=1e-6,
    a=1e-6,
    U=100e-6,
)

HIGH = Scenario(
    name="high",
    c=1500.0,
    rho=1000.0,
    T_body=310.0,
    eta=10.0,
    nu=1e-2,
    a=1e-6,
    U=1e-6,
)

_PRESETS = {"low": LOW, "high": HIGH}

_SCENARIO_FIELDS = ("name", "c", "rho", "T_body", "eta", "nu", "a", "U")


def make_scenario(preset: str | None = None, **fields) -> Scenario:
    """Build a scenario from a preset name and/or explicit field overrides.

    ``make_scenario("low")`` returns the low-viscosity preset.  Explicit
    fields override preset values; with no preset the low-viscosity values
    serve as the base.  ``nu`` is rederived from eta/rho unless explicitly
    given, in which case it must be consistent.
    """
    if preset is not None:
        key = preset.lower()
        if key not in _PRESETS:
            raise InvalidParameterError(
                f"unknown scenario preset {preset!r}; valid presets: "
                + ", ".join(sorted(_PRESETS))
            )
        base = _PRESETS[key]
    else:
        base = LOW

    unknown = set(fields) - set(_SCENARIO_FIELDS)
    if unknown:
        raise ConfigError(
            f"unknown scenario field(s): {', '.join(sorted(unknown))}; "
            f"valid fields: {', '.join(_SCENARIO_FIELDS)}"
        )
    if not fields:
        return base

    values = {f: getattr(base, f) for f in _SCENARIO_FIELDS}
    values["name"] = fields.pop("name", "custom")
    explicit_nu = "nu" in fields
    values.update(fields)
    if not explicit_nu:
        values["nu"] = values["eta"] / values["rho"]
    return Scenario(**values)


def load_scenario_file(path: str | Path) -> Scenario:
    """Load a scenario from a plain-text key=value file (SI units).

    Keys match :class:`Scenario` field names.  Unknown keys are rejected.
    Lines starting with ``#`` and blank lines are ignored.
    """
    path = Path(path)
    fields: dict[str, object] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SCENARIO_FIELDS:
            raise ConfigError(
                f"{path}:{lineno}: unknown scenario field {key!r}; valid fields: "
                + ", ".join(_SCENARIO_FIELDS)
            )
        if key == "name":
            fields[key] = value
        else:
            try:
                fields[key] = float(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad number {value!r}") from exc
    if "name" not in fields:
        fields["name"] = path.stem
    try:
        return make_scenario(**fields)
    except InvalidParameterError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
