"""Actuator dissipation and structural estimates."""

import math

import pytest

from microswim.actuators import (
    Duty,
    FrictionModel,
    REFERENCE_TREADMILL,
    RodArrayDesign,
    TREAD_AREA_SCALE,
    TreadmillDesign,
    piezo_requirements,
    rod_array_for_modes,
    sliding_friction_power,
    treadmill_analysis,
    wheel_rim_stress,
)
from microswim.errors import InvalidParameterError

TOL5 = 0.05 + 1e-12  # 5% vs paper-rounded values; epsilon guards exact-boundary floats


class TestSlidingFriction:
    def test_steady_treadmill_low(self):
        P = sliding_friction_power(FrictionModel(), S=20e-12, v=210e-6)
        assert P == pytest.approx(8.8e-16, rel=1e-2)
        assert P == pytest.approx(1e-15, rel=0.3)  # quoted order: 1e-3 pW

    def test_sinusoidal_rods_low(self):
        model = FrictionModel(duty=Duty.SINUSOIDAL)
        P = sliding_friction_power(model, S=40e-12, v=620e-6)
        assert P == pytest.approx(7.7e-15, rel=1e-2)
        assert P == pytest.approx(8e-15, rel=0.3)

    def test_zero_speed(self):
        assert sliding_friction_power(FrictionModel(), 20e-12, 0.0) == 0.0

    def test_speed_squared_scaling(self):
        model = FrictionModel()
        p1 = sliding_friction_power(model, 1e-12, 1e-4)
        p2 = sliding_friction_power(model, 1e-12, 1e-2)
        assert p2 == pytest.approx(1e4 * p1, rel=1e-12)

    def test_low_to_high_band_ratio(self):
        # 100x slower tread speed: internal power drops by exactly 1e4.
        model = FrictionModel()
        p_low = sliding_friction_power(model, 20e-12, 210e-6)
        p_high = sliding_friction_power(model, 20e-12, 2.1e-6)
        assert p_low / p_high == pytest.approx(1e4, rel=1e-12)


class TestTreadmill:
    def test_reference_design_numbers(self):
        out = treadmill_analysis(REFERENCE_TREADMILL, eta=1e-3, v=210e-6, d=100e-9)
        assert out["rotation_rate"] == pytest.approx(700.0, rel=TOL5)
        assert out["angular_velocity"] == pytest.approx(4200.0, rel=TOL5)
        assert out["bend_strain"] == pytest.approx(0.02, rel=TOL5)
        assert out["bend_stress"] == pytest.approx(20e9, rel=TOL5)
        assert out["fluid_drag"] == pytest.approx(0.2e-12, rel=TOL5)
        assert out["tread_tension"] == pytest.approx(2000.0, rel=TOL5)

    def test_zero_speed_keeps_geometry_terms(self):
        out = treadmill_analysis(REFERENCE_TREADMILL, eta=1e-3, v=0.0, d=100e-9)
        assert out["rotation_rate"] == 0.0
        assert out["fluid_drag"] == 0.0
        assert out["tread_tension"] == 0.0
        assert out["bend_strain"] == pytest.approx(0.02)
        assert out["bend_stress"] == pytest.approx(20e9)

    def test_strain_linear_in_thickness(self):
        thin = TreadmillDesign(h=0.5e-9)
        out = treadmill_analysis(thin, eta=1e-3, v=210e-6, d=100e-9)
        assert out["bend_strain"] == pytest.approx(0.01)
        assert out["bend_stress"] == pytest.approx(10e9)

    def test_tension_below_failure_strength(self):
        for v, eta in [(210e-6, 1e-3), (2.1e-6, 10.0)]:
            out = treadmill_analysis(REFERENCE_TREADMILL, eta=eta, v=v, d=100e-9)
            assert out["tread_tension"] < 1e10

    def test_invalid_geometry(self):
        with pytest.raises(InvalidParameterError):
            TreadmillDesign(h=60e-9, r=50e-9)


class TestWheels:
    def test_reference_stress(self):
        assert wheel_rim_stress(5000.0, 200e-6) == pytest.approx(2e-4, rel=1e-12)

    def test_zero_speed(self):
        assert wheel_rim_stress(5000.0, 0.0) == 0.0

    def test_quadratic_in_speed(self):
        assert wheel_rim_stress(5000.0, 400e-6) == pytest.approx(
            4.0 * wheel_rim_stress(5000.0, 200e-6), rel=1e-12
        )


class TestRodArray:
    def test_reference_array(self):
        design = rod_array_for_modes(20, a=1e-6, rod_radius=50e-9, max_disp=50e-9)
        assert math.pi * 1e-6 / 20 == pytest.approx(157e-9, rel=5e-3)
        assert design.rod_count == 509
        assert design.rod_count == pytest.approx(500, rel=0.05)
        assert design.rod_length == pytest.approx(250e-9)
        assert design.sliding_area == pytest.approx(40e-12, rel=0.02)

    def test_count_scales_with_mode_squared(self):
        d1 = rod_array_for_modes(10, 1e-6, 50e-9, 50e-9)
        d2 = rod_array_for_modes(20, 1e-6, 50e-9, 50e-9)
        assert d2.rod_count == pytest.approx(4 * d1.rod_count, rel=0.01)

    def test_area_consistency(self):
        d = rod_array_for_modes(14, 1e-6, 30e-9, 40e-9)
        assert d.sliding_area == pytest.approx(
            d.rod_count * 2 * math.pi * d.rod_radius * d.rod_length, rel=1e-12
        )

    def test_inconsistent_record_rejected(self):
        with pytest.raises(InvalidParameterError):
            RodArrayDesign(rod_radius=50e-9, rod_length=250e-9, rod_count=500,
                           sliding_area=1e-12, max_displacement=50e-9)


class TestPiezo:
    def test_reference_values(self):
        out = piezo_requirements(0.05, 1e-6, 0.5e-9)
        assert out["voltage"] == pytest.approx(100.0, rel=1e-12)
        assert out["field"] == pytest.approx(1e8, rel=1e-12)

    def test_zero_epsilon(self):
        assert piezo_requirements(0.0, 1e-6, 0.5e-9)["voltage"] == 0.0

    def test_voltage_inverse_in_response(self):
        v1 = piezo_requirements(0.05, 1e-6, 0.5e-9)["voltage"]
        v2 = piezo_requirements(0.05, 1e-6, 0.25e-9)["voltage"]
        assert v2 == pytest.approx(2 * v1, rel=1e-12)


class TestAreaScale:
    def test_calibration_point(self):
        # 20 um^2 of sliding area per 6.28 um^2 band: kappa ~ 3.18
        assert TREAD_AREA_SCALE == pytest.approx(3.183, rel=1e-3)
