"""Scenario presets, Stokes drag baseline, and config-file loading."""

import math

import pytest
from hypothesis import given, strategies as st

from microswim.errors import ConfigError, InvalidParameterError
from microswim.scenarios import (
    HIGH,
    LOW,
    Scenario,
    drag_power,
    load_scenario_file,
    make_scenario,
    reynolds,
    stokes_drag,
)

positive = st.floats(min_value=1e-9, max_value=1e9,
                     allow_nan=False, allow_infinity=False)


class TestStokesDrag:
    def test_low_scenario_force(self):
        # 6 pi * 1e-3 * 1e-6 * 1e-4 = 1.885e-12 N
        assert stokes_drag(1e-6, 1e-3, 100e-6) == pytest.approx(1.885e-12, rel=1e-3)

    def test_high_scenario_force(self):
        assert stokes_drag(1e-6, 10.0, 1e-6) == pytest.approx(188.5e-12, rel=1e-3)

    def test_zero_speed(self):
        assert stokes_drag(1e-6, 1e-3, 0.0) == 0.0

    def test_invalid_parameters(self):
        with pytest.raises(InvalidParameterError):
            stokes_drag(0.0, 1e-3, 1e-6)
        with pytest.raises(InvalidParameterError):
            stokes_drag(1e-6, -1.0, 1e-6)
        with pytest.raises(InvalidParameterError):
            stokes_drag(1e-6, 1e-3, -1e-6)

    @given(a=positive, eta=positive, U=positive, s=st.floats(min_value=0.5, max_value=2.0))
    def test_linearity_in_each_argument(self, a, eta, U, s):
        base = stokes_drag(a, eta, U)
        assert stokes_drag(s * a, eta, U) == pytest.approx(s * base, rel=1e-12)
        assert stokes_drag(a, s * eta, U) == pytest.approx(s * base, rel=1e-12)
        assert stokes_drag(a, eta, s * U) == pytest.approx(s * base, rel=1e-12)

    def test_drag_power_is_force_times_speed(self):
        assert drag_power(1e-6, 1e-3, 100e-6) == pytest.approx(
            stokes_drag(1e-6, 1e-3, 100e-6) * 100e-6
        )


class TestReynolds:
    def test_low_preset(self):
        assert LOW.reynolds == pytest.approx(1e-4, rel=1e-9)

    def test_high_preset(self):
        assert HIGH.reynolds == pytest.approx(1e-10, rel=1e-9)

    def test_zero_speed(self):
        assert reynolds(1e-6, 0.0, 1e-6) == 0.0

    def test_zero_viscosity_rejected(self):
        with pytest.raises(InvalidParameterError):
            reynolds(1e-6, 1e-6, 0.0)


class TestPresets:
    def test_low_values(self):
        assert LOW.eta == 1e-3
        assert LOW.nu == 1e-6
        assert LOW.U == 100e-6
        assert LOW.a == 1e-6
        assert LOW.T_body == 310.0
        assert LOW.rho == 1000.0
        assert LOW.c == 1500.0

    def test_high_values(self):
        assert HIGH.eta == 10.0
        assert HIGH.nu == 1e-2
        assert HIGH.U == 1e-6

    def test_drag_power_same_in_both_scenarios(self):
        # Both presets dissipate 1.885e-16 W (rounds to 2e-4 pW).
        assert LOW.drag_power == pytest.approx(1.885e-16, rel=1e-3)
        assert HIGH.drag_power == pytest.approx(LOW.drag_power, rel=1e-12)
        assert LOW.drag_power == pytest.approx(2e-16, rel=0.06)

    def test_make_scenario_presets(self):
        assert make_scenario("low") is LOW
        assert make_scenario("HIGH") is HIGH

    def test_unknown_preset_lists_valid_names(self):
        with pytest.raises(InvalidParameterError, match="low"):
            make_scenario("medium")

    def test_explicit_fields_derive_nu(self):
        s = make_scenario(eta=1e-3, rho=1000.0)
        assert s.nu == pytest.approx(1e-6)

    def test_override_preset_field(self):
        s = make_scenario("high", eta=5.0)
        assert s.eta == 5.0
        assert s.nu == pytest.approx(5e-3)
        assert s.U == HIGH.U

    def test_inconsistent_nu_rejected(self):
        with pytest.raises(InvalidParameterError, match="inconsistent"):
            Scenario(name="bad", c=1500.0, rho=1000.0, T_body=310.0,
                     eta=1e-3, nu=2e-6, a=1e-6, U=1e-6)

    def test_nonpositive_field_rejected(self):
        with pytest.raises(InvalidParameterError):
            make_scenario(eta=-1.0)


class TestScenarioFile:
    def test_round_trip(self, tmp_path):
        cfg = tmp_path / "custom.cfg"
        cfg.write_text(
            "# custom fluid\n"
            "name = syrup\n"
            "eta = 0.5\n"
            "rho = 1200\n"
            "U = 2e-6\n"
        )
        s = load_scenario_file(cfg)
        assert s.name == "syrup"
        assert s.eta == 0.5
        assert s.nu == pytest.approx(0.5 / 1200.0)
        assert s.U == 2e-6
        assert s.a == LOW.a  # unspecified fields fall back to defaults

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("viscosity = 1.0\n")
        with pytest.raises(ConfigError, match="viscosity"):
            load_scenario_file(cfg)

    def test_bad_number_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("eta = fast\n")
        with pytest.raises(ConfigError, match="bad number"):
            load_scenario_file(cfg)

    def test_malformed_line_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just some words\n")
        with pytest.raises(ConfigError, match="key=value"):
            load_scenario_file(cfg)


class TestPerformanceRecord:
    def test_negative_power_rejected(self):
        from microswim.scenarios import PerformanceRecord

        with pytest.raises(InvalidParameterError):
            PerformanceRecord(speed=1e-6, propulsion_power=-1.0,
                              internal_power=0.0, efficiency=0.1, thrust=1e-12)

    def test_total_power(self):
        from microswim.scenarios import PerformanceRecord

        rec = PerformanceRecord(speed=1e-6, propulsion_power=2.0,
                                internal_power=3.0, efficiency=0.1, thrust=1e-12)
        assert rec.total_power == 5.0
