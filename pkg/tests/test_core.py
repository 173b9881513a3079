"""Unit tests for the closed-form models, geometry and conversions."""

import math

import numpy as np
import pytest

from irslink import (
    FadingSpec,
    IrsPanel,
    Point3,
    PowerSample,
    RadioConfig,
    SPEED_OF_LIGHT_M_S,
    conventional_rx_power,
    dbm_to_watts,
    euclidean_distance,
    irs_rx_power,
    irs_scattering_gain,
    watts_to_dbm,
    wavelength,
)

import oracles
from helpers import REL, ABS_FLOOR, draw_conventional_params, draw_irs_params, \
    eval_conventional, eval_irs, make_panel, make_radio


def approx(value, rel=REL):
    return pytest.approx(value, rel=rel, abs=ABS_FLOOR)


class TestWavelength:
    def test_reference_carrier(self):
        """c/f at 3.5 GHz, against the frozen oracle value."""
        assert wavelength(3.5e9) == approx(oracles.WAVELENGTH_3P5GHZ)

    def test_exact_speed_of_light(self):
        assert SPEED_OF_LIGHT_M_S == 299_792_458.0
        assert wavelength(SPEED_OF_LIGHT_M_S) == 1.0

    def test_config_property(self):
        cfg = make_radio(carrier_frequency_hz=2.4e9)
        assert cfg.wavelength_m == wavelength(2.4e9)

    def test_random_draws_match_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            f = float(rng.uniform(1e6, 1e12))
            assert wavelength(f) == approx(oracles.oracle_wavelength(f))

    @pytest.mark.parametrize("bad", [0.0, -1.0, -3.5e9])
    def test_rejects_nonpositive_frequency(self, bad):
        with pytest.raises(ValueError):
            wavelength(bad)


class TestEuclideanDistance:
    def test_pythagorean_example(self):
        a = Point3(1.0, 2.0, 3.0)
        b = Point3(4.0, 6.0, 15.0)
        assert euclidean_distance(a, b) == 13.0

    def test_symmetry_and_zero(self):
        a = Point3(-3.0, 0.5, 2.0)
        b = Point3(7.0, -1.0, 9.0)
        assert euclidean_distance(a, b) == euclidean_distance(b, a)
        assert euclidean_distance(a, a) == 0.0

    def test_rejects_nonfinite_coordinates(self):
        with pytest.raises(ValueError):
            Point3(float("inf"), 0.0, 0.0)
        with pytest.raises(ValueError):
            Point3(0.0, float("nan"), 0.0)


class TestConventionalPower:
    def test_reference_example(self):
        """1 W at 3.5 GHz, unit gain, 10 m, free-space exponent."""
        cfg = make_radio()
        p = conventional_rx_power(cfg, 10.0, 1.0, 2.0)
        assert p == approx(oracles.CONVENTIONAL_EXAMPLE_W)
        assert watts_to_dbm(p) == approx(oracles.CONVENTIONAL_EXAMPLE_DBM)

    def test_all_unity_anchor(self):
        """Every input at one collapses the formula to 1/(4*pi)^2."""
        cfg = make_radio(carrier_frequency_hz=SPEED_OF_LIGHT_M_S)  # lambda = 1
        assert conventional_rx_power(cfg, 1.0, 1.0, 2.0) == approx(oracles.ALL_UNITY_ANCHOR_W)

    def test_zero_exactly_when_fading_zero(self):
        cfg = make_radio()
        assert conventional_rx_power(cfg, 10.0, 0.0, 2.0) == 0.0
        assert conventional_rx_power(cfg, 10.0, 1e-300, 2.0) > 0.0

    def test_linear_in_power_and_fading(self):
        cfg1 = make_radio(transmit_power_w=1.0)
        cfg3 = make_radio(transmit_power_w=3.0)
        base = conventional_rx_power(cfg1, 25.0, 1.0, 3.0)
        assert conventional_rx_power(cfg3, 25.0, 1.0, 3.0) == approx(3.0 * base)
        assert conventional_rx_power(cfg1, 25.0, 2.5, 3.0) == approx(2.5 * base)

    def test_strictly_decreasing_in_distance(self):
        cfg = make_radio()
        distances = [1.5, 2.0, 10.0, 50.0, 200.0]
        values = [conventional_rx_power(cfg, d, 1.0, 3.0) for d in distances]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_strictly_decreasing_in_exponent_beyond_unit_distance(self):
        cfg = make_radio()
        values = [conventional_rx_power(cfg, 30.0, 1.0, alpha)
                  for alpha in (2.0, 2.5, 3.0, 4.0)]
        assert all(a > b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("alpha", [2.0, 3.0, 4.0])
    def test_distance_scaling_law(self, alpha):
        """Scaling d by k divides the result by k**alpha."""
        cfg = make_radio()
        for k in (2.0, 5.0, 10.0):
            base = conventional_rx_power(cfg, 12.0, 1.0, alpha)
            scaled = conventional_rx_power(cfg, 12.0 * k, 1.0, alpha)
            assert scaled == approx(base / k ** alpha)

    def test_random_draws_match_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            params = draw_conventional_params(rng)
            expected = oracles.oracle_conventional_w(
                params["p_t"], params["frequency_hz"], params["h"],
                params["d"], params["alpha"])
            assert eval_conventional(params) == approx(expected)

    def test_domain_errors(self):
        cfg = make_radio()
        with pytest.raises(ValueError):
            conventional_rx_power(cfg, 0.0, 1.0, 2.0)
        with pytest.raises(ValueError):
            conventional_rx_power(cfg, -5.0, 1.0, 2.0)
        with pytest.raises(ValueError):
            conventional_rx_power(cfg, 10.0, -0.1, 2.0)
        with pytest.raises(ValueError):
            conventional_rx_power(cfg, 10.0, 1.0, 0.5)


class TestScatteringGain:
    def test_reference_example(self):
        """Centimeter elements at the 3.5 GHz wavelength."""
        panel = make_panel()
        gain = irs_scattering_gain(panel, wavelength(3.5e9))
        assert gain == approx(oracles.SCATTERING_GAIN_EXAMPLE)

    def test_quarter_wavelength_area_gives_pi(self):
        """dx*dy = lambda^2/4 makes the gain exactly 4*pi/4 = pi."""
        lam = 2.0
        panel = make_panel(element_len_x_m=1.0, element_len_y_m=1.0)
        assert irs_scattering_gain(panel, lam) == approx(math.pi)

    def test_rejects_nonpositive_wavelength(self):
        with pytest.raises(ValueError):
            irs_scattering_gain(make_panel(), 0.0)

    def test_panel_method_matches_function(self):
        panel = make_panel()
        assert panel.scattering_gain(0.1) == irs_scattering_gain(panel, 0.1)


class TestIrsPower:
    def test_reference_example(self):
        """32x32 cm-element surface, 45 degree angles, 20 m + 15 m hops."""
        cfg = make_radio()
        p = irs_rx_power(cfg, make_panel(), 20.0, 15.0)
        assert p == approx(oracles.IRS_EXAMPLE_W)
        assert watts_to_dbm(p) == approx(oracles.IRS_EXAMPLE_DBM)

    def test_all_unity_anchor(self):
        """Unit everything: 4*pi/(64*pi^3) = 1/(16*pi^2), same anchor as the
        direct link's all-unity value."""
        cfg = make_radio(carrier_frequency_hz=SPEED_OF_LIGHT_M_S)
        panel = IrsPanel(elements_m=1, elements_n=1, element_len_x_m=1.0,
                         element_len_y_m=1.0, reflection_coeff=1.0,
                         theta_t_rad=0.0, theta_r_rad=0.0)
        assert irs_rx_power(cfg, panel, 1.0, 1.0) == approx(oracles.ALL_UNITY_ANCHOR_W)

    def test_hop_swap_is_bit_identical(self):
        """(d1, theta_t) and (d2, theta_r) can be exchanged freely."""
        cfg = make_radio()
        a = make_panel(theta_t_rad=0.3, theta_r_rad=1.1)
        b = make_panel(theta_t_rad=1.1, theta_r_rad=0.3)
        assert irs_rx_power(cfg, a, 20.0, 15.0) == irs_rx_power(cfg, b, 15.0, 20.0)

    def test_strictly_decreasing_in_each_hop(self):
        cfg = make_radio()
        panel = make_panel()
        d1_values = [irs_rx_power(cfg, panel, d1, 15.0) for d1 in (5.0, 10.0, 40.0)]
        d2_values = [irs_rx_power(cfg, panel, 20.0, d2) for d2 in (5.0, 10.0, 40.0)]
        assert all(a > b for a, b in zip(d1_values, d1_values[1:]))
        assert all(a > b for a, b in zip(d2_values, d2_values[1:]))

    def test_strictly_decreasing_in_angles(self):
        cfg = make_radio()
        values = [irs_rx_power(cfg, make_panel(theta_t_rad=t, theta_r_rad=t), 20.0, 15.0)
                  for t in (0.0, 0.5, 1.0, 1.5)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_increasing_in_elements_and_reflectivity(self):
        cfg = make_radio()
        smaller = irs_rx_power(cfg, make_panel(elements_m=16), 20.0, 15.0)
        larger = irs_rx_power(cfg, make_panel(elements_m=64), 20.0, 15.0)
        assert larger > smaller
        duller = irs_rx_power(cfg, make_panel(reflection_coeff=0.5), 20.0, 15.0)
        brighter = irs_rx_power(cfg, make_panel(reflection_coeff=1.0), 20.0, 15.0)
        assert brighter > duller

    def test_two_hop_scaling_law(self):
        """Scaling both hops by k divides the result by k**4."""
        cfg = make_radio()
        panel = make_panel()
        base = irs_rx_power(cfg, panel, 20.0, 15.0)
        for k in (2.0, 3.0, 10.0):
            assert irs_rx_power(cfg, panel, 20.0 * k, 15.0 * k) == approx(base / k ** 4)

    def test_random_draws_match_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            params = draw_irs_params(rng)
            expected = oracles.oracle_irs_w(
                params["p_t"], params["frequency_hz"], params["g_t"], params["g_r"],
                params["m"], params["n"], params["dx"], params["dy"], params["a"],
                params["theta_t"], params["theta_r"], params["d1"], params["d2"])
            assert eval_irs(params) == approx(expected)

    def test_domain_errors(self):
        cfg = make_radio()
        with pytest.raises(ValueError):
            irs_rx_power(cfg, make_panel(), 0.0, 15.0)
        with pytest.raises(ValueError):
            irs_rx_power(cfg, make_panel(), 20.0, -1.0)


class TestDbmConversions:
    def test_round_trip_over_many_decades(self):
        for p in np.logspace(-20, 3, 47):
            assert dbm_to_watts(watts_to_dbm(float(p))) == approx(float(p))

    def test_known_anchors(self):
        assert watts_to_dbm(0.001) == 0.0
        assert watts_to_dbm(1.0) == approx(30.0)
        assert dbm_to_watts(0.0) == approx(0.001)

    def test_nonpositive_power_maps_to_sentinel(self):
        assert watts_to_dbm(0.0) == float("-inf")
        assert watts_to_dbm(-1.0) == float("-inf")
        assert dbm_to_watts(float("-inf")) == 0.0

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            watts_to_dbm(float("nan"))
        with pytest.raises(ValueError):
            dbm_to_watts(float("nan"))


class TestDomainTypes:
    def test_radio_config_rejects_nonpositive_fields(self):
        for field in ("carrier_frequency_hz", "transmit_power_w", "bandwidth_hz",
                      "tx_gain_linear", "rx_gain_linear"):
            with pytest.raises(ValueError):
                make_radio(**{field: 0.0})
            with pytest.raises(ValueError):
                make_radio(**{field: -1.0})

    def test_panel_rejects_bad_fields(self):
        with pytest.raises(ValueError):
            make_panel(elements_m=0)
        with pytest.raises(ValueError):
            make_panel(elements_n=2.5)
        with pytest.raises(ValueError):
            make_panel(element_len_x_m=0.0)
        with pytest.raises(ValueError):
            make_panel(reflection_coeff=0.0)
        with pytest.raises(ValueError):
            make_panel(reflection_coeff=1.2)
        with pytest.raises(ValueError):
            make_panel(theta_t_rad=math.pi / 2)
        with pytest.raises(ValueError):
            make_panel(theta_r_rad=-0.1)

    def test_fading_spec_validation(self):
        FadingSpec(mode="rayleigh", alpha=3.0, seed=2 ** 64 - 1)
        with pytest.raises(ValueError):
            FadingSpec(mode="bogus")
        with pytest.raises(ValueError):
            FadingSpec(h=-1.0)
        with pytest.raises(ValueError):
            FadingSpec(alpha=0.5)
        with pytest.raises(ValueError):
            FadingSpec(seed=-1)
        with pytest.raises(ValueError):
            FadingSpec(seed=2 ** 64)

    def test_power_sample_from_watts(self):
        sample = PowerSample.from_watts("conventional", 0.002, distance_m=3.0)
        assert sample.power_dbm == approx(watts_to_dbm(0.002))
        with pytest.raises(ValueError):
            PowerSample.from_watts("something_else", 1.0)
