"""Shared vocabulary: labels, phases, configs, Fourier containers."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from duffres import (
    Forcing,
    HarmonicSolution,
    OscillatorConfig,
    ResonanceId,
    SingularFrequency,
    SlowFlowState,
    cartesian_to_polar,
    default_window,
    detuning,
    equivalent_phase_lags,
    gamma_capital,
    phase_distance,
    phase_symmetry_period,
    polar_to_cartesian,
    resonant_phase_lag,
    wrap_phase,
)
from duffres.core import ResonancePoint

TWO_PI = 2.0 * math.pi


class TestResonanceId:
    def test_parse_round_trip(self):
        res = ResonanceId.parse("3:1")
        assert (res.k, res.nu) == (3, 1)
        assert res.label == "3:1"
        assert str(res) == "3:1"

    def test_primary_flag(self):
        assert ResonanceId(1, 1).is_primary
        assert not ResonanceId.parse("1:3").is_primary

    @pytest.mark.parametrize("bad", ["", "3", "3:", ":1", "a:b", "1:2:3", "0:1", "-1:2"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            ResonanceId.parse(bad)

    def test_requires_lowest_terms(self):
        with pytest.raises(ValueError):
            ResonanceId(2, 4)

    def test_frequencies(self):
        res = ResonanceId(3, 2)
        assert res.base_omega(1.0) == pytest.approx(0.5)
        assert res.omega_k(1.0) == pytest.approx(1.5)


class TestPhases:
    def test_wrap_examples(self):
        assert wrap_phase(TWO_PI + 0.1) == pytest.approx(0.1)
        assert wrap_phase(-0.1) == pytest.approx(TWO_PI - 0.1)
        assert wrap_phase(0.0) == 0.0

    @given(st.floats(-1e6, 1e6))
    def test_wrap_range(self, phi):
        w = wrap_phase(phi)
        assert 0.0 <= w < TWO_PI

    def test_distance_across_wrap(self):
        assert phase_distance(0.1, TWO_PI - 0.1) == pytest.approx(0.2)
        assert phase_distance(0.0, math.pi) == pytest.approx(math.pi)

    def test_distance_custom_period(self):
        assert phase_distance(0.0, 0.9, period=1.0) == pytest.approx(0.1)

    @given(st.floats(-50.0, 50.0), st.floats(-50.0, 50.0))
    def test_distance_symmetric_and_bounded(self, a, b):
        d = phase_distance(a, b)
        assert d == pytest.approx(phase_distance(b, a))
        assert 0.0 <= d <= math.pi + 1e-12


class TestLagRule:
    @pytest.mark.parametrize(
        "label,lag",
        [
            ("1:1", math.pi / 2),
            ("3:1", math.pi / 2),
            ("5:1", math.pi / 2),
            ("7:1", math.pi / 2),
            ("1:3", math.pi / 2),
            ("1:5", math.pi / 2),
            ("2:1", 3 * math.pi / 4),
            ("1:2", 3 * math.pi / 8),
            ("3:2", 3 * math.pi / 8),
            ("1:4", 3 * math.pi / 16),
            ("2:3", math.pi / 4),
        ],
    )
    def test_resonant_lag(self, label, lag):
        assert resonant_phase_lag(ResonanceId.parse(label)) == pytest.approx(lag)

    @pytest.mark.parametrize(
        "label,count",
        [("1:1", 1), ("3:1", 1), ("1:3", 3), ("2:1", 2), ("1:2", 4), ("3:2", 4), ("2:3", 6), ("1:4", 4)],
    )
    def test_equivalent_set_size(self, label, count):
        assert len(equivalent_phase_lags(ResonanceId.parse(label))) == count

    def test_equivalent_set_21(self):
        lags = equivalent_phase_lags(ResonanceId(2, 1))
        assert lags == pytest.approx((3 * math.pi / 4, 7 * math.pi / 4))

    def test_equivalent_set_14_exception(self):
        # 1:4 carries four lags spaced pi/2, not eight spaced pi/4
        lags = equivalent_phase_lags(ResonanceId(1, 4))
        expected = tuple(3 * math.pi / 16 + i * math.pi / 2 for i in range(4))
        assert lags == pytest.approx(expected)

    @pytest.mark.parametrize("label", ["1:1", "3:1", "1:3", "2:1", "1:2", "3:2", "2:3", "1:4", "1:5"])
    def test_set_lies_on_symmetry_lattice(self, label):
        res = ResonanceId.parse(label)
        period = phase_symmetry_period(res)
        n = round(TWO_PI / period)
        lattice = sorted(wrap_phase(resonant_phase_lag(res) + i * period) for i in range(n))
        got = equivalent_phase_lags(res)
        assert list(got) == sorted(got)
        assert all(0.0 <= lag < TWO_PI for lag in got)
        for lag in got:
            assert min(phase_distance(lag, node) for node in lattice) < 1e-12
        if label != "1:4":
            # 1:4 attains only every other symmetric phase; the rest fill the lattice
            assert got == pytest.approx(tuple(lattice))


class TestOscillatorConfig:
    def test_derived_quantities(self):
        cfg = OscillatorConfig()
        assert cfg.omega0 == pytest.approx(1.0)
        assert cfg.zeta_bar == pytest.approx(0.005)
        assert cfg.alpha == pytest.approx(1.0)

    def test_scaling(self):
        cfg = OscillatorConfig(mass=4.0, damping=0.08, lin_stiffness=16.0, nl_stiffness=2.0)
        assert cfg.omega0 == pytest.approx(2.0)
        assert cfg.zeta_bar == pytest.approx(0.08 / (2 * 4.0 * 2.0))
        assert cfg.alpha == pytest.approx(0.5)

    def test_backbone_matches_exact_peak(self):
        # at r = sqrt(2/3) with alpha = 1 the backbone passes sqrt(3/2)
        cfg = OscillatorConfig()
        assert cfg.backbone_omega(math.sqrt(2.0 / 3.0)) == pytest.approx(math.sqrt(1.5), rel=1e-12)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"mass": 0.0},
            {"mass": -1.0},
            {"lin_stiffness": 0.0},
            {"nl_stiffness": 0.0},
            {"nl_stiffness": -0.5},
            {"damping": -0.01},
        ],
    )
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(ValueError):
            OscillatorConfig(**kwargs)


class TestForcing:
    def test_gamma_bar(self):
        assert Forcing(0.3).gamma_bar(OscillatorConfig(mass=2.0)) == pytest.approx(0.15)

    def test_at_keeps_amplitude(self):
        f = Forcing(0.3, 1.0).at(2.5)
        assert (f.amplitude, f.omega) == (0.3, 2.5)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Forcing(-0.1)
        with pytest.raises(ValueError):
            Forcing(0.1, -1.0)


class TestForcedTerm:
    def test_value_below_and_above_resonance(self):
        cfg = OscillatorConfig()
        forcing = Forcing(0.3)
        assert gamma_capital(2.0, cfg, forcing) == pytest.approx(-0.1)
        assert gamma_capital(0.0, cfg, forcing) == pytest.approx(0.3)

    def test_singular_at_natural_frequency(self):
        cfg = OscillatorConfig()
        with pytest.raises(SingularFrequency):
            gamma_capital(cfg.omega0, cfg, Forcing(0.3))

    def test_detuning_zero_at_matched_harmonic(self):
        cfg = OscillatorConfig()
        assert detuning(cfg, ResonanceId(1, 3), 3.0 * cfg.omega0) == pytest.approx(0.0)
        assert detuning(cfg, ResonanceId(3, 1), cfg.omega0 / 3.0) == pytest.approx(0.0)

    def test_default_window_brackets_family(self):
        cfg = OscillatorConfig()
        lo, hi = default_window(cfg, ResonanceId(1, 3))
        assert lo < 3.0 * cfg.omega0 < hi


class TestSlowFlowState:
    @given(
        st.floats(0.0, 10.0),
        st.floats(0.0, TWO_PI, exclude_max=True),
    )
    def test_polar_cartesian_round_trip(self, r, phi):
        state = SlowFlowState(r, phi)
        back = cartesian_to_polar(*polar_to_cartesian(state))
        assert back.r == pytest.approx(r, abs=1e-12)
        if r > 1e-9:
            assert phase_distance(back.phi, phi) < 1e-9


class TestResonancePoint:
    def test_rejects_negative_amplitude(self):
        from duffres.core import ResonanceKind

        with pytest.raises(ValueError):
            ResonancePoint(1.0, -0.1, 0.0, ResonanceKind.PHASE)

    def test_wraps_lag(self):
        from duffres.core import ResonanceKind

        pt = ResonancePoint(1.0, 0.1, -0.3, ResonanceKind.PHASE)
        assert pt.phase_lag == pytest.approx(TWO_PI - 0.3)


class TestHarmonicSolution:
    def test_cos_sin_round_trip(self):
        sol = HarmonicSolution.from_cos_sin(2.0, 0.5, [0.3, -0.1], [0.4, 0.2])
        assert sol.cos_coeffs == pytest.approx([0.3, -0.1])
        assert sol.sin_coeffs == pytest.approx([0.4, 0.2])
        assert sol.a0 == 0.5
        assert sol.n_harmonics == 2

    def test_amplitude_and_lag_convention(self):
        # x = A sin(w t - phi) has cos coefficient -A sin(phi)
        A, phi = 0.7, 1.1
        sol = HarmonicSolution.from_cos_sin(1.0, 0.0, [-A * math.sin(phi)], [A * math.cos(phi)])
        assert sol.amplitude(1) == pytest.approx(A)
        assert sol.phase_lag(1) == pytest.approx(phi)

    @settings(max_examples=30)
    @given(
        st.lists(st.floats(-2.0, 2.0), min_size=1, max_size=6),
        st.lists(st.floats(-2.0, 2.0), min_size=1, max_size=6),
        st.floats(-5.0, 5.0),
    )
    def test_evaluate_matches_direct_sum(self, cos_c, sin_c, t):
        n = min(len(cos_c), len(sin_c))
        cos_c, sin_c = cos_c[:n], sin_c[:n]
        w = 1.3
        sol = HarmonicSolution.from_cos_sin(w, 0.2, cos_c, sin_c)
        direct = 0.2 + sum(
            c * math.cos((j + 1) * w * t) + s * math.sin((j + 1) * w * t)
            for j, (c, s) in enumerate(zip(cos_c, sin_c))
        )
        assert sol.evaluate(t) == pytest.approx(direct, abs=1e-12)

    def test_velocity_is_time_derivative(self):
        sol = HarmonicSolution.from_cos_sin(1.7, 0.0, [0.3, -0.2, 0.05], [0.5, 0.1, -0.04])
        t = np.linspace(0.0, 3.0, 7)
        h = 1e-6
        numeric = (sol.evaluate(t + h) - sol.evaluate(t - h)) / (2 * h)
        assert sol.velocity(t) == pytest.approx(numeric, abs=1e-7)

    def test_max_displacement_bounds_samples(self):
        sol = HarmonicSolution.from_cos_sin(1.0, 0.1, [0.3, -0.2], [0.5, 0.1])
        t = np.linspace(0.0, TWO_PI, 999)
        assert sol.max_displacement() >= np.max(np.abs(sol.evaluate(t))) - 1e-9

    def test_coefficients_read_only(self):
        sol = HarmonicSolution.from_cos_sin(1.0, 0.0, [0.1], [0.2])
        with pytest.raises(ValueError):
            sol.amplitudes[0] = 5.0

    def test_rejects_mismatched_shapes(self):
        with pytest.raises(ValueError):
            HarmonicSolution(1.0, 0.0, np.array([1.0, 2.0]), np.array([0.0]))
        with pytest.raises(ValueError):
            HarmonicSolution(0.0, 0.0, np.array([1.0]), np.array([0.0]))
