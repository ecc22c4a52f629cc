"""Closed-form resonance formulas against frozen high-precision values.

The cross-checks at the bottom embed each closed-form point back into
the averaged equations: a resonance formula is only trusted when the
slow flow it was derived from vanishes there.
"""

import math

import pytest

import oracles
from duffres import (
    BelowFoldPoint,
    Forcing,
    OscillatorConfig,
    OverdampedPeak,
    ResonanceId,
    SlowFlowState,
    UnsupportedFamily,
    ZeroDamping,
)
from duffres.closed_form import (
    RootSign,
    gamma_star,
    linear_amplitude_resonance,
    linear_phase_resonance,
    locus_crossings,
    locus_fold,
    minimum_locus_forcing,
    multiple_scales_primary,
    primary_amplitude_resonance,
    primary_phase_resonance,
    primary_resonance,
    primary_resonance_gap,
    sub12_existence_margin,
    sub12_existence_window,
    sub12_phase_locus,
    sub13_amplitude_locus,
    sub13_phase_locus,
    super31_amplitude_resonance,
    super31_phase_resonance,
    super51_existence,
)
from duffres.slow_flow import residual, system_for


class TestLinear:
    def test_peak(self, cfg):
        pt = linear_amplitude_resonance(cfg, 0.01)
        assert pt.omega == pytest.approx(oracles.LINEAR_F001["omega_a"], rel=1e-12)
        assert pt.amplitude == pytest.approx(oracles.LINEAR_F001["amp_a"], rel=1e-12)
        assert pt.phase_lag == pytest.approx(oracles.LINEAR_F001["phi_a"], rel=1e-12)

    def test_phase_resonance_at_natural_frequency(self, cfg):
        pt = linear_phase_resonance(cfg, 0.01)
        assert pt.omega == pytest.approx(cfg.omega0, rel=1e-14)
        assert pt.phase_lag == pytest.approx(math.pi / 2, rel=1e-14)
        assert pt.amplitude == pytest.approx(0.01 / (2 * cfg.zeta_bar * cfg.omega0**2), rel=1e-12)

    def test_overdamped_peak_rejected(self):
        heavy = OscillatorConfig(damping=1.5)
        with pytest.raises(OverdampedPeak):
            linear_amplitude_resonance(heavy, 0.01)

    def test_zero_damping_rejected(self):
        free = OscillatorConfig(damping=0.0)
        with pytest.raises(ZeroDamping):
            linear_amplitude_resonance(free, 0.01)
        with pytest.raises(ZeroDamping):
            primary_phase_resonance(free, 0.01)


class TestPrimary:
    @pytest.mark.parametrize("f", [0.001, 0.005, 0.01])
    def test_frozen_points(self, cfg, f):
        exp = oracles.PRIMARY[f]
        phase = primary_phase_resonance(cfg, f)
        amp = primary_amplitude_resonance(cfg, f)
        assert phase.omega == pytest.approx(exp["omega_p"], rel=1e-11)
        assert phase.amplitude == pytest.approx(exp["amp_p"], rel=1e-11)
        assert amp.omega == pytest.approx(exp["omega_a"], rel=1e-11)
        assert amp.amplitude == pytest.approx(exp["amp_a"], rel=1e-11)

    def test_exact_values_at_f001(self, cfg):
        # 3 alpha gamma^2 / (4 zeta^2 omega0^6) = 3 exactly at f = 0.01
        phase = primary_phase_resonance(cfg, 0.01)
        assert phase.omega == pytest.approx(math.sqrt(1.5), abs=1e-12)
        assert phase.amplitude == pytest.approx(math.sqrt(2.0 / 3.0), abs=1e-12)

    def test_amplitude_point_lag_frozen(self, cfg):
        amp = primary_amplitude_resonance(cfg, 0.01)
        assert amp.phase_lag == pytest.approx(oracles.PRIMARY[0.01]["phi_a"], rel=1e-11)

    @pytest.mark.parametrize("f", [0.001, 0.005, 0.01, 0.05])
    def test_two_forms_of_peak_amplitude_agree(self, cfg, f):
        phase = primary_phase_resonance(cfg, f)
        damping_balance = (f / cfg.mass) / (2 * cfg.zeta_bar * cfg.omega0 * phase.omega)
        assert phase.amplitude == pytest.approx(damping_balance, rel=1e-12)

    def test_two_forms_agree_off_unit_parameters(self):
        cfg = OscillatorConfig(mass=2.0, damping=0.03, lin_stiffness=3.0, nl_stiffness=0.8)
        phase = primary_phase_resonance(cfg, 0.02)
        damping_balance = (0.02 / cfg.mass) / (2 * cfg.zeta_bar * cfg.omega0 * phase.omega)
        assert phase.amplitude == pytest.approx(damping_balance, rel=1e-12)

    def test_peak_frequency_grows_with_forcing(self, cfg):
        omegas = [primary_phase_resonance(cfg, f).omega for f in (0.002, 0.004, 0.008)]
        assert omegas == sorted(omegas)
        assert omegas[0] > cfg.omega0

    def test_phase_point_on_backbone(self, cfg):
        phase = primary_phase_resonance(cfg, 0.01)
        assert cfg.backbone_omega(phase.amplitude) == pytest.approx(phase.omega, rel=1e-12)

    @pytest.mark.parametrize("zeta", [0.0025, 0.005, 0.01])
    def test_gap_frozen_and_quadratic_in_damping(self, zeta):
        cfg = OscillatorConfig(damping=2.0 * zeta)
        gap = primary_resonance_gap(cfg, 0.01)
        assert gap == pytest.approx(oracles.PRIMARY_GAP[zeta], rel=1e-9)
        assert gap > 0.0
        assert gap / cfg.omega0 < 10.0 * zeta**2

    def test_composite_result_consistent(self, cfg):
        both = primary_resonance(cfg, 0.01)
        assert both.omega_p == pytest.approx(primary_phase_resonance(cfg, 0.01).omega, rel=1e-14)
        assert both.omega_a == pytest.approx(primary_amplitude_resonance(cfg, 0.01).omega, rel=1e-14)
        assert both.delta_omega == pytest.approx(both.omega_p - both.omega_a, rel=1e-9)

    def test_multiple_scales_estimate(self, cfg):
        pt = multiple_scales_primary(cfg, 0.01)
        assert pt.omega == pytest.approx(oracles.MS_F001["omega"], rel=1e-12)
        assert pt.amplitude == pytest.approx(oracles.MS_F001["amp"], rel=1e-12)


class TestSuper31:
    def test_frozen_points(self, cfg):
        exp = oracles.SUPER31_F02
        phase = super31_phase_resonance(cfg, 0.2)
        amp = super31_amplitude_resonance(cfg, 0.2)
        assert phase.omega == pytest.approx(exp["omega_p"], rel=1e-11)
        assert phase.amplitude == pytest.approx(exp["amp_p"], rel=1e-11)
        assert amp.omega == pytest.approx(exp["omega_a"], rel=1e-11)
        assert amp.amplitude == pytest.approx(exp["amp_a"], rel=1e-11)
        assert amp.phase_lag == pytest.approx(exp["phi_a"], rel=1e-11)

    def test_harmonic_index(self, cfg):
        assert super31_phase_resonance(cfg, 0.2).harmonic_index == 3

    def test_window_sits_below_a_third_of_natural(self, cfg):
        pt = super31_phase_resonance(cfg, 0.1)
        assert 0.25 * cfg.omega0 < pt.omega < cfg.omega0 / 2.9

    def test_gamma_star_value(self, cfg):
        assert gamma_star(cfg, 0.2) == pytest.approx(9.0 * 0.2 / 8.0, rel=1e-14)


class TestSub13Locus:
    def test_fold_frozen(self, cfg):
        fold = locus_fold(cfg, ResonanceId(1, 3))
        assert fold.omega == pytest.approx(oracles.SUB13_FOLD["omega"], rel=1e-9)
        assert fold.gamma_bar == pytest.approx(oracles.SUB13_FOLD["gamma_bar"], rel=1e-9)
        # at the fold the amplitude satisfies the shared leading-order relation
        gcap = fold.gamma_bar / (cfg.omega0**2 - fold.omega**2)
        ohm = (fold.omega / 3.0) ** 2 - cfg.omega0**2
        assert fold.amplitude**2 == pytest.approx(
            4.0 * ohm / (3.0 * cfg.alpha) - 2.0 * gcap * gcap, rel=1e-6
        )

    def test_below_fold_rejected(self, cfg):
        with pytest.raises(BelowFoldPoint):
            sub13_phase_locus(cfg, 3.0)

    def test_minimum_forcing_frozen(self, cfg):
        pt = minimum_locus_forcing(cfg, ResonanceId(1, 3))
        assert pt.omega == pytest.approx(oracles.SUB13_MIN_FORCING["omega"], rel=1e-8)
        assert pt.gamma_bar == pytest.approx(oracles.SUB13_MIN_FORCING["gamma_bar"], rel=1e-9)
        assert pt.root_sign is RootSign.MINUS

    @pytest.mark.parametrize("f", [0.3, 0.6, 1.0])
    def test_crossings_frozen(self, cfg, f):
        pts = locus_crossings(cfg, ResonanceId(1, 3), f)
        assert len(pts) == 2
        lo, hi = oracles.SUB13_CROSSINGS[f]
        assert pts[0].omega == pytest.approx(lo, rel=1e-8)
        assert pts[1].omega == pytest.approx(hi, rel=1e-8)
        for pt in pts:
            assert pt.gamma_bar == pytest.approx(f / cfg.mass, rel=1e-9)
            assert pt.phase_lag == pytest.approx(math.pi / 2, rel=1e-9)

    def test_crossing_amplitudes_frozen(self, cfg):
        pts = locus_crossings(cfg, ResonanceId(1, 3), 0.6)
        small, large = oracles.SUB13_PHASE_CROSSING_AMPS_F06
        assert pts[0].amplitude == pytest.approx(small, abs=1e-5)
        assert pts[1].amplitude == pytest.approx(large, abs=1e-5)

    def test_no_crossings_below_minimum(self, cfg):
        assert locus_crossings(cfg, ResonanceId(1, 3), 0.2) == ()

    def test_amplitude_kind_crossings_frozen(self, cfg):
        pts = locus_crossings(cfg, ResonanceId(1, 3), 0.6, kind="amplitude")
        assert len(pts) == 2
        for pt, exp in zip(pts, oracles.SUB13_AMP_CROSSINGS_F06):
            assert pt.omega == pytest.approx(exp[0], abs=1e-5)
            assert pt.amplitude == pytest.approx(exp[1], abs=1e-5)
            assert pt.phase_lag == pytest.approx(exp[2], abs=1e-5)

    def test_amplitude_locus_close_to_phase_locus(self, cfg):
        # the two resonance definitions nearly coincide at light damping
        w = 3.4
        ph = sub13_phase_locus(cfg, w)[0]
        am = sub13_amplitude_locus(cfg, w)[0]
        assert am.amplitude == pytest.approx(ph.amplitude, rel=1e-3)
        assert am.phase_lag == pytest.approx(math.pi / 2, abs=0.01)

    def test_unsupported_family_rejected(self, cfg):
        with pytest.raises(UnsupportedFamily):
            locus_fold(cfg, ResonanceId(7, 1))
        with pytest.raises(UnsupportedFamily):
            locus_crossings(cfg, ResonanceId(1, 2), 1.0, kind="amplitude")


class TestSub12:
    def test_locus_value_frozen(self, cfg):
        minus = sub12_phase_locus(cfg, 2.4)[0]
        assert minus.gamma_bar == pytest.approx(oracles.SUB12_LOCUS_24, rel=1e-11)
        assert minus.root_sign is RootSign.MINUS

    def test_minimum_forcing_frozen(self, cfg):
        pt = minimum_locus_forcing(cfg, ResonanceId(1, 2))
        assert pt.omega == pytest.approx(oracles.SUB12_MIN_FORCING["omega"], rel=1e-7)
        assert pt.gamma_bar == pytest.approx(oracles.SUB12_MIN_FORCING["gamma_bar"], rel=1e-8)

    @pytest.mark.parametrize("f", [1.0, 2.0])
    def test_windows_frozen(self, cfg, f):
        win = sub12_existence_window(cfg, f)
        exp = oracles.SUB12_WINDOWS[f]
        assert win is not None
        assert win[0] == pytest.approx(exp[0], rel=1e-8)
        assert win[1] == pytest.approx(exp[1], rel=1e-8)

    def test_empty_window(self, cfg):
        assert sub12_existence_window(cfg, 0.8) is None

    def test_margin_changes_sign_at_edges(self, cfg):
        w_inf, w_sup = oracles.SUB12_WINDOWS[1.0]
        assert sub12_existence_margin(cfg, 1.0, w_inf - 1e-4) < 0.0
        assert sub12_existence_margin(cfg, 1.0, w_inf + 1e-4) > 0.0
        assert sub12_existence_margin(cfg, 1.0, w_sup - 1e-4) > 0.0
        assert sub12_existence_margin(cfg, 1.0, w_sup + 1e-4) < 0.0


class TestSuper51Existence:
    def test_inside_window(self, cfg):
        lo, hi = oracles.SUPER51_WINDOW_F06
        assert super51_existence(cfg, 0.6, 0.5 * (lo + hi))

    @pytest.mark.parametrize("omega", [0.25, 0.32])
    def test_outside_window(self, cfg, omega):
        assert not super51_existence(cfg, 0.6, omega)

    def test_zero_forcing_never_exists(self, cfg):
        assert not super51_existence(cfg, 0.0, 0.28)


class TestSlowFlowEmbedding:
    """Each closed-form point must be a steady state of its slow flow."""

    def _residual_norm(self, cfg, label, f, omega, r, phi):
        res = ResonanceId.parse(label)
        dr, dphi = residual(
            system_for(res), SlowFlowState(r, phi), omega, cfg, Forcing(f, omega)
        )
        return math.hypot(dr, dphi)

    @pytest.mark.parametrize("f", [0.001, 0.005, 0.01])
    def test_primary_points(self, cfg, f):
        for pt in (primary_phase_resonance(cfg, f), primary_amplitude_resonance(cfg, f)):
            assert self._residual_norm(cfg, "1:1", f, pt.omega, pt.amplitude, pt.phase_lag) < 1e-8

    @pytest.mark.parametrize("f", [0.05, 0.1, 0.15])
    def test_super31_points(self, cfg, f):
        # the 3:1 forms freeze the forced term at omega0/3, so the
        # embedding is only approximate; the error grows with forcing
        pt = super31_phase_resonance(cfg, f)
        assert self._residual_norm(cfg, "3:1", f, pt.omega, pt.amplitude, pt.phase_lag) < 1e-4

    @pytest.mark.parametrize("f", [0.3, 0.6, 1.0])
    def test_sub13_crossings(self, cfg, f):
        for pt in locus_crossings(cfg, ResonanceId(1, 3), f):
            assert self._residual_norm(cfg, "1:3", f, pt.omega, pt.amplitude, pt.phase_lag) < 1e-8

    def test_sub12_locus_amplitude_identity(self, cfg):
        # the 1:2 locus is a leading-order object: the implemented flow
        # keeps second-order terms, so only the shared amplitude relation
        # r0^2 = 4 Ohm/(3 alpha) - 2 Gamma^2 is checked against it
        from duffres.slow_flow import r0_approximation

        for pt in sub12_phase_locus(cfg, 2.4):
            f = pt.gamma_bar * cfg.mass
            r0 = r0_approximation(ResonanceId(1, 2), pt.omega, cfg, Forcing(f, pt.omega))
            assert pt.amplitude == pytest.approx(r0, rel=1e-9)
            assert pt.phase_lag == pytest.approx(3.0 * math.pi / 8.0, rel=1e-12)
