"""Closed-form resonance formulas for the forced Duffing oscillator.

Covers the linear oscillator, the nonlinear primary resonance (amplitude
and phase resonance, their frequency gap, and the multiple-scales
comparison point), the 3:1 superharmonic resonance, the quadrature and
amplitude-resonance loci of the 1:3 and 1:2 subharmonic resonances, and
the existence conditions for the 1:2 and 5:1 families.

Conventions: all formulas are evaluated with the mass-normalized
parameters (omega0, zeta_bar, alpha, gamma_bar); forcing arguments are
raw amplitudes f in Newton, converted via gamma_bar = f / m.  The loci
of the subharmonic families are parametrized by frequency and return
both solution branches (root signs), since a given forcing generally
intersects a locus more than once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq, minimize_scalar

from .core import (
    BelowFoldPoint,
    NoResonance,
    OscillatorConfig,
    OverdampedPeak,
    ResonanceId,
    ResonanceKind,
    ResonancePoint,
    UnsupportedFamily,
    ZeroDamping,
)

__all__ = [
    "ResonanceKind",
    "ResonancePoint",
    "PrimaryResonanceResult",
    "RootSign",
    "LocusPoint",
    "linear_amplitude_resonance",
    "linear_phase_resonance",
    "primary_amplitude_resonance",
    "primary_phase_resonance",
    "primary_resonance_gap",
    "primary_resonance",
    "multiple_scales_primary",
    "gamma_star",
    "super31_phase_resonance",
    "super31_amplitude_resonance",
    "sub13_phase_locus",
    "sub13_amplitude_locus",
    "sub12_phase_locus",
    "sub12_existence_margin",
    "sub12_existence_window",
    "super51_existence",
    "locus_fold",
    "minimum_locus_forcing",
    "locus_crossings",
]


@dataclass(frozen=True)
class PrimaryResonanceResult:
    """Amplitude and phase resonance of the primary family, side by side."""

    omega_a: float
    omega_p: float
    amp_a: float
    amp_p: float
    phi_a: float
    delta_omega: float


class RootSign(enum.Enum):
    MINUS = -1
    PLUS = 1


@dataclass(frozen=True)
class LocusPoint:
    """One point of a forcing-parametrized resonance locus.

    The locus gives, at frequency omega, the forcing gamma_bar for which
    a resonance condition (quadrature or amplitude extremum) is met, and
    the corresponding resonant-harmonic amplitude.
    """

    omega: float
    gamma_bar: float
    amplitude: float
    root_sign: RootSign
    phase_lag: float


def _gamma_bar(cfg: OscillatorConfig, f: float) -> float:
    if f < 0.0:
        raise ValueError("forcing amplitude must be nonnegative")
    return f / cfg.mass


# ---------------------------------------------------------------------------
# linear oscillator


def linear_amplitude_resonance(cfg: OscillatorConfig, f: float) -> ResonancePoint:
    """Peak of the linear frequency response.

    omega_a = omega0 sqrt(1 - 2 zeta^2), A_a = gamma / (2 zeta omega0^2
    sqrt(1 - zeta^2)), tan(phi_a) = sqrt(1 - 2 zeta^2) / zeta.
    """
    z = cfg.zeta_bar
    if 2.0 * z * z >= 1.0:
        raise OverdampedPeak(f"no amplitude peak for zeta_bar = {z:.4g}")
    if z == 0.0:
        raise ZeroDamping("undamped linear peak is unbounded")
    gb = _gamma_bar(cfg, f)
    w0 = cfg.omega0
    omega_a = w0 * math.sqrt(1.0 - 2.0 * z * z)
    amp = gb / (2.0 * z * w0 * w0 * math.sqrt(1.0 - z * z))
    phi = math.atan(math.sqrt(1.0 - 2.0 * z * z) / z)
    return ResonancePoint(omega_a, amp, phi, ResonanceKind.AMPLITUDE)


def linear_phase_resonance(cfg: OscillatorConfig, f: float) -> ResonancePoint:
    """Quadrature of the linear response: at omega0, A = gamma/(2 zeta omega0^2)."""
    z = cfg.zeta_bar
    if z == 0.0:
        raise ZeroDamping("quadrature amplitude undefined at zero damping")
    gb = _gamma_bar(cfg, f)
    w0 = cfg.omega0
    return ResonancePoint(
        w0, gb / (2.0 * z * w0 * w0), 0.5 * math.pi, ResonanceKind.PHASE
    )


# ---------------------------------------------------------------------------
# primary resonance of the hardening oscillator


def _primary_surd(cfg: OscillatorConfig, gb: float) -> float:
    """The common forcing group 3 alpha gamma^2 / (4 zeta^2 omega0^6)."""
    z = cfg.zeta_bar
    if z == 0.0:
        raise ZeroDamping("primary resonance formulas require zeta_bar > 0")
    return 3.0 * cfg.alpha * gb * gb / (4.0 * z * z * cfg.omega0**6)


def primary_amplitude_resonance(cfg: OscillatorConfig, f: float) -> ResonancePoint:
    """Amplitude resonance of the primary family.

    A_a^2 = (2 omega0^2 / 3 alpha) ((zeta^2 - 1) + S),
    omega_a = (omega0/sqrt 2) sqrt(1 - 3 zeta^2 + S),
    tan(phi_a) = sqrt(1 - 3 zeta^2 + S) / (sqrt 2 zeta),
    with S = sqrt((1 - zeta^2)^2 + 3 alpha gamma^2 / (4 zeta^2 omega0^6)).
    """
    gb = _gamma_bar(cfg, f)
    z = cfg.zeta_bar
    k = _primary_surd(cfg, gb)
    s = math.sqrt((1.0 - z * z) ** 2 + k)
    inner = 1.0 - 3.0 * z * z + s
    amp = math.sqrt(2.0 * cfg.omega0**2 / (3.0 * cfg.alpha) * ((z * z - 1.0) + s))
    omega_a = cfg.omega0 / math.sqrt(2.0) * math.sqrt(inner)
    phi = math.atan(math.sqrt(inner) / (math.sqrt(2.0) * z))
    return ResonancePoint(omega_a, amp, phi, ResonanceKind.AMPLITUDE)


def primary_phase_resonance(cfg: OscillatorConfig, f: float) -> ResonancePoint:
    """Quadrature point of the primary family.

    A_p^2 = (2 omega0^2 / 3 alpha)(sqrt(1 + K) - 1) and
    omega_p = (omega0/sqrt 2) sqrt(1 + sqrt(1 + K)); consistent with the
    steady-state relation A_p = gamma / (2 zeta omega0 omega_p).
    """
    gb = _gamma_bar(cfg, f)
    k = _primary_surd(cfg, gb)
    s = math.sqrt(1.0 + k)
    amp = math.sqrt(2.0 * cfg.omega0**2 / (3.0 * cfg.alpha) * (s - 1.0))
    omega_p = cfg.omega0 / math.sqrt(2.0) * math.sqrt(1.0 + s)
    return ResonancePoint(omega_p, amp, 0.5 * math.pi, ResonanceKind.PHASE)


def primary_resonance_gap(cfg: OscillatorConfig, f: float) -> float:
    """Frequency gap omega_p - omega_a between phase and amplitude resonance.

    Positive for a hardening oscillator and of order zeta^2.
    """
    return (
        primary_phase_resonance(cfg, f).omega
        - primary_amplitude_resonance(cfg, f).omega
    )


def primary_resonance(cfg: OscillatorConfig, f: float) -> PrimaryResonanceResult:
    """Both primary resonance conditions in one record."""
    pa = primary_amplitude_resonance(cfg, f)
    pp = primary_phase_resonance(cfg, f)
    return PrimaryResonanceResult(
        omega_a=pa.omega,
        omega_p=pp.omega,
        amp_a=pa.amplitude,
        amp_p=pp.amplitude,
        phi_a=pa.phase_lag,
        delta_omega=pp.omega - pa.omega,
    )


def multiple_scales_primary(cfg: OscillatorConfig, f: float) -> ResonancePoint:
    """Multiple-scales resonance prediction, for comparison only.

    A = gamma/(2 zeta omega0^2), omega = omega0 + 3 alpha gamma^2 /
    (32 zeta^2 omega0^5).  Amplitude and phase resonance coincide in this
    approximation; the frequency drifts away from the averaging result as
    forcing grows.
    """
    z = cfg.zeta_bar
    if z == 0.0:
        raise ZeroDamping("multiple-scales point requires zeta_bar > 0")
    gb = _gamma_bar(cfg, f)
    w0 = cfg.omega0
    omega = w0 + 3.0 * cfg.alpha * gb * gb / (32.0 * z * z * w0**5)
    return ResonancePoint(omega, gb / (2.0 * z * w0 * w0), 0.5 * math.pi, ResonanceKind.PHASE)


# ---------------------------------------------------------------------------
# 3:1 superharmonic resonance


def gamma_star(cfg: OscillatorConfig, f: float) -> float:
    """Frozen forced-term amplitude for the 3:1 family.

    Value of gamma/(omega0^2 - omega^2) at omega = omega0/3, i.e.
    9 gamma / (8 omega0^2), used where the static response is treated as
    constant across the narrow 3:1 window.
    """
    return 9.0 * _gamma_bar(cfg, f) / (8.0 * cfg.omega0**2)


def _super31_omega(c1: float, c2: float, c3: float) -> float:
    disc = c2 * c2 - 4.0 * c1 * c3
    if disc < 0.0:
        raise NoResonance("3:1 resonance quadratic has no real root")
    wsq = (-c2 + math.sqrt(disc)) / (2.0 * c1)
    if wsq <= 0.0:
        raise NoResonance("3:1 resonance quadratic has no positive root")
    return math.sqrt(wsq)


def super31_phase_resonance(cfg: OscillatorConfig, f: float) -> ResonancePoint:
    """Quadrature point of the third harmonic in the 3:1 window.

    omega_p is the positive root of c1 w^4 + c2 w^2 + c3 = 0 and the
    amplitude follows from the steady state at sin(phi) = 1:
    A_3p = alpha Gamma*^3 / (24 zeta omega0 omega_p), which also equals
    sqrt(4 Ohm/(3 alpha) - 2 Gamma*^2) at omega_p.
    """
    z = cfg.zeta_bar
    if z == 0.0:
        raise ZeroDamping("3:1 quadrature amplitude requires zeta_bar > 0")
    al = cfg.alpha
    w0 = cfg.omega0
    gs = gamma_star(cfg, f)
    c1 = 1728.0 / al
    c2 = -144.0 * (2.0 * gs * gs + 4.0 * w0 * w0 / (3.0 * al))
    c3 = -(al * al * gs**6) / (4.0 * z * z * w0 * w0)
    omega_p = _super31_omega(c1, c2, c3)
    amp = al * gs**3 / (24.0 * z * w0 * omega_p)
    return ResonancePoint(omega_p, amp, 0.5 * math.pi, ResonanceKind.PHASE, harmonic_index=3)


def super31_amplitude_resonance(cfg: OscillatorConfig, f: float) -> ResonancePoint:
    """Amplitude resonance of the third harmonic in the 3:1 window.

    Same quadratic structure with damping corrections in the
    coefficients; tan(phi_a) = 12 omega_a / (zeta omega0), so the lag
    sits within O(zeta) of quadrature.
    """
    z = cfg.zeta_bar
    if z == 0.0:
        raise ZeroDamping("3:1 amplitude resonance requires zeta_bar > 0")
    al = cfg.alpha
    w0 = cfg.omega0
    gs = gamma_star(cfg, f)
    zw_sq = z * z * w0 * w0
    c1 = 1728.0 / al
    c2 = -144.0 * (2.0 * gs * gs + 4.0 * w0 * w0 / (3.0 * al) - 3.0 * zw_sq / (4.0 * al))
    c3 = (2.0 * zw_sq / (3.0 * al) - 2.0 * gs * gs - 4.0 * w0 * w0 / (3.0 * al)) * zw_sq - (
        al * al * gs**6
    ) / (4.0 * z * z * w0 * w0)
    omega_a = _super31_omega(c1, c2, c3)
    amp = al * gs**3 / (2.0 * z * w0 * math.sqrt(zw_sq + 144.0 * omega_a * omega_a))
    phi = math.atan(12.0 * omega_a / (z * w0))
    return ResonancePoint(omega_a, amp, phi, ResonanceKind.AMPLITUDE, harmonic_index=3)


# ---------------------------------------------------------------------------
# 1:3 subharmonic loci


def _sub_gamma_cap(cfg: OscillatorConfig, gamma_b: float, omega: float) -> float:
    # loci live at omega > 2 omega0, far from the singularity guard
    return gamma_b / (cfg.omega0**2 - omega * omega)


def sub13_phase_locus(cfg: OscillatorConfig, omega_p: float) -> tuple[LocusPoint, LocusPoint]:
    """Quadrature locus of the 1:3 family at frequency omega_p.

    gamma = |omega0^2 - omega^2| / sqrt(3 alpha) * sqrt(Ohm -+
    sqrt(Ohm^2 - (32/9) zeta^2 omega0^2 omega^2)), Ohm = omega^2/9 -
    omega0^2, with A_1p = 8 zeta omega0 omega / (9 alpha |Gamma|).

    Returns the (minus, plus) root pair; they coalesce at the fold.
    """
    z = cfg.zeta_bar
    al = cfg.alpha
    w0 = cfg.omega0
    ohm = (omega_p / 3.0) ** 2 - w0 * w0
    disc = ohm * ohm - (32.0 / 9.0) * z * z * w0 * w0 * omega_p * omega_p
    if ohm <= 0.0 or disc < 0.0:
        raise BelowFoldPoint(
            f"no 1:3 quadrature point at omega = {omega_p:.6g} (below the locus fold)"
        )
    inner = math.sqrt(disc)
    out = []
    for sign in (RootSign.MINUS, RootSign.PLUS):
        arg = ohm + sign.value * inner
        gamma_b = abs(w0 * w0 - omega_p * omega_p) / math.sqrt(3.0 * al) * math.sqrt(arg)
        gcap = _sub_gamma_cap(cfg, gamma_b, omega_p)
        amp = 8.0 * z * w0 * omega_p / (9.0 * al * abs(gcap))
        out.append(LocusPoint(omega_p, gamma_b, amp, sign, 0.5 * math.pi))
    return out[0], out[1]


def sub13_amplitude_lag(cfg: OscillatorConfig, omega_a: float) -> float:
    """Amplitude-resonance lag of the 1:3 family, member nearest pi/2.

    tan(3 phi_a) = 4 omega_a / (39 zeta omega0); the relevant solution has
    3 phi_a in the third quadrant, so phi_a = (atan(.) + pi) / 3.
    """
    z = cfg.zeta_bar
    if z == 0.0:
        return 0.5 * math.pi
    return (math.atan(4.0 * omega_a / (39.0 * z * cfg.omega0)) + math.pi) / 3.0


def sub13_amplitude_locus(cfg: OscillatorConfig, omega_a: float) -> tuple[LocusPoint, LocusPoint]:
    """Amplitude-resonance locus of the 1:3 family at frequency omega_a.

    A_1a = (2 zeta omega0 / (9 alpha |Gamma|)) sqrt(1521 zeta^2 omega0^2
    + 16 omega^2); the forcing solves a quadratic in gamma^2 whose two
    roots are returned as the (minus, plus) pair.  Of the two frequencies
    at which a given forcing meets the locus, the greatest corresponds to
    the response maximum.
    """
    z = cfg.zeta_bar
    al = cfg.alpha
    w0 = cfg.omega0
    ohm = (omega_a / 3.0) ** 2 - w0 * w0
    group = 2.0 * ohm + 13.0 * z * z * w0 * w0
    radicand = 1521.0 * z * z * w0 * w0 + 16.0 * omega_a * omega_a
    disc = group * group - (8.0 / 9.0) * z * z * w0 * w0 * radicand
    if ohm <= 0.0 or disc < 0.0:
        raise BelowFoldPoint(
            f"no 1:3 amplitude-resonance point at omega = {omega_a:.6g}"
        )
    inner = math.sqrt(disc)
    phi = sub13_amplitude_lag(cfg, omega_a)
    out = []
    for sign in (RootSign.MINUS, RootSign.PLUS):
        arg = group + sign.value * inner
        gamma_b = abs(w0 * w0 - omega_a * omega_a) / math.sqrt(6.0 * al) * math.sqrt(arg)
        gcap = _sub_gamma_cap(cfg, gamma_b, omega_a)
        amp = 2.0 * z * w0 / (9.0 * al * abs(gcap)) * math.sqrt(radicand)
        out.append(LocusPoint(omega_a, gamma_b, amp, sign, phi))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# 1:2 subharmonic locus and existence


def sub12_phase_locus(cfg: OscillatorConfig, omega_p: float) -> tuple[LocusPoint, LocusPoint]:
    """Resonance locus of the 1:2 family at frequency omega_p.

    At this order amplitude and phase resonance coincide (sin 4 phi = -1,
    lag family 3 pi/8 + i pi/2).  gamma = |omega0^2 - omega^2| /
    sqrt(3 alpha) * sqrt(Ohm -+ sqrt(Ohm^2 - (12/11) zeta omega0
    omega^3)), A_p = sqrt(8 zeta omega0 omega^3 / (33 alpha^2 Gamma^2)).
    """
    z = cfg.zeta_bar
    al = cfg.alpha
    w0 = cfg.omega0
    ohm = (omega_p / 2.0) ** 2 - w0 * w0
    disc = ohm * ohm - (12.0 / 11.0) * z * w0 * omega_p**3
    if ohm <= 0.0 or disc < 0.0:
        raise BelowFoldPoint(
            f"no 1:2 resonance point at omega = {omega_p:.6g} (below the locus fold)"
        )
    inner = math.sqrt(disc)
    out = []
    for sign in (RootSign.MINUS, RootSign.PLUS):
        arg = ohm + sign.value * inner
        gamma_b = abs(w0 * w0 - omega_p * omega_p) / math.sqrt(3.0 * al) * math.sqrt(arg)
        gcap = _sub_gamma_cap(cfg, gamma_b, omega_p)
        amp = math.sqrt(8.0 * z * w0 * omega_p**3 / (33.0 * al * al * gcap * gcap))
        out.append(LocusPoint(omega_p, gamma_b, amp, sign, 3.0 * math.pi / 8.0))
    return out[0], out[1]


def sub12_existence_margin(cfg: OscillatorConfig, f: float, omega: float) -> float:
    """Signed margin of the 1:2 existence inequality at (f, omega).

    Positive where 4 Ohm/(3 alpha) >= 2 Gamma^2 + 8 zeta omega0 omega^3 /
    (33 alpha^2 Gamma^2), i.e. where the subharmonic can exist.
    """
    gb = _gamma_bar(cfg, f)
    if gb == 0.0:
        return -math.inf
    z = cfg.zeta_bar
    al = cfg.alpha
    w0 = cfg.omega0
    gcap = _sub_gamma_cap(cfg, gb, omega)
    ohm = (omega / 2.0) ** 2 - w0 * w0
    lhs = 4.0 * ohm / (3.0 * al)
    rhs = 2.0 * gcap * gcap + 8.0 * z * w0 * omega**3 / (33.0 * al * al * gcap * gcap)
    return lhs - rhs


def sub12_existence_window(
    cfg: OscillatorConfig,
    f: float,
    omega_range: tuple[float, float] | None = None,
    samples: int = 2001,
) -> tuple[float, float] | None:
    """Frequency window where the 1:2 subharmonic exists, or None.

    Scans the existence inequality over omega_range (default, 2.05 to 10
    times omega0) and bisects the edges.  The response amplitude r0 grows
    monotonically with frequency, so the amplitude resonance sits at the
    upper edge omega_sup.
    """
    if omega_range is None:
        omega_range = (2.05 * cfg.omega0, 10.0 * cfg.omega0)
    lo, hi = omega_range
    if not lo < hi:
        raise ValueError("omega_range must be increasing")
    step = (hi - lo) / (samples - 1)
    inside = []
    for i in range(samples):
        w = lo + i * step
        if sub12_existence_margin(cfg, f, w) >= 0.0:
            inside.append(w)
    if not inside:
        return None
    margin = lambda w: sub12_existence_margin(cfg, f, w)
    w_first, w_last = inside[0], inside[-1]
    w_inf = (
        brentq(margin, w_first - step, w_first, xtol=1e-12)
        if w_first > lo and margin(w_first - step) < 0.0
        else w_first
    )
    w_sup = (
        brentq(margin, w_last, w_last + step, xtol=1e-12)
        if w_last < hi and margin(w_last + step) < 0.0
        else w_last
    )
    return (w_inf, w_sup)


# ---------------------------------------------------------------------------
# 5:1 existence


def super51_existence(cfg: OscillatorConfig, f: float, omega: float) -> bool:
    """Existence test for the 5:1 superharmonic steady state.

    2 Gamma^2 <= 4 Ohm/(3 alpha) <= (3 alpha^2 Gamma^5 / (2560 zeta
    omega0 omega^3))^2 + 2 Gamma^2 with Ohm = 25 omega^2 - omega0^2.
    """
    gb = _gamma_bar(cfg, f)
    if gb == 0.0:
        return False
    z = cfg.zeta_bar
    al = cfg.alpha
    w0 = cfg.omega0
    gcap = _sub_gamma_cap(cfg, gb, omega)
    ohm = 25.0 * omega * omega - w0 * w0
    mid = 4.0 * ohm / (3.0 * al)
    lo = 2.0 * gcap * gcap
    if z == 0.0:
        return lo <= mid
    cap = (3.0 * al * al * gcap**5 / (2560.0 * z * w0 * omega**3)) ** 2 + lo
    return lo <= mid <= cap


# ---------------------------------------------------------------------------
# locus geometry shared by the 1:3 and 1:2 families


def _locus_fn(cfg: OscillatorConfig, res: ResonanceId, kind: str = "phase"):
    key = (res.k, res.nu, kind)
    if key == (1, 3, "phase"):
        return sub13_phase_locus
    if key == (1, 3, "amplitude"):
        return sub13_amplitude_locus
    if key == (1, 2, "phase"):
        return sub12_phase_locus
    raise UnsupportedFamily(f"no closed-form {kind} locus for the {res.label} family")


def _locus_onset(cfg: OscillatorConfig, res: ResonanceId, kind: str = "phase") -> float:
    """Smallest frequency with a real locus point (fold of the locus)."""
    fn = _locus_fn(cfg, res, kind)
    lo = res.nu * cfg.omega0 * (1.0 + 1e-9)
    hi = 2.0 * res.nu * cfg.omega0

    def has_point(w: float) -> bool:
        try:
            fn(cfg, w)
            return True
        except BelowFoldPoint:
            return False

    while not has_point(hi):
        hi *= 1.5
        if hi > 1e3 * cfg.omega0:
            raise NoResonance(f"no {res.label} locus found below 1000 omega0")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if has_point(mid):
            hi = mid
        else:
            lo = mid
    return hi


def locus_fold(cfg: OscillatorConfig, res: ResonanceId) -> LocusPoint:
    """Fold of the quadrature locus, where the two root branches coalesce."""
    fn = _locus_fn(cfg, res)
    omega = _locus_onset(cfg, res)
    minus, plus = fn(cfg, omega)
    gamma_b = 0.5 * (minus.gamma_bar + plus.gamma_bar)
    amp = 0.5 * (minus.amplitude + plus.amplitude)
    return LocusPoint(omega, gamma_b, amp, RootSign.MINUS, minus.phase_lag)


def minimum_locus_forcing(cfg: OscillatorConfig, res: ResonanceId) -> LocusPoint:
    """Global minimum of the minus-branch locus forcing over frequency.

    Below this forcing no resonant branch of the family exists at any
    frequency; at it, the isolated branch is born.
    """
    fn = _locus_fn(cfg, res)
    onset = _locus_onset(cfg, res)

    def gamma_minus(w: float) -> float:
        try:
            return fn(cfg, w)[0].gamma_bar
        except BelowFoldPoint:
            return math.inf

    opt = minimize_scalar(
        gamma_minus,
        bounds=(onset, 10.0 * res.nu * cfg.omega0),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return fn(cfg, float(opt.x))[0]


def locus_crossings(
    cfg: OscillatorConfig, res: ResonanceId, f: float, kind: str = "phase"
) -> tuple[LocusPoint, ...]:
    """All intersections of a resonance locus with a fixed forcing.

    Returns locus points with gamma_bar = f/m sorted by frequency; empty
    when the forcing is below the locus minimum.  The greatest frequency
    is the resonance (response maximum); a second crossing, when present,
    marks the response minimum of the isolated branch.
    """
    gb = _gamma_bar(cfg, f)
    fn = _locus_fn(cfg, res, kind)
    onset = _locus_onset(cfg, res, kind)

    def branch_gamma(w: float, idx: int) -> float:
        try:
            return fn(cfg, w)[idx].gamma_bar - gb
        except BelowFoldPoint:
            return math.nan

    crossings: list[LocusPoint] = []
    hi = 60.0 * res.nu * cfg.omega0
    n = 4000
    for idx in (0, 1):
        prev_w, prev_v = None, None
        for i in range(n + 1):
            w = onset * (1.0 + 1e-12) + (hi - onset) * i / n
            v = branch_gamma(w, idx)
            if math.isnan(v):
                continue
            if prev_v is not None and (v == 0.0 or (v > 0.0) != (prev_v > 0.0)):
                w_root = brentq(lambda x: branch_gamma(x, idx), prev_w, w, xtol=1e-12)
                crossings.append(fn(cfg, w_root)[idx])
            prev_w, prev_v = w, v
    crossings.sort(key=lambda p: p.omega)
    return tuple(crossings)
