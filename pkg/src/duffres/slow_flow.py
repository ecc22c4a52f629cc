"""Averaged slow-flow systems for the resonance families.

For each k:nu family the response is written as r sin(omega_k t - phi)
plus, for the secondary resonances, the directly forced term
Gamma sin(omega t), and averaging yields autonomous equations for the
slow amplitude r and lag phi.  Four families carry a full flow
(1:1, 3:1, 1:3 at first order, 1:2 at second order); the remaining
families are implemented as steady-state residual pairs because only
those are available in closed form at the orders involved.

Residual convention: the public rhs/residual pair is scaled so that it
vanishes identically at r = 0 under zero forcing.  For the full-flow
families that pair is (dr/dt, r dphi/dt); for the steady-only families
it is r times (first steady relation, amplitude relation).  The Newton
solver works on the unscaled pair internally so the trivial r = 0 root
does not attract iterates.

Stability is classified from the Jacobian of the slow flow written in
the Cartesian coordinates u = -r sin(phi), v = r cos(phi).  The polar
and Cartesian spectra agree at any steady state, but the Cartesian
field stays smooth at r = 0 where the polar angle degenerates, so the
trivial state of the subharmonic families is classifiable too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from . import closed_form
from .core import (
    Forcing,
    NotExist,
    OscillatorConfig,
    ResonanceId,
    SeedNotFound,
    SlowFlowState,
    UnsupportedFamily,
    cartesian_to_polar,
    detuning,
    phase_distance,
    phase_symmetry_period,
    polar_to_cartesian,
    wrap_phase,
)

__all__ = [
    "SlowFlowSystem",
    "SteadyState",
    "StepControl",
    "Branch",
    "system_for",
    "residual",
    "find_steady_states",
    "sweep_branch",
    "stability_eigenvalues",
    "r0_approximation",
    "r0_slope",
]

_NEWTON_TOL = 1e-10
_NEWTON_MAX_ITER = 50
_MAX_HALVINGS = 8
_MERGE_TOL = 1e-6

# Exact rational coefficients of the higher-order steady relations; kept
# as fractions so the transcription stays literally comparable.
_C15 = Fraction(1875, 128)
_C14 = Fraction(1665, 1)
_C51 = Fraction(3, 1280)
_C21 = Fraction(21, 640)
_C23 = Fraction(297257881995, 282591232)
_C32 = Fraction(1973735, 22289904)


def _gcap(cfg: OscillatorConfig, gb: float, omega: float) -> float:
    # raw linear response scale; the secondary families live away from
    # omega0, so the pole only needs to stay finite, not accurate
    denom = cfg.omega0**2 - omega * omega
    if denom == 0.0:
        return math.inf if gb > 0.0 else 0.0
    return gb / denom


# ---------------------------------------------------------------------------
# family right-hand sides
#
# Full families return (dr/dt, r dphi/dt); steady-only families return the
# unscaled residual pair (first relation, amplitude relation).


def _pair_11(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    ohm = w * w - w0 * w0
    fr = -(z * w0 * w * r - 0.5 * gb * math.sin(phi)) / w
    g = -((3.0 * al / 8.0) * r**3 - 0.5 * ohm * r - 0.5 * gb * math.cos(phi)) / w
    return fr, g


def _pair_31(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = 9.0 * w * w - w0 * w0
    drive = al * gc**3 / (24.0 * w)
    fr = -(z * w0 * r - drive * math.sin(phi))
    g = -(
        (al / (24.0 * w)) * (3.0 * r * r + 6.0 * gc * gc - 4.0 * ohm / al) * r
        - drive * math.cos(phi)
    )
    return fr, g


def _pair_13(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = (w / 3.0) ** 2 - w0 * w0
    drive = (9.0 * al * gc / (8.0 * w)) * r * r
    fr = -(z * w0 * r - drive * math.sin(3.0 * phi))
    g = -(
        (3.0 * al / (8.0 * w)) * (3.0 * r * r + 6.0 * gc * gc - 4.0 * ohm / al) * r
        - drive * math.cos(3.0 * phi)
    )
    return fr, g


def _pair_12(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = (w / 2.0) ** 2 - w0 * w0
    w3 = w**3
    cpl = 33.0 * al * al * gc * gc / (4.0 * w3)
    r2 = r * r
    fr = -0.5 * (2.0 * z * w0 * r + cpl * r**3 * math.sin(4.0 * phi))
    # second-order frequency correction; the r^2 coefficient groups the
    # detuning, forced-term and mixed contributions
    corr = (
        (2.0 * ohm * ohm / w3 - 6.0 * al * gc * gc * ohm / w3 - 51.0 * al * al * gc * gc / (10.0 * w3)) * r2
        - (6.0 * al * ohm / w3 + cpl) * r2 * r2
        + (51.0 * al * al / (16.0 * w3)) * r2**3
    )
    phidot = -(al / (4.0 * w)) * (3.0 * r2 + 6.0 * gc * gc - 4.0 * ohm / al) + 0.5 * (
        corr - cpl * r2 * math.cos(4.0 * phi)
    )
    return fr, r * phidot


def _amp_relation(r: float, gc: float, ohm: float, al: float) -> float:
    return 3.0 * r * r + 6.0 * gc * gc - 4.0 * ohm / al


def _pair_15(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = (w / 5.0) ** 2 - w0 * w0
    first = 2.0 * z * w0 + float(_C15) * al * al * gc * r**3 * math.sin(5.0 * phi) / w**3
    return first, _amp_relation(r, gc, ohm, al)


def _pair_14(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = (w / 4.0) ** 2 - w0 * w0
    first = z * w0 + float(_C14) * al**4 * gc * gc * r**6 * math.sin(8.0 * phi) / w**6
    return first, _amp_relation(r, gc, ohm, al)


def _pair_51(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = 25.0 * w * w - w0 * w0
    first = 2.0 * z * w0 * r - float(_C51) * al * al * gc**5 * math.sin(phi) / w**3
    return first, _amp_relation(r, gc, ohm, al)


def _pair_21(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = 4.0 * w * w - w0 * w0
    first = 2.0 * z * w0 + float(_C21) * al * al * gc**4 * math.sin(2.0 * phi) / w**3
    return first, _amp_relation(r, gc, ohm, al)


def _pair_23(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = (2.0 * w / 3.0) ** 2 - w0 * w0
    first = 24.0 * z * w0 + float(_C23) * al**4 * gc**4 * r**4 * math.sin(6.0 * phi) / w**7
    return first, _amp_relation(r, gc, ohm, al)


def _pair_32(r: float, phi: float, w: float, cfg: OscillatorConfig, gb: float):
    w0, z, al = cfg.omega0, cfg.zeta_bar, cfg.alpha
    gc = _gcap(cfg, gb, w)
    ohm = (3.0 * w / 2.0) ** 2 - w0 * w0
    first = 24.0 * z * w0 + float(_C32) * al**4 * gc**6 * r * r * math.sin(4.0 * phi) / w**7
    return first, _amp_relation(r, gc, ohm, al)


class _Family(NamedTuple):
    order: int
    full: bool
    fn: Callable[[float, float, float, OscillatorConfig, float], tuple[float, float]]


_FAMILIES: dict[tuple[int, int], _Family] = {
    (1, 1): _Family(1, True, _pair_11),
    (3, 1): _Family(1, True, _pair_31),
    (1, 3): _Family(1, True, _pair_13),
    (1, 2): _Family(2, True, _pair_12),
    (2, 1): _Family(2, False, _pair_21),
    (1, 5): _Family(3, False, _pair_15),
    (5, 1): _Family(3, False, _pair_51),
    (1, 4): _Family(4, False, _pair_14),
    (2, 3): _Family(4, False, _pair_23),
    (3, 2): _Family(4, False, _pair_32),
}


def _family(res: ResonanceId) -> _Family:
    try:
        return _FAMILIES[(res.k, res.nu)]
    except KeyError:
        raise UnsupportedFamily(f"no averaged system for the {res.label} family") from None


@dataclass(frozen=True)
class SlowFlowSystem:
    """One averaged system: family label, averaging order, scaled rhs.

    rhs(state, omega, cfg, forcing) returns the residual pair described
    in the module docstring; it vanishes at r = 0 under zero forcing.
    """

    resonance: ResonanceId
    order: int
    rhs: Callable[[SlowFlowState, float, OscillatorConfig, Forcing], tuple[float, float]]

    @property
    def has_flow(self) -> bool:
        """True when the pair is a genuine flow usable for stability."""
        return _family(self.resonance).full


def system_for(res: ResonanceId) -> SlowFlowSystem:
    """Averaged system for a supported family (UnsupportedFamily otherwise)."""
    fam = _family(res)

    def rhs(state: SlowFlowState, omega: float, cfg: OscillatorConfig, forcing: Forcing):
        a, b = fam.fn(state.r, state.phi, omega, cfg, forcing.gamma_bar(cfg))
        if fam.full:
            return (a, b)
        return (state.r * a, state.r * b)

    return SlowFlowSystem(res, fam.order, rhs)


@dataclass(frozen=True)
class SteadyState:
    """A converged steady state of one family's averaged system.

    stable/eigenvalues are None for the steady-only families, whose
    printed relations do not define a flow to linearize.
    """

    resonance: ResonanceId
    state: SlowFlowState
    omega: float
    residual_norm: float
    stable: bool | None
    eigenvalues: tuple[complex, complex] | None


@dataclass(frozen=True)
class StepControl:
    """Continuation step sizes (arclength in (r, phi, omega) space).

    The default maximum step keeps the sampled branch maximum within
    about 1e-6 of the true peak amplitude (the error is quadratic in the
    step near a smooth maximum).
    """

    ds: float = 0.003
    ds_min: float = 1e-6
    ds_max: float = 0.004
    max_steps: int = 8000
    grid_points: int = 241


@dataclass
class Branch:
    """Ordered steady states along one continuation run."""

    resonance: ResonanceId
    forcing_amplitude: float
    points: list[SteadyState]

    def omegas(self) -> np.ndarray:
        return np.array([p.omega for p in self.points])

    def amplitudes(self) -> np.ndarray:
        return np.array([p.state.r for p in self.points])

    def max_state(self) -> SteadyState:
        if not self.points:
            raise NotExist("branch is empty")
        return max(self.points, key=lambda p: p.state.r)

    def endpoints(self) -> tuple[SteadyState, SteadyState]:
        if not self.points:
            raise NotExist("branch is empty")
        return self.points[0], self.points[-1]


# ---------------------------------------------------------------------------
# point operations


def residual(
    sys: SlowFlowSystem,
    state: SlowFlowState,
    omega: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
) -> tuple[float, float]:
    """Scaled residual pair; zero exactly at a steady state."""
    return sys.rhs(state, omega, cfg, forcing)


def r0_approximation(
    res: ResonanceId, omega: float, cfg: OscillatorConfig, forcing: Forcing
) -> float:
    """Leading-order amplitude r0 = sqrt(4 Ohm / (3 alpha) - 2 Gamma^2).

    This is the amplitude relation shared by every secondary family;
    NotExist signals a negative argument (no response at that omega).
    """
    gc = _gcap(cfg, forcing.gamma_bar(cfg), omega)
    ohm = detuning(cfg, res, omega)
    arg = 4.0 * ohm / (3.0 * cfg.alpha) - 2.0 * gc * gc
    if arg < 0.0:
        raise NotExist(f"r0 undefined for {res.label} at omega = {omega:.6g}")
    return math.sqrt(arg)


def r0_slope(res: ResonanceId, omega: float, cfg: OscillatorConfig, forcing: Forcing) -> float:
    """Derivative of r0 with respect to omega.

    dr0/domega = (4 omega / r0)(k^2 / (3 nu^2 alpha) - gamma^2 /
    (omega0^2 - omega^2)^3); always positive for nu > k above omega0.
    """
    r0 = r0_approximation(res, omega, cfg, forcing)
    gb = forcing.gamma_bar(cfg)
    num = res.k**2 / (3.0 * res.nu**2 * cfg.alpha) - gb * gb / (cfg.omega0**2 - omega * omega) ** 3
    if r0 == 0.0:
        return math.copysign(math.inf, num)
    return 4.0 * omega * num / r0


# ---------------------------------------------------------------------------
# Newton with damping


def _jacobian2(fn, x: np.ndarray) -> np.ndarray:
    j = np.empty((2, 2))
    for col in range(2):
        h = 1e-7 * max(1.0, abs(x[col]))
        xp, xm = x.copy(), x.copy()
        xp[col] += h
        xm[col] -= h
        fp = fn(float(xp[0]), float(xp[1]))
        fm = fn(float(xm[0]), float(xm[1]))
        j[0, col] = (fp[0] - fm[0]) / (2.0 * h)
        j[1, col] = (fp[1] - fm[1]) / (2.0 * h)
    return j


def _newton2(fn, r0: float, phi0: float) -> tuple[float, float, float] | None:
    x = np.array([float(r0), float(phi0)])
    fv = np.array(fn(float(x[0]), float(x[1])))
    if not np.all(np.isfinite(fv)):
        return None
    norm = float(np.max(np.abs(fv)))
    for _ in range(_NEWTON_MAX_ITER):
        if norm < 1e-13:
            break
        j = _jacobian2(fn, x)
        if not np.all(np.isfinite(j)):
            return None
        try:
            step = np.linalg.solve(j, -fv)
        except np.linalg.LinAlgError:
            return None
        lam, accepted = 1.0, False
        for _ in range(_MAX_HALVINGS + 1):
            xn = x + lam * step
            fn_new = np.array(fn(float(xn[0]), float(xn[1])))
            if np.all(np.isfinite(fn_new)) and np.max(np.abs(fn_new)) < norm:
                x, fv, norm = xn, fn_new, float(np.max(np.abs(fn_new)))
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            break
    if not norm < _NEWTON_TOL:
        return None
    return float(x[0]), float(x[1]), norm


def _normalize(r: float, phi: float) -> tuple[float, float]:
    # (-r, phi) and (r, phi + pi) are the same physical state
    if r < 0.0:
        return -r, wrap_phase(phi + math.pi)
    return r, wrap_phase(phi)


def _seed_scales(
    res: ResonanceId, omega: float, cfg: OscillatorConfig, forcing: Forcing
) -> list[float]:
    scales = []
    try:
        r0 = r0_approximation(res, omega, cfg, forcing)
        if r0 > 0.0:
            scales.append(r0)
    except NotExist:
        pass
    denom = cfg.omega0**2 - omega * omega
    gb = forcing.gamma_bar(cfg)
    if abs(denom) > 1e-9 and gb > 0.0:
        scales.append(abs(gb / denom))
    if not scales:
        # near-resonant fallback: quadrature amplitude of the linear system
        z = max(cfg.zeta_bar, 1e-6)
        scales.append(max(gb / (2.0 * z * cfg.omega0**2), 1e-3))
    return scales


def find_steady_states(
    sys: SlowFlowSystem,
    omega: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
) -> list[SteadyState]:
    """All steady states at one frequency, by multi-start damped Newton.

    Seeds span {0.25, 0.5, 1, 2} times each amplitude scale and 16
    uniform phases; converged roots are merged modulo the family's phase
    symmetry and classified for stability when the family has a flow.
    Returns an empty list when nothing converges (e.g. outside an
    existence window).

    Under nonzero forcing the r = 0 state (family absent) is not
    reported, and for 1:2 only roots near the leading-order amplitude r0
    are kept: the second-order polynomial terms admit large-amplitude
    artifacts far outside averaging validity.
    """
    fam = _family(sys.resonance)
    gb = forcing.gamma_bar(cfg)

    def fn(r: float, phi: float) -> tuple[float, float]:
        return fam.fn(r, phi, omega, cfg, gb)

    period = phase_symmetry_period(sys.resonance)
    found: list[tuple[float, float, float]] = []
    for scale in _seed_scales(sys.resonance, omega, cfg, forcing):
        for mult in (0.25, 0.5, 1.0, 2.0):
            for j in range(16):
                sol = _newton2(fn, mult * scale, 2.0 * math.pi * j / 16.0)
                if sol is None:
                    continue
                r, phi = _normalize(sol[0], sol[1])
                if any(
                    abs(r - rk) < _MERGE_TOL
                    and (min(r, rk) < _MERGE_TOL or phase_distance(phi, pk, period) < _MERGE_TOL)
                    for rk, pk, _ in found
                ):
                    continue
                found.append((r, phi, sol[2]))

    if forcing.amplitude > 0.0:
        found = [t for t in found if t[0] > 1e-8]
        if (sys.resonance.k, sys.resonance.nu) == (1, 2):
            try:
                r0 = r0_approximation(sys.resonance, omega, cfg, forcing)
            except NotExist:
                found = []
            else:
                found = [t for t in found if abs(t[0] - r0) <= 0.25 * r0 + 0.05]

    out = []
    for r, phi, _ in sorted(found):
        state = SlowFlowState(r, phi)
        res_pair = residual(sys, state, omega, cfg, forcing)
        if fam.full:
            eig = stability_eigenvalues(sys, state, omega, cfg, forcing)
            stable = all(ev.real < 0.0 for ev in eig)
        else:
            eig, stable = None, None
        out.append(
            SteadyState(
                resonance=sys.resonance,
                state=state,
                omega=omega,
                residual_norm=max(abs(res_pair[0]), abs(res_pair[1])),
                stable=stable,
                eigenvalues=eig,
            )
        )
    return out


def stability_eigenvalues(
    sys: SlowFlowSystem,
    state: SlowFlowState,
    omega: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
) -> tuple[complex, complex]:
    """Eigenvalues of the slow-flow Jacobian at a steady state.

    Central finite differences of the Cartesian slow flow with step
    h = max(1e-7, 1e-7 r); see the module docstring for why Cartesian.
    Raises UnsupportedFamily for the steady-only families, whose
    stability is not classified.
    """
    fam = _family(sys.resonance)
    if not fam.full:
        raise UnsupportedFamily(
            f"stability is not classified for the {sys.resonance.label} family"
        )
    gb = forcing.gamma_bar(cfg)

    def cart(u: float, v: float) -> tuple[float, float]:
        st = cartesian_to_polar(u, v)
        fr, g = fam.fn(st.r, st.phi, omega, cfg, gb)
        s, c = math.sin(st.phi), math.cos(st.phi)
        return (-fr * s - g * c, fr * c - g * s)

    u0, v0 = polar_to_cartesian(state)
    h = max(1e-7, 1e-7 * state.r)
    j = np.empty((2, 2))
    for col, (du, dv) in enumerate(((h, 0.0), (0.0, h))):
        fp = cart(u0 + du, v0 + dv)
        fm = cart(u0 - du, v0 - dv)
        j[0, col] = (fp[0] - fm[0]) / (2.0 * h)
        j[1, col] = (fp[1] - fm[1]) / (2.0 * h)
    ev = np.linalg.eigvals(j)
    pair = sorted((complex(ev[0]), complex(ev[1])), key=lambda z: (z.real, z.imag))
    return pair[0], pair[1]


# ---------------------------------------------------------------------------
# branch continuation


def _jacobian23(fn3, x: np.ndarray) -> np.ndarray:
    j = np.empty((2, 3))
    for col in range(3):
        h = 1e-7 * max(1.0, abs(x[col]))
        xp, xm = x.copy(), x.copy()
        xp[col] += h
        xm[col] -= h
        fp, fm = fn3(xp), fn3(xm)
        j[0, col] = (fp[0] - fm[0]) / (2.0 * h)
        j[1, col] = (fp[1] - fm[1]) / (2.0 * h)
    return j


def _tangent(fn3, x: np.ndarray, prev: np.ndarray | None) -> np.ndarray:
    j = _jacobian23(fn3, x)
    ref = prev if prev is not None else np.array([0.0, 0.0, 1.0])
    a = np.vstack([j, ref])
    try:
        t = np.linalg.solve(a, np.array([0.0, 0.0, 1.0]))
    except np.linalg.LinAlgError:
        # fold in the reference direction: fall back to the null space
        _, _, vh = np.linalg.svd(j)
        t = vh[-1]
        if prev is not None and np.dot(t, prev) < 0.0:
            t = -t
    return t / np.linalg.norm(t)


def _correct(fn3, x_pred: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, int] | None:
    x = x_pred.copy()
    for it in range(1, 13):
        fv = np.array(fn3(x))
        g = np.array([fv[0], fv[1], np.dot(t, x - x_pred)])
        if np.max(np.abs(g)) < _NEWTON_TOL:
            return x, it
        j3 = np.vstack([_jacobian23(fn3, x), t])
        try:
            step = np.linalg.solve(j3, -g)
        except np.linalg.LinAlgError:
            return None
        x = x + step
        if not np.all(np.isfinite(x)):
            return None
    return None


def _make_point(
    sys: SlowFlowSystem,
    full: bool,
    x: np.ndarray,
    cfg: OscillatorConfig,
    forcing: Forcing,
) -> SteadyState:
    r, phi = _normalize(float(x[0]), float(x[1]))
    omega = float(x[2])
    state = SlowFlowState(r, phi)
    res_pair = residual(sys, state, omega, cfg, forcing)
    if full:
        eig = stability_eigenvalues(sys, state, omega, cfg, forcing)
        stable = all(ev.real < 0.0 for ev in eig)
    else:
        eig, stable = None, None
    return SteadyState(
        resonance=sys.resonance,
        state=state,
        omega=omega,
        residual_norm=max(abs(res_pair[0]), abs(res_pair[1])),
        stable=stable,
        eigenvalues=eig,
    )


def _start_point(
    sys: SlowFlowSystem,
    omega_min: float,
    omega_max: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
) -> tuple[float, float, float]:
    res = sys.resonance
    # isolated branches: seed from the quadrature locus, which pins both
    # the frequency and the amplitude of the resonant point
    if (res.k, res.nu) in ((1, 3), (1, 2)):
        try:
            crossings = [
                p
                for p in closed_form.locus_crossings(cfg, res, forcing.amplitude)
                if omega_min <= p.omega <= omega_max
            ]
        except UnsupportedFamily:  # pragma: no cover - guarded by the tuple match
            crossings = []
        for pt in sorted(crossings, key=lambda p: -p.omega):
            fam = _family(res)
            gb = forcing.gamma_bar(cfg)
            sol = _newton2(
                lambda r, phi: fam.fn(r, phi, pt.omega, cfg, gb), pt.amplitude, pt.phase_lag
            )
            if sol is not None:
                return sol[0], sol[1], pt.omega
    for omega in np.linspace(omega_min, omega_max, 41):
        states = find_steady_states(sys, float(omega), cfg, forcing)
        if states:
            best = max(states, key=lambda s: s.state.r)
            return best.state.r, best.state.phi, float(omega)
    raise SeedNotFound(
        f"no {res.label} steady state found in [{omega_min:.6g}, {omega_max:.6g}] "
        f"at f = {forcing.amplitude:.6g}"
    )


def sweep_branch(
    sys: SlowFlowSystem,
    omega_min: float,
    omega_max: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
    step_ctrl: StepControl | None = None,
) -> Branch:
    """Continue a steady-state branch across [omega_min, omega_max].

    Full-flow families use pseudo-arclength continuation in (r, phi,
    omega), so folds are traversed and isolated branches close on
    themselves.  Steady-only families are swept on a frequency grid,
    chaining the nearest root.  Raises SeedNotFound when the family has
    no steady state anywhere in range.
    """
    if not omega_min < omega_max:
        raise ValueError("omega_min must be below omega_max")
    ctrl = step_ctrl or StepControl()
    fam = _family(sys.resonance)
    if not fam.full:
        return _sweep_grid(sys, omega_min, omega_max, cfg, forcing, ctrl)

    gb = forcing.gamma_bar(cfg)

    def fn3(x: np.ndarray) -> tuple[float, float]:
        return fam.fn(float(x[0]), float(x[1]), float(x[2]), cfg, gb)

    r, phi, omega = _start_point(sys, omega_min, omega_max, cfg, forcing)
    x = np.array([r, phi, omega])
    t = _tangent(fn3, x, None)
    if omega <= omega_min + 1e-12 and t[2] < 0.0:
        t = -t

    points = [_make_point(sys, True, x, cfg, forcing)]
    x_start = x.copy()
    ds = ctrl.ds
    for _ in range(ctrl.max_steps):
        step_ok = None
        while ds >= ctrl.ds_min:
            step_ok = _correct(fn3, x + ds * t, t)
            if step_ok is not None:
                break
            ds *= 0.5
        if step_ok is None:
            break
        x_new, iters = step_ok
        t = _tangent(fn3, x_new, t)
        x = x_new
        if iters <= 4:
            ds = min(ds * 1.4, ctrl.ds_max)
        if not omega_min - 1e-9 <= x[2] <= omega_max + 1e-9:
            # land the endpoint exactly on the window edge
            target = omega_min if x[2] < omega_min else omega_max
            sol = _newton2(lambda r, p: fam.fn(r, p, target, cfg, gb), float(x[0]), float(x[1]))
            if sol is not None:
                points.append(
                    _make_point(sys, True, np.array([sol[0], sol[1], target]), cfg, forcing)
                )
            break
        points.append(_make_point(sys, True, x, cfg, forcing))
        if len(points) > 20 and np.linalg.norm(x - x_start) < max(1.5 * ds, 0.01):
            break  # isola closed on itself
    return Branch(sys.resonance, forcing.amplitude, points)


def _chain_root(
    sys: SlowFlowSystem,
    prev: SteadyState,
    omega: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
) -> SteadyState | None:
    # fast path: continue the tracked root from the previous grid point,
    # falling back to the multi-start search on failure or a jump
    fam = _family(sys.resonance)
    gb = forcing.gamma_bar(cfg)

    def fn(r: float, phi: float) -> tuple[float, float]:
        return fam.fn(r, phi, omega, cfg, gb)

    got = _newton2(fn, prev.state.r, prev.state.phi)
    if got is None:
        return None
    r, phi = _normalize(got[0], got[1])
    if forcing.amplitude > 0.0 and r < 1e-8:
        return None
    if abs(r - prev.state.r) > max(0.25 * prev.state.r, 0.05):
        return None
    state = SlowFlowState(r, phi)
    res_pair = residual(sys, state, omega, cfg, forcing)
    if fam.full:
        eig = stability_eigenvalues(sys, state, omega, cfg, forcing)
        stable: bool | None = all(ev.real < 0.0 for ev in eig)
        eigs: tuple[complex, complex] | None = eig
    else:
        stable, eigs = None, None
    return SteadyState(
        resonance=sys.resonance,
        state=state,
        omega=omega,
        residual_norm=max(abs(res_pair[0]), abs(res_pair[1])),
        stable=stable,
        eigenvalues=eigs,
    )


def _refine_edge(
    sys: SlowFlowSystem,
    prev: SteadyState,
    w_bad: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
) -> SteadyState | None:
    # bisect toward the existence edge between a converged point and a
    # frequency where the root is gone; direction-agnostic in omega
    good, good_w, bad_w = prev, prev.omega, w_bad
    for _ in range(60):
        if abs(bad_w - good_w) < 1e-10:
            break
        mid = 0.5 * (good_w + bad_w)
        got = _chain_root(sys, good, mid, cfg, forcing)
        if got is None:
            bad_w = mid
        else:
            good, good_w = got, mid
    return None if good is prev else good


def _sweep_grid(
    sys: SlowFlowSystem,
    omega_min: float,
    omega_max: float,
    cfg: OscillatorConfig,
    forcing: Forcing,
    ctrl: StepControl,
) -> Branch:
    period = phase_symmetry_period(sys.resonance)
    points: list[SteadyState] = []
    prev: SteadyState | None = None
    w_prev: float | None = None
    for omega in np.linspace(omega_min, omega_max, ctrl.grid_points):
        w = float(omega)
        pick = None if prev is None else _chain_root(sys, prev, w, cfg, forcing)
        if pick is None:
            states = find_steady_states(sys, w, cfg, forcing)
            if not states:
                if prev is not None:
                    # existence window ended between grid points; land on it
                    edge = _refine_edge(sys, prev, w, cfg, forcing)
                    if edge is not None:
                        points.append(edge)
                    prev = None
                w_prev = w
                continue
            if prev is None:
                pick = max(states, key=lambda s: s.state.r)
            else:
                pick = min(
                    states,
                    key=lambda s: abs(s.state.r - prev.state.r)
                    + phase_distance(s.state.phi, prev.state.phi, period),
                )
        if prev is None and w_prev is not None:
            lead = _refine_edge(sys, pick, w_prev, cfg, forcing)
            if lead is not None:
                points.append(lead)
        points.append(pick)
        prev = pick
        w_prev = w
    if not points:
        raise SeedNotFound(
            f"no {sys.resonance.label} steady state found in "
            f"[{omega_min:.6g}, {omega_max:.6g}] at f = {forcing.amplitude:.6g}"
        )
    return Branch(sys.resonance, forcing.amplitude, points)
