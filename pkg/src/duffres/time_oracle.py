"""Direct time integration: the ground truth the other solvers answer to.

Fixed-step fourth-order integration of the mass-normalized equation,
steady-state harmonic extraction by Fourier projection over an integer
number of base periods, and point-wise verification of slow-flow and
harmonic-balance results against the settled trajectory.

Fixed stepping is deliberate: commensurate sampling makes the projection
windows exact, so extraction accuracy is limited by settling, not
quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .core import (
    Forcing,
    HarmonicSolution,
    NonFinite,
    NotSettled,
    OscillatorConfig,
    phase_distance,
)

_TRANSIENT_PHASE = 500.0  # radians of omega0 phase per unit zeta_bar
_SETTLE_RTOL = 1e-4
_MIN_BASE_PERIODS = 8


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled (x, v) history starting at absolute time t0."""

    time_step: float
    samples: np.ndarray  # shape (n, 2), columns x and v
    forcing: Forcing
    t0: float = 0.0

    def __post_init__(self) -> None:
        if self.time_step <= 0.0:
            raise ValueError("time_step must be positive")
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError("samples must have shape (n, 2)")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    @property
    def x(self) -> np.ndarray:
        return self.samples[:, 0]

    @property
    def v(self) -> np.ndarray:
        return self.samples[:, 1]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.time_step * np.arange(self.samples.shape[0])

    @property
    def duration(self) -> float:
        return self.time_step * (self.samples.shape[0] - 1)


class Verdict(Enum):
    MATCH = "Match"
    MISMATCH = "Mismatch"
    UNREACHABLE = "Unreachable"


@dataclass(frozen=True)
class VerifyTolerances:
    amp_rel: float = 0.01
    phase_abs: float = 0.1


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of re-integrating a solver's point.

    amplitude_errors[0] is the mean-offset error, entry j the relative
    error of harmonic j (relative to the largest reference amplitude);
    phase_errors[j] is nan for harmonics too small to carry phase.
    """

    amplitude_errors: tuple[float, ...]
    phase_errors: tuple[float, ...]
    ode_residual_rms: float
    verdict: Verdict
    measured: HarmonicSolution | None = None

    @property
    def max_amplitude_error(self) -> float:
        return max(self.amplitude_errors)

    @property
    def max_phase_error(self) -> float:
        finite = [e for e in self.phase_errors if not math.isnan(e)]
        return max(finite) if finite else 0.0


def total_energy(cfg: OscillatorConfig, x: float | np.ndarray, v: float | np.ndarray):
    """Energy of the unforced oscillator; conserved when damping is zero."""
    w0 = cfg.omega0
    return 0.5 * w0 * w0 * np.square(x) + 0.25 * cfg.alpha * np.power(x, 4) + 0.5 * np.square(v)


def _base_period(cfg: OscillatorConfig, forcing: Forcing) -> float:
    # unforced runs (omega sentinel 0) fall back to the natural period
    w = forcing.omega if forcing.omega > 0.0 else cfg.omega0
    return 2.0 * math.pi / w


def integrate(
    cfg: OscillatorConfig,
    forcing: Forcing,
    x0: float,
    v0: float,
    n_periods: int,
    steps_per_period: int = 200,
    t0: float = 0.0,
) -> Trajectory:
    """Integrate n_periods of the forcing period from (x0, v0).

    Classic fourth-order fixed-step integration; raises NonFinite if the
    state overflows.
    """
    if steps_per_period < 200:
        raise ValueError("steps_per_period must be at least 200")
    if n_periods < 1:
        raise ValueError("n_periods must be at least 1")
    dt = _base_period(cfg, forcing) / steps_per_period
    samples = _kernels.rk4_sample(
        float(x0),
        float(v0),
        float(t0),
        dt,
        int(n_periods) * steps_per_period,
        cfg.omega0**2,
        2.0 * cfg.zeta_bar * cfg.omega0,
        cfg.alpha,
        forcing.gamma_bar(cfg),
        forcing.omega,
    )
    if not np.all(np.isfinite(samples)):
        raise NonFinite(
            f"integration overflowed (f = {forcing.amplitude:.6g}, omega = {forcing.omega:.6g})"
        )
    return Trajectory(dt, samples, forcing, t0)


def steady_harmonics(traj: Trajectory, base_freq: float, n_harm: int) -> HarmonicSolution:
    """Fourier projection of the trajectory tail onto harmonics of base_freq.

    Projects over the largest integer number of base periods the
    trajectory holds (at least 8), using absolute time so phases are
    referenced to the forcing sin(omega t).  Raises NotSettled when the
    last two per-period RMS amplitudes differ by more than 1e-4 relative.
    """
    if n_harm < 1:
        raise ValueError("n_harm must be at least 1")
    dt = traj.time_step
    per_period = (2.0 * math.pi / base_freq) / dt
    n_per = round(per_period)
    if n_per < 2 * n_harm + 1:
        raise ValueError("sampling too coarse for requested harmonics")
    if abs(per_period - n_per) > 1e-6 * n_per:
        raise ValueError("time step not commensurate with the base period")
    n_samples = traj.samples.shape[0]
    m = (n_samples - 1) // n_per
    if m < _MIN_BASE_PERIODS:
        raise ValueError(f"trajectory holds {m} base periods, need {_MIN_BASE_PERIODS}")

    x = traj.x
    last = x[n_samples - 1 - n_per : n_samples - 1]
    prev = x[n_samples - 1 - 2 * n_per : n_samples - 1 - n_per]
    rms_last = math.sqrt(float(np.mean(last**2)))
    rms_prev = math.sqrt(float(np.mean(prev**2)))
    denom = max(rms_last, rms_prev, 1e-15)
    if abs(rms_last - rms_prev) / denom > _SETTLE_RTOL:
        raise NotSettled(
            f"per-period RMS still changing by {abs(rms_last - rms_prev) / denom:.3e}"
        )

    start = n_samples - 1 - m * n_per
    window = x[start : start + m * n_per]
    t = traj.t0 + dt * (start + np.arange(m * n_per))
    a0 = float(np.mean(window))
    j = np.arange(1, n_harm + 1)
    arg = np.multiply.outer(j * base_freq, t)
    scale = 2.0 / window.size
    cos_c = scale * (np.cos(arg) @ window)
    sin_c = scale * (np.sin(arg) @ window)
    return HarmonicSolution.from_cos_sin(base_freq, a0, cos_c, sin_c)


def _series_accel(sol: HarmonicSolution, t: np.ndarray) -> np.ndarray:
    j = np.arange(1, len(sol.amplitudes) + 1)
    w = j * sol.base_omega
    arg = np.multiply.outer(t, w) - sol.phases
    return -np.sum(sol.amplitudes * w * w * np.sin(arg), axis=-1)


def ode_residual_rms(
    sol: HarmonicSolution,
    cfg: OscillatorConfig,
    forcing: Forcing,
    samples: int = 4096,
) -> float:
    """RMS of the equation residual for a harmonic solution over one period."""
    t = np.linspace(0.0, 2.0 * math.pi / sol.base_omega, samples, endpoint=False)
    x = sol.evaluate(t)
    v = sol.velocity(t)
    a = _series_accel(sol, t)
    res = (
        a
        + 2.0 * cfg.zeta_bar * cfg.omega0 * v
        + cfg.omega0**2 * x
        + cfg.alpha * x**3
        - forcing.gamma_bar(cfg) * np.sin(forcing.omega * t)
    )
    return math.sqrt(float(np.mean(res**2)))


def _signature_of(point, cfg: OscillatorConfig, forcing: Forcing) -> HarmonicSolution:
    # harmonic-balance points carry their solution; slow-flow states are
    # reconstructed from the decomposition r sin(k w t / nu - phi) plus,
    # away from the primary, the forced term Gamma sin(w t)
    if hasattr(point, "solution"):
        return point.solution
    res = point.resonance
    n = max(res.k, res.nu)
    cos_c = np.zeros(n)
    sin_c = np.zeros(n)
    r, phi = point.state.r, point.state.phi
    cos_c[res.k - 1] += -r * math.sin(phi)
    sin_c[res.k - 1] += r * math.cos(phi)
    if not res.is_primary:
        from .core import gamma_capital

        sin_c[res.nu - 1] += gamma_capital(point.omega, cfg, forcing)
    return HarmonicSolution.from_cos_sin(point.omega / res.nu, 0.0, cos_c, sin_c)


def verify_point(
    point,
    cfg: OscillatorConfig,
    forcing: Forcing,
    tolerances: VerifyTolerances | None = None,
    steps_per_period: int = 200,
) -> VerificationReport:
    """Re-integrate a solver's point and compare harmonic signatures.

    Starts from the point's own reconstructed periodic state (never from
    rest: subharmonic basins may exclude the origin), discards the
    transient, and projects the settled tail.  Stable points that hold
    their signature report Match; trajectories that overflow, fail to
    settle, or land on a different attractor report Unreachable, which
    is the consistent outcome for a point flagged unstable.
    """
    tol = tolerances or VerifyTolerances()
    ref = _signature_of(point, cfg, forcing)
    omega = point.omega
    nu = max(1, round(omega / ref.base_omega))
    n_harm = len(ref.amplitudes)

    resid = ode_residual_rms(ref, cfg, forcing)
    x0 = float(ref.evaluate(0.0))
    v0 = float(ref.velocity(0.0))

    dt = (2.0 * math.pi / omega) / steps_per_period
    t_resp = 2.0 * math.pi * nu / omega
    if cfg.zeta_bar > 0.0:
        t_disc = _TRANSIENT_PHASE / (cfg.zeta_bar * cfg.omega0)
        n_disc = math.ceil(t_disc / t_resp)
    else:
        n_disc = 0
    w0sq = cfg.omega0**2
    two_zw = 2.0 * cfg.zeta_bar * cfg.omega0
    gb = forcing.gamma_bar(cfg)

    def _fail() -> VerificationReport:
        errs = tuple([math.inf] * (n_harm + 1))
        nans = tuple([math.nan] * (n_harm + 1))
        return VerificationReport(errs, nans, resid, Verdict.UNREACHABLE, None)

    if n_disc > 0:
        x1, v1 = _kernels.rk4_final(
            x0, v0, 0.0, dt, n_disc * nu * steps_per_period, w0sq, two_zw, cfg.alpha, gb, omega
        )
        if not (math.isfinite(x1) and math.isfinite(v1)):
            return _fail()
    else:
        x1, v1 = x0, v0
    t1 = n_disc * t_resp

    n_extr = 10
    samples = _kernels.rk4_sample(
        x1, v1, t1, dt, n_extr * nu * steps_per_period, w0sq, two_zw, cfg.alpha, gb, omega
    )
    if not np.all(np.isfinite(samples)):
        return _fail()
    traj = Trajectory(dt, samples, forcing, t1)
    try:
        meas = steady_harmonics(traj, ref.base_omega, n_harm)
    except NotSettled:
        return _fail()

    scale = max(float(np.max(ref.amplitudes)), 1e-12)
    amp_errs = [abs(meas.a0 - ref.a0) / scale]
    phase_errs = [math.nan]
    for j in range(1, n_harm + 1):
        amp_errs.append(abs(meas.amplitude(j) - ref.amplitude(j)) / scale)
        if ref.amplitude(j) >= 0.05 * scale:
            phase_errs.append(
                phase_distance(meas.phase_lag(j), ref.phase_lag(j), 2.0 * math.pi)
            )
        else:
            phase_errs.append(math.nan)

    max_amp = max(amp_errs)
    finite_ph = [e for e in phase_errs if not math.isnan(e)]
    max_ph = max(finite_ph) if finite_ph else 0.0
    if max_amp <= tol.amp_rel and max_ph <= tol.phase_abs:
        verdict = Verdict.MATCH
    elif max_amp > 0.5:
        verdict = Verdict.UNREACHABLE
    else:
        verdict = Verdict.MISMATCH
    return VerificationReport(tuple(amp_errs), tuple(phase_errs), resid, verdict, meas)
