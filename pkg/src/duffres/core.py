"""Shared model definitions for the forced Duffing oscillator.

The oscillator is

    m x'' + c x' + k x + k_nl x^3 = f sin(omega t)

and everything downstream works with the mass-normalized parameters
omega0 = sqrt(k/m), zeta_bar = c / (2 m omega0), alpha = k_nl / m and
gamma_bar = f / m.  A k:nu resonance means the response is dominated by
the harmonic at k * omega / nu, so the base (response) frequency is
omega / nu and period-nu solutions are possible for nu > 1.

Phase lags follow the convention

    x(t) = A0 + sum_j A_j sin(j omega_b t - phi_j),    omega_b = omega / nu,

with phi_j wrapped to [0, 2 pi).  The forcing is sin(omega t), so for the
directly driven harmonic (j = nu) a lag of pi/2 is quadrature.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DuffresError",
    "SingularFrequency",
    "OverdampedPeak",
    "ZeroDamping",
    "NoResonance",
    "BelowFoldPoint",
    "NotExist",
    "UnsupportedFamily",
    "SeedNotFound",
    "NoConvergence",
    "NotSettled",
    "NonFinite",
    "OscillatorConfig",
    "Forcing",
    "ResonanceId",
    "ResonanceKind",
    "ResonancePoint",
    "SlowFlowState",
    "HarmonicSolution",
    "resonant_phase_lag",
    "equivalent_phase_lags",
    "phase_symmetry_period",
    "gamma_capital",
    "detuning",
    "wrap_phase",
    "phase_distance",
    "polar_to_cartesian",
    "cartesian_to_polar",
    "default_window",
]


class DuffresError(Exception):
    """Base class for all library errors."""


class SingularFrequency(DuffresError):
    """omega too close to omega0 for the linear response scale Gamma."""


class OverdampedPeak(DuffresError):
    """Damping too large for the requested resonance peak to exist."""


class ZeroDamping(DuffresError):
    """Operation requires zeta_bar > 0."""


class NoResonance(DuffresError):
    """No resonance point found in the searched window."""


class BelowFoldPoint(DuffresError):
    """Requested frequency lies below the fold of the locus."""


class NotExist(DuffresError):
    """No steady state exists at the requested parameters."""


class UnsupportedFamily(DuffresError):
    """The k:nu family is outside the implemented catalog."""


class SeedNotFound(DuffresError):
    """No starting solution could be constructed for the solver."""


class NoConvergence(DuffresError):
    """Iterative solver failed to converge."""


class NotSettled(DuffresError):
    """Time integration did not reach a steady state."""


class NonFinite(DuffresError):
    """A computation produced NaN or infinity."""


@dataclass(frozen=True)
class OscillatorConfig:
    """Physical parameters of the oscillator, SI units."""

    mass: float = 1.0
    damping: float = 0.01
    lin_stiffness: float = 1.0
    nl_stiffness: float = 1.0

    def __post_init__(self) -> None:
        if self.mass <= 0.0:
            raise ValueError("mass must be positive")
        if self.lin_stiffness <= 0.0:
            raise ValueError("lin_stiffness must be positive")
        if self.nl_stiffness <= 0.0:
            raise ValueError("nl_stiffness must be positive (hardening)")
        if self.damping < 0.0:
            raise ValueError("damping must be nonnegative")

    @property
    def omega0(self) -> float:
        return math.sqrt(self.lin_stiffness / self.mass)

    @property
    def zeta_bar(self) -> float:
        return self.damping / (2.0 * self.mass * self.omega0)

    @property
    def alpha(self) -> float:
        return self.nl_stiffness / self.mass

    def backbone_omega(self, r: float) -> float:
        """Undamped free-vibration frequency at amplitude r (first order)."""
        return math.sqrt(self.omega0**2 + 0.75 * self.alpha * r * r)


@dataclass(frozen=True)
class Forcing:
    """Harmonic forcing f sin(omega t).  omega = 0.0 means swept/unset."""

    amplitude: float
    omega: float = 0.0

    def __post_init__(self) -> None:
        if self.amplitude < 0.0:
            raise ValueError("forcing amplitude must be nonnegative")
        if self.omega < 0.0:
            raise ValueError("omega must be nonnegative")

    def gamma_bar(self, cfg: OscillatorConfig) -> float:
        return self.amplitude / cfg.mass

    def at(self, omega: float) -> "Forcing":
        return Forcing(self.amplitude, omega)


@dataclass(frozen=True)
class ResonanceId:
    """k:nu resonance label.  k and nu are coprime positive integers."""

    k: int = 1
    nu: int = 1

    def __post_init__(self) -> None:
        if not (isinstance(self.k, int) and isinstance(self.nu, int)):
            raise ValueError("k and nu must be integers")
        if self.k < 1 or self.nu < 1:
            raise ValueError("k and nu must be >= 1")
        if math.gcd(self.k, self.nu) != 1:
            raise ValueError(f"k:nu = {self.k}:{self.nu} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "ResonanceId":
        try:
            k_str, nu_str = text.strip().split(":")
            return cls(int(k_str), int(nu_str))
        except (ValueError, TypeError) as exc:
            raise ValueError(f"cannot parse resonance label {text!r}") from exc

    @property
    def label(self) -> str:
        return f"{self.k}:{self.nu}"

    @property
    def is_primary(self) -> bool:
        return self.k == 1 and self.nu == 1

    def base_omega(self, omega: float) -> float:
        """Frequency of the response fundamental (period = nu forcing periods)."""
        return omega / self.nu

    def omega_k(self, omega: float) -> float:
        """Frequency of the resonant response harmonic."""
        return self.k * omega / self.nu

    def __str__(self) -> str:
        return self.label


def wrap_phase(phi: float) -> float:
    """Wrap an angle to [0, 2 pi)."""
    out = math.fmod(phi, 2.0 * math.pi)
    if out < 0.0:
        out += 2.0 * math.pi
    # adding 2 pi to a tiny negative remainder can round up to 2 pi itself
    if out >= 2.0 * math.pi:
        out = 0.0
    return out


def phase_distance(a: float, b: float, period: float = 2.0 * math.pi) -> float:
    """Shortest distance between two angles modulo period."""
    d = math.fmod(a - b, period)
    if d < 0.0:
        d += period
    return min(d, period - d)


@dataclass(frozen=True)
class SlowFlowState:
    """Polar coordinates (r, phi) of the averaged resonant harmonic.

    The resonant part of the response is r sin(omega_k t - phi), so r is
    a nonnegative amplitude and phi a lag in [0, 2 pi).
    """

    r: float
    phi: float

    def __post_init__(self) -> None:
        if self.r < 0.0:
            raise ValueError("r must be nonnegative")
        object.__setattr__(self, "phi", wrap_phase(self.phi))


def polar_to_cartesian(state: SlowFlowState) -> tuple[float, float]:
    """Slow Cartesian coordinates: u = -r sin(phi), v = r cos(phi).

    These are the t = 0 values of the resonant harmonic and its velocity
    divided by omega_k.
    """
    return (-state.r * math.sin(state.phi), state.r * math.cos(state.phi))


def cartesian_to_polar(u: float, v: float) -> SlowFlowState:
    """Inverse of polar_to_cartesian; the origin maps to phi = 0."""
    r = math.hypot(u, v)
    if r == 0.0:
        return SlowFlowState(0.0, 0.0)
    return SlowFlowState(r, math.atan2(-u, v))


class ResonanceKind(enum.Enum):
    """Which resonance condition a point satisfies."""

    AMPLITUDE = "amplitude"
    PHASE = "phase"


@dataclass(frozen=True)
class ResonancePoint:
    """A single resonance condition: frequency, amplitude, lag of harmonic k."""

    omega: float
    amplitude: float
    phase_lag: float
    kind: ResonanceKind
    harmonic_index: int = 1

    def __post_init__(self) -> None:
        if self.amplitude < 0.0:
            raise ValueError("amplitude must be nonnegative")
        object.__setattr__(self, "phase_lag", wrap_phase(self.phase_lag))


def resonant_phase_lag(res: ResonanceId) -> float:
    """Phase lag of the resonant harmonic at phase resonance.

    pi/2 when k and nu are both odd, 3 pi / (4 nu) when either is even.
    """
    if (res.k % 2 == 1) and (res.nu % 2 == 1):
        return 0.5 * math.pi
    return 0.75 * math.pi / res.nu


def equivalent_phase_lags(res: ResonanceId) -> tuple[float, ...]:
    """All phase-resonant lags of the k:nu family, sorted in [0, 2 pi).

    Period-nu solutions come in nu copies shifted by one forcing period,
    so for odd k and nu the lag pi/2 spawns the set pi/2 + 2 i pi / nu.
    Families with an even index carry 2 nu lags spaced pi/nu, except 1:4
    where the set is the four values 3 pi/16 + i pi/2.
    """
    base = resonant_phase_lag(res)
    if (res.k % 2 == 1) and (res.nu % 2 == 1):
        lags = (wrap_phase(base + 2.0 * i * math.pi / res.nu) for i in range(res.nu))
    elif (res.k, res.nu) == (1, 4):
        lags = (wrap_phase(base + i * math.pi / 2.0) for i in range(4))
    else:
        lags = (wrap_phase(base + i * math.pi / res.nu) for i in range(2 * res.nu))
    return tuple(sorted(lags))


def phase_symmetry_period(res: ResonanceId) -> float:
    """Period of the phase symmetry of the averaged equations.

    The slow-flow coupling term for k:nu enters through sin(m phi) with
    m = nu for odd k, nu and m = 2 nu otherwise, so (r, phi) and
    (r, phi + 2 pi/m) describe the same orbit.
    """
    m = res.nu if (res.k % 2 == 1 and res.nu % 2 == 1) else 2 * res.nu
    return 2.0 * math.pi / m


def gamma_capital(omega: float, cfg: OscillatorConfig, forcing: Forcing) -> float:
    """Linear response scale Gamma = gamma_bar / (omega0^2 - omega^2).

    Singular at omega = omega0; guarded at a relative gap of 1e-6.
    """
    w0sq = cfg.omega0**2
    denom = w0sq - omega * omega
    if abs(denom) < 1e-6 * w0sq:
        raise SingularFrequency(
            f"omega = {omega:.9g} is within the guard band around omega0"
        )
    return forcing.gamma_bar(cfg) / denom


def detuning(cfg: OscillatorConfig, res: ResonanceId, omega: float) -> float:
    """Resonant-harmonic detuning Ohm = (k omega / nu)^2 - omega0^2."""
    wk = res.omega_k(omega)
    return wk * wk - cfg.omega0**2


def default_window(cfg: OscillatorConfig, res: ResonanceId) -> tuple[float, float]:
    """Default forcing-frequency window bracketing the k:nu region.

    The resonant harmonic sits near omega0 when omega ~ nu omega0 / k;
    the window spans half to twice that.
    """
    center = res.nu * cfg.omega0 / res.k
    return (0.5 * center, 2.0 * center)


class HarmonicSolution:
    """Periodic response as a truncated Fourier series on the base frequency.

    x(t) = a0 + sum_{j=1..N} A_j sin(j omega_b t - phi_j)

    Amplitudes are nonnegative and lags are wrapped to [0, 2 pi).
    """

    __slots__ = ("base_omega", "a0", "amplitudes", "phases")

    def __init__(
        self,
        base_omega: float,
        a0: float,
        amplitudes: np.ndarray,
        phases: np.ndarray,
    ) -> None:
        if base_omega <= 0.0:
            raise ValueError("base_omega must be positive")
        amplitudes = np.asarray(amplitudes, dtype=float).copy()
        phases = np.asarray(phases, dtype=float).copy()
        if amplitudes.shape != phases.shape or amplitudes.ndim != 1:
            raise ValueError("amplitudes and phases must be 1-d and congruent")
        if not (np.all(np.isfinite(amplitudes)) and np.all(np.isfinite(phases))):
            raise NonFinite("harmonic coefficients contain NaN or inf")
        phases = np.mod(phases, 2.0 * np.pi)
        amplitudes.setflags(write=False)
        phases.setflags(write=False)
        self.base_omega = float(base_omega)
        self.a0 = float(a0)
        self.amplitudes = amplitudes
        self.phases = phases

    @classmethod
    def from_cos_sin(
        cls, base_omega: float, a0: float, cos_coeffs: np.ndarray, sin_coeffs: np.ndarray
    ) -> "HarmonicSolution":
        """Build from x = a0 + sum c_j cos(j w t) + s_j sin(j w t)."""
        c = np.asarray(cos_coeffs, dtype=float)
        s = np.asarray(sin_coeffs, dtype=float)
        amps = np.hypot(c, s)
        phases = np.arctan2(-c, s)
        return cls(base_omega, a0, amps, phases)

    @property
    def n_harmonics(self) -> int:
        return len(self.amplitudes)

    @property
    def cos_coeffs(self) -> np.ndarray:
        return -self.amplitudes * np.sin(self.phases)

    @property
    def sin_coeffs(self) -> np.ndarray:
        return self.amplitudes * np.cos(self.phases)

    def amplitude(self, j: int) -> float:
        """Amplitude of harmonic j (j >= 1); zero beyond the truncation."""
        if j < 1:
            raise ValueError("harmonic index must be >= 1")
        if j > len(self.amplitudes):
            return 0.0
        return float(self.amplitudes[j - 1])

    def phase_lag(self, j: int) -> float:
        """Phase lag of harmonic j, in [0, 2 pi)."""
        if not 1 <= j <= len(self.amplitudes):
            raise ValueError(f"harmonic {j} outside stored range")
        return float(self.phases[j - 1])

    def evaluate(self, t: np.ndarray | float) -> np.ndarray | float:
        t = np.asarray(t, dtype=float)
        j = np.arange(1, len(self.amplitudes) + 1)
        arg = np.multiply.outer(t, j * self.base_omega) - self.phases
        out = self.a0 + np.sum(self.amplitudes * np.sin(arg), axis=-1)
        return out if out.ndim else float(out)

    def velocity(self, t: np.ndarray | float) -> np.ndarray | float:
        t = np.asarray(t, dtype=float)
        j = np.arange(1, len(self.amplitudes) + 1)
        w = j * self.base_omega
        arg = np.multiply.outer(t, w) - self.phases
        out = np.sum(self.amplitudes * w * np.cos(arg), axis=-1)
        return out if out.ndim else float(out)

    def max_displacement(self, samples: int = 4096) -> float:
        """Max |x| over one base period, sampled on a uniform grid."""
        t = np.linspace(0.0, 2.0 * np.pi / self.base_omega, samples, endpoint=False)
        return float(np.max(np.abs(self.evaluate(t))))

    def __repr__(self) -> str:
        lead = int(np.argmax(self.amplitudes)) + 1 if len(self.amplitudes) else 0
        return (
            f"HarmonicSolution(base_omega={self.base_omega:.6g}, "
            f"n={self.n_harmonics}, lead harmonic {lead})"
        )
