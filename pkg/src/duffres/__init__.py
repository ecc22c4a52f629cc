"""Resonances of the harmonically forced hardening Duffing oscillator.

The package locates and cross-validates amplitude and phase resonances
of the primary (1:1), superharmonic (k:1), subharmonic (1:nu) and
ultra-subharmonic (k:nu) families through three routes: closed-form
expressions, continuation of the slow-flow averaged equations, and
harmonic-balance continuation, all checked against direct time
integration.
"""

from .core import (
    BelowFoldPoint,
    DuffresError,
    Forcing,
    HarmonicSolution,
    NoConvergence,
    NonFinite,
    NoResonance,
    NotExist,
    NotSettled,
    OscillatorConfig,
    OverdampedPeak,
    ResonanceId,
    ResonanceKind,
    ResonancePoint,
    SeedNotFound,
    SingularFrequency,
    SlowFlowState,
    UnsupportedFamily,
    ZeroDamping,
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

__version__ = "0.1.0"

__all__ = [
    "BelowFoldPoint",
    "DuffresError",
    "Forcing",
    "HarmonicSolution",
    "NoConvergence",
    "NonFinite",
    "NoResonance",
    "NotExist",
    "NotSettled",
    "OscillatorConfig",
    "OverdampedPeak",
    "ResonanceId",
    "ResonanceKind",
    "ResonancePoint",
    "SeedNotFound",
    "SingularFrequency",
    "SlowFlowState",
    "UnsupportedFamily",
    "ZeroDamping",
    "cartesian_to_polar",
    "default_window",
    "detuning",
    "equivalent_phase_lags",
    "gamma_capital",
    "phase_distance",
    "phase_symmetry_period",
    "polar_to_cartesian",
    "resonant_phase_lag",
    "wrap_phase",
    "__version__",
]
