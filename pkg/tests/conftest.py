"""Shared fixtures: one oscillator, cached continuation runs.

Branches are expensive (hundreds of Newton-corrected steps), so every
test that needs one goes through the session-scoped factories below and
identical requests are computed once.
"""

import pytest

import oracles
from duffres import Forcing, HarmonicSolution, OscillatorConfig, ResonanceId
from duffres.harmonic_balance import (
    ContinuationControl,
    HBProblem,
    continue_branch,
    seeded_branch,
)
from duffres.slow_flow import StepControl, sweep_branch, system_for


@pytest.fixture(scope="session")
def cfg():
    return OscillatorConfig()


@pytest.fixture(scope="session")
def hb_branch(cfg):
    """Factory: harmonic-balance branch for (family, f, window, steps, seed)."""
    cache = {}

    def get(label, f, window, ds=0.004, ds_max=0.01, seed="auto", n_harmonics=15):
        key = (label, f, window, ds, ds_max, seed, n_harmonics)
        if key not in cache:
            res = ResonanceId.parse(label)
            problem = HBProblem(cfg, Forcing(f, min(window)), res, n_harmonics=n_harmonics)
            ctrl = ContinuationControl(ds=ds, ds_max=ds_max)
            cache[key] = seeded_branch(problem, window, seed, ctrl)
        return cache[key]

    return get


def _frozen_branch(cfg, label, seed_rec, window, ds, ds_max):
    res = ResonanceId.parse(label)
    sol = HarmonicSolution.from_cos_sin(
        seed_rec["omega"] / res.nu, seed_rec["a0"], seed_rec["cos"], seed_rec["sin"]
    )
    problem = HBProblem(cfg, Forcing(seed_rec["f"], seed_rec["omega"]), res)
    ctrl = ContinuationControl(ds=ds, ds_max=ds_max)
    return continue_branch(problem, seed_rec["omega"], window, ctrl, sol)


@pytest.fixture(scope="session")
def isola_21(cfg):
    """2:1 superharmonic isola at f = 0.5, continued from a frozen state."""
    return _frozen_branch(cfg, "2:1", oracles.SUP21_SEED, (0.55, 0.70), 0.002, 0.004)


@pytest.fixture(scope="session")
def isola_32(cfg):
    """3:2 ultra-subharmonic isola at f = 1.09, continued from a frozen state."""
    return _frozen_branch(cfg, "3:2", oracles.SUB32_SEED, (1.08, 1.14), 0.0002, 0.0004)


@pytest.fixture(scope="session")
def sf_sweep(cfg):
    """Factory: slow-flow branch sweep for (family, f, window)."""
    cache = {}

    def get(label, f, window, grid_points=241):
        key = (label, f, window, grid_points)
        if key not in cache:
            res = ResonanceId.parse(label)
            lo, hi = min(window), max(window)
            ctrl = StepControl(grid_points=grid_points)
            cache[key] = sweep_branch(system_for(res), lo, hi, cfg, Forcing(f, lo), ctrl)
        return cache[key]

    return get
