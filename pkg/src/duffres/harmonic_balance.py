"""Multi-harmonic frequency-domain solver with arclength continuation.

The unknown vector is z = [a0, c_1..c_N, s_1..s_N] on the base frequency
omega/nu, so subharmonic windows are handled by the same machinery as the
primary one.  The cubic term goes through an alternating frequency/time
loop: sample the series on M uniform points of the base period, cube,
project back.  Because the sample times are fixed fractions of the
period, the basis matrices depend only on (N, M) and the residual's
frequency derivative is analytic, which keeps the continuation cheap.

No phase anchor is needed anywhere: the forcing term breaks time-shift
symmetry and the Newton systems are square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .core import (
    Forcing,
    HarmonicSolution,
    NoConvergence,
    OscillatorConfig,
    ResonanceId,
    equivalent_phase_lags,
    gamma_capital,
)
from .slow_flow import SteadyState, sweep_branch, system_for

_NEWTON_MAX_ITER = 50
_MAX_HALVINGS = 8
_HILL_STEPS = 2048
_PHASE_TOL = 1e-8


@dataclass(frozen=True)
class HBProblem:
    """Discretization of one resonance analysis window."""

    cfg: OscillatorConfig
    forcing: Forcing
    resonance: ResonanceId
    n_harmonics: int = 15
    time_samples: int = 128

    def __post_init__(self) -> None:
        floor = max(self.resonance.k * self.resonance.nu, 9)
        if self.n_harmonics < floor:
            raise ValueError(f"n_harmonics must be at least {floor} for {self.resonance.label}")
        if self.time_samples < 4 * self.n_harmonics + 1:
            raise ValueError("time_samples must be at least 4 N + 1 (cubic anti-aliasing)")

    def base_omega(self, omega: float) -> float:
        return omega / self.resonance.nu

    @property
    def tolerance(self) -> float:
        return 1e-10 * max(1.0, self.forcing.gamma_bar(self.cfg))


@dataclass(frozen=True)
class BranchPoint:
    omega: float
    solution: HarmonicSolution
    max_displacement: float
    stable: bool | None = None
    tags: frozenset[str] = field(default_factory=frozenset)


@dataclass
class Branch:
    """Ordered continuation result for one family and forcing level."""

    problem: HBProblem
    points: list[BranchPoint]

    @property
    def resonance(self) -> ResonanceId:
        return self.problem.resonance

    @property
    def forcing_amplitude(self) -> float:
        return self.problem.forcing.amplitude

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def omegas(self) -> np.ndarray:
        return np.array([p.omega for p in self.points])

    def max_displacements(self) -> np.ndarray:
        return np.array([p.max_displacement for p in self.points])

    def peak_point(self) -> BranchPoint:
        return max(self.points, key=lambda p: p.max_displacement)


@dataclass(frozen=True)
class ContinuationControl:
    ds: float = 0.01
    ds_min: float = 1e-8
    ds_max: float = 0.05
    max_steps: int = 6000
    classify_stability: bool = True


@lru_cache(maxsize=8)
def _basis(n: int, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # theta_{i,j} = 2 pi i j / m: sample times as fixed fractions of the
    # base period, so the basis never depends on omega
    theta = 2.0 * math.pi * np.outer(np.arange(m), np.arange(n + 1)) / m
    cos, sin = np.cos(theta), np.sin(theta)
    bmat = np.concatenate([cos[:, :1], cos[:, 1:], sin[:, 1:]], axis=1)  # (m, 2n+1)
    # projection weights: mean for the constant row, 2/m for the rest
    proj = np.concatenate([cos[:, :1].T / m, 2.0 * cos[:, 1:].T / m, 2.0 * sin[:, 1:].T / m])
    return bmat, proj, theta


def _solution_to_z(sol: HarmonicSolution, n: int) -> np.ndarray:
    held = len(sol.amplitudes)
    if held > n:
        raise ValueError(f"solution holds {held} harmonics, problem only {n}")
    z = np.zeros(2 * n + 1)
    z[0] = sol.a0
    z[1 : held + 1] = sol.cos_coeffs
    z[n + 1 : n + 1 + held] = sol.sin_coeffs
    return z


def _z_to_solution(problem: HBProblem, omega: float, z: np.ndarray) -> HarmonicSolution:
    n = problem.n_harmonics
    return HarmonicSolution.from_cos_sin(
        problem.base_omega(omega), float(z[0]), z[1 : n + 1], z[n + 1 :]
    )


def _residual_z(problem: HBProblem, z: np.ndarray, omega: float) -> np.ndarray:
    cfg, n = problem.cfg, problem.n_harmonics
    bmat, proj, _ = _basis(n, problem.time_samples)
    jw = problem.base_omega(omega) * np.arange(n + 1)
    w0sq, two_zw = cfg.omega0**2, 2.0 * cfg.zeta_bar * cfg.omega0

    a0, c, s = z[0], z[1 : n + 1], z[n + 1 :]
    res = np.empty_like(z)
    res[0] = w0sq * a0
    res[1 : n + 1] = (w0sq - jw[1:] ** 2) * c + two_zw * jw[1:] * s
    res[n + 1 :] = (w0sq - jw[1:] ** 2) * s - two_zw * jw[1:] * c

    x_t = bmat @ z
    res += proj @ (cfg.alpha * x_t**3)
    res[n + problem.resonance.nu] -= problem.forcing.gamma_bar(cfg)
    return res


def _jacobian_z(problem: HBProblem, z: np.ndarray, omega: float) -> np.ndarray:
    cfg, n = problem.cfg, problem.n_harmonics
    bmat, proj, _ = _basis(n, problem.time_samples)
    jw = problem.base_omega(omega) * np.arange(n + 1)
    w0sq, two_zw = cfg.omega0**2, 2.0 * cfg.zeta_bar * cfg.omega0

    x_sq = (bmat @ z) ** 2
    jac = proj @ (3.0 * cfg.alpha * x_sq[:, None] * bmat)
    idx = np.arange(1, n + 1)
    jac[0, 0] += w0sq
    jac[idx, idx] += w0sq - jw[1:] ** 2
    jac[idx, idx + n] += two_zw * jw[1:]
    jac[idx + n, idx + n] += w0sq - jw[1:] ** 2
    jac[idx + n, idx] -= two_zw * jw[1:]
    return jac


def _dres_domega(problem: HBProblem, z: np.ndarray, omega: float) -> np.ndarray:
    # the AFT term is omega-independent, so this is purely the linear part
    n, nu = problem.n_harmonics, problem.resonance.nu
    cfg = problem.cfg
    j = np.arange(1, n + 1)
    jw = problem.base_omega(omega) * j
    djw = j / nu
    two_zw = 2.0 * cfg.zeta_bar * cfg.omega0
    c, s = z[1 : n + 1], z[n + 1 :]
    out = np.zeros_like(z)
    out[1 : n + 1] = -2.0 * jw * djw * c + two_zw * djw * s
    out[n + 1 :] = -2.0 * jw * djw * s - two_zw * djw * c
    return out


def hb_residual(problem: HBProblem, coeffs: HarmonicSolution, omega: float) -> np.ndarray:
    """Residual of the balanced equation, ordered [const, cos 1..N, sin 1..N]."""
    return _residual_z(problem, _solution_to_z(coeffs, problem.n_harmonics), omega)


def linear_seed(problem: HBProblem, omega: float) -> HarmonicSolution:
    """Linear frequency-response solution placed on the forced harmonic."""
    cfg = problem.cfg
    w0sq, two_zw = cfg.omega0**2, 2.0 * cfg.zeta_bar * cfg.omega0
    gb = problem.forcing.gamma_bar(cfg)
    denom = complex(w0sq - omega**2, two_zw * omega)
    amp = gb / abs(denom)
    lag = math.atan2(two_zw * omega, w0sq - omega**2)
    n, nu = problem.n_harmonics, problem.resonance.nu
    cos_c, sin_c = np.zeros(n), np.zeros(n)
    cos_c[nu - 1] = -amp * math.sin(lag)
    sin_c[nu - 1] = amp * math.cos(lag)
    return HarmonicSolution.from_cos_sin(problem.base_omega(omega), 0.0, cos_c, sin_c)


def slowflow_seed(problem: HBProblem, steady: SteadyState) -> HarmonicSolution:
    """Averaged steady state mapped onto the HB vector.

    The resonant pair lands on harmonic k, and away from the primary the
    forced harmonic nu is set to the linear response Gamma.
    """
    res = steady.resonance
    n = problem.n_harmonics
    cos_c, sin_c = np.zeros(n), np.zeros(n)
    r, phi = steady.state.r, steady.state.phi
    cos_c[res.k - 1] = -r * math.sin(phi)
    sin_c[res.k - 1] = r * math.cos(phi)
    if not res.is_primary:
        sin_c[res.nu - 1] += gamma_capital(steady.omega, problem.cfg, problem.forcing)
    return HarmonicSolution.from_cos_sin(problem.base_omega(steady.omega), 0.0, cos_c, sin_c)


def _solve_z(problem: HBProblem, z0: np.ndarray, omega: float) -> np.ndarray:
    tol = problem.tolerance
    z = z0.copy()
    res = _residual_z(problem, z, omega)
    norm = float(np.max(np.abs(res)))
    for _ in range(_NEWTON_MAX_ITER):
        if norm < tol:
            return z
        jac = _jacobian_z(problem, z, omega)
        try:
            step = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError:
            raise NoConvergence(f"singular Jacobian at omega = {omega:.6g}") from None
        lam, accepted = 1.0, False
        for _ in range(_MAX_HALVINGS + 1):
            zn = z + lam * step
            rn = _residual_z(problem, zn, omega)
            nn = float(np.max(np.abs(rn)))
            if math.isfinite(nn) and nn < norm:
                z, res, norm = zn, rn, nn
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            break
    if norm < tol:
        return z
    raise NoConvergence(f"residual {norm:.3e} after Newton at omega = {omega:.6g}")


def hb_solve(
    problem: HBProblem, omega: float, initial_guess: HarmonicSolution
) -> HarmonicSolution:
    """Newton solve at fixed frequency from the supplied guess."""
    z = _solve_z(problem, _solution_to_z(initial_guess, problem.n_harmonics), omega)
    return _z_to_solution(problem, omega, z)


def stability_hill(problem: HBProblem, point, n_steps: int = _HILL_STEPS) -> bool:
    """Floquet stability of a converged point by monodromy integration."""
    sol: HarmonicSolution = point.solution if hasattr(point, "solution") else point
    a_cos = np.concatenate([[sol.a0], sol.cos_coeffs])
    a_sin = np.concatenate([[0.0], sol.sin_coeffs])
    mono = _kernels.hill_monodromy(
        a_cos,
        a_sin,
        sol.base_omega,
        n_steps,
        problem.cfg.omega0**2,
        2.0 * problem.cfg.zeta_bar * problem.cfg.omega0,
        problem.cfg.alpha,
    )
    mult = np.linalg.eigvals(mono)
    return bool(np.all(np.abs(mult) <= 1.0 + 1e-6))


def _make_branch_point(
    problem: HBProblem,
    y: np.ndarray,
    ctrl: ContinuationControl,
    tags: frozenset[str] = frozenset(),
) -> BranchPoint:
    sol = _z_to_solution(problem, float(y[-1]), y[:-1])
    stable = stability_hill(problem, sol) if ctrl.classify_stability else None
    return BranchPoint(float(y[-1]), sol, sol.max_displacement(), stable, tags)


def _tangent_at(
    problem: HBProblem, y: np.ndarray, ref: np.ndarray | None
) -> np.ndarray:
    z, omega = y[:-1], float(y[-1])
    n = z.size
    jac = np.empty((n + 1, n + 1))
    jac[:n, :n] = _jacobian_z(problem, z, omega)
    jac[:n, n] = _dres_domega(problem, z, omega)
    jac[n, :] = ref if ref is not None else np.eye(n + 1)[n]
    rhs = np.zeros(n + 1)
    rhs[n] = 1.0
    try:
        t = np.linalg.solve(jac, rhs)
    except np.linalg.LinAlgError:
        _, _, vh = np.linalg.svd(jac[:n, :])
        t = vh[-1]
        if ref is not None and float(t @ ref) < 0.0:
            t = -t
    return t / np.linalg.norm(t)


def _correct_arclength(
    problem: HBProblem, y_pred: np.ndarray, tangent: np.ndarray
) -> np.ndarray | None:
    y = y_pred.copy()
    n = y.size - 1
    tol = problem.tolerance
    for _ in range(12):
        res = _residual_z(problem, y[:-1], float(y[-1]))
        aug = np.append(res, tangent @ (y - y_pred))
        if float(np.max(np.abs(aug))) < tol:
            return y
        jac = np.empty((n + 1, n + 1))
        jac[:n, :n] = _jacobian_z(problem, y[:-1], float(y[-1]))
        jac[:n, n] = _dres_domega(problem, y[:-1], float(y[-1]))
        jac[n, :] = tangent
        try:
            step = np.linalg.solve(jac, -aug)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        y = y + step
    res = _residual_z(problem, y[:-1], float(y[-1]))
    aug = np.append(res, tangent @ (y - y_pred))
    return y if float(np.max(np.abs(aug))) < tol else None


def continue_branch(
    problem: HBProblem,
    omega_start: float,
    omega_range: tuple[float, float],
    step_ctrl: ContinuationControl | None = None,
    initial_guess: HarmonicSolution | None = None,
) -> Branch:
    """Pseudo-arclength continuation across omega_range from omega_start.

    Folds are traversed and tagged where the tangent's frequency
    component changes sign; isolated branches terminate by closing on
    their start point.  NoConvergence propagates only if the very first
    solve fails.
    """
    ctrl = step_ctrl or ContinuationControl()
    lo, hi = min(omega_range), max(omega_range)
    seed = initial_guess if initial_guess is not None else linear_seed(problem, omega_start)
    z = _solve_z(problem, _solution_to_z(seed, problem.n_harmonics), omega_start)
    y = np.append(z, omega_start)

    points = [_make_branch_point(problem, y, ctrl)]
    tangent = _tangent_at(problem, y, None)
    # march into the window from an edge start; otherwise toward rising omega
    if abs(omega_start - hi) < 1e-12 and tangent[-1] > 0.0:
        tangent = -tangent
    elif abs(omega_start - hi) >= 1e-12 and tangent[-1] < 0.0:
        tangent = -tangent
    y_first = y.copy()
    ds = ctrl.ds

    for _ in range(ctrl.max_steps):
        y_new = None
        while ds >= ctrl.ds_min:
            cand = _correct_arclength(problem, y + ds * tangent, tangent)
            if cand is not None:
                y_new = cand
                break
            ds *= 0.5
        if y_new is None:
            break

        if not lo <= float(y_new[-1]) <= hi:
            edge = hi if float(y_new[-1]) > hi else lo
            try:
                z_edge = _solve_z(problem, y[:-1], edge)
            except NoConvergence:
                break
            points.append(_make_branch_point(problem, np.append(z_edge, edge), ctrl))
            break

        t_new = _tangent_at(problem, y_new, tangent)
        if float(t_new @ tangent) < 0.0:
            t_new = -t_new
        tags = frozenset({"Fold"}) if t_new[-1] * tangent[-1] < 0.0 else frozenset()
        points.append(_make_branch_point(problem, y_new, ctrl, tags))

        if len(points) > 20 and float(np.linalg.norm(y_new - y_first)) < 1.5 * ds:
            break
        y, tangent = y_new, t_new
        ds = min(ds * 1.3, ctrl.ds_max)

    return Branch(problem, points)


def seeded_branch(
    problem: HBProblem,
    omega_range: tuple[float, float],
    seed: str = "auto",
    step_ctrl: ContinuationControl | None = None,
) -> Branch:
    """Continue an NFRC seeded from the linear FRF or the slow flow.

    "linear" starts natural continuation at the low edge; "slowflow"
    sweeps the averaged system over omega_range clipped to the family's
    validity window, maps the largest-amplitude steady state into the
    harmonic vector, and continues from its frequency.  That is the only
    way onto the subharmonic isolas, which natural continuation from the
    main branch never reaches.  "auto" picks by family (nu > 1 needs the
    slow-flow route).
    """
    omega_min, omega_max = min(omega_range), max(omega_range)
    res = problem.resonance
    if seed == "auto":
        seed = "slowflow" if res.nu > 1 else "linear"
    if seed == "linear":
        return continue_branch(problem, omega_min, (omega_min, omega_max), step_ctrl)
    cfg = problem.cfg
    lo = max(omega_min, 0.5 * res.nu / res.k * cfg.omega0)
    hi = min(omega_max, 2.0 * res.nu / res.k * cfg.omega0)
    if not lo < hi:
        lo, hi = omega_min, omega_max
    sweep = sweep_branch(system_for(res), lo, hi, cfg, problem.forcing)
    best = max(sweep.points, key=lambda p: p.state.r)
    guess = slowflow_seed(problem, best)
    return continue_branch(problem, best.omega, (omega_min, omega_max), step_ctrl, guess)


def _signed_gap(phi: float, target: float) -> float:
    d = (phi - target) % (2.0 * math.pi)
    return d - 2.0 * math.pi if d > math.pi else d


def detect_phase_resonance(branch: Branch, res: ResonanceId) -> list[BranchPoint]:
    """Refined points where the k-th harmonic lag crosses a resonant value.

    Scans consecutive branch points for sign changes against every
    member of the equivalent lag set, then refines along the local chord
    by secant iteration until |phi_k - target| < 1e-8.  Returns an
    omega-sorted list tagged PhaseResonance(k); empty when no crossing.
    """
    k = res.k
    problem = branch.problem
    found: list[BranchPoint] = []
    for target in equivalent_phase_lags(res):
        for a, b in zip(branch.points, branch.points[1:]):
            da = _signed_gap(a.solution.phase_lag(k), target)
            db = _signed_gap(b.solution.phase_lag(k), target)
            if da == 0.0:
                continue
            if da * db > 0.0 or abs(da) + abs(db) > math.pi:
                continue
            refined = _refine_crossing(problem, a, b, k, target)
            if refined is not None:
                found.append(refined)
    found.sort(key=lambda p: p.omega)
    return found


def _refine_crossing(
    problem: HBProblem, a: BranchPoint, b: BranchPoint, k: int, target: float
) -> BranchPoint | None:
    n = problem.n_harmonics
    ya = np.append(_solution_to_z(a.solution, n), a.omega)
    yb = np.append(_solution_to_z(b.solution, n), b.omega)
    chord = yb - ya
    chord_len = float(np.linalg.norm(chord))
    if chord_len == 0.0:
        return None
    tangent = chord / chord_len

    def at(s: float) -> tuple[np.ndarray, float] | None:
        y = _correct_arclength(problem, ya + s * chord, tangent)
        if y is None:
            return None
        sol = _z_to_solution(problem, float(y[-1]), y[:-1])
        return y, _signed_gap(sol.phase_lag(k), target)

    s0, f0 = 0.0, _signed_gap(a.solution.phase_lag(k), target)
    s1, f1 = 1.0, _signed_gap(b.solution.phase_lag(k), target)
    y_best = None
    for _ in range(40):
        if f1 == f0:
            break
        s2 = s1 - f1 * (s1 - s0) / (f1 - f0)
        s2 = min(max(s2, -0.5), 1.5)
        got = at(s2)
        if got is None:
            break
        y_best, f2 = got
        if abs(f2) < _PHASE_TOL:
            sol = _z_to_solution(problem, float(y_best[-1]), y_best[:-1])
            return BranchPoint(
                float(y_best[-1]),
                sol,
                sol.max_displacement(),
                None,
                frozenset({f"PhaseResonance({k})"}),
            )
        s0, f0, s1, f1 = s1, f1, s2, f2
    return None
