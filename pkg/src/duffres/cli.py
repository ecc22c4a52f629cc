"""Command-line front end tying the solvers together.

Commands: closed-form, slowflow, nfrc, prnm-curve, existence, verify,
simulate, figure.  Global flags (--config, --out, --format) are accepted
after the subcommand.  All frequencies are rad/s, forcings N, amplitudes
m in every file.

Exit codes: 0 success, 2 invalid arguments, 3 solver non-convergence,
4 existence-empty (the empty result is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path
from types import SimpleNamespace
from typing import Sequence

from . import __version__
from .core import (
    BelowFoldPoint,
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
    SeedNotFound,
    SingularFrequency,
    SlowFlowState,
    UnsupportedFamily,
    ZeroDamping,
    resonant_phase_lag,
)

_INVALID_ARGS = (
    UnsupportedFamily,
    SingularFrequency,
    OverdampedPeak,
    ZeroDamping,
    ValueError,
    OSError,
    json.JSONDecodeError,
)
_SOLVER_FAILURES = (SeedNotFound, NoConvergence, NotSettled, NonFinite)
_EMPTY_RESULTS = (NoResonance, NotExist, BelowFoldPoint)


# ---------------------------------------------------------------------------
# run configuration and output plumbing


def _load_oscillator(path: str | None) -> OscillatorConfig:
    if path is None:
        return OscillatorConfig()
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError(f"oscillator config {path} must be a JSON object")
    known = {"mass", "damping", "lin_stiffness", "nl_stiffness"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown oscillator fields in {path}: {sorted(unknown)}")
    return OscillatorConfig(**{k: float(v) for k, v in raw.items()})


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _oscillator_record(cfg: OscillatorConfig) -> dict:
    return {
        "mass": cfg.mass,
        "damping": cfg.damping,
        "lin_stiffness": cfg.lin_stiffness,
        "nl_stiffness": cfg.nl_stiffness,
    }


def _sidecar(out_path: Path, command: str, cfg: OscillatorConfig, params: dict) -> None:
    # no timestamps: reruns with the same settings must be byte-identical
    meta = {
        "command": command,
        "version": f"duffres {__version__}",
        "oscillator": _oscillator_record(cfg),
        "parameters": params,
    }
    Path(str(out_path) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")


def _emit_table(args, header: list[str], rows: list[Sequence], params: dict) -> None:
    fmt = args.format or "csv"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    else:
        records = [dict(zip(header, row)) for row in rows]
        text = json.dumps(records, indent=2, default=_fmt) + "\n"
    _write_out(args, text, params)


def _emit_record(args, record: dict, params: dict) -> None:
    fmt = args.format or "json"
    if fmt == "json":
        text = json.dumps(record, indent=2, default=_fmt) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(record))
        writer.writerow([_fmt(v) for v in record.values()])
        text = buf.getvalue()
    _write_out(args, text, params)


def _write_out(args, text: str, params: dict) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    cfg = _load_oscillator(args.config)
    _sidecar(out, args.command, cfg, params)


def _params_of(args, *names: str) -> dict:
    return {name.replace("_", "-"): getattr(args, name) for name in names}


# ---------------------------------------------------------------------------
# closed-form


def cmd_closed_form(args) -> int:
    from . import closed_form as cf

    cfg = _load_oscillator(args.config)
    res = ResonanceId.parse(args.resonance)
    f = args.forcing
    record = {
        "omega_a": None,
        "omega_p": None,
        "amp_a": None,
        "amp_p": None,
        "phi_a": None,
        "phi_p": resonant_phase_lag(res),
        "delta_omega": None,
    }
    if res.is_primary:
        pr = cf.primary_resonance(cfg, f)
        record.update(
            omega_a=pr.omega_a,
            omega_p=pr.omega_p,
            amp_a=pr.amp_a,
            amp_p=pr.amp_p,
            phi_a=pr.phi_a,
            delta_omega=pr.delta_omega,
        )
    elif (res.k, res.nu) == (3, 1):
        pa = cf.super31_amplitude_resonance(cfg, f)
        pp = cf.super31_phase_resonance(cfg, f)
        record.update(
            omega_a=pa.omega,
            omega_p=pp.omega,
            amp_a=pa.amplitude,
            amp_p=pp.amplitude,
            phi_a=pa.phase,
            delta_omega=pp.omega - pa.omega,
        )
    elif (res.k, res.nu) == (1, 3):
        # the greatest-frequency crossing of each locus is the resonance
        phase = cf.locus_crossings(cfg, res, f, "phase")
        ampl = cf.locus_crossings(cfg, res, f, "amplitude")
        if not phase:
            raise NoResonance(f"forcing {f:.6g} N is below the 1:3 locus minimum")
        record.update(omega_p=phase[-1].omega, amp_p=phase[-1].amplitude)
        if ampl:
            record.update(
                omega_a=ampl[-1].omega,
                amp_a=ampl[-1].amplitude,
                phi_a=ampl[-1].phase_lag,
                delta_omega=phase[-1].omega - ampl[-1].omega,
            )
    elif (res.k, res.nu) == (1, 2):
        phase = cf.locus_crossings(cfg, res, f, "phase")
        if not phase:
            raise NoResonance(f"forcing {f:.6g} N is below the 1:2 locus minimum")
        record.update(omega_p=phase[-1].omega, amp_p=phase[-1].amplitude)
        # no closed-form amplitude point; the existence analysis puts the
        # amplitude resonance at the upper window edge
        window = cf.sub12_existence_window(cfg, f)
        if window is not None:
            record.update(omega_a=window[1], delta_omega=phase[-1].omega - window[1])
    # remaining families: only the lag rule is available in closed form
    _emit_record(args, record, _params_of(args, "resonance", "forcing"))
    return 0


# ---------------------------------------------------------------------------
# slowflow


_SLOWFLOW_HEADER = [
    "omega",
    "r",
    "phi",
    "stable",
    "eig_re_1",
    "eig_im_1",
    "eig_re_2",
    "eig_im_2",
    "family",
]


def _slowflow_rows(branch) -> list[list]:
    rows = []
    for p in branch.points:
        eig = p.eigenvalues or (None, None)
        rows.append(
            [
                p.omega,
                p.state.r,
                p.state.phi,
                p.stable,
                None if eig[0] is None else eig[0].real,
                None if eig[0] is None else eig[0].imag,
                None if eig[1] is None else eig[1].real,
                None if eig[1] is None else eig[1].imag,
                p.resonance.label,
            ]
        )
    return rows


def cmd_slowflow(args) -> int:
    from .slow_flow import StepControl, sweep_branch, system_for

    cfg = _load_oscillator(args.config)
    res = ResonanceId.parse(args.resonance)
    forcing = Forcing(args.forcing, args.omega_min)
    ctrl = StepControl(grid_points=args.steps)
    branch = sweep_branch(system_for(res), args.omega_min, args.omega_max, cfg, forcing, ctrl)
    params = _params_of(args, "resonance", "forcing", "omega_min", "omega_max", "steps")
    _emit_table(args, _SLOWFLOW_HEADER, _slowflow_rows(branch), params)
    return 0


# ---------------------------------------------------------------------------
# nfrc


def cmd_nfrc(args) -> int:
    from .figures import branch_table
    from .harmonic_balance import ContinuationControl, HBProblem, seeded_branch

    cfg = _load_oscillator(args.config)
    res = ResonanceId.parse(args.resonance)
    forcing = Forcing(args.forcing, args.omega_min)
    problem = HBProblem(cfg, forcing, res, args.harmonics, args.samples)
    seed = args.seed or ("linear" if res.nu == 1 else "slowflow")
    ctrl = ContinuationControl(ds=0.004, ds_max=0.01)
    branch = seeded_branch(problem, (args.omega_min, args.omega_max), seed, ctrl)
    header, rows = branch_table(branch)
    params = _params_of(
        args,
        "resonance",
        "forcing",
        "omega_min",
        "omega_max",
        "harmonics",
        "samples",
    )
    params["seed"] = seed
    _emit_table(args, header, rows, params)
    if args.emit_plot:
        from .figures import emit_branch_plot

        emit_branch_plot(Path(args.emit_plot), branch, res)
    return 0


# ---------------------------------------------------------------------------
# prnm-curve


_PRNM_FAMILIES = {(1, 1), (3, 1), (1, 3), (1, 2)}
_PRNM_HEADER = ["f", "omega_p", "amp_p", "root_sign"]


def _prnm_point_rows(cfg, res, f_values) -> list[list]:
    from . import closed_form as cf

    point = cf.primary_phase_resonance if res.is_primary else cf.super31_phase_resonance
    rows = []
    for f in f_values:
        if f == 0.0:
            rows.append([0.0, cfg.omega0 * res.nu / res.k, 0.0, None])
        else:
            p = point(cfg, f)
            rows.append([f, p.omega, p.amplitude, None])
    return rows


def _prnm_locus_rows(cfg, res, f_min, f_max, n) -> list[list]:
    """Both root branches of the quadrature locus, parametrized by omega_p."""
    from . import closed_form as cf

    fn = cf._locus_fn(cfg, res, "phase")
    onset = cf._locus_onset(cfg, res, "phase")
    hi = onset
    step = 0.05 * cfg.omega0
    # march until both branches exceed the forcing range (the plus branch
    # rises monotonically, the minus branch after its minimum)
    while hi < 60.0 * res.nu * cfg.omega0:
        hi += step
        try:
            minus, plus = fn(cfg, hi)
        except BelowFoldPoint:
            continue
        if min(minus.gamma_bar, plus.gamma_bar) * cfg.mass > f_max:
            break
    rows = []
    for i in range(n):
        w = onset * (1.0 + 1e-9) + (hi - onset) * i / max(n - 1, 1)
        try:
            pair = fn(cfg, w)
        except BelowFoldPoint:
            continue
        for p in pair:
            f = p.gamma_bar * cfg.mass
            if f_min <= f <= f_max:
                rows.append([f, p.omega, p.amplitude, p.root_sign.name.lower()])
    return rows


def cmd_prnm_curve(args) -> int:
    cfg = _load_oscillator(args.config)
    res = ResonanceId.parse(args.resonance)
    if (res.k, res.nu) not in _PRNM_FAMILIES:
        raise UnsupportedFamily(f"no phase-resonance curve for the {res.label} family")
    if not 0.0 <= args.f_min < args.f_max:
        raise ValueError("need 0 <= f-min < f-max")
    if args.steps < 2:
        raise ValueError("need at least 2 steps")
    if res.nu == 1:
        f_values = [
            args.f_min + (args.f_max - args.f_min) * i / (args.steps - 1)
            for i in range(args.steps)
        ]
        rows = _prnm_point_rows(cfg, res, f_values)
    else:
        rows = _prnm_locus_rows(cfg, res, args.f_min, args.f_max, args.steps)
        if args.f_min == 0.0:
            rows.insert(0, [0.0, cfg.omega0 * res.nu / res.k, 0.0, None])
    params = _params_of(args, "resonance", "f_min", "f_max", "steps")
    _emit_table(args, _PRNM_HEADER, rows, params)
    return 0


# ---------------------------------------------------------------------------
# existence


def _bisect_bool(fn, w_true: float, w_false: float) -> float:
    # refine a boolean transition; fn(w_true) holds, fn(w_false) does not
    for _ in range(80):
        mid = 0.5 * (w_true + w_false)
        if fn(mid):
            w_true = mid
        else:
            w_false = mid
    return w_true


def _scan_window(fn, lo: float, hi: float, samples: int):
    grid = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    inside = [w for w in grid if fn(w)]
    if not inside:
        return None
    step = (hi - lo) / (samples - 1)
    w_inf, w_sup = inside[0], inside[-1]
    if w_inf > lo and not fn(w_inf - step):
        w_inf = _bisect_bool(fn, w_inf, w_inf - step)
    if w_sup < hi and not fn(w_sup + step):
        w_sup = _bisect_bool(fn, w_sup, w_sup + step)
    return (w_inf, w_sup)


def cmd_existence(args) -> int:
    from . import closed_form as cf

    cfg = _load_oscillator(args.config)
    res = ResonanceId.parse(args.resonance)
    f = args.forcing
    record = {"family": res.label, "forcing": f}
    params = _params_of(args, "resonance", "forcing", "omega", "omega_min", "omega_max", "samples")

    if (res.k, res.nu) == (1, 2):
        if args.omega is not None:
            margin = cf.sub12_existence_margin(cfg, f, args.omega)
            record.update(omega=args.omega, exists=margin >= 0.0, margin=margin)
            _emit_record(args, record, params)
            return 0 if margin >= 0.0 else 4
        rng = None
        if args.omega_min is not None and args.omega_max is not None:
            rng = (args.omega_min, args.omega_max)
        window = cf.sub12_existence_window(cfg, f, rng, args.samples)
    elif (res.k, res.nu) == (5, 1):
        if args.omega is not None:
            exists = cf.super51_existence(cfg, f, args.omega)
            record.update(omega=args.omega, exists=exists)
            _emit_record(args, record, params)
            return 0 if exists else 4
        # same default range as the 5:1 solver validity window
        lo = args.omega_min if args.omega_min is not None else 0.1 * cfg.omega0
        hi = args.omega_max if args.omega_max is not None else 0.4 * cfg.omega0
        window = _scan_window(lambda w: cf.super51_existence(cfg, f, w), lo, hi, args.samples)
    else:
        raise UnsupportedFamily(f"no existence analysis for the {res.label} family")

    record["window"] = None if window is None else [window[0], window[1]]
    _emit_record(args, record, params)
    return 0 if window is not None else 4


# ---------------------------------------------------------------------------
# verify


def _parse_rows(spec: str | None, n: int) -> range:
    if spec is None:
        return range(n)
    m = re.fullmatch(r"(\d+)\.\.(\d+)", spec)
    if m is None:
        raise ValueError(f"--rows must look like a..b, got {spec!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if not 1 <= a <= b <= n:
        raise ValueError(f"--rows {spec} outside 1..{n}")
    return range(a - 1, b)


def _point_from_nfrc(row: dict, res: ResonanceId):
    omega = float(row["omega"])
    amps, phis = [], []
    for j in range(1, len(row)):
        key = f"A{j}"
        if key not in row:
            break
        amps.append(float(row[key]))
        phis.append(float(row[f"phi{j}"]))
    cos_c = [-a * math.sin(p) for a, p in zip(amps, phis)]
    sin_c = [a * math.cos(p) for a, p in zip(amps, phis)]
    sol = HarmonicSolution.from_cos_sin(omega / res.nu, float(row["A0"]), cos_c, sin_c)
    return SimpleNamespace(omega=omega, solution=sol, stable=row.get("stable"))


def _point_from_slowflow(row: dict):
    res = ResonanceId.parse(row["family"])
    state = SlowFlowState(float(row["r"]), float(row["phi"]))
    return SimpleNamespace(
        omega=float(row["omega"]), resonance=res, state=state, stable=row.get("stable")
    )


def cmd_verify(args) -> int:
    from .time_oracle import verify_point

    src = Path(args.from_csv)
    meta_path = Path(str(src) + ".meta.json")
    if not meta_path.exists():
        raise ValueError(f"no provenance sidecar {meta_path}; verify needs the run parameters")
    meta = json.loads(meta_path.read_text())
    cfg = OscillatorConfig(**meta["oscillator"])
    params = meta["parameters"]
    f = float(params["forcing"])

    with src.open(newline="") as fh:
        data = list(csv.DictReader(fh))
    if not data:
        raise ValueError(f"{src} has no data rows")
    kind = "nfrc" if "max_disp" in data[0] else "slowflow"
    res = ResonanceId.parse(params["resonance"])

    reports = []
    for i in _parse_rows(args.rows, len(data)):
        row = data[i]
        omega = float(row["omega"])
        point = _point_from_nfrc(row, res) if kind == "nfrc" else _point_from_slowflow(row)
        rep = verify_point(point, cfg, Forcing(f, omega))
        reports.append(
            {
                "row": i + 1,
                "omega": omega,
                "verdict": rep.verdict.value,
                "max_amplitude_error": rep.max_amplitude_error,
                "max_phase_error": rep.max_phase_error,
                "ode_residual_rms": rep.ode_residual_rms,
            }
        )
    out_params = {"from-csv": str(src), "rows": args.rows, "source": params}
    fmt = args.format or "json"
    if fmt == "json":
        _write_out(args, json.dumps(reports, indent=2, default=_fmt) + "\n", out_params)
    else:
        header = list(reports[0])
        _emit_table(args, header, [[r[h] for h in header] for r in reports], out_params)
    return 0


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args) -> int:
    from .time_oracle import integrate

    cfg = _load_oscillator(args.config)
    if args.periods < 1:
        raise ValueError("need at least one period")
    traj = integrate(
        cfg,
        Forcing(args.forcing, args.omega),
        args.x0,
        args.v0,
        args.periods,
        args.steps_per_period,
    )
    times = traj.times
    rows = [[times[i], traj.samples[i, 0], traj.samples[i, 1]] for i in range(len(times))]
    params = _params_of(args, "forcing", "omega", "x0", "v0", "periods", "steps_per_period")
    _emit_table(args, ["t", "x", "v"], rows, params)
    return 0


# ---------------------------------------------------------------------------
# figure


def cmd_figure(args) -> int:
    from .figures import run_figure

    cfg = _load_oscillator(args.config)
    out_dir = Path(args.out) if args.out else Path("figures") / args.figure_id
    written = run_figure(args.figure_id, cfg, out_dir)
    for path in written:
        print(path)
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="oscillator JSON override")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")

    parser = argparse.ArgumentParser(
        prog="duffres",
        description="Resonances of the harmonically forced Duffing oscillator",
    )
    parser.add_argument("--version", action="version", version=f"duffres {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closed-form", parents=[common], help="closed-form resonance point")
    p.add_argument("--resonance", required=True, metavar="K:NU")
    p.add_argument("--forcing", type=float, required=True, metavar="F")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("slowflow", parents=[common], help="averaged steady-state sweep")
    p.add_argument("--resonance", required=True, metavar="K:NU")
    p.add_argument("--forcing", type=float, required=True, metavar="F")
    p.add_argument("--omega-min", type=float, required=True, metavar="A")
    p.add_argument("--omega-max", type=float, required=True, metavar="B")
    p.add_argument("--steps", type=int, default=241, metavar="N")
    p.set_defaults(func=cmd_slowflow)

    p = sub.add_parser("nfrc", parents=[common], help="harmonic-balance response curve")
    p.add_argument("--resonance", required=True, metavar="K:NU")
    p.add_argument("--forcing", type=float, required=True, metavar="F")
    p.add_argument("--omega-min", type=float, required=True, metavar="A")
    p.add_argument("--omega-max", type=float, required=True, metavar="B")
    p.add_argument("--harmonics", type=int, default=15, metavar="N")
    p.add_argument("--samples", type=int, default=128, metavar="M")
    p.add_argument("--seed", choices=("slowflow", "linear"))
    p.add_argument("--emit-plot", metavar="PATH", help="write a gnuplot script and data files")
    p.set_defaults(func=cmd_nfrc)

    p = sub.add_parser("prnm-curve", parents=[common], help="phase-resonance curve over forcing")
    p.add_argument("--resonance", required=True, metavar="K:NU")
    p.add_argument("--f-min", type=float, required=True, metavar="A")
    p.add_argument("--f-max", type=float, required=True, metavar="B")
    p.add_argument("--steps", type=int, default=100, metavar="N")
    p.set_defaults(func=cmd_prnm_curve)

    p = sub.add_parser("existence", parents=[common], help="subharmonic existence window")
    p.add_argument("--resonance", required=True, metavar="K:NU")
    p.add_argument("--forcing", type=float, required=True, metavar="F")
    p.add_argument("--omega", type=float, metavar="W", help="query a single frequency")
    p.add_argument("--omega-min", type=float, metavar="A")
    p.add_argument("--omega-max", type=float, metavar="B")
    p.add_argument("--samples", type=int, default=2001, metavar="N")
    p.set_defaults(func=cmd_existence)

    p = sub.add_parser("verify", parents=[common], help="re-integrate rows of a result CSV")
    p.add_argument("--from-csv", required=True, metavar="PATH")
    p.add_argument("--rows", metavar="a..b", help="1-based inclusive data-row range")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="direct time integration")
    p.add_argument("--forcing", type=float, required=True, metavar="F")
    p.add_argument("--omega", type=float, required=True, metavar="W")
    p.add_argument("--x0", type=float, required=True, metavar="X")
    p.add_argument("--v0", type=float, required=True, metavar="V")
    p.add_argument("--periods", type=int, required=True, metavar="P")
    p.add_argument("--steps-per-period", type=int, default=200, metavar="N")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("figure", parents=[common], help="reproduce a figure's data files")
    p.add_argument("figure_id", choices=("fig1", "fig2", "fig3", "fig4", "fig5"))
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _INVALID_ARGS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _SOLVER_FAILURES as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _EMPTY_RESULTS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
