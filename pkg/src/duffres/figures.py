"""Reproducible figure data: branches, loci, detected resonance points.

Each figure renderer writes plain CSV data files, a provenance sidecar
per branch file (so the verify command can re-check any row), a run-wide
meta.json, and a gnuplot script that reassembles the plot.  No plotting
library is linked.

fig1  primary branches at three forcing levels plus the closed-form
      phase-resonance locus and the detected quadrature crossings.
fig2  3:1 superharmonic, third-harmonic amplitudes, same layout.
fig3  1:3 subharmonic isolas with the two-root quadrature locus.
fig4  1:2 existence margins with the window endpoints marked.
fig5  branch gallery (1:1, 3:1, 5:1, 7:1, 1:3, 1:2) with every detected
      phase-resonance point.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from . import __version__
from .core import BelowFoldPoint, Forcing, OscillatorConfig, ResonanceId

_POINTS_HEADER = ["family", "f", "omega", "A_k", "phi_k", "max_disp"]

# forcing levels, continuation windows and step caps per figure; windows
# bracket the known fold/isola extents at these levels with margin
_FIG1_RUNS = tuple((f, (0.8, 1.6), 0.01) for f in (0.001, 0.005, 0.01))
_FIG2_RUNS = tuple((f, (0.30, 0.40), 0.005) for f in (0.1, 0.15, 0.2))
_FIG3_RUNS = ((0.3, (2.9183, 5.02), 0.03), (0.6, (2.75, 9.5), 0.03), (1.0, (2.75, 13.0), 0.03))
_FIG4_FORCINGS = (0.8, 1.0, 3.0)
_FIG5_RUNS = (
    ("1:1", 0.01, (0.8, 1.6), 0.01, "linear"),
    ("3:1", 0.2, (0.30, 0.40), 0.005, "linear"),
    ("5:1", 0.6, (0.17, 0.34), 0.004, "linear"),
    ("7:1", 0.85, (0.13, 0.32), 0.004, "linear"),
    ("1:3", 0.6, (2.75, 9.5), 0.03, "slowflow"),
    ("1:2", 2.0, (2.1, 4.4), 0.02, "slowflow"),
)


# ---------------------------------------------------------------------------
# table builders and writers


def branch_table(branch) -> tuple[list[str], list[list]]:
    """NFRC branch as (header, rows): omega, max_disp, A0, A1, phi1, ..."""
    n = branch.problem.n_harmonics
    header = ["omega", "max_disp", "A0"]
    for j in range(1, n + 1):
        header += [f"A{j}", f"phi{j}"]
    header += ["stable", "tags"]
    rows = []
    for p in branch.points:
        row = [p.omega, p.max_displacement, p.solution.a0]
        for j in range(1, n + 1):
            row += [p.solution.amplitude(j), p.solution.phase_lag(j)]
        row += [p.stable, ";".join(sorted(p.tags))]
        rows.append(row)
    return header, rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def _write_branch(path: Path, branch, cfg: OscillatorConfig) -> Path:
    header, rows = branch_table(branch)
    _write_csv(path, header, rows)
    meta = {
        "command": "figure",
        "version": f"duffres {__version__}",
        "oscillator": {
            "mass": cfg.mass,
            "damping": cfg.damping,
            "lin_stiffness": cfg.lin_stiffness,
            "nl_stiffness": cfg.nl_stiffness,
        },
        "parameters": {
            "resonance": branch.resonance.label,
            "forcing": branch.forcing_amplitude,
            "harmonics": branch.problem.n_harmonics,
            "samples": branch.problem.time_samples,
        },
    }
    Path(str(path) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    return path


def _point_rows(res: ResonanceId, f: float, points) -> list[list]:
    k = res.k
    return [
        [res.label, f, p.omega, p.solution.amplitude(k), p.solution.phase_lag(k), p.max_displacement]
        for p in points
    ]


def _hb_branch(cfg, res: ResonanceId, f: float, window, ds_max: float, seed: str):
    from .harmonic_balance import ContinuationControl, HBProblem, seeded_branch

    problem = HBProblem(cfg, Forcing(f, window[0]), res)
    ctrl = ContinuationControl(ds=min(0.004, ds_max), ds_max=ds_max)
    return seeded_branch(problem, window, seed, ctrl)


def _write_meta(out: Path, fig_id: str, cfg: OscillatorConfig, runs: list[dict]) -> Path:
    meta = {
        "command": "figure",
        "figure": fig_id,
        "version": f"duffres {__version__}",
        "oscillator": {
            "mass": cfg.mass,
            "damping": cfg.damping,
            "lin_stiffness": cfg.lin_stiffness,
            "nl_stiffness": cfg.nl_stiffness,
        },
        "runs": runs,
    }
    path = out / "meta.json"
    path.write_text(json.dumps(meta, indent=2) + "\n")
    return path


# ---------------------------------------------------------------------------
# gnuplot emission


def _write_plot(path: Path, ylabel: str, lines: list[str]) -> Path:
    text = "\n".join(
        [
            "set datafile separator ','",
            "set xlabel 'omega [rad/s]'",
            f"set ylabel '{ylabel}'",
            "set key left top",
            "plot " + ", \\\n     ".join(lines),
            "pause -1",
            "",
        ]
    )
    path.write_text(text)
    return path


def emit_branch_plot(path: Path, branch, res: ResonanceId) -> list[Path]:
    """Gnuplot script plus data file for one NFRC branch (nfrc --emit-plot)."""
    dat = path.with_suffix(".dat")
    with dat.open("w") as fh:
        fh.write("# omega max_disp stable fold\n")
        for p in branch.points:
            stable = "nan" if p.stable is None else str(int(p.stable))
            fold = int("Fold" in p.tags)
            fh.write(f"{p.omega:.12g} {p.max_displacement:.12g} {stable} {fold}\n")
    name = dat.name
    text = "\n".join(
        [
            "set xlabel 'omega [rad/s]'",
            "set ylabel 'max displacement [m]'",
            f"set title '{res.label} response, f = {branch.forcing_amplitude:g} N'",
            f"plot '{name}' using 1:($3 == 1 ? $2 : 1/0) with lines title 'stable', \\",
            f"     '{name}' using 1:($3 == 0 ? $2 : 1/0) with lines dashtype 2 title 'unstable', \\",
            f"     '{name}' using 1:($4 == 1 ? $2 : 1/0) with points pt 6 title 'fold'",
            "pause -1",
            "",
        ]
    )
    path.write_text(text)
    return [path, dat]


# ---------------------------------------------------------------------------
# figure renderers


def _branch_figure(cfg, out, res, runs, seed, amp_col, locus_rows, fig_id, ylabel):
    """Shared layout of fig1 to fig3: branches, locus, detected points."""
    from .harmonic_balance import detect_phase_resonance

    files = []
    points = []
    run_meta = []
    plot_lines = []
    for f, window, ds_max in runs:
        branch = _hb_branch(cfg, res, f, window, ds_max, seed)
        name = f"branch_f{f:g}.csv"
        files.append(_write_branch(out / name, branch, cfg))
        files.append(Path(str(files[-1]) + ".meta.json"))
        points += _point_rows(res, f, detect_phase_resonance(branch, res))
        run_meta.append(
            {"forcing": f, "omega_window": list(window), "ds_max": ds_max, "seed": seed}
        )
        plot_lines.append(f"'{name}' skip 1 using 1:{amp_col} with lines title 'f = {f:g} N'")
    files.append(_write_csv(out / "locus.csv", ["f", "omega_p", "amp_p"], locus_rows))
    files.append(_write_csv(out / "points.csv", _POINTS_HEADER, points))
    plot_lines.append("'locus.csv' skip 1 using 2:3 with lines lw 2 title 'phase-resonance locus'")
    plot_lines.append("'points.csv' skip 1 using 3:4 with points pt 7 title 'detected'")
    files.append(_write_plot(out / f"{fig_id}.gp", ylabel, plot_lines))
    files.append(_write_meta(out, fig_id, cfg, run_meta))
    return files


def _fig1(cfg: OscillatorConfig, out: Path) -> list[Path]:
    from .closed_form import primary_phase_resonance

    locus = [[0.0, cfg.omega0, 0.0]]
    for i in range(1, 151):
        f = 0.012 * i / 150
        p = primary_phase_resonance(cfg, f)
        locus.append([f, p.omega, p.amplitude])
    # total displacement: the primary response is single-harmonic to
    # leading order, so column 2 (max_disp) is the plotted amplitude
    return _branch_figure(
        cfg, out, ResonanceId(1, 1), _FIG1_RUNS, "linear", 2, locus, "fig1", "amplitude [m]"
    )


def _fig2(cfg: OscillatorConfig, out: Path) -> list[Path]:
    from .closed_form import super31_phase_resonance

    locus = [[0.0, cfg.omega0 / 3.0, 0.0]]
    for i in range(1, 151):
        f = 0.22 * i / 150
        p = super31_phase_resonance(cfg, f)
        locus.append([f, p.omega, p.amplitude])
    # third harmonic: A3 sits in column 8 of the branch table
    return _branch_figure(
        cfg, out, ResonanceId(3, 1), _FIG2_RUNS, "linear", 8, locus, "fig2", "third harmonic [m]"
    )


def _fig3(cfg: OscillatorConfig, out: Path) -> list[Path]:
    from .closed_form import locus_fold, sub13_phase_locus

    res = ResonanceId(1, 3)
    onset = locus_fold(cfg, res).omega
    locus = []
    for i in range(600):
        w = onset * (1.0 + 1e-9) + (13.2 - onset) * i / 599
        try:
            minus, plus = sub13_phase_locus(cfg, w)
        except BelowFoldPoint:
            continue
        for p in (minus, plus):
            locus.append([p.gamma_bar * cfg.mass, p.omega, p.amplitude])
    # first harmonic of the subharmonic response: column 4
    return _branch_figure(
        cfg, out, res, _FIG3_RUNS, "slowflow", 4, locus, "fig3", "first harmonic [m]"
    )


def _fig4(cfg: OscillatorConfig, out: Path) -> list[Path]:
    from .closed_form import sub12_existence_margin, sub12_existence_window

    files = []
    run_meta = []
    plot_lines = []
    windows = []
    for f in _FIG4_FORCINGS:
        rows = []
        for i in range(600):
            w = 2.05 + (5.0 - 2.05) * i / 599
            rows.append([w, sub12_existence_margin(cfg, f, w)])
        name = f"margin_f{f:g}.csv"
        files.append(_write_csv(out / name, ["omega", "margin"], rows))
        window = sub12_existence_window(cfg, f)
        run_meta.append({"forcing": f, "window": None if window is None else list(window)})
        if window is not None:
            windows.append([f, window[0], window[1]])
        plot_lines.append(f"'{name}' skip 1 using 1:2 with lines title 'f = {f:g} N'")
    files.append(_write_csv(out / "windows.csv", ["f", "omega_inf", "omega_sup"], windows))
    plot_lines.append("0 with lines dashtype 3 notitle")
    plot_lines.append("'windows.csv' skip 1 using 2:(0) with points pt 7 title 'window edges'")
    plot_lines.append("'windows.csv' skip 1 using 3:(0) with points pt 7 notitle")
    files.append(_write_plot(out / "fig4.gp", "existence margin", plot_lines))
    files.append(_write_meta(out, "fig4", cfg, run_meta))
    return files


def _fig5(cfg: OscillatorConfig, out: Path) -> list[Path]:
    from .harmonic_balance import detect_phase_resonance

    files = []
    points = []
    run_meta = []
    plot_lines = []
    for label, f, window, ds_max, seed in _FIG5_RUNS:
        res = ResonanceId.parse(label)
        branch = _hb_branch(cfg, res, f, window, ds_max, seed)
        name = f"branch_{res.k}to{res.nu}.csv"
        files.append(_write_branch(out / name, branch, cfg))
        files.append(Path(str(files[-1]) + ".meta.json"))
        points += _point_rows(res, f, detect_phase_resonance(branch, res))
        run_meta.append(
            {
                "resonance": label,
                "forcing": f,
                "omega_window": list(window),
                "ds_max": ds_max,
                "seed": seed,
            }
        )
        plot_lines.append(
            f"'{name}' skip 1 using 1:2 with lines title '{label}, f = {f:g} N'"
        )
    files.append(_write_csv(out / "points.csv", _POINTS_HEADER, points))
    plot_lines.append(
        "'points.csv' skip 1 using 3:6 with points pt 7 lc rgb 'red' title 'phase resonance'"
    )
    files.append(_write_plot(out / "fig5.gp", "max displacement [m]", plot_lines))
    files.append(_write_meta(out, "fig5", cfg, run_meta))
    return files


_RENDERERS = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5}


def run_figure(fig_id: str, cfg: OscillatorConfig, out_dir: Path) -> list[Path]:
    """Render one figure's data files into out_dir and list what was written."""
    try:
        render = _RENDERERS[fig_id]
    except KeyError:
        raise ValueError(f"unknown figure id {fig_id!r}") from None
    out_dir.mkdir(parents=True, exist_ok=True)
    return render(cfg, out_dir)
