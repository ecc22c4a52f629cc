"""Frozen expected values for the test suite.

Every number here was produced outside the library under test: either
40-digit arithmetic on the governing relations (mpmath), or long
reference solver runs cross-checked against direct time integration,
frozen once verified.  Tests compare against these constants so that a
regression shows up as numeric drift instead of a silently moved
baseline.  Do not regenerate them from the library itself.
"""

import math

# ---------------------------------------------------------------------------
# default oscillator: m = 1, c = 0.01, k = 1, k_nl = 1
# (omega0 = 1, zeta_bar = 0.005, alpha = 1, gamma_bar = f)

# linear peak at f = 0.01 (exact formulas, 40-digit evaluation)
LINEAR_F001 = {
    "omega_a": 0.9999749996874922,
    "amp_a": 1.0000125002343799,
    "phi_a": 1.5657962434593757,
}

# primary resonance per forcing level: phase point, then amplitude point
PRIMARY = {
    0.001: {
        "omega_p": 1.0037153870767405,
        "amp_p": 0.0996298365926658,
        "omega_a": 1.0036905706656401,
        "amp_a": 0.0996310637175524,
    },
    0.005: {
        "omega_p": 1.0777002494971167,
        "amp_p": 0.4639508993649330,
        "omega_a": 1.0776784672178170,
        "amp_a": 0.4639552833408889,
    },
    0.01: {
        "omega_p": math.sqrt(1.5),
        "amp_p": math.sqrt(2.0 / 3.0),
        "omega_a": 1.2247270104225652,
        "amp_a": 0.8165016840632513,
        "phi_a": 1.5667138070340524,
    },
}

# omega_p - omega_a at f = 0.01, keyed by zeta_bar (set via damping c = 2 zeta)
PRIMARY_GAP = {
    0.0025: 3.374562114929e-6,
    0.005: 1.786096902385e-5,
    0.01: 8.713147710261e-5,
}

# first-order multiple-scales peak at f = 0.01
MS_F001 = {"omega": 1.375, "amp": 1.0}

# 3:1 superharmonic closed forms at f = 0.2
SUPER31_F02 = {
    "omega_p": 0.3543021643886714,
    "amp_p": 0.2679122075468615,
    "omega_a": 0.3543002823530443,
    "amp_a": 0.2679134454235100,
    "phi_a": 1.5696203004259341,
}

# 1:3 subharmonic quadrature locus
SUB13_FOLD = {"omega": 3.0427263918726927, "gamma_bar": 0.8075459481620169}
SUB13_MIN_FORCING = {"omega": 3.6293782291250810, "gamma_bar": 0.2499087274895239}
SUB13_CROSSINGS = {
    0.3: (3.21830127458, 4.52001012561),
    0.6: (3.05096490953, 6.91485814071),
    1.0: (3.04659011917, 9.09707633564),
}
# amplitude-extremum locus crossings at f = 0.6: (omega, amplitude, lag)
SUB13_AMP_CROSSINGS_F06 = (
    (3.050719, 0.187742, 1.565470),
    (6.914835, 2.397968, 1.568446),
)
# quadrature locus crossing amplitudes at f = 0.6
SUB13_PHASE_CROSSING_AMPS_F06 = (0.187767, 2.397933)

# 1:2 subharmonic: locus and existence windows
SUB12_LOCUS_24 = 0.8523945760905130  # minus-root gamma_bar at omega = 2.4
SUB12_MIN_FORCING = {"omega": 2.4050540163, "gamma_bar": 0.8523425268}
SUB12_WINDOWS = {
    0.8: None,
    1.0: (2.2447055913, 2.7946038652),
    2.0: (2.3331286381, 3.9159829917),
    3.0: (2.4858464415, 4.66247496615),
}

# 5:1 existence window at f = 0.6 (bisected closed-form inequality)
SUPER51_WINDOW_F06 = (0.2543448265778196, 0.3112166116172678)

# slow-flow primary branch folds at f = 0.01
SLOWFLOW_11_FOLDS = (1.03859087034, 1.22476784053)

# time-integration oracle invariants (x0 = 0.8 free run, 1600 steps/period;
# order ratio from 10 forced periods at omega = 1.2, 400 vs 800 steps)
ORACLE_ENERGY_DRIFT = 4.907e-11  # per 100 periods
ORACLE_ORDER_RATIO = 15.811  # halving the step divides the error by ~2^4

# harmonic-balance reference points (N = 15 unless stated)
HB11_F001 = {
    "peak_omega": 1.226262,
    "peak_maxd": 0.825614,
    "crossing_omega": 1.22642688,
    "crossing_a1": 0.81386670,
    "crossing_maxd": 0.82571684,
}
HB31_F02 = {"crossing_omega": 0.349306, "crossing_a3": 0.214155}
HB51_F06 = {"crossing_omega": 0.239230914499, "crossing_a5": 0.354797861006}
HB71_F085 = {"crossing_omega": 0.183148123533, "crossing_a7": 0.295041675965}
HB12_F10 = {"span": (2.23768, 2.93362), "h1max_omega": 2.933616, "h1max_a1": 1.20532}
HB21_F05 = {"span": (0.5965, 0.6100), "h2max_omega": 0.60994, "h2max_a2": 0.44572}
HB32_F109 = {"span": (1.105949, 1.109548), "h3max_omega": 1.10597, "h3max_a3": 0.7599}

# ---------------------------------------------------------------------------
# converged harmonic vectors used to reach the isolas that no generic
# seeding strategy finds (frozen from validated reference runs; the
# cos/sin coefficients are on the base frequency omega/nu)

# 2:1 ultra-subharmonic-free superharmonic isola at f = 0.5
SUP21_SEED = {
    "f": 0.5,
    "omega": 0.6099402540679562,
    "a0": -0.038463183289198066,
    "cos": (
        -1.2503244041957767e-02, -3.0296626742642147e-01, 3.2044684255639090e-02,
        9.8527982913835140e-03, -1.0172093482287165e-02, 2.0819148736345881e-03,
        4.1967905136716037e-04, -2.5093720563731020e-04, 4.9554972722813552e-06,
        2.6695930847732547e-05, -5.0357979047618538e-06, -2.3339772896913552e-06,
        1.2524211099980412e-06, -4.2791367014149127e-08, -1.3098639589399172e-07,
    ),
    "sin": (
        4.6224229323369875e-01, -3.2691751153310061e-01, -6.2364648507306870e-03,
        1.2202014380119312e-02, -8.3243484015252075e-04, -2.1484079507850086e-03,
        4.1712184995735928e-04, 1.6777372055368803e-04, -1.1359621051595836e-04,
        1.2613408632958591e-05, 8.6391883647344597e-06, -3.2893598510490677e-06,
        -1.7439960197284737e-07, 3.8008617061561295e-07, -5.4680292089467045e-08,
    ),
}

# 3:2 ultra-subharmonic isola at f = 1.09 (born near f = 1.0875)
SUB32_SEED = {
    "f": 1.09,
    "omega": 1.1059756345874436,
    "a0": -0.0357474202004552,
    "cos": (
        -0.10482733696837276, -0.02266179433037017, -0.2536777990641472,
        0.09143249148238197, -0.00338125935933655, -0.00033383953866464,
        0.00923684128054259, -0.01834533635731508, 0.01086556857571999,
        -0.00297198555437074, 0.00048248001533151, 0.0005249673359022,
        -0.00095528088869369, 0.0006572287530925, -0.00025460382031004,
    ),
    "sin": (
        2.0623716164387068e-01, 9.1107751540185533e-01, -7.1631779151095409e-01,
        8.0490780970209216e-02, -1.6895103757621058e-02, 3.5542953205971415e-04,
        3.0023112228410451e-02, -2.2482727786912734e-02, 5.7632219584367881e-03,
        -8.6742311947441168e-04, -9.7430289817515792e-05, 8.2189853228752054e-04,
        -5.9333549461391163e-04, 1.1445203609292915e-04, 3.4631718278142775e-05,
    ),
}

# ---------------------------------------------------------------------------
# phase-lag sweep rows: where each family's resonant lag is measured

# harmonic-balance rows: (family, f, window, ds, ds_max, seed)
LAG_HB_ROWS = (
    ("1:1", 0.01, (0.8, 1.6), 0.004, 0.01, "linear"),
    ("3:1", 0.2, (0.30, 0.40), 0.0025, 0.005, "linear"),
    ("5:1", 0.6, (0.17, 0.34), 0.002, 0.004, "linear"),
    ("7:1", 0.85, (0.13, 0.32), 0.002, 0.004, "linear"),
    ("1:3", 0.6, (2.75, 9.5), 0.015, 0.03, "slowflow"),
    ("1:2", 1.0, (2.0, 3.2), 0.004, 0.01, "slowflow"),
)

# averaged-system rows for the families with steady relations only:
# (family, f, window, edges) where edges names which branch terminals
# are existence edges carrying the resonant lag.  The r -> 0 birth of
# the 5:1 strip is excluded: the phase is unconstrained there.
LAG_STEADY_ROWS = (
    ("1:5", 15.0, (10.0, 16.0), ("hi",)),
    ("1:4", 15.0, (2.0, 12.0), ("lo",)),
    ("5:1", 0.6, (0.17, 0.34), ("hi",)),
    ("2:3", 2.0, (0.75, 3.0), ("lo", "hi")),
)

# expected existence-edge frequencies for the rows above
STEADY_EDGES = {
    "1:5": {"hi": 15.103311},
    "1:4": {"lo": 5.522099},
    "5:1": {"hi": 0.311217},
    "2:3": {"lo": 2.037163, "hi": 2.581133},
}

# figure continuation step bounds, for point-on-branch distance checks
FIG_DS_MAX = {"fig1": 0.01, "fig2": 0.005, "fig3": 0.03}
FIG5_DS_MAX = {
    "1to1": 0.01,
    "3to1": 0.005,
    "5to1": 0.004,
    "7to1": 0.004,
    "1to3": 0.03,
    "1to2": 0.02,
}
