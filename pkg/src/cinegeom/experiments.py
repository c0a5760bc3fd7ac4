"""Scaling-law experiments: circle maximal norm, quasi-product integrals,
lens growth, bipartite tangency counts, and the restricted-projection
dimension sweep.

Every experiment is a pure function of (config, seed): rerunning writes
byte-identical CSV rows.  Thresholds are desk-scale calibration targets; each
result carries its fitted exponent and the pass verdict for the CLI exit
code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .curves import (
    CurveFamily,
    Interval,
    SpaceCurve,
    circle_family,
    helix_circle_curve,
    planar_circle_curve,
)
from .errors import DegenerateCurveError, FrostmanError, PreconditionError
from .fractal import (
    DeltaSet,
    PointCloud3,
    QuasiProduct,
    cantor_points_3d,
    dyadic_level,
    frostman_check_points,
    full_quasi_product,
    validate_delta_set,
)
from .incidence import RasterSpec, counting_field, lp_integral
from .lenses import enumerate_lenses, extend_to_pseudocircles, max_nonoverlapping, perturb
from .rectangles import harvest_tangency_rects, is_tangent
from .rng import SplitMix64
from .curves import escaping_check

DEFAULT_DELTAS = tuple(2.0**-k for k in range(5, 11))


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    deltas: tuple[float, ...] = DEFAULT_DELTAS
    n: int | None = None
    alpha: float = 0.5
    zeta: float = 0.8
    s: float = 0.5
    gamma: str = "helix-circle"
    gamma_file: str | None = None
    out: str | None = None
    allow_degenerate: bool = False

    def __post_init__(self):
        for d in self.deltas:
            dyadic_level(d)
        if not (0.0 < self.alpha <= self.zeta <= 1.0):
            raise PreconditionError("need 0 < alpha <= zeta <= 1")
        if not (0.0 < self.s < self.zeta):
            raise PreconditionError("need 0 < s < zeta")


@dataclass
class SweepResult:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple]
    fitted_exponent: float
    fit_residual: float
    threshold: float
    passed: bool
    extras: dict = field(default_factory=dict)


def fit_exponent(rows: list[tuple[float, float]]) -> tuple[float, float, float]:
    """Least-squares slope/intercept on (log x, log y); residual is the max
    absolute log deviation."""
    if len(rows) < 3:
        raise PreconditionError("need at least three rows to fit")
    xs = np.array([r[0] for r in rows], dtype=float)
    ys = np.array([r[1] for r in rows], dtype=float)
    if np.any(xs <= 0.0) or np.any(ys <= 0.0):
        raise PreconditionError("log-log fit needs positive data")
    lx, ly = np.log(xs), np.log(ys)
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    (slope, intercept), *_ = np.linalg.lstsq(A, ly, rcond=None)
    residual = float(np.max(np.abs(ly - (slope * lx + intercept))))
    return float(slope), float(intercept), residual


def _fit_or_flat(rows: list[tuple[float, float]]) -> tuple[float, float]:
    """(slope, residual) of the positive rows, or (0, 0) when the sweep is
    too short to fit; short runs still report their ratios."""
    pos = [(x, y) for x, y in rows if x > 0.0 and y > 0.0]
    if len(pos) < 3:
        return 0.0, 0.0
    slope, _, resid = fit_exponent(pos)
    return slope, resid


# ---------------------------------------------------------------------------
# family builders


def wolff_circle_family(delta: float, seed: int, n: int | None = None) -> CurveFamily:
    """n ~ 1/delta circles with exactly delta-separated radii filling [1,2]
    and seeded centers in B(0, 0.05); the parameter triples are automatically
    a zeta=1 Frostman cloud."""
    n = n or round(1.0 / delta)
    n = min(n, int(math.floor(1.0 / delta)))
    rng = SplitMix64(seed).split("wolff-centers")
    J = Interval(-0.5, 0.5)
    radii = [1.0 + (i + 0.5) * (1.0 / n) for i in range(n)]
    centers = []
    for _ in range(n):
        ang = 2.0 * math.pi * rng.uniform()
        rad = 0.05 * math.sqrt(rng.uniform())
        centers.append((rad * math.cos(ang), rad * math.sin(ang)))
    return circle_family(centers, radii, J, analyze=False)


def pencil_circle_family(delta: float, zeta: float, seed: int) -> CurveFamily:
    """Tangency-focusing family: radii equally spaced with count (0.2/delta)^zeta
    in [1.4, 1.6], centers on the segment b = 1.5 - r so every arc passes
    through (0, 1.5) with slope zero.  The extremal configuration for the
    fractal 3/2-integral."""
    J = Interval(-0.5, 0.5)
    n = max(2, round((0.2 / delta) ** zeta))
    rng = SplitMix64(seed).split("pencil-jitter")
    spacing = 0.2 / n
    radii = [1.4 + (i + 0.5) * spacing for i in range(n)]
    centers = [(0.0, 1.5 - r + (rng.uniform() - 0.5) * delta * 1e-3) for r in radii]
    return circle_family(centers, radii, J, analyze=False)


def tangent_circle_family(n: int, seed: int, height_jitter: float = 0.01) -> CurveFamily:
    """Random circles with matched apex heights so a constant fraction of
    pairs crosses exactly twice; the workhorse for lens statistics."""
    rng = SplitMix64(seed).split("tangent-family")
    J = Interval(-0.5, 0.5)
    centers, radii = [], []
    for _ in range(n):
        r = 1.42 + 0.16 * rng.uniform()
        a = (rng.uniform() - 0.5) * 0.08
        b = 1.5 - r + (rng.uniform() - 0.5) * 2.0 * height_jitter
        centers.append((a, b))
        radii.append(r)
    return circle_family(centers, radii, J, analyze=False)


def _frostman_triples(fam: CurveFamily, delta: float, zeta: float,
                      C: float = 4.0) -> PointCloud3:
    """Center-radius triples recentered into the unit ball for validation."""
    pts = np.array([(a, b, r - 1.5) for (a, b, r) in fam.params])
    return PointCloud3(pts, delta, zeta, C, check_separation=False)


# ---------------------------------------------------------------------------
# shared integral pipeline


def _l32_point(fam: CurveFamily, delta: float, E: QuasiProduct,
               y0: float = 1.0) -> float:
    """Integral of the counting function to the 3/2 over E, with E read in
    the chart [(theta,y) -> (theta+1/2, y-y0)] on the standard window."""
    spec = RasterSpec(Interval(-0.5, 0.5), Interval(y0, y0 + 1.0), delta / 4.0)
    field_ = counting_field(fam, delta, spec)
    return lp_integral(field_, E, 1.5)


def _wolff_point(delta: float, seed: int, n: int | None):
    fam = wolff_circle_family(delta, seed, n)
    cloud = _frostman_triples(fam, delta, 1.0)
    ok, worst = frostman_check_points(cloud)
    if not ok:
        raise FrostmanError(
            f"wolff family at delta={delta} failed Frostman validation", worst)
    E = full_quasi_product(delta)
    integral = _l32_point(fam, delta, E)
    return fam, integral


def exp_wolff_circles(cfg: ExperimentConfig) -> SweepResult:
    """Norm of the circle counting function against the (delta*n)^{2/3} law."""
    rows = []
    for delta in cfg.deltas:
        fam, integral = _wolff_point(delta, cfg.seed, cfg.n)
        n = len(fam)
        norm = integral ** (2.0 / 3.0)
        bound = (delta * n) ** (2.0 / 3.0)
        rows.append((delta, n, integral, norm, bound, norm / bound))
    slope, resid = _fit_or_flat([(r[0], r[5]) for r in rows])
    return SweepResult(
        name="wolff",
        columns=("delta", "n", "integral", "norm32", "bound", "ratio"),
        rows=rows, fitted_exponent=slope, fit_residual=resid,
        threshold=0.15, passed=abs(slope) <= 0.15)


def _apex_column_set(delta: float, alpha: float) -> DeltaSet:
    """Equally spaced delta-cells in a ~2*sqrt(delta) window around the apex
    column u=1/2; taut for the alpha non-concentration bound."""
    k = dyadic_level(delta)
    w = 1.2 * math.sqrt(delta)
    n_cols = max(2, round(delta ** (-alpha / 2.0)))
    apex = 0.5
    offsets = np.linspace(-w, w, n_cols)
    cells = np.unique(np.floor((apex + offsets) / delta).astype(np.int64))
    cells = cells[(cells >= 0) & (cells < 2**k)]
    return DeltaSet(delta, cells, alpha, C=8.0)


def _pencil_product(fam: CurveFamily, delta: float, alpha: float,
                    y0: float = 1.0) -> QuasiProduct:
    """Quasi-product adapted to the pencil: apex columns with the single
    fiber cell carrying the tangency stack."""
    A = _apex_column_set(delta, alpha)
    k = A.level
    theta = (A.cells.astype(float) + 0.5) * delta - 0.5
    values = np.stack([c.values(theta) for c in fam.curves])
    med = np.median(values, axis=0)
    fibers = {}
    for cell, v in zip(A.cells, med):
        b = int(np.floor((v - y0) / delta))
        b = min(max(b, 0), 2**k - 1)
        fibers[int(cell)] = DeltaSet(delta, np.array([b]), alpha, C=8.0)
    return QuasiProduct(A, fibers)


def exp_quasi_product(cfg: ExperimentConfig) -> SweepResult:
    """Fractal 3/2-integral against delta^{2-alpha/2-zeta/2} * #F.

    At (alpha, zeta) = (1, 1) this is literally the wolff pipeline over the
    full square; otherwise the tangency-focusing pencil configuration is used
    with a quasi-product adapted to the stack (the extremal test of the law).
    """
    alpha, zeta = cfg.alpha, cfg.zeta
    rows = []
    for delta in cfg.deltas:
        if alpha == 1.0 and zeta == 1.0:
            fam, integral = _wolff_point(delta, cfg.seed, cfg.n)
        else:
            fam = pencil_circle_family(delta, zeta, cfg.seed)
            cloud = _frostman_triples(fam, delta, zeta)
            ok, worst = frostman_check_points(cloud)
            if not ok:
                raise FrostmanError(
                    f"pencil family at delta={delta} failed Frostman validation",
                    worst)
            E = _pencil_product(fam, delta, alpha)
            okA, worstA = validate_delta_set(E.A)
            if not okA:
                raise FrostmanError("adapted column set failed validation", worstA)
            integral = _l32_point(fam, delta, E)
        n = len(fam)
        bound = delta ** (2.0 - alpha / 2.0 - zeta / 2.0) * n
        rows.append((delta, n, integral, bound, integral / bound))
    slope, resid = _fit_or_flat([(r[0], r[4]) for r in rows])
    return SweepResult(
        name="quasi",
        columns=("delta", "n", "integral", "bound", "ratio"),
        rows=rows, fitted_exponent=slope, fit_residual=resid,
        threshold=0.2, passed=abs(slope) <= 0.2)


def exp_lens_scaling(cfg: ExperimentConfig, ns: tuple[int, ...] = (16, 32, 64, 128, 256, 512),
                     perturb_delta: float = 2.0**-20) -> SweepResult:
    """Growth of the maximal non-overlapping strip-lens count with family size."""
    rows = []
    per_pair_ok = True
    for n in ns:
        fam = tangent_circle_family(n, cfg.seed + n)
        fam2 = perturb(fam, perturb_delta, seed=cfg.seed + n)
        circles = extend_to_pseudocircles(fam2)
        lenses = enumerate_lenses(circles)
        pairs = set()
        for l in lenses:
            key = tuple(sorted(l.pair))
            if key in pairs:
                per_pair_ok = False
            pairs.add(key)
        chosen = max_nonoverlapping(lenses)
        rows.append((n, len(lenses), len(chosen)))
    slope, resid = _fit_or_flat([(n, c) for n, _, c in rows])
    return SweepResult(
        name="lens",
        columns=("n", "lenses", "non_overlapping"),
        rows=rows, fitted_exponent=slope, fit_residual=resid,
        threshold=1.65, passed=(slope <= 1.65 and per_pair_ok),
        extras={"per_pair_at_most_one": per_pair_ok})


def bipartite_families(n: int, seed: int,
                       delta: float = 2.0**-21) -> tuple[CurveFamily, CurveFamily, float]:
    """t-separated white/black pencil-style families (radius bands split by a
    0.02 gap, so the C2 distance across the split is at least ~0.02).

    Apex heights are jittered at the delta scale so a constant fraction of
    cross pairs is tangent at scale delta, and the radius-gap lever scatters
    the kiss sites across the window."""
    rng = SplitMix64(seed).split("bipartite")
    J = Interval(-0.5, 0.5)

    def build(lo_r, hi_r, m):
        centers, radii = [], []
        for _ in range(m):
            r = lo_r + (hi_r - lo_r) * rng.uniform()
            a = (rng.uniform() - 0.5) * 0.004
            b = 1.5 - r + (rng.uniform() - 0.5) * 40.0 * delta
            centers.append((a, b))
            radii.append(r)
        return circle_family(centers, radii, J, analyze=False)

    W = build(1.44, 1.50, n)
    B = build(1.52, 1.58, n)
    return W, B, 0.02


def exp_bipartite_tangency(cfg: ExperimentConfig,
                           ns: tuple[int, ...] = (8, 16, 32, 64),
                           mu: int = 1, nu: int = 1,
                           delta: float = 2.0**-21) -> SweepResult:
    """Rectangles tangent to both sides of a separated split, against the
    (W/mu + B/nu)^{3/2} log(...) shape."""
    rows = []
    for n in ns:
        W, B, t = bipartite_families(n, cfg.seed + n, delta)
        merged = CurveFamily(W.curves + B.curves, W.domain, kind="circle")
        merged.analyze(max_pairs=400)
        nw = len(W)
        pairs = [(i, nw + j) for i in range(nw) for j in range(len(B))]
        rects = harvest_tangency_rects(merged, delta, t, pairs=pairs)
        rich = []
        for r in rects:
            wt = sum(1 for c in W.curves if is_tangent(r, c))
            bt = sum(1 for c in B.curves if is_tangent(r, c))
            if wt >= mu and bt >= nu:
                rich.append((r, wt, bt))
        base = nw / mu + len(B) / nu
        bound = base ** 1.5 * max(1.0, math.log(base))
        rows.append((n, len(rects), len(rich), bound,
                     len(rich) / bound))
    ratios = [r[4] for r in rows]
    slope, resid = _fit_or_flat([(r[0], r[4]) for r in rows])
    worst = max(ratios)
    return SweepResult(
        name="bipartite",
        columns=("n", "rects", "rich_rects", "bound", "ratio"),
        rows=rows, fitted_exponent=slope, fit_residual=resid,
        threshold=1.0, passed=worst <= 1.0,
        extras={"worst_ratio": worst})


# ---------------------------------------------------------------------------
# restricted projections


def boxcount_dimension(values: np.ndarray, r_min: float, r_max: float) -> float:
    """Log-log slope of the 1-d covering number over dyadic radii in
    [r_min, r_max]; 0 for fewer than two usable scales."""
    values = np.asarray(values, dtype=float)
    radii = []
    r = r_max
    while r >= r_min * (1.0 - 1e-12):
        radii.append(r)
        r *= 0.5
    if len(radii) < 2:
        return 0.0
    counts = [len(np.unique(np.floor(values / r))) for r in radii]
    lx = np.log(1.0 / np.array(radii))
    ly = np.log(np.array(counts, dtype=float))
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    (slope, _), *_ = np.linalg.lstsq(A, ly, rcond=None)
    return float(max(slope, 0.0))


def gamma_by_name(cfg: ExperimentConfig) -> SpaceCurve:
    domain = Interval(0.0, 2.0 * math.pi)
    if cfg.gamma == "helix-circle":
        return helix_circle_curve(domain)
    if cfg.gamma == "planar":
        return planar_circle_curve(domain)
    if cfg.gamma == "custom-file":
        if not cfg.gamma_file:
            raise PreconditionError("custom-file gamma needs gamma_file")
        return load_gamma_file(cfg.gamma_file)
    raise PreconditionError(f"unknown gamma {cfg.gamma!r}")


def load_gamma_file(path: str) -> SpaceCurve:
    """Custom curve file: lines 'lo hi' then three rows of Fourier
    coefficients a0 a1 b1 a2 b2 ... (one row per component); the raw trig
    series is normalized onto the sphere analytically."""
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.startswith("#")]
    lo, hi = float(lines[0][0]), float(lines[0][1])
    coeffs = [np.array([float(v) for v in row]) for row in lines[1:4]]

    def raw(theta):
        comps, dcomps, ddcomps = [], [], []
        for cs in coeffs:
            a0 = cs[0]
            val = np.full_like(theta, a0)
            dval = np.zeros_like(theta)
            ddval = np.zeros_like(theta)
            for k in range(1, (len(cs) + 1) // 2):
                a = cs[2 * k - 1]
                b = cs[2 * k] if 2 * k < len(cs) else 0.0
                val = val + a * np.cos(k * theta) + b * np.sin(k * theta)
                dval = dval - a * k * np.sin(k * theta) + b * k * np.cos(k * theta)
                ddval = ddval - a * k * k * np.cos(k * theta) - b * k * k * np.sin(k * theta)
            comps.append(val)
            dcomps.append(dval)
            ddcomps.append(ddval)
        return np.stack(comps), np.stack(dcomps), np.stack(ddcomps)

    def ev(theta):
        g, dg, ddg = raw(theta)
        n = np.sqrt(np.sum(g * g, axis=0))
        nd = np.sum(g * dg, axis=0) / n
        ndd = (np.sum(dg * dg, axis=0) + np.sum(g * ddg, axis=0) - nd * nd) / n
        u = g / n
        du = dg / n - g * nd / n**2
        ddu = (ddg / n - 2.0 * dg * nd / n**2
               - g * ndd / n**2 + 2.0 * g * nd * nd / n**3)
        return u, du, ddu

    return SpaceCurve(ev, Interval(lo, hi), label="custom")


def exp_kaufman(cfg: ExperimentConfig, carrier: str = "ball",
                delta: float | None = None) -> SweepResult:
    """Per-direction box-count dimension of the projected cloud and the size
    of the exceptional direction set.

    The dimension fit runs over dyadic radii from 2^-6 down to the cloud
    scale (finer radii cannot resolve a delta-separated cloud and would bias
    the slope down).
    """
    delta = delta or min(cfg.deltas)
    gamma = gamma_by_name(cfg)
    esc = escaping_check(gamma, 2049)
    if esc <= 1e-3 and not cfg.allow_degenerate:
        raise DegenerateCurveError(
            f"gamma {gamma.label!r} fails the full-span condition (min det "
            f"{esc:.2e}); pass allow_degenerate to run the control case")
    Z = cantor_points_3d(delta, cfg.zeta, cfg.seed, carrier=carrier)
    thetas = np.arange(gamma.domain.lo, gamma.domain.hi, delta)
    g, _, _ = gamma(thetas)
    proj = Z.points @ g          # (#Z, #theta)
    r_min = max(delta, 2.0**-14)
    r_max = 2.0**-6
    dims = np.array([boxcount_dimension(proj[:, i], r_min, r_max)
                     for i in range(proj.shape[1])])
    exceptional = dims < cfg.s
    frac = float(np.mean(exceptional))
    exc_dim = _theta_set_dimension(thetas[exceptional], gamma.domain, delta)
    rows = [(float(th), float(d), cfg.s) for th, d in zip(thetas, dims)]
    return SweepResult(
        name="kaufman",
        columns=("theta", "boxdim", "s_threshold"),
        rows=rows, fitted_exponent=frac, fit_residual=0.0,
        threshold=0.05, passed=frac <= 0.05,
        extras={"exceptional_fraction": frac, "exceptional_dim": exc_dim,
                "escaping": esc, "n_points": len(Z), "delta": delta,
                "dim_mean": float(np.mean(dims)), "dim_max": float(np.max(dims))})


def _theta_set_dimension(thetas: np.ndarray, domain: Interval, delta: float) -> float:
    """Box-count slope of a direction subset across dyadic scales from |I|/8
    down to the grid scale."""
    if len(thetas) == 0:
        return 0.0
    scales = []
    r = domain.length / 8.0
    while r >= delta:
        scales.append(r)
        r *= 0.5
    if len(scales) < 2:
        return 0.0
    counts = [len(np.unique(np.floor((thetas - domain.lo) / r))) for r in scales]
    lx = np.log(1.0 / np.array(scales))
    ly = np.log(np.array(counts, dtype=float))
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    (slope, _), *_ = np.linalg.lstsq(A, ly, rcond=None)
    return float(max(slope, 0.0))


# ---------------------------------------------------------------------------
# CSV output


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _build_id() -> str:
    import subprocess
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             capture_output=True, text=True, timeout=5)
        if out.returncode == 0 and out.stdout.strip():
            return out.stdout.strip()
    except Exception:
        pass
    return f"v{__version__}"


def result_csv(res: SweepResult, cfg: ExperimentConfig) -> str:
    lines = [
        f"# cinegeom {__version__} build={_build_id()}",
        f"# experiment={res.name} seed={cfg.seed} alpha={_fmt(cfg.alpha)} "
        f"zeta={_fmt(cfg.zeta)} s={_fmt(cfg.s)} gamma={cfg.gamma}",
        f"# deltas={','.join(_fmt(d) for d in cfg.deltas)}",
        f"# fitted_exponent={_fmt(res.fitted_exponent)} residual={_fmt(res.fit_residual)} "
        f"threshold={_fmt(res.threshold)} passed={res.passed}",
    ]
    for key, val in sorted(res.extras.items()):
        lines.append(f"# {key}={_fmt(val)}")
    lines.append(",".join(res.columns))
    for row in res.rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_result(res: SweepResult, cfg: ExperimentConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(result_csv(res, cfg))


# ---------------------------------------------------------------------------
# quick validation battery (CLI `validate`)


def run_validation(seed: int = 0) -> list[tuple[str, bool]]:
    """Fast self-checks over the library invariants; returns (name, ok) pairs."""
    from .curves import c2_distance, circle_curve, tangency_param
    from .incidence import zeros_of_difference
    from .fractal import cantor_delta_set, random_thin
    from .rectangles import greedy_incomparable, comparable, make_rect

    out: list[tuple[str, bool]] = []
    rng = SplitMix64(seed)
    J = Interval(-0.5, 0.5)

    def rand_circle(tag):
        a = (rng.uniform() - 0.5) * 0.1
        b = (rng.uniform() - 0.5) * 0.1
        return circle_curve((a, b), 1.0 + rng.uniform(), J, label=tag)

    ok = True
    for _ in range(100):
        f, g = rand_circle("f"), rand_circle("g")
        d = c2_distance(f, g, 512)
        ok &= abs(d - c2_distance(g, f, 512)) == 0.0
        ok &= tangency_param(f, g, 512) <= d + 1e-12
    out.append(("c2-symmetry-and-delta-bound", ok))

    ok = True
    for _ in range(200):
        f, g = rand_circle("f"), rand_circle("g")
        try:
            roots = zeros_of_difference(f, g, 1e-10)
            ok &= len(roots) <= 2
        except PreconditionError:
            pass
    out.append(("two-zero-law", ok))

    E = cantor_delta_set(2.0**-10, 0.5, seed)
    out.append(("cantor-validates", validate_delta_set(E)[0]))

    Z = cantor_points_3d(2.0**-8, 0.8, seed)
    out.append(("cloud-frostman", frostman_check_points(Z)[0]))
    thin, retained = random_thin(Z, 0.5, seed + 1)
    relaxed = PointCloud3(thin.points, thin.delta, thin.zeta,
                          Z.C * math.log2(1.0 / Z.delta), check_separation=False)
    out.append(("thinned-frostman", retained and frostman_check_points(relaxed)[0]))

    f = rand_circle("f")
    rects = [make_rect(f, -0.2 + 0.04 * i, 2.0**-12, 2.0**-4) for i in range(10)]
    kept = greedy_incomparable(rects, 4.0)
    maximal = all(any(comparable(r, k, 4.0) for k in kept) for r in rects)
    incomp = all(not comparable(a, b, 4.0)
                 for i, a in enumerate(kept) for b in kept[i + 1:])
    out.append(("greedy-incomparable-maximality", maximal and incomp))
    return out
