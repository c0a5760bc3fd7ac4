"""Rasterized vertical neighborhoods, counting fields, fractal L^p integrals,
and the pairwise intersection structure of curve differences.

Neighborhoods are vertical (|f(theta) - y| <= delta), never Euclidean tubes;
membership is decided at cell centers, so areas carry a one-sided error of at
most one cell row absorbed into fitted constants.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .curves import C2Curve, CurveFamily, Interval, c2_distance
from .errors import (
    CinematicViolationError,
    DomainMismatchError,
    MisalignmentError,
    PreconditionError,
)
from .fractal import QuasiProduct

BRACKET_GRID = 4096


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CINEGEOM_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class RasterSpec:
    theta_range: Interval
    y_range: Interval
    cell: float

    def __post_init__(self):
        for length in (self.theta_range.length, self.y_range.length):
            n = length / self.cell
            if abs(n - round(n)) > 1e-9:
                raise PreconditionError("window lengths must be whole multiples of the cell")

    @property
    def n_theta(self) -> int:
        return round(self.theta_range.length / self.cell)

    @property
    def n_y(self) -> int:
        return round(self.y_range.length / self.cell)

    def theta_centers(self) -> np.ndarray:
        return self.theta_range.lo + (np.arange(self.n_theta) + 0.5) * self.cell

    def y_centers(self) -> np.ndarray:
        return self.y_range.lo + (np.arange(self.n_y) + 0.5) * self.cell


@dataclass
class Raster:
    spec: RasterSpec
    counts: np.ndarray     # (n_theta, n_y) nonnegative ints

    def __post_init__(self):
        if self.counts.shape != (self.spec.n_theta, self.spec.n_y):
            raise PreconditionError("counts shape does not match the spec")
        if np.any(self.counts < 0):
            raise PreconditionError("counts must be nonnegative")

    @property
    def cell(self) -> float:
        return self.spec.cell


def _column_bands(f: C2Curve, delta: float, spec: RasterSpec):
    """Per-column index range [jlo, jhi] of cells whose center is within delta
    of the curve; jhi < jlo encodes an empty column."""
    fv = f.values(spec.theta_centers())
    lo = np.ceil((fv - delta - spec.y_range.lo) / spec.cell - 0.5 - 1e-12).astype(np.int64)
    hi = np.floor((fv + delta - spec.y_range.lo) / spec.cell - 0.5 + 1e-12).astype(np.int64)
    return np.clip(lo, 0, spec.n_y), np.clip(hi, -1, spec.n_y - 1)


def rasterize_neighborhood(f: C2Curve, delta: float, spec: RasterSpec) -> np.ndarray:
    """Boolean cell mask of the vertical delta-neighborhood of the graph."""
    if spec.cell > delta / 4.0 + 1e-15:
        raise PreconditionError("cell must be at most delta/4")
    if not f.domain.contains(spec.theta_range, slack=1e-12):
        raise DomainMismatchError("curve is undefined on part of the window")
    lo, hi = _column_bands(f, delta, spec)
    mask = np.zeros((spec.n_theta, spec.n_y), dtype=bool)
    cols = np.nonzero(hi >= lo)[0]
    for i in cols:
        mask[i, lo[i]:hi[i] + 1] = True
    return mask


def neighborhood_area(mask: np.ndarray, cell: float) -> float:
    return float(np.count_nonzero(mask)) * cell * cell


def counting_field(fam: CurveFamily, delta: float, spec: RasterSpec) -> Raster:
    """Cell-wise number of covering vertical neighborhoods over the family.

    Equals the sum of the per-curve rasterization masks exactly; accumulation
    uses column difference arrays so the cost is O(#curves * width + cells).
    """
    if spec.cell > delta / 4.0 + 1e-15:
        raise PreconditionError("cell must be at most delta/4")
    for c in fam.curves:
        if not c.domain.contains(spec.theta_range, slack=1e-12):
            raise DomainMismatchError(f"curve {c.label!r} undefined on the window")
    diff = np.zeros((spec.n_theta, spec.n_y + 1), dtype=np.int32)

    def band(curve):
        return _column_bands(curve, delta, spec)

    workers = thread_count()
    if workers > 1 and len(fam) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            bands = list(pool.map(band, fam.curves))
    else:
        bands = [band(c) for c in fam.curves]
    cols = np.arange(spec.n_theta)
    for lo, hi in bands:
        live = hi >= lo
        np.add.at(diff, (cols[live], lo[live]), 1)
        np.add.at(diff, (cols[live], hi[live] + 1), -1)
    counts = np.cumsum(diff[:, :-1], axis=1, dtype=np.int32)
    return Raster(spec, counts)


def lp_integral(field: Raster, E: QuasiProduct, p: float) -> float:
    """Sum of counts^p * cell^2 over cells whose center lies in E.

    E lives on [0,1]^2 via the affine chart anchored at the raster window
    origin; the quasi-product scale must be a whole multiple of the cell.
    """
    if p < 1.0:
        raise PreconditionError("p must be at least 1")
    if E.delta < field.cell - 1e-15:
        raise PreconditionError("quasi-product scale must be at least the cell size")
    ratio = E.delta / field.cell
    if abs(ratio - round(ratio)) > 0.5 * field.cell / E.delta:
        raise MisalignmentError(
            f"quasi-product scale {E.delta} misaligned with cell {field.cell}")
    spec = field.spec
    u = (spec.theta_centers() - spec.theta_range.lo)
    v = (spec.y_centers() - spec.y_range.lo)
    k = E.A.level
    a_idx = np.floor(u / E.delta).astype(np.int64)
    b_idx = np.floor(v / E.delta).astype(np.int64)
    a_ok = (a_idx >= 0) & (a_idx < 2**k)
    b_ok = (b_idx >= 0) & (b_idx < 2**k)
    member = E.membership_matrix()
    mask = np.zeros((spec.n_theta, spec.n_y), dtype=bool)
    mask[np.ix_(a_ok, b_ok)] = member[np.ix_(a_idx[a_ok], b_idx[b_ok])]
    vals = field.counts[mask]
    if p == 1.0:
        s = float(np.sum(vals, dtype=np.float64))
    else:
        s = float(np.sum(vals.astype(np.float64) ** p))
    return s * field.cell**2


def zeros_of_difference(f: C2Curve, g: C2Curve, tol: float | None = None,
                        grid_n: int = BRACKET_GRID) -> list[tuple[float, bool]]:
    """Sign changes of f - g refined by bisection to theta-error `tol`
    (default 1e-12 times the domain length).

    Each root is flagged transversal when |f'-g'| exceeds tol there.  More
    than two sign changes raises CinematicViolationError (a diagnostic: the
    pair cannot belong to a cinematic family).
    """
    if f.domain != g.domain:
        raise DomainMismatchError("curves must share a domain")
    if tol is None:
        tol = 1e-12 * f.domain.length
    theta = f.domain.grid(grid_n)
    h = f.values(theta) - g.values(theta)
    if np.all(h == 0.0):
        raise PreconditionError("curves coincide on the bracketing grid")

    def hval(x):
        return float(f.values(np.array([x]))[0] - g.values(np.array([x]))[0])

    roots: list[float] = []
    exact = np.nonzero(h == 0.0)[0]
    for i in exact:
        roots.append(float(theta[i]))
    s = np.sign(h)
    nz = np.nonzero(s)[0]
    for a, b in zip(nz[:-1], nz[1:]):
        # adjacency excludes brackets spanning an exact grid zero, which is
        # already recorded above
        if b == a + 1 and s[a] * s[b] < 0:
            lo, hi = float(theta[a]), float(theta[b])
            flo = hval(lo)
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = hval(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(0.5 * (lo + hi))
    roots = sorted(set(roots))
    if len(roots) > 2:
        raise CinematicViolationError(
            f"difference of {f.label!r} and {g.label!r} has {len(roots)} zeros",
            roots=roots)
    out = []
    for r in roots:
        dp = float(f(np.array([r]))[1][0] - g(np.array([r]))[1][0])
        out.append((r, abs(dp) > tol))
    return out


@dataclass
class SublevelSet:
    """Where |f-g| <= delta on the central quarter interval: at most two
    closed intervals for cinematic pairs in the admissible scale range."""

    intervals: tuple[Interval, ...]
    delta: float

    @property
    def measure(self) -> float:
        return sum(iv.length for iv in self.intervals)

    def hull(self) -> Interval | None:
        if not self.intervals:
            return None
        return Interval(self.intervals[0].lo, self.intervals[-1].hi)


def sublevel_intervals(f: C2Curve, g: C2Curve, delta: float, K: float,
                       grid_n: int = BRACKET_GRID) -> SublevelSet:
    """E_delta = {theta in J/4 : |f-g| <= delta} as at most two intervals.

    Requires delta <= c2_distance(f,g) / (6K) with K the family's estimated
    cinematic constant; endpoints are refined by bisection on |h| - delta.
    """
    if f.domain != g.domain:
        raise DomainMismatchError("curves must share a domain")
    t = c2_distance(f, g)
    if delta > t / (6.0 * K) + 1e-15:
        raise PreconditionError(
            f"delta={delta} exceeds the 6K threshold t/(6K)={t / (6.0 * K):.3e}")
    quarter = f.domain.quarter()
    theta = quarter.grid(grid_n)
    h = np.abs(f.values(theta) - g.values(theta)) - delta
    inside = h <= 0.0

    def refine(lo, hi):
        # h changes sign between lo and hi; bisect on |f-g| - delta
        def val(x):
            return abs(float(f.values(np.array([x]))[0]
                             - g.values(np.array([x]))[0])) - delta
        flo = val(lo)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = val(mid)
            if flo * fm <= 0:
                hi = mid
            else:
                lo, flo = mid, fm
            if hi - lo < 1e-15 * max(1.0, abs(hi)):
                break
        return 0.5 * (lo + hi)

    comps: list[list[float]] = []
    i = 0
    n = len(theta)
    while i < n:
        if inside[i]:
            j = i
            while j + 1 < n and inside[j + 1]:
                j += 1
            lo = theta[i] if i == 0 else refine(theta[i - 1], theta[i])
            hi = theta[j] if j == n - 1 else refine(theta[j + 1], theta[j])
            if hi > lo:
                comps.append([lo, hi])
            else:
                comps.append([lo - 1e-300, lo + 1e-300])
            i = j + 1
        else:
            i += 1
    # grid noise can split one analytic component; merge near-adjacent pieces
    step = quarter.length / (grid_n - 1)
    merged: list[list[float]] = []
    for c in comps:
        if merged and c[0] - merged[-1][1] < 2.0 * step:
            merged[-1][1] = c[1]
        else:
            merged.append(c)
    if len(merged) > 2:
        raise CinematicViolationError(
            f"sublevel set of {f.label!r}, {g.label!r} has {len(merged)} components")
    ivs = tuple(Interval(lo, hi) for lo, hi in merged if hi > lo)
    return SublevelSet(ivs, delta)
