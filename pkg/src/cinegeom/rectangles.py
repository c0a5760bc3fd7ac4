"""Curvilinear (delta, t)-rectangles: construction, tangency, comparability,
dilation, greedy incomparable extraction, and harvesting from curve pairs.

A rectangle is the vertical delta-neighborhood of its anchor curve over an
interval of length sqrt(delta/t).  The comparability test replaces the
definition's existential witness with a decidable two-sided check (hull short
enough and the anchors uniformly close on the hull), which is equivalent up
to a bounded power of lambda; the slack lands in fitted constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .curves import C2Curve, CurveFamily, Interval, c2_distance, tangency_param
from .errors import PreconditionError
from .incidence import sublevel_intervals

TANGENCY_LAMBDA = 5.0          # default factor in R ⊆ f^{λδ}
HARVEST_SLACK = 60.0           # fitted constant in (Δ+10δ)·‖f−g‖ ≤ C·δt
DEDUPE_LAMBDA = 100.0


@dataclass(frozen=True, eq=False)
class CurvRect:
    anchor: str
    curve: C2Curve
    I: Interval
    delta: float
    t: float

    def __post_init__(self):
        want = math.sqrt(self.delta / self.t)
        # endpoint rounding dominates when the interval sits far from 0
        tol = 4.0 * np.finfo(float).eps * max(want, abs(self.I.lo), abs(self.I.hi))
        if abs(self.I.length - want) > tol:
            raise PreconditionError(
                f"interval length {self.I.length} is not sqrt(delta/t)={want}")
        if not self.curve.domain.contains(self.I, slack=1e-12):
            raise PreconditionError("rectangle interval leaves the anchor domain")

    @property
    def width(self) -> float:
        return math.sqrt(self.delta / self.t)


def make_rect(curve: C2Curve, theta0: float, delta: float, t: float,
              anchor: str | None = None) -> CurvRect:
    """Rectangle of width sqrt(delta/t) centered at theta0 on the curve."""
    if delta > t:
        raise PreconditionError("need delta <= t")
    half = 0.5 * math.sqrt(delta / t)
    iv = Interval(theta0 - half, theta0 + half)
    if not curve.domain.contains(iv, slack=1e-12):
        raise PreconditionError(
            f"interval [{iv.lo:.4g}, {iv.hi:.4g}] does not fit in the domain")
    return CurvRect(anchor or curve.label, curve, iv, delta, t)


def _sup_gap(f: C2Curve, g: C2Curve, iv: Interval, grid_n: int) -> float:
    iv = iv.intersect(f.domain) or iv
    theta = iv.grid(grid_n)
    return float(np.max(np.abs(f.values(theta) - g.values(theta))))


def is_tangent(rect: CurvRect, g: C2Curve, lam: float = TANGENCY_LAMBDA,
               grid_n: int = 33) -> bool:
    """R ⊆ g^{lam·delta}, reduced to sup_I |f_anchor - g| <= (lam-1)·delta."""
    if rect.curve.domain != g.domain:
        raise PreconditionError("rectangle anchor and curve must share a domain")
    return _sup_gap(rect.curve, g, rect.I, grid_n) <= (lam - 1.0) * rect.delta


def comparable(r1: CurvRect, r2: CurvRect, lam: float, grid_n: int = 65) -> bool:
    """Witness test for lambda-comparability.

    True when the hull of the two intervals fits a (lam*delta, t)-rectangle
    width and the anchors stay within (lam-1)*delta of each other on the hull.
    Symmetric by construction; implies a containing rectangle at O(lam^3).
    """
    if abs(r1.delta - r2.delta) > 1e-15 or abs(r1.t - r2.t) > 1e-15:
        raise PreconditionError("rectangles must share (delta, t)")
    hull = r1.I.hull(r2.I)
    if hull.length > math.sqrt(lam * r1.delta / r1.t) * (1.0 + 1e-12):
        return False
    if r1.curve is r2.curve or r1.anchor == r2.anchor:
        return True
    return _sup_gap(r1.curve, r2.curve, hull, grid_n) <= (lam - 1.0) * r1.delta


@dataclass(frozen=True)
class DilatedRect:
    """lambda R = f^{lambda delta}(lambda I ∩ J): not itself a (delta,t)-rectangle."""

    anchor: str
    curve: C2Curve
    interval: Interval
    width: float


def dilate(rect: CurvRect, lam: float) -> DilatedRect:
    if lam < 1.0:
        raise PreconditionError("dilation factor must be at least 1")
    half = 0.5 * lam * rect.I.length
    stretched = Interval(rect.I.mid - half, rect.I.mid + half)
    clipped = stretched.intersect(rect.curve.domain)
    if clipped is None:
        raise PreconditionError("dilated interval misses the domain")
    return DilatedRect(rect.anchor, rect.curve, clipped, lam * rect.delta)


def region_contains_rect(region: DilatedRect, rect: CurvRect,
                         grid_n: int = 65) -> bool:
    if not region.interval.contains(rect.I, slack=1e-12):
        return False
    gap = _sup_gap(region.curve, rect.curve, rect.I, grid_n)
    return gap + rect.delta <= region.width + 1e-12


def greedy_incomparable(rects: Sequence[CurvRect], lam: float,
                        priority: Sequence[float] | Callable[[CurvRect], float] | None = None,
                        grid_n: int = 65) -> list[CurvRect]:
    """Maximal pairwise lambda-incomparable sublist, greedily by priority.

    Priority is either a score per rectangle or a scoring callable (higher
    first); ties and the default order fall back to (anchor, left endpoint),
    so the output is deterministic.  Every input rectangle is comparable to
    some output member.
    """
    rects = list(rects)
    if not rects:
        return []
    d0, t0 = rects[0].delta, rects[0].t
    for r in rects:
        if abs(r.delta - d0) > 1e-15 or abs(r.t - t0) > 1e-15:
            raise PreconditionError("rectangles must share (delta, t)")
    if priority is None:
        scores = [0.0] * len(rects)
    elif callable(priority):
        scores = [float(priority(r)) for r in rects]
    else:
        scores = [float(s) for s in priority]
        if len(scores) != len(rects):
            raise PreconditionError("need one priority score per rectangle")
    order = sorted(range(len(rects)),
                   key=lambda i: (-scores[i], rects[i].anchor, rects[i].I.lo))
    kept: list[CurvRect] = []
    for i in order:
        cand = rects[i]
        # hull prefilter: rectangles farther than the comparability width apart
        # can never be comparable, so skip the sup evaluation
        wmax = math.sqrt(lam * d0 / t0)
        if all(not (cand.I.hull(k.I).length <= wmax * (1 + 1e-12)
                    and comparable(cand, k, lam, grid_n)) for k in kept):
            kept.append(cand)
    return kept


def shrink(rect: CurvRect, c: float) -> CurvRect:
    """Scale the interval by c about its midpoint, adjusting t to keep the
    defining relation |I| = sqrt(delta/t)."""
    if not (0.0 < c <= 1.0):
        raise PreconditionError("shrink factor must lie in (0,1]")
    half = 0.5 * c * rect.I.length
    iv = Interval(rect.I.mid - half, rect.I.mid + half)
    return CurvRect(rect.anchor, rect.curve, iv, rect.delta, rect.t / (c * c))


def harvest_tangency_rects(
    fam: CurveFamily,
    delta: float,
    t: float,
    slack: float = HARVEST_SLACK,
    pairs: Sequence[tuple[int, int]] | None = None,
    dedupe_lambda: float = DEDUPE_LAMBDA,
    grid_n: int = 1024,
) -> list[CurvRect]:
    """Rectangles covering the near-tangency sets of curve pairs at scale
    (delta, t), deduplicated greedily at lambda=100.

    A pair contributes when t <= ‖f-g‖ <= 6t and (Δ+10δ)·‖f-g‖ <= slack·δt;
    its sublevel set E_δ on the central quarter is then covered by a chain of
    anchored rectangles.  Priority for deduplication is covered E_δ measure.
    """
    K = fam.estimated_K()
    if delta > t / (6.0 * K):
        raise PreconditionError(
            f"delta={delta} outside the tangency regime t/(6K)={t / (6.0 * K):.3e}")
    idx_pairs = pairs if pairs is not None else [
        (i, j) for i in range(len(fam)) for j in range(i + 1, len(fam))]
    width = math.sqrt(delta / t)
    out: list[CurvRect] = []
    scores: list[float] = []
    for i, j in idx_pairs:
        f, g = fam.curves[i], fam.curves[j]
        d = c2_distance(f, g, grid_n)
        if not (t <= d <= 6.0 * t):
            continue
        gap = tangency_param(f, g, grid_n)
        if (gap + 10.0 * delta) * d > slack * delta * t:
            continue
        sub = sublevel_intervals(f, g, delta, K, grid_n)
        for iv in sub.intervals:
            centers = _chain_centers(iv, width, f.domain)
            for c in centers:
                try:
                    rect = make_rect(f, c, delta, t)
                except PreconditionError:
                    continue
                covered = rect.I.intersect(iv)
                out.append(rect)
                scores.append(covered.length if covered else 0.0)
    if not out:
        return []
    return greedy_incomparable(out, dedupe_lambda, priority=scores)


def _chain_centers(iv: Interval, width: float, domain: Interval) -> list[float]:
    lo = max(iv.lo, domain.lo + 0.5 * width)
    hi = min(iv.hi, domain.hi - 0.5 * width)
    if hi < lo:
        mid = max(domain.lo + 0.5 * width, min(iv.mid, domain.hi - 0.5 * width))
        return [mid]
    n = max(1, int(math.ceil((hi - lo) / (0.9 * width))) + 1)
    if n == 1:
        return [0.5 * (lo + hi)]
    return list(np.linspace(lo, hi, n))
