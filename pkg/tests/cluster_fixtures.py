"""Deterministic rectangle clusters inside one (lam*delta, t)-rectangle.

The lattice staggers offset (steps of 100*delta) against slope (steps of
200*sqrt(delta*t)) at a few widely separated positions; any two distinct
members then differ by more than 99*delta at an endpoint of a shared slot or
have hulls longer than the 100-comparability width, so the cluster is
pairwise 100-incomparable by construction.  Cluster sizes follow
round(1e-5 * lam^{5/2}) so the measured constant against the lam^{5/2} cap is
the same at every lam.
"""

from __future__ import annotations

import math

import numpy as np

from cinegeom.curves import C2Curve, Interval
from cinegeom.rectangles import CurvRect, make_rect

CLUSTER_T = 0.25
CLUSTER_DELTA = CLUSTER_T * 2.0**-28
CLUSTER_KAPPA = 1e-5          # target N(lam) = round(kappa * lam^{5/2})
DOMAIN = Interval(-0.5, 0.5)


def _line(value: float, slope: float, pivot: float, label: str) -> C2Curve:
    def ev(theta):
        return (value + slope * (theta - pivot),
                np.full_like(theta, slope),
                np.zeros_like(theta))
    return C2Curve(ev, DOMAIN, label, smoothness=0.0)


def cluster_size(lam: float) -> int:
    return max(1, round(CLUSTER_KAPPA * lam**2.5))


def incomparable_cluster(lam: float) -> tuple[list[CurvRect], CurvRect]:
    """(cluster, containing rectangle) at comparability level 100."""
    delta, t = CLUSTER_DELTA, CLUSTER_T
    L = math.sqrt(delta / t)
    g_c = 100.0 * delta
    g_s = 200.0 * math.sqrt(delta * t)
    big_width = math.sqrt(lam * delta / t)
    n_slots = max(1, int((big_width - L) // (10.5 * L)) + 1)
    if n_slots == 1:
        slots = [0.0]
    else:
        span = big_width - L
        slots = list(np.linspace(-span / 2.0, span / 2.0, n_slots))
    budget = int((lam - 1.0) // 100)
    per_slot = sorted(
        ((abs(i) + abs(j), i, j)
         for i in range(-budget, budget + 1)
         for j in range(-budget, budget + 1)
         if abs(i) + abs(j) <= budget),
    )
    target = cluster_size(lam)
    capacity = n_slots * len(per_slot)
    if target > capacity:
        raise ValueError(f"lattice capacity {capacity} below target {target}")
    quota = [target // n_slots] * n_slots
    for k in range(target - sum(quota)):
        quota[k] += 1
    rects = []
    for s, (theta_p, q) in enumerate(zip(slots, quota)):
        for (_, i, j) in per_slot[:q]:
            curve = _line(i * g_c, j * g_s, theta_p, f"s{s}i{i}j{j}")
            rects.append(make_rect(curve, theta_p, delta, t))
    base = _line(0.0, 0.0, 0.0, "base")
    big = make_rect(base, 0.0, lam * delta, t)        # interval sqrt(lam*d/t)
    return rects, big
