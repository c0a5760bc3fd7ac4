#!/usr/bin/env python3
"""Recompute the fitted constants frozen in the test suite.

Prints the observed ranges for: the sublevel measure law, the root-spread
law, the shared-rectangle product law, and the per-scale cluster constant.
Run this after touching the geometry kernels to confirm the frozen brackets
still hold.
"""

import math
import sys

import numpy as np

sys.path.insert(0, "tests")

from cinegeom.curves import c2_distance, tangency_param
from cinegeom.incidence import sublevel_intervals, zeros_of_difference
from cinegeom.rng import SplitMix64
from conftest import near_tangent_pair
from cluster_fixtures import incomparable_cluster


def main() -> int:
    rng = SplitMix64(20260810)
    K = 10.0
    hi, lo = 0.0, math.inf
    spread = 0.0
    for _ in range(1000):
        f, g = near_tangent_pair(rng, depth_lo=-7.0, depth_hi=-0.7)
        D = tangency_param(f, g, 4096)
        t = c2_distance(f, g, 4096)
        delta = t / (6.0 * K) * 10.0 ** (-2.0 * rng.uniform())
        S = sublevel_intervals(f, g, delta, K, 4096)
        if S.measure:
            scale = math.sqrt((D + delta) * t) / delta
            hi = max(hi, S.measure * scale)
            th = np.linspace(-0.125, 0.125, 2048)
            habs = np.abs(f.values(th) - g.values(th))
            if habs.min() <= delta / 2.0:
                deep = th[int(np.argmin(habs))]
                holder = [iv for iv in S.intervals
                          if iv.lo - 1e-9 <= deep <= iv.hi + 1e-9]
                if holder:
                    lo = min(lo, holder[0].length * scale)
        roots = zeros_of_difference(f, g, 1e-13)
        if len(roots) == 2 and D > 0:
            spread = max(spread, max(abs(r) for r, _ in roots) / math.sqrt(D / t))
    print(f"sublevel measure * sqrt((D+d)t)/d : max {hi:.4f}   (frozen cap 12)")
    print(f"deep-interval length * same scale : min {lo:.4f}   (frozen floor 0.4)")
    print(f"root offset / sqrt(D/t)           : max {spread:.4f} (frozen cap 3)")
    for lam in (100.0, 400.0, 1600.0):
        rects, _ = incomparable_cluster(lam)
        print(f"cluster constant at lam={lam:6.0f}   : {len(rects) / lam**2.5:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
