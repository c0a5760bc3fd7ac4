"""C2 curves on a compact interval and the concrete families built from them.

A curve is an analytic evaluation closure returning value, first and second
derivative together; nothing in the package differentiates samples.  Sup-type
quantities are approximated on uniform grids, with an optional Lipschitz slack
term for checks that must be one-sided safe.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DomainMismatchError,
    DuplicateCurveError,
    PreconditionError,
    SolverError,
)
from .rng import SplitMix64

DEFAULT_GRID = 4096


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise PreconditionError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def scaled(self, frac: float) -> "Interval":
        """Subinterval with the same midpoint and `frac` of the length."""
        half = 0.5 * frac * self.length
        return Interval(self.mid - half, self.mid + half)

    def half(self) -> "Interval":
        return self.scaled(0.5)

    def quarter(self) -> "Interval":
        return self.scaled(0.25)

    def grid(self, n: int) -> np.ndarray:
        if n < 2:
            raise PreconditionError("grid needs at least 2 points")
        return np.linspace(self.lo, self.hi, n)

    def contains(self, other: "Interval", slack: float = 0.0) -> bool:
        return other.lo >= self.lo - slack and other.hi <= self.hi + slack

    def contains_point(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo < hi else None

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))


# Evaluation closure: theta array -> (f, f', f'') arrays of the same shape.
CurveEval = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True, eq=False)
class C2Curve:
    """A twice-differentiable function carried with both derivatives.

    `smoothness` is a bound L for which the finite-difference consistency
    |(f(t+h)-f(t))/h - f'(t)| <= L*h holds on the domain; constructors set it
    from analytic bounds, user closures should pass their own.
    """

    eval: CurveEval
    domain: Interval
    label: str
    smoothness: float = 100.0

    def __call__(self, theta):
        return self.eval(np.asarray(theta, dtype=float))

    def values(self, theta) -> np.ndarray:
        return self.eval(np.asarray(theta, dtype=float))[0]

    def shifted(self, offset: float, label: str | None = None) -> "C2Curve":
        base = self.eval

        def ev(theta):
            f, fp, fpp = base(theta)
            return f + offset, fp, fpp

        return C2Curve(ev, self.domain, label or f"{self.label}+{offset:.3e}",
                       self.smoothness)


def _require_same_domain(f: C2Curve, g: C2Curve) -> None:
    if f.domain != g.domain:
        raise DomainMismatchError(
            f"curves {f.label!r} and {g.label!r} live on different intervals")


def _pair_grids(f: C2Curve, g: C2Curve, grid_n: int, interval: Interval):
    theta = interval.grid(grid_n)
    return f(theta), g(theta)


def c2_distance(f: C2Curve, g: C2Curve, grid_n: int = DEFAULT_GRID) -> float:
    """Grid approximation of the C2 metric: max of |f-g|+|f'-g'|+|f''-g''|.

    Symmetric, and zero exactly when the curves agree on the grid.
    """
    _require_same_domain(f, g)
    (fv, fp, fpp), (gv, gp, gpp) = _pair_grids(f, g, grid_n, f.domain)
    return float(np.max(np.abs(fv - gv) + np.abs(fp - gp) + np.abs(fpp - gpp)))


def c2_gap_min(f: C2Curve, g: C2Curve, grid_n: int = DEFAULT_GRID) -> float:
    """Grid minimum of |f-g|+|f'-g'|+|f''-g''| (the lower-bound side)."""
    _require_same_domain(f, g)
    (fv, fp, fpp), (gv, gp, gpp) = _pair_grids(f, g, grid_n, f.domain)
    return float(np.min(np.abs(fv - gv) + np.abs(fp - gp) + np.abs(fpp - gpp)))


def tangency_param(f: C2Curve, g: C2Curve, grid_n: int = DEFAULT_GRID) -> float:
    """Minimum of |f-g|+|f'-g'| over the central half of the domain.

    Small values mean the graphs are nearly tangent somewhere in the middle;
    the value never exceeds c2_distance.
    """
    _require_same_domain(f, g)
    (fv, fp, _), (gv, gp, _) = _pair_grids(f, g, grid_n, f.domain.half())
    return float(np.min(np.abs(fv - gv) + np.abs(fp - gp)))


@dataclass
class CurveFamily:
    """Finite set of curves over one interval with estimated metric metadata.

    cinematic_K is 1/defect where defect is the worst pairwise ratio of the
    pointwise-gap minimum to the C2 distance; it is always an estimate, big
    families are scanned on a seeded pair subsample.
    """

    curves: tuple[C2Curve, ...]
    domain: Interval
    cinematic_K: float | None = None
    diameter: float | None = None
    min_separation: float | None = None
    kind: str = "custom"
    params: tuple = ()
    _defect: float | None = field(default=None, repr=False)

    def __post_init__(self):
        self.curves = tuple(self.curves)
        for c in self.curves:
            if c.domain != self.domain:
                raise DomainMismatchError("all family members must share the domain")

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __getitem__(self, i):
        return self.curves[i]

    def analyze(self, grid_n: int = 512, max_pairs: int = 2000, seed: int = 7):
        """Fill cinematic_K / diameter / min_separation estimates in place."""
        n = len(self.curves)
        if n < 2:
            self.diameter = 0.0
            self.min_separation = 0.0
            return self
        pairs = _pair_sample(n, max_pairs, seed)
        dmax, dmin, defect = 0.0, math.inf, math.inf
        theta = self.domain.grid(grid_n)
        theta_half = self.domain.half().grid(grid_n)
        vals = [c(theta) for c in self.curves]
        for i, j in pairs:
            (fv, fp, fpp), (gv, gp, gpp) = vals[i], vals[j]
            s = np.abs(fv - gv) + np.abs(fp - gp) + np.abs(fpp - gpp)
            d = float(np.max(s))
            if d == 0.0:
                raise DuplicateCurveError(
                    f"curves {self.curves[i].label!r} and {self.curves[j].label!r} coincide")
            dmax = max(dmax, d)
            dmin = min(dmin, d)
            defect = min(defect, float(np.min(s)) / d)
        self.diameter = dmax
        self.min_separation = dmin
        self._defect = defect
        self.cinematic_K = math.inf if defect == 0.0 else 1.0 / defect
        return self

    def defect(self, grid_n: int = 512, max_pairs: int = 2000) -> float:
        if self._defect is None:
            self.analyze(grid_n=grid_n, max_pairs=max_pairs)
        return self._defect

    def estimated_K(self) -> float:
        if self.cinematic_K is None:
            self.analyze()
        return self.cinematic_K

    def dedupe(self, delta: float, grid_n: int = 512) -> "CurveFamily":
        """Drop curves closer than `delta` to an already-kept one."""
        kept: list[C2Curve] = []
        for c in self.curves:
            if all(c2_distance(c, k, grid_n) >= delta for k in kept):
                kept.append(c)
        return CurveFamily(tuple(kept), self.domain, kind=self.kind,
                           params=self.params)

    def pairs(self):
        n = len(self.curves)
        for i in range(n):
            for j in range(i + 1, n):
                yield self.curves[i], self.curves[j]


def _pair_sample(n: int, max_pairs: int, seed: int):
    total = n * (n - 1) // 2
    if total <= max_pairs:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng = SplitMix64(seed)
    seen = set()
    while len(seen) < max_pairs:
        i = rng.randint(n)
        j = rng.randint(n)
        if i != j:
            seen.add((min(i, j), max(i, j)))
    return sorted(seen)


def cinematic_defect(fam: CurveFamily, grid_n: int = DEFAULT_GRID) -> float:
    """Worst pairwise ratio (grid min of the gap sum) / (C2 distance).

    The family is cinematic with constant K exactly when the result is >= 1/K.
    Exact over all pairs; raises on duplicate curves.
    """
    if len(fam) < 2:
        raise PreconditionError("need at least two curves")
    theta = fam.domain.grid(grid_n)
    vals = [c(theta) for c in fam.curves]
    worst = math.inf
    for i in range(len(fam)):
        fv, fp, fpp = vals[i]
        for j in range(i + 1, len(fam)):
            gv, gp, gpp = vals[j]
            s = np.abs(fv - gv) + np.abs(fp - gp) + np.abs(fpp - gpp)
            d = float(np.max(s))
            if d == 0.0:
                raise DuplicateCurveError(
                    f"curves {fam.curves[i].label!r} and {fam.curves[j].label!r} coincide")
            worst = min(worst, float(np.min(s)) / d)
    return worst


def dichotomy_holds(f: C2Curve, g: C2Curve, kappa: float, sub: Interval,
                    grid_n: int = 256, slack: bool = True) -> bool:
    """Small/large dichotomy on a subinterval.

    Each of f-g, f'-g', f''-g'' must either stay below kappa*d everywhere or
    above kappa*d/2 everywhere on `sub` (d = C2 distance over the full domain).
    With `slack` the grid extrema are padded by L*h so the check is one-sided
    safe.
    """
    d = c2_distance(f, g)
    if d == 0.0:
        return True
    theta = sub.grid(grid_n)
    h = sub.length / (grid_n - 1)
    pad = (f.smoothness + g.smoothness) * h if slack else 0.0
    (fv, fp, fpp), (gv, gp, gpp) = f(theta), g(theta)
    for k in (np.abs(fv - gv), np.abs(fp - gp), np.abs(fpp - gpp)):
        small = float(np.max(k)) + pad < kappa * d
        large = float(np.min(k)) - pad >= 0.5 * kappa * d
        if not (small or large):
            return False
    return True


def dichotomy_length(fam: CurveFamily, kappa: float, grid_n: int = 256,
                     max_pairs: int = 50, seed: int = 3, iters: int = 20) -> float:
    """Bisection for the longest subinterval length on which the dichotomy
    holds for all sampled pairs at every aligned placement."""
    pairs = _pair_sample(len(fam), max_pairs, seed)
    J = fam.domain

    def ok(lam: float) -> bool:
        k = max(1, int(math.ceil(J.length / lam)))
        for i, j in pairs:
            f, g = fam.curves[i], fam.curves[j]
            for m in range(k):
                lo = J.lo + m * lam
                hi = min(lo + lam, J.hi)
                if hi - lo < 1e-12:
                    continue
                if not dichotomy_holds(f, g, kappa, Interval(lo, hi), grid_n):
                    return False
        return True

    lo, hi = 0.0, J.length
    if ok(hi):
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= 0:
            break
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# concrete constructors


def circle_curve(center: Sequence[float], radius: float, domain: Interval,
                 label: str | None = None) -> C2Curve:
    """Upper half of the circle with the given center and radius, as a graph."""
    a, b = float(center[0]), float(center[1])
    r = float(radius)
    for endpoint in (domain.lo, domain.hi):
        if r * r - (endpoint - a) ** 2 <= 0.0:
            raise DomainMismatchError(
                f"circle (center=({a},{b}), r={r}) leaves the vertical strip over "
                f"[{domain.lo}, {domain.hi}]")

    def ev(theta):
        u = theta - a
        w = r * r - u * u
        s = np.sqrt(w)
        return b + s, -u / s, -(r * r) / (w * s)

    # |f''| <= r^2 / (r^2-u^2)^{3/2} at the endpoints gives the FD constant
    umax = max(abs(domain.lo - a), abs(domain.hi - a))
    l_bound = 0.5 * r * r / (r * r - umax * umax) ** 1.5 * 4.0
    return C2Curve(ev, domain, label or f"circle({a:.4g},{b:.4g},{r:.4g})",
                   smoothness=l_bound)


def circle_family(centers: Sequence[Sequence[float]], radii: Sequence[float],
                  J: Interval, analyze: bool = True) -> CurveFamily:
    """Family of upper circle arcs; the classical concrete cinematic family.

    Radii must lie in [1, 2], centers within 0.1 of the origin, and J inside
    [-1/2, 1/2]; under these constraints every arc is defined on all of J.
    """
    if len(centers) != len(radii):
        raise PreconditionError("need one radius per center")
    if not (J.lo >= -0.5 - 1e-12 and J.hi <= 0.5 + 1e-12):
        raise PreconditionError("domain must sit inside [-1/2, 1/2]")
    curves = []
    for i, (c, r) in enumerate(zip(centers, radii)):
        if not (1.0 - 1e-12 <= r <= 2.0 + 1e-12):
            raise PreconditionError(f"radius {r} outside [1, 2]")
        if math.hypot(c[0], c[1]) > 0.1 + 1e-12:
            raise PreconditionError(f"center {tuple(c)} farther than 0.1 from origin")
        curves.append(circle_curve(c, r, J, label=f"c{i}"))
    fam = CurveFamily(tuple(curves), J, kind="circle",
                      params=tuple((float(c[0]), float(c[1]), float(r))
                                   for c, r in zip(centers, radii)))
    if analyze and len(curves) >= 2:
        fam.analyze()
    return fam


@dataclass(frozen=True, eq=False)
class SpaceCurve:
    """Unit-sphere curve with first and second derivative closures."""

    gamma: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]
    domain: Interval
    label: str = "gamma"

    def __post_init__(self):
        g, _, _ = self.gamma(self.domain.grid(64))
        norms = np.linalg.norm(g, axis=0)
        if np.max(np.abs(norms - 1.0)) > 1e-9:
            raise PreconditionError("space curve must stay on the unit sphere")

    def __call__(self, theta):
        return self.gamma(np.asarray(theta, dtype=float))


def helix_circle_curve(domain: Interval = Interval(0.0, 2.0 * math.pi)) -> SpaceCurve:
    """The standard full-span example: (cos t, sin t, 1)/sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)

    def ev(theta):
        z = np.zeros_like(theta)
        g = np.stack([np.cos(theta) * s, np.sin(theta) * s, np.full_like(theta, s)])
        dg = np.stack([-np.sin(theta) * s, np.cos(theta) * s, z])
        ddg = np.stack([-np.cos(theta) * s, -np.sin(theta) * s, z])
        return g, dg, ddg

    return SpaceCurve(ev, domain, "helix-circle")


def planar_circle_curve(domain: Interval = Interval(0.0, 2.0 * math.pi)) -> SpaceCurve:
    """Degenerate control: the flat equator, which spans only a plane."""

    def ev(theta):
        z = np.zeros_like(theta)
        g = np.stack([np.cos(theta), np.sin(theta), z])
        dg = np.stack([-np.sin(theta), np.cos(theta), z])
        ddg = np.stack([-np.cos(theta), -np.sin(theta), z])
        return g, dg, ddg

    return SpaceCurve(ev, domain, "planar")


def escaping_check(gamma: SpaceCurve, grid_n: int = DEFAULT_GRID) -> float:
    """Minimum over a grid of |det[gamma, gamma', gamma'']|.

    Positive values certify, at grid resolution, that the curve together with
    its first two derivatives spans all of R^3 everywhere.
    """
    g, dg, ddg = gamma(gamma.domain.grid(grid_n))
    mats = np.stack([g, dg, ddg], axis=1)      # (3, 3, n)
    dets = np.abs(np.linalg.det(np.moveaxis(mats, 2, 0)))
    return float(np.min(dets))


def projection_family(gamma: SpaceCurve, Z: Sequence[Sequence[float]],
                      analyze: bool = True) -> CurveFamily:
    """Curves theta -> gamma(theta) . z for each direction-weighted point z."""
    zs = np.asarray(Z, dtype=float)
    if zs.ndim != 2 or zs.shape[1] != 3:
        raise PreconditionError("Z must be a list of 3-vectors")
    if np.any(np.linalg.norm(zs, axis=1) > 1.0 + 1e-12):
        raise PreconditionError("points must lie in the closed unit ball")
    g, dg, ddg = gamma(gamma.domain.grid(256))
    l_bound = float(np.max(np.linalg.norm(ddg, axis=0)))

    curves = []
    for i, z in enumerate(zs):
        zz = z.copy()

        def ev(theta, zz=zz):
            g, dg, ddg = gamma(theta)
            return (np.tensordot(zz, g, axes=1), np.tensordot(zz, dg, axes=1),
                    np.tensordot(zz, ddg, axes=1))

        curves.append(C2Curve(ev, gamma.domain, label=f"z{i}", smoothness=l_bound))
    fam = CurveFamily(tuple(curves), gamma.domain, kind="projection",
                      params=tuple(map(tuple, zs.tolist())))
    if analyze and len(curves) >= 2:
        fam.analyze()
    return fam


# ---------------------------------------------------------------------------
# implicit families from a defining function

# Defining-function protocol: Phi(x1, x2, y1, y2) -> (value, grad, hess)
# where grad[k] and hess[k][l] follow the variable order (x1, x2, y1, y2)
# and every entry broadcasts against array-valued x1/x2.
DefiningFunction = Callable[..., tuple]


def _newton_level(Phi: DefiningFunction, x1: np.ndarray, y1: float, y2: float,
                  r: float, tol: float, max_steps: int = 50) -> np.ndarray:
    x2 = np.full_like(x1, r, dtype=float)
    for _ in range(max_steps):
        val, grad, _ = Phi(x1, x2, y1, y2)
        res = val - r
        if np.max(np.abs(res)) <= tol:
            return x2
        p2 = grad[1]
        if np.min(np.abs(p2)) < 1e-12:
            raise SolverError("vertical-derivative of the defining function vanished")
        x2 = x2 - res / p2
    val, _, _ = Phi(x1, x2, y1, y2)
    if np.max(np.abs(val - r)) > tol:
        raise SolverError(f"Newton did not reach |Phi - r| <= {tol} in {max_steps} steps")
    return x2


def _implicit_second_derivative(grad, hess):
    p1, p2 = grad[0], grad[1]
    p11, p12, p22 = hess[0][0], hess[0][1], hess[1][1]
    return -(p11 * p2 * p2 - 2.0 * p12 * p1 * p2 + p22 * p1 * p1) / p2**3


def family_from_defining_function(
    Phi: DefiningFunction,
    Y: Sequence[Sequence[float]],
    R: Sequence[float],
    I: Interval,
    newton_tol: float = 1e-12,
    det_threshold: float = 1e-3,
    analyze: bool = True,
) -> tuple[CurveFamily, float]:
    """Solve Phi(x1, x2, y) = r for x2 over I for every (y, r) combination.

    Returns the resulting family together with the minimum over the working
    box of the 2x2 determinant d/dy (Phi_x1, Phi_x1x1/|grad_x Phi|); a small
    determinant means the family may fail the pairwise separation law, and a
    warning is emitted.

    The vertical derivative must satisfy 1/2 <= |d Phi / d x2| <= 2 on the box
    (magnitude: either orientation of the level sets is accepted).
    """
    curves = []
    params = []
    sample = I.grid(33)
    for (y1, y2) in Y:
        for r in R:
            x2s = _newton_level(Phi, sample, y1, y2, r, newton_tol)
            _, grad, _ = Phi(sample, x2s, y1, y2)
            mag = np.abs(grad[1])
            if np.min(mag) < 0.5 - 1e-9 or np.max(mag) > 2.0 + 1e-9:
                raise PreconditionError(
                    "|d Phi / d x2| must stay within [1/2, 2] on the working box")

            def ev(theta, y1=y1, y2=y2, r=r):
                x2 = _newton_level(Phi, theta, y1, y2, r, newton_tol)
                _, grad, hess = Phi(theta, x2, y1, y2)
                fp = -grad[0] / grad[1]
                fpp = _implicit_second_derivative(grad, hess)
                return x2, fp, fpp

            curves.append(C2Curve(ev, I, label=f"phi({y1:.4g},{y2:.4g},{r:.4g})"))
            params.append((float(y1), float(y2), float(r)))

    det_min = _min_cinematic_determinant(Phi, curves, params, I)
    if det_min < det_threshold:
        warnings.warn(
            f"defining-function determinant {det_min:.3e} below {det_threshold}; "
            "the family may not be cinematic", stacklevel=2)
    fam = CurveFamily(tuple(curves), I, kind="implicit", params=tuple(params))
    if analyze and len(curves) >= 2:
        fam.analyze()
    return fam, det_min


def _min_cinematic_determinant(Phi, curves, params, I, fd_step: float = 1e-5):
    """Min |det d/dy (Phi_1, Phi_11/|grad_x|)| sampled along the solved curves.

    The y-derivatives are central differences of analytically supplied
    gradient/Hessian entries; only third derivatives of Phi are approximated.
    """
    sample = I.grid(9)
    det_min = math.inf
    for curve, (y1, y2, _r) in zip(curves, params):
        x2 = curve(sample)[0]

        def vec(y1v, y2v):
            _, grad, hess = Phi(sample, x2, y1v, y2v)
            norm = np.sqrt(grad[0] ** 2 + grad[1] ** 2)
            return np.stack([grad[0], hess[0][0] / norm])

        d_y1 = (vec(y1 + fd_step, y2) - vec(y1 - fd_step, y2)) / (2 * fd_step)
        d_y2 = (vec(y1, y2 + fd_step) - vec(y1, y2 - fd_step)) / (2 * fd_step)
        dets = d_y1[0] * d_y2[1] - d_y1[1] * d_y2[0]
        det_min = min(det_min, float(np.min(np.abs(dets))))
    return det_min


def circle_defining_function(x1, x2, y1, y2):
    """Phi = sqrt((x1-y1)^2 + (x2-(1+y2))^2) - 1: level r is the circle of
    radius 1+r around (y1, 1+y2); graphs come out as the lower arcs."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    u = x1 - y1
    v = x2 - (1.0 + y2)
    d = np.sqrt(u * u + v * v)
    val = d - 1.0
    # first derivatives
    p1, p2 = u / d, v / d
    py1, py2 = -u / d, -v / d
    # second derivatives of the distance function
    d3 = d**3
    p11 = v * v / d3
    p22 = u * u / d3
    p12 = -u * v / d3
    grad = (p1, p2, py1, py2)
    hess = (
        (p11, p12, -p11, -p12),
        (p12, p22, -p12, -p22),
        (-p11, -p12, p11, p12),
        (-p12, -p22, p12, p22),
    )
    return val, grad, hess


def parabola_defining_function(x1, x2, y1, y2):
    """Phi = x2 - y2 - (x1-y1)^2: levels are translated parabolas."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    u = x1 - y1
    val = x2 - y2 - u * u
    one = np.ones_like(val)
    zero = np.zeros_like(val)
    grad = (-2.0 * u, one, 2.0 * u, -one)
    hess = (
        (-2.0 * one, zero, 2.0 * one, zero),
        (zero, zero, zero, zero),
        (2.0 * one, zero, -2.0 * one, zero),
        (zero, zero, zero, zero),
    )
    return val, grad, hess


def separation_law_constant(fam: CurveFamily, grid_n: int = 256) -> float:
    """Fitted epsilon: min over pairs of (pointwise gap sum min) / |param gap|.

    Parameters are the (y1, y2, r) triples recorded by the implicit
    constructor; positive output certifies the separation law on the family.
    """
    if fam.kind != "implicit":
        raise PreconditionError("separation law applies to implicit families")
    theta = fam.domain.grid(grid_n)
    vals = [c(theta) for c in fam.curves]
    pts = np.asarray(fam.params)
    eps = math.inf
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            gap = np.linalg.norm(pts[i] - pts[j])
            if gap == 0.0:
                continue
            (fv, fp, fpp), (gv, gp, gpp) = vals[i], vals[j]
            s = np.abs(fv - gv) + np.abs(fp - gp) + np.abs(fpp - gpp)
            eps = min(eps, float(np.min(s)) / gap)
    return eps
