"""Pseudo-circle extension of curve graphs, proper-intersection certification,
tangency-clearing perturbation, strip-lens enumeration, overlap, and maximal
non-overlapping selection.

Each graph is closed into a Jordan curve by flat extensions at both ends, two
verticals, and a bottom segment, staggered by the rank of the left endpoint
value so that frames of distinct curves never meet outside the strip.  Two
extended curves then intersect exactly at their strip crossings (plus at most
one frame crossing when the endpoint order swaps, which never creates a lens
inside the strip).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .curves import C2Curve, CurveFamily
from .errors import CinematicViolationError, PreconditionError, SolverError
from .incidence import zeros_of_difference
from .rng import SplitMix64


@dataclass(frozen=True, eq=False)
class PseudoCircle:
    """Closed loop: the graph over the strip plus a staggered frame."""

    source: str
    graph_part: C2Curve
    frame_index: int          # 1-based rank in increasing left endpoint value
    stagger: float = 1.0
    depth: float = 0.0        # y-level of the bottom segment

    def polyline(self, graph_n: int = 256) -> np.ndarray:
        """Vertex list tracing the loop counterclockwise, for plotting dumps."""
        J = self.graph_part.domain
        off = self.frame_index * self.stagger
        theta = J.grid(graph_n)
        ys = self.graph_part.values(theta)
        fa, fb = float(ys[0]), float(ys[-1])
        pts = [(J.lo - off, self.depth), (J.lo - off, fa), (J.lo, fa)]
        pts += list(zip(theta.tolist(), ys.tolist()))
        pts += [(J.hi + off, fb), (J.hi + off, self.depth), (J.lo - off, self.depth)]
        return np.asarray(pts)


def extend_to_pseudocircles(fam: CurveFamily, stagger: float = 1.0,
                            margin: float = 1.0,
                            grid_n: int = 512) -> list[PseudoCircle]:
    """Close every graph into a staggered Jordan loop.

    Left endpoint values must be pairwise distinct (and likewise right ones);
    run `perturb` first if they are not.
    """
    J = fam.domain
    alphas = [float(c.values(np.array([J.lo]))[0]) for c in fam.curves]
    betas = [float(c.values(np.array([J.hi]))[0]) for c in fam.curves]
    if len(set(alphas)) != len(alphas) or len(set(betas)) != len(betas):
        raise PreconditionError(
            "endpoint values must be pairwise distinct; apply perturb() first")
    big = max(float(np.max(np.abs(c.values(J.grid(grid_n))))) for c in fam.curves)
    depth = -big - margin
    order = np.argsort(alphas)
    ranks = np.empty(len(fam), dtype=int)
    ranks[order] = np.arange(1, len(fam) + 1)
    return [
        PseudoCircle(c.label, c, int(ranks[i]), stagger, depth - ranks[i] * stagger)
        for i, c in enumerate(fam.curves)
    ]


@dataclass
class ProperReport:
    certified: bool
    improper_pairs: list[tuple[str, str, float]]   # labels + offending theta
    min_margin: float                              # worst transversality seen


def _refine_tangency_margin(f: C2Curve, g: C2Curve, lo: float, hi: float,
                            iters: int = 40) -> tuple[float, float]:
    """Golden-section minimization of |f-g| + |f'-g'| on [lo, hi]."""

    def score(x):
        fv, fp, _ = f(np.array([x]))
        gv, gp, _ = g(np.array([x]))
        return float(abs(fv[0] - gv[0]) + abs(fp[0] - gp[0]))

    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = score(c), score(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = score(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = score(d)
    x = 0.5 * (a + b)
    return x, score(x)


def certify_proper(fam: CurveFamily, tol: float,
                   grid_n: int = 2048) -> ProperReport:
    """Certify that every pairwise crossing is transversal.

    A pair is flagged when |f-g| + |f'-g'| dips to `tol` anywhere on the
    domain (covering both tangential crossings and grazing without crossing).
    Grid minima that could plausibly dip below tol are sharpened by local
    golden-section refinement, so exact tangencies between grid nodes are
    still caught.  Disjoint pairs are vacuously proper.
    """
    theta = fam.domain.grid(grid_n)
    step = fam.domain.length / (grid_n - 1)
    vals = [c(theta) for c in fam.curves]
    improper: list[tuple[str, str, float]] = []
    min_margin = math.inf
    for i in range(len(fam)):
        fv, fp, fpp = vals[i]
        for j in range(i + 1, len(fam)):
            gv, gp, gpp = vals[j]
            h = np.abs(fv - gv)
            crossing = bool(np.min(fv - gv) < 0.0 < np.max(fv - gv)) or bool(np.any(h == 0.0))
            score = h + np.abs(fp - gp)
            m = int(np.argmin(score))
            margin = float(score[m])
            at = float(theta[m])
            # score can dip by at most its local Lipschitz bound within a step
            lip = float(np.max(np.abs(fp - gp)[max(0, m - 1):m + 2])
                        + np.max(np.abs(fpp - gpp)[max(0, m - 1):m + 2]))
            if margin - lip * step <= tol < margin:
                lo = max(fam.domain.lo, at - step)
                hi = min(fam.domain.hi, at + step)
                at, margin = _refine_tangency_margin(fam.curves[i], fam.curves[j], lo, hi)
            if crossing or margin <= tol:
                min_margin = min(min_margin, margin)
            if margin <= tol:
                improper.append((fam.curves[i].label, fam.curves[j].label, at))
    return ProperReport(not improper, improper, min_margin)


def perturb(fam: CurveFamily, delta: float, lam: float = 5.0, seed: int = 0,
            tol: float | None = None, grid_n: int = 2048,
            max_rounds: int = 3) -> CurveFamily:
    """Vertical shifts by eta*lam*delta plus an infinitesimal seeded jitter so
    that all crossings become proper and endpoint values distinct.

    eta is 0 for curves whose flagged partners already change sign; one-signed
    grazing pairs push the earlier curve off by -lam*delta (when f >= g) or
    +lam*delta.  Jitter is bounded by delta*1e-6 so fitted constants are
    unaffected at reporting precision; the cinematic defect degrades by at
    most a factor ~2 for pairs separated by >= 2*lam*delta.
    """
    if tol is None:
        tol = delta
    rng = SplitMix64(seed)
    theta = fam.domain.grid(grid_n)
    vals = [c(theta) for c in fam.curves]
    eta = [0] * len(fam)
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            fv, gv = vals[i][0], vals[j][0]
            h = fv - gv
            changes_sign = bool(np.min(h) < 0.0 < np.max(h))
            if changes_sign:
                continue
            if float(np.min(np.abs(h))) > lam * delta:
                continue                      # safely separated, nothing to clear
            want = -1 if np.all(h >= 0.0) else 1
            if eta[i] == 0:
                eta[i] = want
            elif eta[i] != want and eta[j] == 0:
                eta[j] = -want

    base_shift = [e * lam * delta for e in eta]
    for round_ in range(max_rounds):
        shifts = [s + (rng.uniform() - 0.5) * 2.0 * delta * 1e-6 for s in base_shift]
        curves = tuple(c.shifted(s, label=c.label) for c, s in zip(fam.curves, shifts))
        out = CurveFamily(curves, fam.domain, kind=fam.kind, params=fam.params)
        report = certify_proper(out, tol=delta * 1e-9, grid_n=grid_n)
        endpoints_ok = True
        for end in (fam.domain.lo, fam.domain.hi):
            vs = [float(c.values(np.array([end]))[0]) for c in curves]
            if len(set(vs)) != len(vs):
                endpoints_ok = False
        if report.certified and endpoints_ok:
            return out
    raise SolverError(f"could not clear tangencies in {max_rounds} jitter rounds")


@dataclass(frozen=True)
class Lens:
    """The unique strip lens of a twice-crossing pair: two graph arcs over
    [theta1, theta2] meeting at the crossing points."""

    pair: tuple[str, str]
    roots: tuple[float, float]

    @property
    def span(self) -> float:
        return self.roots[1] - self.roots[0]

    def arc(self, curve: C2Curve, n: int = 64) -> np.ndarray:
        """Sampled polyline of this lens along one of its parent curves."""
        if curve.label not in self.pair:
            raise PreconditionError(f"curve {curve.label!r} is not a parent")
        theta = np.linspace(self.roots[0], self.roots[1], n)
        return np.stack([theta, curve.values(theta)], axis=1)


def enumerate_lenses(circles: list[PseudoCircle], tol: float = 1e-12,
                     grid_n: int = 2048) -> list[Lens]:
    """One lens per pair of extended curves crossing exactly twice in the
    strip; pairs with zero or one strip crossing contribute nothing.

    First-generation only.  A pair with more than two crossings raises
    CinematicViolationError.  Curve values are shared on one bracketing grid
    so the pairwise scan stays cheap; only twice-crossing pairs pay for root
    refinement.
    """
    if not circles:
        return []
    J = circles[0].graph_part.domain
    theta = J.grid(grid_n)
    vals = [pc.graph_part.values(theta) for pc in circles]
    out: list[Lens] = []
    for (ia, a), (ib, b) in itertools.combinations(enumerate(circles), 2):
        h = vals[ia] - vals[ib]
        s = np.sign(h)
        nz = np.nonzero(s)[0]
        adjacent = np.diff(nz) == 1 if len(nz) > 1 else np.array([], dtype=bool)
        flips = s[nz[:-1]] * s[nz[1:]] < 0 if len(nz) > 1 else np.array([], dtype=bool)
        changes = int(np.sum(adjacent & flips)) + int(np.count_nonzero(h == 0.0))
        if changes > 2:
            raise CinematicViolationError(
                f"difference of {a.source!r} and {b.source!r} has {changes} zeros")
        if changes != 2:
            continue
        roots = zeros_of_difference(a.graph_part, b.graph_part, tol, grid_n)
        if len(roots) == 2:
            out.append(Lens((a.source, b.source), (roots[0][0], roots[1][0])))
    return out


def overlap(l1: Lens, l2: Lens) -> bool:
    """Two lenses overlap when they run along a common curve over parameter
    intervals meeting in positive length; endpoint touching does not count."""
    common = set(l1.pair) & set(l2.pair)
    if not common:
        return False
    if set(l1.pair) == set(l2.pair):
        lo = max(l1.roots[0], l2.roots[0])
        hi = min(l1.roots[1], l2.roots[1])
        return hi > lo or l1.roots == l2.roots
    lo = max(l1.roots[0], l2.roots[0])
    hi = min(l1.roots[1], l2.roots[1])
    return hi - lo > 0.0


def max_nonoverlapping(lenses: list[Lens],
                       strategy: str = "greedy-by-span") -> list[Lens]:
    """Pairwise non-overlapping sublist.

    'greedy-by-span' treats the problem as interval scheduling per curve:
    lenses sorted by increasing span, kept when compatible with everything
    already kept.  'exhaustive' (inputs of at most 20) finds a maximum
    independent set and serves as the greedy's oracle.
    """
    if strategy == "exhaustive":
        if len(lenses) > 20:
            raise PreconditionError("exhaustive strategy is limited to 20 lenses")
        return _mis_exhaustive(lenses)
    if strategy != "greedy-by-span":
        raise PreconditionError(f"unknown strategy {strategy!r}")
    order = sorted(range(len(lenses)),
                   key=lambda i: (lenses[i].span, lenses[i].pair))
    kept: list[Lens] = []
    by_curve: dict[str, list[tuple[float, float]]] = {}
    for i in order:
        cand = lenses[i]
        good = True
        for label in cand.pair:
            for (lo, hi) in by_curve.get(label, ()):  # positive-length meets only
                if min(hi, cand.roots[1]) - max(lo, cand.roots[0]) > 0.0:
                    good = False
                    break
            if not good:
                break
        if good:
            kept.append(cand)
            for label in cand.pair:
                by_curve.setdefault(label, []).append(cand.roots)
    return kept


def _mis_exhaustive(lenses: list[Lens]) -> list[Lens]:
    n = len(lenses)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if overlap(lenses[i], lenses[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i

    best: list[int] = []

    def rec(avail: int, cur: list[int]):
        nonlocal best
        if not avail:
            if len(cur) > len(best):
                best = list(cur)
            return
        if len(cur) + bin(avail).count("1") <= len(best):
            return
        v = (avail & -avail).bit_length() - 1
        rec(avail & ~(1 << v) & ~adj[v], cur + [v])    # take v
        rec(avail & ~(1 << v), cur)                    # skip v
    rec((1 << n) - 1, [])
    return [lenses[i] for i in best]
