"""Discrete fractal sets: dyadic-cell subsets of [0,1], fibered products, and
Frostman-regular point clouds in the unit ball.

All scales are negative powers of two so cell membership is exact integer
arithmetic.  Validation is restricted to dyadic intervals / grid-centered
balls; a general interval or ball is covered by boundedly many of those, so
the constants differ only by a bounded factor from the continuum conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FrostmanError, PreconditionError
from .rng import SplitMix64


def dyadic_level(delta: float) -> int:
    """k with delta = 2^-k, or raise."""
    k = round(-math.log2(delta))
    if k < 0 or abs(delta - 2.0**-k) > 1e-12 * delta:
        raise PreconditionError(f"scale {delta} is not a negative power of 2")
    return k


@dataclass
class DeltaSet:
    """Union of length-delta dyadic cells of [0,1] claiming a non-concentration
    exponent alpha with constant C."""

    delta: float
    cells: np.ndarray          # sorted unique int64 cell indices
    alpha: float
    C: float

    def __post_init__(self):
        self.cells = np.unique(np.asarray(self.cells, dtype=np.int64))
        k = dyadic_level(self.delta)
        if len(self.cells) and (self.cells[0] < 0 or self.cells[-1] >= 2**k):
            raise PreconditionError("cells must index [0,1)")

    @property
    def level(self) -> int:
        return dyadic_level(self.delta)

    @property
    def measure(self) -> float:
        return self.delta * len(self.cells)

    def __len__(self):
        return len(self.cells)

    def membership(self) -> np.ndarray:
        """Dense boolean mask over all 2^k cells."""
        mask = np.zeros(2**self.level, dtype=bool)
        mask[self.cells] = True
        return mask

    def contains_value(self, x) -> np.ndarray:
        idx = np.floor(np.asarray(x, dtype=float) / self.delta).astype(np.int64)
        ok = (idx >= 0) & (idx < 2**self.level)
        out = np.zeros_like(ok)
        out[ok] = np.isin(idx[ok], self.cells)
        return out


def validate_delta_set(E: DeltaSet) -> tuple[bool, tuple[tuple[float, float], float]]:
    """Check |E ∩ I| <= C delta^{1-alpha} |I|^alpha over every dyadic I ⊇ a cell.

    Intervals shorter than delta hold automatically, so scanning levels
    0..level is sufficient.  Returns (passed, (worst interval, worst ratio))
    where ratio is |E∩I| / (delta^{1-alpha} |I|^alpha); passing means the
    worst ratio is at most C.
    """
    k = E.level
    worst_ratio = 0.0
    worst_iv = (0.0, 1.0)
    counts = np.bincount(E.cells, minlength=2**k).astype(np.int64)
    for j in range(k, -1, -1):
        # counts currently holds per-cell-of-level-j occupancy
        size = 2.0**-j
        nonzero = np.nonzero(counts)[0]
        if len(nonzero):
            meas = counts[nonzero] * E.delta
            ratios = meas / (E.delta ** (1.0 - E.alpha) * size**E.alpha)
            m = int(np.argmax(ratios))
            if ratios[m] > worst_ratio:
                worst_ratio = float(ratios[m])
                cell = int(nonzero[m])
                worst_iv = (cell * size, (cell + 1) * size)
        if j:
            counts = counts[0::2] + counts[1::2]
    return worst_ratio <= E.C + 1e-12, (worst_iv, worst_ratio)


def cantor_delta_set(delta: float, alpha: float, seed: int) -> DeltaSet:
    """Random dyadic Cantor-type set with ~delta^-alpha cells.

    Levels are split into doubling levels (both children survive) and thinning
    levels (one seeded-random child survives); doubling levels are spread
    evenly, which gives the non-concentration bound with constant 2 and cell
    count 2^floor(k*alpha) — within a factor 2 of delta^-alpha.
    """
    if not (0.0 < alpha <= 1.0):
        raise PreconditionError("alpha must lie in (0, 1]")
    k = dyadic_level(delta)
    rng = SplitMix64(seed)
    cells = np.array([0], dtype=np.int64)
    for j in range(1, k + 1):
        doubling = math.floor(j * alpha) > math.floor((j - 1) * alpha)
        if doubling:
            cells = np.concatenate([cells * 2, cells * 2 + 1])
        else:
            picks = np.array([rng.randint(2) for _ in range(len(cells))],
                             dtype=np.int64)
            cells = cells * 2 + picks
    out = DeltaSet(delta, cells, alpha, C=4.0)
    ok, worst = validate_delta_set(out)
    if not ok:
        raise FrostmanError("generated set failed its own validation", worst)
    return out


def full_delta_set(delta: float, alpha: float = 1.0, C: float = 1.0) -> DeltaSet:
    k = dyadic_level(delta)
    return DeltaSet(delta, np.arange(2**k, dtype=np.int64), alpha, C)


@dataclass
class QuasiProduct:
    """Fibered union over A of vertical delta-sets B_a, one per cell of A."""

    A: DeltaSet
    fibers: dict[int, DeltaSet]

    def __post_init__(self):
        acells = set(int(c) for c in self.A.cells)
        if set(self.fibers) != acells:
            raise PreconditionError("fibers must be keyed exactly by the cells of A")
        for a, B in self.fibers.items():
            if B.delta != self.A.delta:
                raise PreconditionError(f"fiber at cell {a} has mismatched delta")

    @property
    def delta(self) -> float:
        return self.A.delta

    @property
    def area(self) -> float:
        return sum(self.A.delta * B.measure for B in self.fibers.values())

    def membership_matrix(self) -> np.ndarray:
        """Dense (2^k, 2^k) boolean grid: [a_cell, b_cell] in E."""
        k = self.A.level
        m = np.zeros((2**k, 2**k), dtype=bool)
        for a, B in self.fibers.items():
            m[a, B.cells] = True
        return m


def build_quasi_product(A: DeltaSet, fiber_gen) -> QuasiProduct:
    """Assemble the fibered product; fiber_gen maps each cell of A to a
    DeltaSet at the same scale."""
    fibers = {}
    for a in A.cells:
        B = fiber_gen(int(a))
        if B.delta != A.delta:
            raise PreconditionError(f"fiber at cell {int(a)} has delta {B.delta}, "
                                    f"expected {A.delta}")
        fibers[int(a)] = B
    return QuasiProduct(A, fibers)


def full_quasi_product(delta: float) -> QuasiProduct:
    A = full_delta_set(delta)
    return QuasiProduct(A, {int(a): full_delta_set(delta) for a in A.cells})


def validate_quasi_product(E: QuasiProduct, alpha: float, beta: float,
                           C: float) -> tuple[bool, float]:
    """Exhaustive dyadic-rectangle bound |E∩Q| <= C^2 d^{2-a-b} |Q1|^a |Q2|^b.

    Feasible for delta >= 2^-8 or so; returns (passed, worst ratio against
    the C^2 constant)."""
    k = E.A.level
    d = E.delta
    grid = E.membership_matrix().astype(np.int64)
    worst = 0.0
    rows = grid
    for j1 in range(k, -1, -1):
        cols = rows
        for j2 in range(k, -1, -1):
            meas = cols * d * d
            bound = d ** (2.0 - alpha - beta) * (2.0**-j1) ** alpha * (2.0**-j2) ** beta
            m = float(np.max(meas) / bound)
            worst = max(worst, m)
            if j2:
                cols = cols[:, 0::2] + cols[:, 1::2]
        if j1:
            rows = rows[0::2] + rows[1::2]
    return worst <= C * C + 1e-12, worst


@dataclass
class PointCloud3:
    """delta-separated points in the closed unit ball with claimed Frostman
    exponent zeta and constant C."""

    points: np.ndarray
    delta: float
    zeta: float
    C: float
    check_separation: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 3)
        if len(self.points) and np.max(np.linalg.norm(self.points, axis=1)) > 1.0 + 1e-9:
            raise PreconditionError("points must lie in the closed unit ball")
        if self.check_separation and len(self.points) > 1:
            if _pair_closer_than(self.points, self.delta * (1.0 - 1e-9)):
                raise PreconditionError("points are closer than delta")

    def __len__(self):
        return len(self.points)


def _pair_closer_than(pts: np.ndarray, threshold: float) -> bool:
    """Exact decision: does any pair sit strictly closer than threshold?

    Grid hash at the threshold scale: such a pair always lands in the same
    or adjacent buckets."""
    n = len(pts)
    if n <= 512:
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        np.fill_diagonal(d, np.inf)
        return bool(np.min(d) < threshold)
    buckets: dict[tuple, list[int]] = {}
    for i, p in enumerate(pts):
        buckets.setdefault(tuple(np.floor(p / threshold).astype(np.int64)), []).append(i)
    thr2 = threshold * threshold
    for key, idx in buckets.items():
        neigh = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    neigh.extend(buckets.get((key[0] + dx, key[1] + dy, key[2] + dz), ()))
        nb = np.array(sorted(set(neigh)))
        mine = np.array(idx)
        d2 = np.sum((pts[mine][:, None, :] - pts[nb][None, :, :]) ** 2, axis=-1)
        same = mine[:, None] == nb[None, :]
        d2[same] = np.inf
        if np.min(d2) < thr2:
            return True
    return False


def frostman_check_points(Z: PointCloud3) -> tuple[bool, tuple[np.ndarray, float, float]]:
    """Grid-centered ball-count validation of #(Z ∩ B) <= C (r/delta)^zeta.

    For each dyadic scale 2^j delta up to 1, tests closed balls of radius
    2^{j+1} delta centered on the (2^j delta)-grid near the cloud.  Returns
    (passed, (worst center, worst radius, worst ratio)) where ratio is
    count / (r/delta)^zeta.
    """
    pts = Z.points
    if len(pts) == 0:
        return True, (np.zeros(3), Z.delta, 0.0)
    jmax = max(0, int(math.ceil(math.log2(1.0 / Z.delta))))
    worst_ratio = 0.0
    worst = (pts[0], Z.delta, 0.0)
    for j in range(jmax + 1):
        spacing = (2.0**j) * Z.delta
        radius = 2.0 * spacing
        # candidate centers: grid nodes adjacent to some point
        base = np.floor(pts / spacing)
        offs = np.array([[a, b, c] for a in (-1, 0, 1) for b in (-1, 0, 1)
                         for c in (-1, 0, 1)])
        centers = np.unique((base[:, None, :] + offs[None, :, :]).reshape(-1, 3),
                            axis=0) * spacing
        keep = np.linalg.norm(centers, axis=1) <= 1.0 + radius
        centers = centers[keep]
        bound = (radius / Z.delta) ** Z.zeta
        for chunk in range(0, len(centers), 4096):
            cs = centers[chunk:chunk + 4096]
            d2 = np.sum((cs[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
            counts = np.sum(d2 <= radius * radius + 1e-18, axis=1)
            m = int(np.argmax(counts))
            ratio = counts[m] / bound
            if ratio > worst_ratio:
                worst_ratio = float(ratio)
                worst = (cs[m], radius, float(ratio))
    return worst_ratio <= Z.C + 1e-12, worst


def random_thin(Z: PointCloud3, p: float, seed: int) -> tuple[PointCloud3, bool]:
    """Independent keep-with-probability-p subsample.

    Also reports whether the retention requirement #out > p #in / 100 held
    (the regime in which thinning preserves the integral mass estimates).
    """
    if not (0.0 < p <= 1.0):
        raise PreconditionError("p must lie in (0, 1]")
    rng = SplitMix64(seed)
    keep = np.array([rng.uniform() < p for _ in range(len(Z))], dtype=bool)
    out = PointCloud3(Z.points[keep], Z.delta, Z.zeta, Z.C, check_separation=False)
    retained = len(out) > 0.01 * p * len(Z)
    return out, retained


def _cantor_cells_3d(k: int, zeta: float, rng: SplitMix64) -> np.ndarray:
    """Dyadic-cube construction in [0,1]^3 mirroring cantor_delta_set: doubling
    levels keep two antipodal octants, thinning levels one random octant."""
    cells = np.zeros((1, 3), dtype=np.int64)
    octants = np.array([[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)],
                       dtype=np.int64)
    for j in range(1, k + 1):
        doubling = math.floor(j * zeta) > math.floor((j - 1) * zeta)
        if doubling:
            pick = np.array([rng.randint(8) for _ in range(len(cells))])
            first = octants[pick]
            second = 1 - first            # antipodal octant maximizes spread
            cells = np.concatenate([cells * 2 + first, cells * 2 + second])
        else:
            pick = np.array([rng.randint(8) for _ in range(len(cells))])
            cells = cells * 2 + octants[pick]
    return cells


def cantor_points_3d(delta: float, zeta: float, seed: int,
                     carrier: str = "ball") -> PointCloud3:
    """~delta^-zeta points, pairwise delta-separated, Frostman with C <= 8.

    Carriers: 'ball' (3-d dyadic Cantor construction in a centered cube),
    'segment' (1-d Cantor set on the z-axis; the sharpness configuration for
    projections), 'curve' (1-d Cantor set pushed onto a fixed helix).
    """
    if not (0.0 < zeta <= 1.0):
        raise PreconditionError("zeta must lie in (0, 1]")
    k = dyadic_level(delta)
    rng = SplitMix64(seed)
    if carrier == "ball":
        cells = _cantor_cells_3d(k, zeta, rng)
        pts = (cells + 0.5) * delta - 0.5       # centered cube, circumradius < 1
    elif carrier == "segment":
        E = cantor_delta_set(delta, zeta, seed)
        z = (E.cells + 0.5) * delta - 0.5
        pts = np.stack([np.zeros_like(z), np.zeros_like(z), z], axis=1)
    elif carrier == "curve":
        E = cantor_delta_set(delta, zeta, seed)
        u = (E.cells + 0.5) * delta
        # helix with unit-speed z so chord length >= |du| >= delta
        pts = np.stack([0.5 * np.cos(2 * np.pi * u), 0.5 * np.sin(2 * np.pi * u),
                        u - 0.5], axis=1)
        pts *= 0.99
    else:
        raise PreconditionError(f"unknown carrier {carrier!r}")
    cloud = PointCloud3(pts, delta, zeta, C=8.0)
    ok, worst = frostman_check_points(cloud)
    if not ok:
        raise FrostmanError("generated cloud failed Frostman validation", worst)
    return cloud
