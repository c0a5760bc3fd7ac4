"""Line-oriented text formats for families, fractal sets, rasters, rectangles
and lenses.

Floats are written with 17 significant digits so every value round-trips to
the same double.
"""

from __future__ import annotations

import io

import numpy as np

from .curves import (
    CurveFamily,
    Interval,
    SpaceCurve,
    circle_family,
    helix_circle_curve,
    planar_circle_curve,
    projection_family,
)
from .errors import PreconditionError
from .fractal import DeltaSet, QuasiProduct
from .incidence import Raster, RasterSpec
from .lenses import Lens
from .rectangles import CurvRect


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# --- curve families ---------------------------------------------------------


def dump_family(fam: CurveFamily, gamma_name: str | None = None) -> str:
    """Header (kind, domain) plus one parameter row per curve.

    Rows: circle -> a b r; projection -> z1 z2 z3 (gamma recorded by name);
    implicit -> y1 y2 r (loading needs the defining function again).
    """
    if fam.kind not in ("circle", "projection", "implicit"):
        raise PreconditionError(f"family kind {fam.kind!r} has no parameter rows")
    head = f"family kind={fam.kind} domain={_fmt(fam.domain.lo)}:{_fmt(fam.domain.hi)}"
    if fam.kind == "projection":
        head += f" gamma={gamma_name or 'helix-circle'}"
    lines = [head]
    for row in fam.params:
        lines.append(" ".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _gamma_by_name(name: str, domain: Interval) -> SpaceCurve:
    if name == "helix-circle":
        return helix_circle_curve(domain)
    if name == "planar":
        return planar_circle_curve(domain)
    raise PreconditionError(f"unknown gamma {name!r}; load custom curves directly")


def load_family(text: str) -> CurveFamily:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "family":
        raise PreconditionError("not a family file")
    fields = dict(kv.split("=", 1) for kv in head[1:] if "=" in kv)
    lo, hi = (float(v) for v in fields["domain"].split(":"))
    domain = Interval(lo, hi)
    rows = [tuple(float(v) for v in ln.split()) for ln in lines[1:]]
    kind = fields["kind"]
    if kind == "circle":
        centers = [(a, b) for a, b, _ in rows]
        radii = [r for _, _, r in rows]
        return circle_family(centers, radii, domain, analyze=False)
    if kind == "projection":
        gamma = _gamma_by_name(fields.get("gamma", "helix-circle"), domain)
        return projection_family(gamma, rows, analyze=False)
    raise PreconditionError(
        f"family kind {kind!r} cannot be reloaded without its defining function")


# --- delta sets and quasi-products ------------------------------------------


def _ranges(cells: np.ndarray) -> list[tuple[int, int]]:
    if len(cells) == 0:
        return []
    breaks = np.nonzero(np.diff(cells) != 1)[0]
    starts = np.concatenate([[0], breaks + 1])
    ends = np.concatenate([breaks, [len(cells) - 1]])
    return [(int(cells[s]), int(cells[e])) for s, e in zip(starts, ends)]


def _range_str(cells: np.ndarray) -> str:
    return " ".join(f"{a}-{b}" if b > a else str(a) for a, b in _ranges(cells))


def _parse_ranges(tokens: list[str]) -> np.ndarray:
    cells: list[int] = []
    for tok in tokens:
        if "-" in tok:
            a, b = tok.split("-", 1)
            cells.extend(range(int(a), int(b) + 1))
        else:
            cells.append(int(tok))
    return np.asarray(cells, dtype=np.int64)


def dump_delta_set(E: DeltaSet) -> str:
    head = f"deltaset delta=2^-{E.level} alpha={_fmt(E.alpha)} C={_fmt(E.C)}"
    return head + "\n" + _range_str(E.cells) + "\n"


def load_delta_set(text: str) -> DeltaSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "deltaset":
        raise PreconditionError("not a deltaset file")
    fields = dict(kv.split("=", 1) for kv in head[1:])
    k = int(fields["delta"].split("^-")[1])
    cells = _parse_ranges(lines[1].split()) if len(lines) > 1 else np.array([], dtype=np.int64)
    return DeltaSet(2.0**-k, cells, float(fields["alpha"]), float(fields["C"]))


def dump_quasi_product(E: QuasiProduct) -> str:
    out = io.StringIO()
    out.write(f"quasiproduct delta=2^-{E.A.level} alpha={_fmt(E.A.alpha)} "
              f"C={_fmt(E.A.C)}\n")
    out.write("A " + _range_str(E.A.cells) + "\n")
    for a in E.A.cells:
        B = E.fibers[int(a)]
        out.write(f"fiber {int(a)} alpha={_fmt(B.alpha)} C={_fmt(B.C)} "
                  + _range_str(B.cells) + "\n")
    return out.getvalue()


def load_quasi_product(text: str) -> QuasiProduct:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "quasiproduct":
        raise PreconditionError("not a quasiproduct file")
    fields = dict(kv.split("=", 1) for kv in head[1:])
    k = int(fields["delta"].split("^-")[1])
    delta = 2.0**-k
    assert lines[1].startswith("A ")
    A = DeltaSet(delta, _parse_ranges(lines[1].split()[1:]),
                 float(fields["alpha"]), float(fields["C"]))
    fibers = {}
    for ln in lines[2:]:
        toks = ln.split()
        assert toks[0] == "fiber"
        cell = int(toks[1])
        meta = dict(kv.split("=", 1) for kv in toks[2:4])
        fibers[cell] = DeltaSet(delta, _parse_ranges(toks[4:]),
                                float(meta["alpha"]), float(meta["C"]))
    return QuasiProduct(A, fibers)


# --- rasters ------------------------------------------------------------------


def dump_raster(r: Raster) -> str:
    """Portable graymap (P2): dimensions header then row-major counts, one
    raster row (fixed y) per line, y increasing."""
    out = io.StringIO()
    out.write("P2\n")
    out.write(f"# theta={_fmt(r.spec.theta_range.lo)}:{_fmt(r.spec.theta_range.hi)} "
              f"y={_fmt(r.spec.y_range.lo)}:{_fmt(r.spec.y_range.hi)} "
              f"cell={_fmt(r.spec.cell)}\n")
    out.write(f"{r.spec.n_theta} {r.spec.n_y}\n")
    out.write(f"{max(1, int(r.counts.max()))}\n")
    for j in range(r.spec.n_y):
        out.write(" ".join(str(int(v)) for v in r.counts[:, j]) + "\n")
    return out.getvalue()


def load_raster(text: str) -> Raster:
    lines = text.splitlines()
    if lines[0].strip() != "P2":
        raise PreconditionError("not a P2 raster dump")
    meta = dict(kv.split("=", 1) for kv in lines[1][1:].split() if "=" in kv)
    th_lo, th_hi = (float(v) for v in meta["theta"].split(":"))
    y_lo, y_hi = (float(v) for v in meta["y"].split(":"))
    cell = float(meta["cell"])
    w, h = (int(v) for v in lines[2].split())
    rows = [np.array([int(v) for v in ln.split()], dtype=np.int32)
            for ln in lines[4:4 + h]]
    counts = np.stack(rows, axis=1)
    assert counts.shape == (w, h)
    return Raster(RasterSpec(Interval(th_lo, th_hi), Interval(y_lo, y_hi), cell), counts)


# --- rectangles and lenses ----------------------------------------------------


def dump_rects_csv(rects: list[CurvRect]) -> str:
    lines = ["anchor,I_lo,I_hi,delta,t"]
    for r in rects:
        lines.append(f"{r.anchor},{_fmt(r.I.lo)},{_fmt(r.I.hi)},{_fmt(r.delta)},{_fmt(r.t)}")
    return "\n".join(lines) + "\n"


def dump_lenses_csv(lenses: list[Lens]) -> str:
    lines = ["curve_a,curve_b,theta1,theta2"]
    for l in lenses:
        lines.append(f"{l.pair[0]},{l.pair[1]},{_fmt(l.roots[0])},{_fmt(l.roots[1])}")
    return "\n".join(lines) + "\n"


def dump_polylines(circles, graph_n: int = 256) -> str:
    out = io.StringIO()
    for pc in circles:
        out.write(f"polyline {pc.source}\n")
        for x, y in pc.polyline(graph_n):
            out.write(f"{_fmt(x)} {_fmt(y)}\n")
    return out.getvalue()
