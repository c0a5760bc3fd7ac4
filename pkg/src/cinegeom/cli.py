"""Command-line interface: one subcommand per scaling experiment plus a
validation battery.  Exit code 0 means every threshold in the run was met."""

from __future__ import annotations

import argparse
import math
import sys

from .errors import GeometryError
from .experiments import (
    ExperimentConfig,
    exp_bipartite_tangency,
    exp_kaufman,
    exp_lens_scaling,
    exp_quasi_product,
    exp_wolff_circles,
    result_csv,
    run_validation,
)

_EXPERIMENTS = {
    "wolff": exp_wolff_circles,
    "quasi": exp_quasi_product,
    "lens": exp_lens_scaling,
    "bipartite": exp_bipartite_tangency,
    "kaufman": exp_kaufman,
}


def _dump_finest_raster(cfg: ExperimentConfig, which: str, path: str) -> None:
    from .curves import Interval
    from .experiments import pencil_circle_family, wolff_circle_family
    from .incidence import RasterSpec, counting_field
    from .serialize import dump_raster
    delta = min(cfg.deltas)
    if which == "wolff" or (cfg.alpha, cfg.zeta) == (1.0, 1.0):
        fam = wolff_circle_family(delta, cfg.seed, cfg.n)
    else:
        fam = pencil_circle_family(delta, cfg.zeta, cfg.seed)
    spec = RasterSpec(Interval(-0.5, 0.5), Interval(1.0, 2.0), delta / 4.0)
    with open(path, "w") as fh:
        fh.write(dump_raster(counting_field(fam, delta, spec)))


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta-min", type=float, default=2.0**-10,
                   help="finest dyadic scale (e.g. 0.0009765625 for 2^-10)")
    p.add_argument("--delta-max", type=float, default=2.0**-5,
                   help="coarsest dyadic scale")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--zeta", type=float, default=0.8)
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--n", type=int, default=None,
                   help="override the per-scale family size")
    p.add_argument("--gamma", choices=("helix-circle", "planar", "custom-file"),
                   default="helix-circle")
    p.add_argument("--gamma-file", default=None)
    p.add_argument("--allow-degenerate", action="store_true",
                   help="run even when the space curve fails the span check")
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--dump-raster", default=None,
                   help="write the finest-scale counting field as P2 text")


def _deltas(args) -> tuple[float, ...]:
    k_min = round(-math.log2(args.delta_max))
    k_max = round(-math.log2(args.delta_min))
    if k_min > k_max:
        k_min, k_max = k_max, k_min
    return tuple(2.0**-k for k in range(k_min, k_max + 1))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cinegeom",
        description="scaling-law experiments for curve-tangency incidence geometry")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in _EXPERIMENTS:
        p = sub.add_parser(name)
        _add_common(p)
    v = sub.add_parser("validate", help="run the fast invariant battery")
    v.add_argument("--seed", type=int, default=0)
    fr = sub.add_parser("fractal", help="build or check fractal set files")
    fr.add_argument("action", choices=("make", "check"))
    fr.add_argument("--delta", type=float, default=2.0**-10)
    fr.add_argument("--alpha", type=float, default=0.5)
    fr.add_argument("--seed", type=int, default=0)
    fr.add_argument("--product", action="store_true",
                    help="make/check a quasi-product instead of a single set")
    fr.add_argument("--out", default=None)
    fr.add_argument("--in", dest="infile", default=None)
    return ap


def _fractal_command(args) -> int:
    from .fractal import (build_quasi_product, cantor_delta_set,
                          validate_delta_set)
    from .serialize import (dump_delta_set, dump_quasi_product,
                            load_delta_set, load_quasi_product)
    if args.action == "make":
        if args.product:
            A = cantor_delta_set(args.delta, args.alpha, args.seed)
            qp = build_quasi_product(
                A, lambda a: cantor_delta_set(args.delta, args.alpha,
                                              args.seed + 1 + a))
            text = dump_quasi_product(qp)
        else:
            text = dump_delta_set(cantor_delta_set(args.delta, args.alpha,
                                                   args.seed))
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            print(f"wrote {args.out}")
        else:
            sys.stdout.write(text)
        return 0
    if not args.infile:
        print("check needs --in FILE", file=sys.stderr)
        return 2
    with open(args.infile) as fh:
        text = fh.read()
    if text.startswith("quasiproduct"):
        qp = load_quasi_product(text)
        results = [validate_delta_set(qp.A)[0]]
        results += [validate_delta_set(B)[0] for B in qp.fibers.values()]
        ok = all(results)
        print(f"quasiproduct: A + {len(qp.fibers)} fibers, "
              f"{'all valid' if ok else 'INVALID'}")
    else:
        E = load_delta_set(text)
        ok, (iv, ratio) = validate_delta_set(E)
        print(f"deltaset: {len(E)} cells, worst ratio {ratio:.4g} at {iv}, "
              f"{'valid' if ok else 'INVALID'}")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "fractal":
        return _fractal_command(args)
    if args.command == "validate":
        results = run_validation(args.seed)
        ok = True
        for name, passed in results:
            print(f"{'PASS' if passed else 'FAIL'}  {name}")
            ok &= passed
        return 0 if ok else 1

    alpha, zeta = args.alpha, args.zeta
    if args.command == "wolff":
        alpha = zeta = 1.0
    cfg = ExperimentConfig(
        seed=args.seed, deltas=_deltas(args), n=args.n, alpha=alpha,
        zeta=zeta, s=args.s, gamma=args.gamma, gamma_file=args.gamma_file,
        out=args.out, allow_degenerate=args.allow_degenerate)
    try:
        res = _EXPERIMENTS[args.command](cfg)
    except GeometryError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return 2
    if args.dump_raster and args.command in ("wolff", "quasi"):
        _dump_finest_raster(cfg, args.command, args.dump_raster)
    csv = result_csv(res, cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(csv)
        print(f"wrote {cfg.out}")
    else:
        sys.stdout.write(csv)
    print(f"{'PASS' if res.passed else 'FAIL'}  {res.name}: "
          f"exponent={res.fitted_exponent:.4f} threshold={res.threshold}",
          file=sys.stderr)
    return 0 if res.passed else 1


if __name__ == "__main__":
    sys.exit(main())
