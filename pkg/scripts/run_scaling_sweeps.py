#!/usr/bin/env python3
"""Run the four delta/size sweeps with default settings and write CSVs.

Outputs land in ./out (created if missing): wolff.csv, quasi.csv, lens.csv,
bipartite.csv.  Each file carries the fitted exponent in its metadata lines.
"""

import pathlib
import sys
import time

from cinegeom.experiments import (
    ExperimentConfig,
    exp_bipartite_tangency,
    exp_lens_scaling,
    exp_quasi_product,
    exp_wolff_circles,
    result_csv,
)

OUT = pathlib.Path("out")


def main() -> int:
    OUT.mkdir(exist_ok=True)
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    runs = [
        ("wolff", exp_wolff_circles, ExperimentConfig(seed=seed, alpha=1.0, zeta=1.0)),
        ("quasi", exp_quasi_product, ExperimentConfig(seed=seed, alpha=0.5, zeta=0.8)),
        ("lens", exp_lens_scaling, ExperimentConfig(seed=seed)),
        ("bipartite", exp_bipartite_tangency, ExperimentConfig(seed=seed)),
    ]
    all_ok = True
    for name, fn, cfg in runs:
        t0 = time.time()
        res = fn(cfg)
        path = OUT / f"{name}.csv"
        path.write_text(result_csv(res, cfg))
        print(f"{name:10s} exponent={res.fitted_exponent:+.4f} "
              f"threshold={res.threshold} passed={res.passed} "
              f"({time.time() - t0:.1f}s) -> {path}")
        all_ok &= res.passed
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
