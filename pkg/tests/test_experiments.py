import os
import subprocess
import sys

import numpy as np
import pytest

from cinegeom.curves import C2Curve, CurveFamily, Interval
from cinegeom.errors import DegenerateCurveError, PreconditionError
from cinegeom.experiments import (
    ExperimentConfig,
    boxcount_dimension,
    exp_bipartite_tangency,
    exp_kaufman,
    exp_lens_scaling,
    exp_quasi_product,
    exp_wolff_circles,
    fit_exponent,
    gamma_by_name,
    load_gamma_file,
    pencil_circle_family,
    result_csv,
    run_validation,
    wolff_circle_family,
    _l32_point,
)
from cinegeom.fractal import full_quasi_product
from cinegeom.rng import SplitMix64

FAST_DELTAS = (2.0**-5, 2.0**-6, 2.0**-7)


class TestFitExponent:
    def test_quadratic_exact(self):
        rows = [(x, x * x) for x in (1.0, 2.0, 3.0, 7.0)]
        slope, _, resid = fit_exponent(rows)
        assert slope == pytest.approx(2.0, abs=1e-12)
        assert resid == pytest.approx(0.0, abs=1e-12)

    def test_three_halves_with_noise(self):
        rng = SplitMix64(4)
        rows = [(x, 3.0 * x**1.5 * (1.0 + 0.01 * (rng.uniform() - 0.5)))
                for x in np.geomspace(1, 100, 12)]
        slope, _, _ = fit_exponent(rows)
        assert slope == pytest.approx(1.5, abs=0.05)

    def test_constant_is_flat(self):
        slope, _, _ = fit_exponent([(x, 5.0) for x in (1.0, 2.0, 4.0)])
        assert slope == pytest.approx(0.0, abs=1e-12)

    def test_nonpositive_rejected(self):
        with pytest.raises(PreconditionError):
            fit_exponent([(1.0, 1.0), (2.0, -1.0), (3.0, 1.0)])
        with pytest.raises(PreconditionError):
            fit_exponent([(1.0, 1.0), (2.0, 2.0)])


class TestConfig:
    def test_dyadic_deltas_enforced(self):
        with pytest.raises(PreconditionError):
            ExperimentConfig(deltas=(0.3,))

    def test_exponent_ordering(self):
        with pytest.raises(PreconditionError):
            ExperimentConfig(alpha=0.9, zeta=0.5)
        with pytest.raises(PreconditionError):
            ExperimentConfig(s=0.9, zeta=0.8)


class TestWolff:
    def test_single_annulus_fixture(self):
        cfg = ExperimentConfig(seed=0, deltas=(2.0**-6,), n=1)
        res = exp_wolff_circles(cfg)
        delta, n, integral, norm, bound, ratio = res.rows[0]
        assert n == 1
        # one annulus of height 2*delta over the unit window
        assert integral == pytest.approx(2 * delta, rel=0.1)
        assert ratio == pytest.approx((2 * delta) ** (2 / 3) / delta ** (2 / 3),
                                      rel=0.1)

    def test_rows_reproducible(self):
        cfg = ExperimentConfig(seed=5, deltas=FAST_DELTAS)
        a = result_csv(exp_wolff_circles(cfg), cfg)
        b = result_csv(exp_wolff_circles(cfg), cfg)
        assert a == b

    def test_adversarial_stack_violates(self):
        # identical circles (radius separation dropped): ratio grows like
        # delta^{-1/3}, far past the 0.15 exponent budget
        from cinegeom.curves import circle_curve
        rows = []
        for delta in FAST_DELTAS:
            n = round(1.0 / delta)
            J = Interval(-0.5, 0.5)
            f = circle_curve((0.0, 0.0), 1.5, J)
            fam = CurveFamily(tuple(
                C2Curve(f.eval, J, f"dup{i}", f.smoothness) for i in range(n)), J)
            integral = _l32_point(fam, delta, full_quasi_product(delta))
            rows.append((delta, integral ** (2 / 3) / (delta * n) ** (2 / 3)))
        slope, _, _ = fit_exponent(rows)
        assert abs(slope) > 0.15
        assert slope == pytest.approx(-1.0 / 3.0, abs=0.05)


class TestWolffNormBudget:
    def test_norm_stays_under_powered_budget(self):
        # the 3/2-norm against delta^{-0.1} (delta n)^{2/3}; the bound shape
        # carries an absolute constant, recorded here as 1.5 (max seen 1.38)
        res = exp_wolff_circles(ExperimentConfig(seed=20260810))
        for delta, n, _, norm, bound, _ in res.rows:
            assert norm <= 1.5 * delta**-0.1 * bound


class TestQuasi:
    def test_reduces_to_wolff_at_ones(self):
        cfg = ExperimentConfig(seed=3, deltas=FAST_DELTAS, alpha=1.0, zeta=1.0,
                               s=0.5)
        qz = exp_quasi_product(cfg)
        wf = exp_wolff_circles(cfg)
        for qrow, wrow in zip(qz.rows, wf.rows):
            assert qrow[2] == pytest.approx(wrow[2], abs=1e-9)   # same integral

    def test_single_cell_product_trivial(self):
        import numpy as np
        from cinegeom.fractal import DeltaSet, QuasiProduct
        delta = 2.0**-6
        fam = pencil_circle_family(delta, 0.8, seed=1)
        k = 6
        A = DeltaSet(delta, np.array([2**k // 2]), 0.5, 4.0)
        E = QuasiProduct(A, {2**k // 2: DeltaSet(delta, np.array([2**k // 2]), 0.5, 4.0)})
        integral = _l32_point(fam, delta, E)
        assert integral <= len(fam) ** 1.5 * delta**2 * 16.0

    def test_pencil_family_is_frostman(self):
        from cinegeom.experiments import _frostman_triples
        from cinegeom.fractal import frostman_check_points
        fam = pencil_circle_family(2.0**-8, 0.8, seed=2)
        ok, _ = frostman_check_points(_frostman_triples(fam, 2.0**-8, 0.8))
        assert ok


class TestKaufman:
    def test_z_axis_with_helix_is_bilipschitz(self):
        # the projection scales the axis by 1/sqrt(2); box-count tracks zeta
        # once the radius sweep has a few octaves above the cloud scale
        cfg = ExperimentConfig(seed=0, zeta=0.8, s=0.5, deltas=(2.0**-10,))
        res = exp_kaufman(cfg, carrier="segment")
        assert res.extras["exceptional_fraction"] == 0.0
        assert res.extras["dim_mean"] == pytest.approx(0.8, abs=0.15)

    def test_planar_control_all_exceptional(self):
        cfg = ExperimentConfig(seed=0, zeta=0.8, s=0.5, deltas=(2.0**-8,),
                               gamma="planar", allow_degenerate=True)
        res = exp_kaufman(cfg, carrier="segment")
        assert res.extras["exceptional_fraction"] == 1.0

    def test_degenerate_refused_without_flag(self):
        cfg = ExperimentConfig(seed=0, zeta=0.8, s=0.5, deltas=(2.0**-8,),
                               gamma="planar")
        with pytest.raises(DegenerateCurveError):
            exp_kaufman(cfg, carrier="segment")

    def test_dimension_estimates_in_range(self):
        cfg = ExperimentConfig(seed=1, zeta=0.8, s=0.5, deltas=(2.0**-8,))
        res = exp_kaufman(cfg)
        dims = np.array([d for _, d, _ in res.rows])
        assert np.all(dims >= 0.0) and np.all(dims <= 1.0)
        assert np.max(dims) <= cfg.zeta + 0.1

    def test_boxcount_on_uniform_grid(self):
        vals = np.arange(256) / 256.0
        assert boxcount_dimension(vals, 2.0**-8, 2.0**-4) == pytest.approx(1.0, abs=0.05)


class TestLensSweep:
    def test_small_sweep(self):
        res = exp_lens_scaling(ExperimentConfig(seed=2), ns=(8, 16, 32, 64))
        assert res.extras["per_pair_at_most_one"]
        counts = [c for _, _, c in res.rows]
        assert counts == sorted(counts)

    def test_two_curves_at_most_one(self):
        res = exp_lens_scaling(ExperimentConfig(seed=1), ns=(2, 4, 8))
        assert res.rows[0][2] <= 1


class TestBipartite:
    def test_ratios_bounded(self):
        res = exp_bipartite_tangency(ExperimentConfig(seed=3), ns=(8, 16, 32))
        assert res.extras["worst_ratio"] <= 1.0

    def test_unreachable_multiplicity_empty(self):
        res = exp_bipartite_tangency(ExperimentConfig(seed=3), ns=(8,),
                                     mu=10_000, nu=10_000)
        assert res.rows[0][2] == 0


class TestGammaFiles:
    def test_custom_fourier_curve(self, tmp_path):
        path = tmp_path / "gamma.txt"
        path.write_text("0.0 6.283185307179586\n"
                        "0.70710678 0 0\n"
                        "0 0.70710678 0\n"   # raw = helix-circle before norm
                        "0.70710678\n")
        # rows: a0 a1 b1 per component -> (a1 cos, b1 sin, const)
        path.write_text("0.0 6.283185307179586\n"
                        "0 0.70710678 0\n"
                        "0 0 0.70710678\n"
                        "0.70710678\n")
        gam = load_gamma_file(str(path))
        th = np.linspace(0, 1, 5)
        g, dg, ddg = gam(th)
        assert np.allclose(np.linalg.norm(g, axis=0), 1.0, atol=1e-9)
        helix = gamma_by_name(ExperimentConfig(gamma="helix-circle"))
        g2, dg2, ddg2 = helix(th)
        assert np.allclose(g, g2, atol=1e-7)
        assert np.allclose(dg, dg2, atol=1e-6)
        assert np.allclose(ddg, ddg2, atol=1e-5)

    def test_missing_file_config(self):
        with pytest.raises(PreconditionError):
            gamma_by_name(ExperimentConfig(gamma="custom-file"))


class TestCsvAndCli:
    def test_csv_schema(self):
        cfg = ExperimentConfig(seed=1, deltas=FAST_DELTAS)
        text = result_csv(exp_wolff_circles(cfg), cfg)
        lines = text.splitlines()
        meta = [ln for ln in lines if ln.startswith("#")]
        data = [ln for ln in lines if not ln.startswith("#")]
        assert any("seed=1" in m for m in meta)
        assert data[0] == "delta,n,integral,norm32,bound,ratio"
        assert len(data) == 1 + len(FAST_DELTAS)

    def test_validation_battery(self):
        results = run_validation(seed=0)
        assert all(ok for _, ok in results)
        assert len(results) >= 5

    def test_cli_validate_exit_zero(self):
        from cinegeom.cli import main
        assert main(["validate", "--seed", "1"]) == 0

    def test_cli_wolff_writes_csv(self, tmp_path, capsys):
        from cinegeom.cli import main
        out = tmp_path / "w.csv"
        code = main(["wolff", "--delta-min", str(2.0**-7),
                     "--delta-max", str(2.0**-5), "--out", str(out)])
        assert code == 0
        assert out.read_text().startswith("# cinegeom")

    def test_cli_entrypoint_subprocess(self):
        env = dict(os.environ)
        proc = subprocess.run(
            [sys.executable, "-m", "cinegeom.cli", "kaufman",
             "--delta-min", str(2.0**-10), "--delta-max", str(2.0**-10)],
            capture_output=True, text=True, env=env, timeout=300)
        assert proc.returncode == 0
        assert "theta,boxdim" in proc.stdout

    def test_thread_env_var(self):
        from cinegeom.incidence import thread_count
        old = os.environ.get("CINEGEOM_THREADS")
        try:
            os.environ["CINEGEOM_THREADS"] = "3"
            assert thread_count() == 3
            os.environ["CINEGEOM_THREADS"] = "bogus"
            assert thread_count() == 1
        finally:
            if old is None:
                os.environ.pop("CINEGEOM_THREADS", None)
            else:
                os.environ["CINEGEOM_THREADS"] = old

    def test_counting_field_threaded_matches_serial(self):
        from cinegeom.incidence import RasterSpec, counting_field
        from conftest import random_circle_family, J_STD
        fam = random_circle_family(12, seed=3)
        spec = RasterSpec(J_STD, Interval(1.0, 2.0), 2.0**-9)
        serial = counting_field(fam, 2.0**-7, spec)
        old = os.environ.get("CINEGEOM_THREADS")
        try:
            os.environ["CINEGEOM_THREADS"] = "4"
            threaded = counting_field(fam, 2.0**-7, spec)
        finally:
            if old is None:
                os.environ.pop("CINEGEOM_THREADS", None)
            else:
                os.environ["CINEGEOM_THREADS"] = old
        assert np.array_equal(serial.counts, threaded.counts)


class TestReproducibility:
    def test_all_experiments_rerun_identically(self):
        cfg = ExperimentConfig(seed=9, deltas=(2.0**-5, 2.0**-6, 2.0**-7))
        for fn, kwargs in (
            (exp_wolff_circles, {}),
            (exp_quasi_product, {}),
            (exp_lens_scaling, {"ns": (8, 16, 32)}),
            (exp_bipartite_tangency, {"ns": (8, 16)}),
            (exp_kaufman, {}),
        ):
            a = result_csv(fn(cfg, **kwargs), cfg)
            b = result_csv(fn(cfg, **kwargs), cfg)
            assert a == b, fn.__name__


class TestKaufmanExceptionalSet:
    def test_generic_exceptional_dim_below_s(self):
        cfg = ExperimentConfig(seed=4, zeta=0.8, s=0.5, deltas=(2.0**-10,))
        res = exp_kaufman(cfg)
        assert res.extras["exceptional_dim"] <= cfg.s

    def test_control_exceptional_dim_full(self):
        cfg = ExperimentConfig(seed=4, zeta=0.8, s=0.5, deltas=(2.0**-10,),
                               gamma="planar", allow_degenerate=True)
        res = exp_kaufman(cfg, carrier="segment")
        assert res.extras["exceptional_dim"] == pytest.approx(1.0, abs=0.05)


class TestWolffAbort:
    def test_frostman_failure_aborts_with_worst_ball(self, monkeypatch):
        import cinegeom.experiments as ex
        from cinegeom.errors import FrostmanError

        def concentric(delta, seed, n=None):
            n = n or round(1.0 / delta)
            # radii crammed into one delta-cell: the triples concentrate
            radii = [1.5 + i * delta / (2 * n) for i in range(n)]
            centers = [(0.0, 0.0)] * n
            from cinegeom.curves import circle_family
            return circle_family(centers, radii, Interval(-0.5, 0.5),
                                 analyze=False)

        monkeypatch.setattr(ex, "wolff_circle_family", concentric)
        with pytest.raises(FrostmanError) as err:
            ex.exp_wolff_circles(ExperimentConfig(seed=0, deltas=(2.0**-6,)))
        assert err.value.worst is not None
        center, radius, ratio = err.value.worst
        assert ratio > 1.0
