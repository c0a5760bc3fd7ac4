import itertools

import numpy as np
import pytest

from cinegeom.curves import C2Curve, CurveFamily, Interval, circle_curve, cinematic_defect
from cinegeom.errors import CinematicViolationError, PreconditionError
from cinegeom.incidence import zeros_of_difference
from cinegeom.lenses import (
    Lens,
    certify_proper,
    enumerate_lenses,
    extend_to_pseudocircles,
    max_nonoverlapping,
    overlap,
    perturb,
)
from cinegeom.rng import SplitMix64

from conftest import J_STD, near_tangent_pair
from cinegeom.experiments import tangent_circle_family


def crossing_pair():
    f = circle_curve((0.0, 0.0), 1.3, J_STD, "f")
    g = circle_curve((0.0, -0.1 - 1e-4), 1.4, J_STD, "g")
    return f, g


class TestExtension:
    def test_single_curve_loop(self):
        fam = CurveFamily((circle_curve((0.0, 0.0), 1.5, J_STD, "f"),), J_STD)
        (pc,) = extend_to_pseudocircles(fam)
        poly = pc.polyline()
        assert np.allclose(poly[0], poly[-1])          # closed
        assert poly[:, 1].min() == pytest.approx(pc.depth)

    def test_stagger_orders_by_left_value(self):
        f = circle_curve((0.0, 0.0), 1.2, J_STD, "low")
        g = circle_curve((0.0, 0.1), 1.3, J_STD, "high")
        pcs = extend_to_pseudocircles(CurveFamily((g, f), J_STD))
        by_label = {pc.source: pc for pc in pcs}
        assert by_label["low"].frame_index == 1
        assert by_label["high"].frame_index == 2
        assert by_label["low"].depth > by_label["high"].depth

    def test_nested_curves_no_strip_roots(self):
        f = circle_curve((0.0, 0.0), 1.2, J_STD, "f")
        fam = CurveFamily((f, f.shifted(0.5, "g")), J_STD)
        pcs = extend_to_pseudocircles(fam)
        assert enumerate_lenses(pcs) == []

    def test_duplicate_endpoints_rejected(self):
        f = circle_curve((0.0, 0.0), 1.2, J_STD, "f")
        g = circle_curve((0.0, 0.0), 1.2, Interval(-0.5, 0.5), "g")
        with pytest.raises(PreconditionError):
            extend_to_pseudocircles(CurveFamily((f, g), J_STD))

    def test_crossing_pair_roots_match(self):
        f, g = crossing_pair()
        fam = CurveFamily((f, g), J_STD)
        pcs = extend_to_pseudocircles(fam)
        lenses = enumerate_lenses(pcs)
        roots = zeros_of_difference(f, g, 1e-12)
        assert len(lenses) == 1 and len(roots) == 2
        assert lenses[0].roots == pytest.approx((roots[0][0], roots[1][0]))


class TestCertify:
    def test_transversal_certified(self):
        f, g = crossing_pair()
        rep = certify_proper(CurveFamily((f, g), J_STD), tol=1e-9)
        assert rep.certified and rep.min_margin > 1e-9

    def test_exact_tangency_flagged(self):
        f = circle_curve((0.0, 0.0), 1.3, J_STD, "f")
        g = circle_curve((0.0, -0.1), 1.4, J_STD, "g")
        rep = certify_proper(CurveFamily((f, g), J_STD), tol=1e-8)
        assert not rep.certified
        assert rep.improper_pairs[0][:2] == ("f", "g")
        assert abs(rep.improper_pairs[0][2]) < 1e-4     # tangency sits at 0

    def test_disjoint_vacuous(self):
        f = circle_curve((0.0, 0.0), 1.2, J_STD, "f")
        rep = certify_proper(CurveFamily((f, f.shifted(3.0, "g")), J_STD), tol=1e-9)
        assert rep.certified


class TestPerturb:
    def test_proper_family_gets_jitter_only(self):
        f, g = crossing_pair()
        fam = CurveFamily((f, g), J_STD)
        delta = 1e-5
        out = perturb(fam, delta, seed=3)
        th = np.linspace(-0.5, 0.5, 5)
        for before, after in zip(fam.curves, out.curves):
            shift = np.max(np.abs(after.values(th) - before.values(th)))
            assert shift <= delta * 1e-6 + 1e-15       # eta = 0, jitter only

    def test_grazing_pair_pushed_through(self):
        # f - g >= 0 with a graze: the shifted curve must cross twice
        f = circle_curve((0.0, 0.0), 1.3, J_STD, "f")
        g = circle_curve((0.0, -0.1 + 1e-7), 1.4, J_STD, "g")   # f-g <= 0, graze
        fam = CurveFamily((f, g), J_STD)
        delta = 1e-5
        out = perturb(fam, delta, lam=5.0, seed=1)
        roots = zeros_of_difference(out.curves[0], out.curves[1], 1e-12)
        assert len(roots) == 2
        assert certify_proper(out, tol=1e-10).certified

    def test_batch_near_tangent(self):
        rng = SplitMix64(5)
        cleared = 0
        for _ in range(200):
            f, g = near_tangent_pair(rng, depth_lo=-9.0, depth_hi=-5.0)
            fam = CurveFamily((f, g), J_STD)
            out = perturb(fam, 1e-4, seed=rng.randint(2**31))
            if certify_proper(out, tol=1e-10).certified:
                cleared += 1
        assert cleared == 200

    def test_defect_degrades_at_most_half(self):
        fam = tangent_circle_family(12, seed=4)
        before = cinematic_defect(fam, 512)
        out = perturb(fam, 1e-6, seed=2)
        after = cinematic_defect(out, 512)
        assert after >= before / 2.0


class TestEnumerate:
    def test_two_crossing_one_lens(self):
        f, g = crossing_pair()
        pcs = extend_to_pseudocircles(CurveFamily((f, g), J_STD))
        assert len(enumerate_lenses(pcs)) == 1

    def test_disjoint_translates_no_lenses(self):
        f = circle_curve((0.0, 0.0), 1.2, J_STD, "f")
        fam = CurveFamily(tuple(f.shifted(i * 0.7, f"f{i}") for i in range(4)), J_STD)
        pcs = extend_to_pseudocircles(fam)
        assert enumerate_lenses(pcs) == []

    def test_random_family_count_bound(self):
        fam = tangent_circle_family(24, seed=7)
        out = perturb(fam, 2.0**-20, seed=1)
        pcs = extend_to_pseudocircles(out)
        lenses = enumerate_lenses(pcs)
        n = len(fam)
        assert len(lenses) <= 4 * n * (n - 1) // 2 + n
        pairs = [tuple(sorted(l.pair)) for l in lenses]
        assert len(pairs) == len(set(pairs))            # at most one per pair

    def test_noncinematic_pair_diagnostic(self):
        J = Interval(0.0, 4.0)
        osc = C2Curve(lambda t: (np.sin(4 * t) + 2.0, 4 * np.cos(4 * t),
                                 -16 * np.sin(4 * t)), J, "osc", 32.0)
        flat = C2Curve(lambda t: (np.full_like(t, 2.05), np.zeros_like(t),
                                  np.zeros_like(t)), J, "flat", 0.0)
        pcs = extend_to_pseudocircles(CurveFamily((osc, flat), J))
        with pytest.raises(CinematicViolationError):
            enumerate_lenses(pcs)


class TestOverlap:
    def test_self_overlap(self):
        l = Lens(("a", "b"), (0.0, 0.5))
        assert overlap(l, l)

    def test_disjoint_pairs(self):
        assert not overlap(Lens(("a", "b"), (0.0, 0.5)),
                           Lens(("c", "d"), (0.0, 0.5)))

    def test_shared_curve_interval_logic(self):
        base = Lens(("a", "b"), (0.0, 0.5))
        nested = Lens(("a", "c"), (0.1, 0.3))
        disjoint = Lens(("a", "c"), (0.6, 0.9))
        touching = Lens(("a", "c"), (0.5, 0.9))
        assert overlap(base, nested)
        assert not overlap(base, disjoint)
        assert not overlap(base, touching)              # measure-zero contact


class TestMaxNonoverlapping:
    def _fixture(self):
        # ten lenses over three curves with a mix of nestings
        spans = [(0.0, 0.3), (0.35, 0.6), (0.65, 0.9), (0.1, 0.5), (0.4, 0.8),
                 (0.0, 0.9), (0.05, 0.2), (0.55, 0.7), (0.75, 0.85), (0.25, 0.45)]
        out = []
        for i, (a, b) in enumerate(spans):
            pair = ("p", f"q{i}") if i % 2 == 0 else ("r", f"q{i}")
            out.append(Lens(pair, (a, b)))
        return out

    def test_identity_when_compatible(self):
        lenses = [Lens(("a", f"b{i}"), (0.1 * i, 0.1 * i + 0.05)) for i in range(5)]
        assert len(max_nonoverlapping(lenses)) == 5

    def test_two_overlapping_keep_one(self):
        lenses = [Lens(("a", "b"), (0.0, 0.5)), Lens(("a", "c"), (0.2, 0.7))]
        assert len(max_nonoverlapping(lenses)) == 1

    def test_output_is_independent(self):
        sel = max_nonoverlapping(self._fixture())
        for l1, l2 in itertools.combinations(sel, 2):
            assert not overlap(l1, l2)

    def test_greedy_within_factor_two_of_exhaustive(self):
        lenses = self._fixture()
        greedy = max_nonoverlapping(lenses, "greedy-by-span")
        best = max_nonoverlapping(lenses, "exhaustive")
        for l1, l2 in itertools.combinations(best, 2):
            assert not overlap(l1, l2)
        assert len(greedy) >= len(best) / 2.0
        assert len(greedy) <= len(best)

    def test_exhaustive_size_limit(self):
        lenses = [Lens(("a", f"b{i}"), (0.0, 0.1)) for i in range(21)]
        with pytest.raises(PreconditionError):
            max_nonoverlapping(lenses, "exhaustive")

    def test_unknown_strategy(self):
        with pytest.raises(PreconditionError):
            max_nonoverlapping([], "magic")


class TestPostPerturbStructure:
    def test_near_tangent_pairs_zero_or_two_transversal_roots(self):
        # the perturbation regime: apex-tangent pairs have sign-definite
        # curvature gap on J, so crossings come in pairs or not at all
        rng = SplitMix64(11)
        for _ in range(300):
            f, g = near_tangent_pair(rng, depth_lo=-8.0, depth_hi=-4.0)
            out = perturb(CurveFamily((f, g), J_STD), 1e-5, seed=rng.randint(2**31))
            roots = zeros_of_difference(out.curves[0], out.curves[1], 1e-12)
            assert len(roots) in (0, 2)
            assert all(trans for _, trans in roots)


class TestFramesAndArcs:
    def test_frames_pairwise_disjoint_outside_strip(self):
        fam = tangent_circle_family(12, seed=9)
        out = perturb(fam, 2.0**-20, seed=2)
        pcs = extend_to_pseudocircles(out)
        # stagger makes every frame coordinate distinct: verticals at
        # distinct x, bottoms at distinct depth, flats at distinct heights
        left_x = [pc.graph_part.domain.lo - pc.frame_index * pc.stagger for pc in pcs]
        right_x = [pc.graph_part.domain.hi + pc.frame_index * pc.stagger for pc in pcs]
        depths = [pc.depth for pc in pcs]
        assert len(set(left_x)) == len(pcs)
        assert len(set(right_x)) == len(pcs)
        assert len(set(depths)) == len(pcs)
        # nesting: deeper frames extend strictly wider
        order = sorted(pcs, key=lambda pc: pc.frame_index)
        for shallow, deep in zip(order, order[1:]):
            assert deep.depth < shallow.depth
            assert (deep.graph_part.domain.lo - deep.frame_index * deep.stagger
                    < shallow.graph_part.domain.lo - shallow.frame_index * shallow.stagger)

    def test_lens_arcs_meet_at_roots(self):
        f, g = crossing_pair()
        pcs = extend_to_pseudocircles(CurveFamily((f, g), J_STD))
        (lens,) = enumerate_lenses(pcs)
        arc_f = lens.arc(f, 16)
        arc_g = lens.arc(g, 16)
        assert np.allclose(arc_f[0], arc_g[0], atol=1e-9)
        assert np.allclose(arc_f[-1], arc_g[-1], atol=1e-9)
        with pytest.raises(PreconditionError):
            lens.arc(circle_curve((0.0, 0.0), 1.9, J_STD, "other"))
