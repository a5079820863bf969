import math
import warnings

import numpy as np
import pytest

from hopfix import (
    FaceSpec,
    PatternSet,
    SeedStrategy,
    ThickenedRegion,
    beta_threshold_search,
    classify_softmax_catalog,
    contraction_bound,
    enumerate_softmax_fixed_points,
    find_fixed_points,
    hopfield_map,
    instability_certificate,
    iterate_map,
    jacobian,
    margin,
    miranda_verify_isolated,
    miranda_verify_thickened,
    refine_newton,
    spectral_radius,
    sufficient_beta_lemma3,
)
from hopfix.cips import cips_check
from hopfix.errors import CipsViolationError, EpsilonTooLargeError, RefinementFailure
from hopfix.fixpoints import classify, face_region_seeds
from hopfix.polytope import project_to_hull, sample_face_point

from conftest import random_unit_patterns


class TestIterate:
    def test_fixed_point_converges_immediately(self, demo_square):
        traj, conv = iterate_map(demo_square, 15.0, np.zeros(2), 10, 1e-12)
        assert conv and len(traj) == 2

    def test_basin_of_first_pattern(self, demo_square):
        traj, conv = iterate_map(demo_square, 15.0, np.array([0.9, 0.05]), 500, 1e-13)
        assert conv
        assert np.linalg.norm(traj[-1] - np.array([1.0, 0.0])) < 0.05
        # terminal point is a genuine fixed point
        assert np.linalg.norm(hopfield_map(demo_square, 15.0, traj[-1]) - traj[-1]) < 1e-12

    def test_nonconvergence_reported(self, demo_square):
        _, conv = iterate_map(demo_square, 15.0, np.array([0.3, 0.2]), 1, 1e-15)
        assert not conv

    def test_trajectory_kept_on_request(self, demo_square):
        traj, _ = iterate_map(demo_square, 15.0, np.array([0.5, 0.4]), 50, 1e-10)
        assert len(traj) >= 3
        short, _ = iterate_map(
            demo_square, 15.0, np.array([0.5, 0.4]), 50, 1e-10, record_trajectory=False
        )
        assert len(short) == 2
        np.testing.assert_allclose(short[-1], traj[-1], atol=1e-14)


class TestRefine:
    def test_converges_to_catalog_point(self, rng):
        n, beta = 4, 5.0
        cat = enumerate_softmax_fixed_points(n, beta)
        target = np.array([p.vector for p in cat.points])
        W = PatternSet.identity(n)
        for p in cat.points:
            seed = p.vector + rng.normal(0, 1e-3, n)
            rec = refine_newton(W, beta, seed)
            assert np.linalg.norm(target - rec.location, axis=1).min() < 1e-10

    def test_pattern_seed_lands_near_pattern(self, rng):
        W = random_unit_patterns(6, 4, rng)
        rec = refine_newton(W, 15.0, W.column(2))
        assert rec.nearest_pattern[0] == 2
        assert rec.nearest_pattern[1] < 0.05
        assert rec.residual < 1e-10

    def test_far_seed_still_converges_into_hull(self, demo_square, rng):
        rec = refine_newton(demo_square, 15.0, np.array([5.0, -7.0]))
        assert rec.residual < 1e-10
        assert np.max(np.abs(rec.location)) <= 1.0 + 1e-9

    def test_failure_carries_best_residual(self, demo_square):
        # beta at the marginal value n/2 for the square set makes the
        # center parabolic; Newton from a symmetric start stalls there
        # only in contrived setups, so force failure with zero iterations
        with pytest.raises(RefinementFailure) as err:
            refine_newton(demo_square, 15.0, np.array([0.31, 0.17]), max_steps=0)
        assert err.value.best_residual > 0


class TestFindFixedPoints:
    def test_identity_matches_catalog(self):
        W = PatternSet.identity(4)
        recs = find_fixed_points(W, 5.0, SeedStrategy(seed=1))
        cat = enumerate_softmax_fixed_points(4, 5.0)
        assert len(recs) == cat.total == 15
        target = np.array([p.vector for p in cat.points])
        for rec in recs:
            assert np.linalg.norm(target - rec.location, axis=1).min() < 1e-9

    def test_demo_square_structure(self, demo_square):
        recs = find_fixed_points(demo_square, 15.0, SeedStrategy(seed=3))
        assert len(recs) == 9
        stable = [r for r in recs if r.classification == "stable"]
        unstable = [r for r in recs if r.classification == "unstable"]
        assert len(stable) == 4 and len(unstable) == 5

    def test_contraction_regime_single_point(self, rng):
        W = random_unit_patterns(3, 3, rng)
        recs = find_fixed_points(W, 0.5, SeedStrategy(seed=0, random_hull_points=200))
        assert len(recs) == 1
        assert recs[0].classification == "stable"

    def test_classification_stable_under_perturbed_reseed(self, demo_square, rng):
        recs = find_fixed_points(demo_square, 15.0, SeedStrategy(seed=3))
        for rec in recs:
            seed = rec.location + rng.normal(0, 1e-7, 2)
            again = refine_newton(demo_square, 15.0, seed)
            assert again.classification == rec.classification
            assert np.linalg.norm(again.location - rec.location) < 1e-6


class TestClassify:
    def test_center_thresholds(self):
        W = PatternSet.identity(4)
        center = np.full(4, 0.25)
        assert classify(spectral_radius(jacobian(W, 2.0, center))) == "stable"
        assert classify(spectral_radius(jacobian(W, 8.0, center))) == "unstable"
        assert classify(spectral_radius(jacobian(W, 4.0, center))) == "marginal"


class TestContractionBound:
    def test_no_competitors_zero_bound(self, rng):
        W = random_unit_patterns(5, 4, rng)
        v = W.matrix.mean(axis=1)
        assert contraction_bound(W, tuple(range(4)), v, 0.1, 3.0) == 0.0

    def test_vertex_closed_form(self):
        n, beta, eps = 6, 9.0, 1e-12
        W = PatternSet.identity(n)
        bound = contraction_bound(W, (0,), np.eye(n)[0], eps, beta)
        assert bound == pytest.approx(2 * (n - 1) * math.exp(-beta), rel=1e-9)

    def test_rejects_off_face_point(self, rng):
        W = random_unit_patterns(4, 5, rng)
        with pytest.raises(ValueError):
            contraction_bound(W, (0, 1), np.full(4, 10.0), 0.1, 2.0)

    def test_bound_dominates_measured_distance(self, rng):
        # the acceptance suite runs 1000 draws; a focused spot check here
        hits = 0
        while hits < 60:
            d = int(rng.integers(2, 8))
            n = int(rng.integers(3, 10))
            W = random_unit_patterns(d, n, rng)
            size = int(rng.integers(1, min(n - 1, d + 1) + 1))
            J = tuple(sorted(rng.choice(n, size=size, replace=False).tolist()))
            try:
                face = FaceSpec(W, J)
            except Exception:
                continue
            v = sample_face_point(face, rng)
            delta = margin(W, J, None, v)
            if delta <= 1e-3:
                continue
            eps = float(rng.uniform(1e-6, delta / 2 * 0.999))
            beta = float(rng.uniform(1.0, 30.0))
            r = rng.standard_normal(d)
            r /= np.linalg.norm(r)
            x = v + eps * r
            fx = hopfield_map(W, beta, x)
            _, dist, _ = project_to_hull(fx, face)
            assert dist < contraction_bound(W, J, v, eps, beta)
            hits += 1


class TestCertificates:
    def test_uniform_center_certified(self, demo_square):
        recs = find_fixed_points(demo_square, 15.0, SeedStrategy(seed=3))
        origin = min(recs, key=lambda r: np.linalg.norm(r.location))
        cert = instability_certificate(demo_square, 15.0, origin)
        assert cert is not None and cert.valid
        assert cert.rayleigh == pytest.approx(7.5, abs=1e-9)
        assert cert.rayleigh <= origin.spectral_radius + 1e-9
        assert cert.rayleigh >= cert.floor - 1e-12

    def test_vertex_like_not_applicable(self, demo_square):
        recs = find_fixed_points(demo_square, 15.0, SeedStrategy(seed=3))
        vertex = min(recs, key=lambda r: np.linalg.norm(r.location - np.array([0.0, 1.0])))
        assert instability_certificate(demo_square, 15.0, vertex) is None

    def test_rayleigh_floor_random(self, rng):
        # floor (beta/4) a (1-omega)^2 with a the observed second weight
        W = random_unit_patterns(5, 6, rng)
        beta = 12.0
        recs = find_fixed_points(W, beta, SeedStrategy(seed=2, random_hull_points=400))
        for rec in recs:
            cert = instability_certificate(W, beta, rec, a_threshold=0.05)
            if cert is None:
                continue
            assert cert.rayleigh >= cert.floor - 1e-10
            assert cert.rayleigh <= rec.spectral_radius + 1e-9

    def test_rejects_unconverged_record(self, demo_square):
        recs = find_fixed_points(demo_square, 15.0, SeedStrategy(seed=3))
        bad = recs[0]
        bad.residual = 1e-3
        with pytest.raises(ValueError):
            instability_certificate(demo_square, 15.0, bad)


class TestMirandaIsolated:
    def test_segment_passes_at_large_beta(self):
        seg = PatternSet.from_columns([np.eye(3)[0], np.eye(3)[1]])
        rep = miranda_verify_isolated(seg, 20.0, 0.8, samples=3000, seed=0)
        assert rep.overall and rep.f1_vacuous

    def test_small_beta_contracts_to_barycenter_and_fails(self):
        seg = PatternSet.from_columns([np.eye(3)[0], np.eye(3)[1]])
        rep = miranda_verify_isolated(seg, 0.01, 0.8, samples=1000, seed=0)
        assert not rep.overall
        assert rep.f0_worst_slack < 0

    def test_triangle(self, rng):
        tri = random_unit_patterns(5, 3, rng)
        rep = miranda_verify_isolated(tri, 40.0, 0.9, samples=2000, seed=1)
        assert rep.f0_pass or rep.f0_worst_slack > -1e-6


class TestMirandaThickened:
    def test_separated_face_passes_and_contains_fixed_point(self, rng):
        W = PatternSet.identity(6)
        face = FaceSpec(W, (0, 1))
        verdict = cips_check(W, (0, 1), samples=2000, seed=0)
        rep = miranda_verify_thickened(
            W, 25.0, face, lam=0.9, epsilon=0.05, samples=2000, seed=0,
            cips_verdict=verdict,
        )
        assert rep.overall
        # a fixed point sits inside the region (existence consequence)
        seeds = face_region_seeds(W, face, seed=0)
        region = ThickenedRegion(face, 0.9, 0.05)
        found = None
        for s in seeds:
            rec = refine_newton(W, 25.0, s)
            if region.contains(rec.location, tol=1e-9):
                found = rec
                break
        assert found is not None and found.residual < 1e-10

    def test_noncips_face_fails(self, noncips_triple):
        face = FaceSpec(noncips_triple, (0, 1))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for beta in (10.0, 20.0, 40.0):
                rep = miranda_verify_thickened(
                    noncips_triple, beta, face, lam=0.9, epsilon=0.02,
                    samples=1500, seed=0,
                )
                assert not rep.overall

    def test_warns_without_verdict(self, rng):
        W = PatternSet.identity(5)
        with pytest.warns(UserWarning):
            miranda_verify_thickened(
                W, 20.0, FaceSpec(W, (0, 1)), lam=0.9, epsilon=0.05,
                samples=100, seed=0,
            )

    def test_vertex_face_f0_vacuous(self, rng):
        W = PatternSet.identity(4)
        verdict = cips_check(W, (2,), samples=100, seed=0)
        rep = miranda_verify_thickened(
            W, 10.0, FaceSpec(W, (2,)), lam=0.9, epsilon=0.1, samples=500,
            seed=0, cips_verdict=verdict,
        )
        assert rep.f0_pass and rep.f0_worst_slack == math.inf
        assert not rep.f1_vacuous


class TestBetaSearch:
    def test_finds_small_beta_for_orthonormal_faces(self):
        seg = PatternSet.from_columns([np.eye(4)[0], np.eye(4)[1], np.eye(4)[2]])
        found = beta_threshold_search(
            seg, [1.0 + 0.5 * i for i in range(60)], [0.7, 0.8, 0.9, 0.95],
            samples=2000, seed=0,
        )
        assert found is not None
        beta, lam = found
        assert beta <= 20.0

    def test_low_grid_returns_none(self):
        seg = PatternSet.from_columns([np.eye(3)[0], np.eye(3)[1]])
        assert (
            beta_threshold_search(seg, [0.2, 0.5, 0.9], [0.8], samples=500, seed=0)
            is None
        )

    def test_rejects_bad_grids(self):
        seg = PatternSet.from_columns([np.eye(3)[0], np.eye(3)[1]])
        with pytest.raises(ValueError):
            beta_threshold_search(seg, [2.0, 1.0], [0.8])


class TestSufficientBeta:
    def test_finite_and_verified_on_orthonormal_pair(self):
        W = PatternSet.identity(8)
        face = FaceSpec(W, (0, 1))
        beta = sufficient_beta_lemma3(W, face, lam=0.98, epsilon=0.05, seed=0)
        assert np.isfinite(beta) and beta > 0
        # just below the returned beta some band point must violate
        from hopfix.fixpoints import _band_max

        def worst(b):
            verdict = cips_check(W, (0, 1), samples=2000, seed=0)
            delta = verdict.worst
            region = ThickenedRegion(face, 0.98, 0.05)
            q = region.boundary_vertex_distance()
            one = _band_max(8 - 1, delta, b, q * 0.02, delta / 3)
            two = _band_max(8 - 2, delta, b, 0.05 / math.sqrt(8), 0.05)
            return max(one, two)

        assert worst(beta) < 1.0

    def test_dominates_empirical_threshold(self):
        W = PatternSet.identity(6)
        face = FaceSpec(W, (0, 1, 2))
        suff = sufficient_beta_lemma3(W, face, lam=0.98, epsilon=0.05, seed=0)
        isolated = W.restrict(face.indices)
        found = beta_threshold_search(
            isolated, [1.0 + 0.5 * i for i in range(80)], [0.8, 0.9], samples=2000, seed=0
        )
        assert found is not None
        assert suff >= found[0]

    def test_epsilon_guard(self):
        W = PatternSet.identity(6)
        face = FaceSpec(W, (0, 1))
        with pytest.raises(EpsilonTooLargeError):
            sufficient_beta_lemma3(W, face, lam=0.98, epsilon=0.4, seed=0)

    def test_cips_violation_guard(self, noncips_triple):
        face = FaceSpec(noncips_triple, (0, 1))
        with pytest.raises(CipsViolationError):
            sufficient_beta_lemma3(noncips_triple, face, lam=0.99, epsilon=0.01, seed=0)
