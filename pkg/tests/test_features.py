import math

import numpy as np
import pytest

from rampforge.colorspace import LabColor
from rampforge.curve import AffineEdit, RampCurve, apply_edit
from rampforge.errors import FeatureError
from rampforge.features import (
    FEATURE_DIMENSIONS,
    FEATURE_GROUPS,
    compute_features,
    feature_matrix,
    mask_to_names,
    sphere_curvature,
    standardize,
    subset_columns,
    turning_points,
)

from helpers import channel_extrema_count, circle_points_ab


def random_curve(rng, spread=6.0):
    pts = np.cumsum(rng.uniform(-spread / 2, spread, size=(9, 3)), axis=0) + [40, 0, 0]
    return RampCurve(pts)


def sphere_curve(radius=50.0, center=(50.0, 0.0, 0.0)):
    # spiral over the sphere: clearly non-coplanar
    lat = np.radians(np.linspace(-60, 60, 9))
    lon = np.radians(np.linspace(0, 200, 9))
    pts = np.column_stack([
        radius * np.sin(lat),
        radius * np.cos(lat) * np.cos(lon),
        radius * np.cos(lat) * np.sin(lon),
    ]) + np.asarray(center)
    return RampCurve(pts)


class TestComputeFeatures:
    def test_collinear_uniform(self):
        d = 7.5
        pts = np.column_stack([np.arange(9) * d, np.zeros(9), np.zeros(9)])
        f = compute_features(RampCurve(pts))
        assert f.sum_of_angles == pytest.approx(0.0, abs=1e-9)
        assert f.local_discriminability == pytest.approx((d,) * 8, abs=1e-12)
        assert f.length == pytest.approx(8 * d, abs=1e-9)
        assert f.turning_points == 0
        assert f.curvature == 0.0
        assert f.speed == pytest.approx((d,) * 9, abs=1e-12)

    def test_quarter_circle(self):
        f = compute_features(RampCurve(circle_points_ab(50.0, 0.25, 9)))
        angles = np.array(f.local_angles)
        assert np.all(np.abs(angles - angles.mean()) <= 0.01 * angles.mean())
        assert f.length == pytest.approx(25 * math.pi, rel=0.01)

    def test_zigzag_turning_points_match_oracle(self):
        t = np.arange(9)
        pts = np.column_stack([10.0 + 10 * t, 10.0 * (-1.0) ** t, np.zeros(9)])
        c = RampCurve(pts)
        expected = sum(channel_extrema_count(pts[:, ch]) for ch in range(3))
        assert turning_points(c) == expected == 7

    def test_random_turning_points_match_oracle(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            c = random_curve(rng)
            expected = sum(channel_extrema_count(c.points[:, ch]) for ch in range(3))
            assert turning_points(c) == expected

    def test_plateaus_not_counted(self):
        pts = np.column_stack([np.arange(9.0), np.zeros(9), np.zeros(9)])
        pts[3, 1] = 5.0
        pts[4, 1] = 5.0  # plateau: neither 3 nor 4 is strict
        pts[2, 2] = 1.0  # lone strict peak in b*
        assert turning_points(RampCurve(pts)) == 1

    def test_consistency_sums(self):
        rng = np.random.default_rng(33)
        for _ in range(100):
            f = compute_features(random_curve(rng))
            assert f.sum_of_angles == pytest.approx(sum(f.local_angles), abs=1e-9)
            assert f.length == pytest.approx(sum(f.local_discriminability), abs=1e-9)

    def test_zero_length_segment_error(self):
        pts = np.column_stack([np.arange(9.0) * 3, np.zeros(9), np.zeros(9)])
        pts[5] = pts[4]
        with pytest.raises(FeatureError, match="4 and 5"):
            compute_features(RampCurve(pts))


class TestSphereCurvature:
    def test_sphere_radius_50(self):
        assert sphere_curvature(sphere_curve(50.0)) == pytest.approx(0.02, abs=1e-6)

    def test_collinear_returns_zero(self):
        pts = np.column_stack([np.arange(9.0) * 10, np.zeros(9), np.zeros(9)])
        assert sphere_curvature(RampCurve(pts)) == 0.0

    def test_coplanar_circle_is_singular(self):
        assert sphere_curvature(RampCurve(circle_points_ab(50.0, 0.25, 9))) == 0.0

    def test_scaling_halves_curvature(self):
        base = sphere_curve(50.0, center=(0.0, 0.0, 0.0))
        doubled = RampCurve(base.points * 2.0)
        assert sphere_curvature(doubled) == pytest.approx(sphere_curvature(base) / 2, rel=1e-9)


class TestInvariance:
    def rigid_scalars(self, f):
        return (f.local_angles, f.sum_of_angles, f.local_discriminability, f.length,
                f.curvature)

    def test_rigid_invariance(self):
        rng = np.random.default_rng(37)
        pivot = LabColor(40.0, 1.0, -1.0)
        for _ in range(20):
            c = random_curve(rng)
            base = compute_features(c)
            for e in (AffineEdit(rotate_ab_degrees=73),
                      AffineEdit(translate_l=5, translate_a=-8, translate_b=3),
                      AffineEdit(reflect=True)):
                f = compute_features(apply_edit(c, e, pivot))
                for got, want in zip(self.rigid_scalars(f), self.rigid_scalars(base)):
                    np.testing.assert_allclose(got, want, atol=1e-9)

    def test_scale_covariance(self):
        rng = np.random.default_rng(41)
        pivot = LabColor(40.0, 0.0, 0.0)
        c = sphere_curve(40.0)
        base = compute_features(c)
        s = 2.5
        f = compute_features(apply_edit(c, AffineEdit(scale=s), pivot))
        assert f.length == pytest.approx(s * base.length, rel=1e-9)
        np.testing.assert_allclose(f.local_discriminability,
                                   np.array(base.local_discriminability) * s, rtol=1e-9)
        assert f.curvature == pytest.approx(base.curvature / s, rel=1e-9)
        np.testing.assert_allclose(f.local_angles, base.local_angles, atol=1e-9)
        # derivative magnitudes are also homogeneous of degree 1
        np.testing.assert_allclose(f.speed, np.array(base.speed) * s, rtol=1e-9)


class TestFeatureMatrix:
    def test_dimensions(self):
        rng = np.random.default_rng(43)
        curves = [random_curve(rng) for _ in range(5)]
        m = feature_matrix(curves)
        assert m.shape == (5, FEATURE_DIMENSIONS)
        assert FEATURE_DIMENSIONS == 37

    def test_standardize(self):
        rng = np.random.default_rng(47)
        m = feature_matrix([random_curve(rng) for _ in range(10)])
        z = standardize(m)
        np.testing.assert_allclose(z.mean(axis=0), 0, atol=1e-9)
        live = m.std(axis=0) > 1e-12
        np.testing.assert_allclose(z[:, live].std(axis=0), 1, atol=1e-9)

    def test_subset_columns(self):
        assert subset_columns(0b1).tolist() == list(range(7))
        assert subset_columns(0b10).tolist() == [7]
        assert subset_columns(255).tolist() == list(range(37))
        with pytest.raises(ValueError):
            subset_columns(0)
        with pytest.raises(ValueError):
            subset_columns(256)

    def test_mask_names(self):
        assert mask_to_names(0b10 | 0b1000) == ("sum_of_angles", "length")
        assert len(FEATURE_GROUPS) == 8
