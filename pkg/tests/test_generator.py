import math

import numpy as np
import pytest

from rampforge.colorspace import LabColor, delta_e, in_gamut
from rampforge.curve import AffineEdit
from rampforge.errors import (
    InvalidEditError,
    InvalidRampError,
    LightnessRangeError,
    OutOfGamutError,
)
from rampforge.generator import (
    GeneratedRamp,
    apply_user_edit,
    format_css_gradient,
    format_hex_lines,
    format_lab_csv,
    gamut_fit,
    linear_ramp,
    sample_ramp,
    seed_diverging,
    seed_sequential,
)
from rampforge.modelbook import RampModel


def make_model(l_profile, ab_offsets, model_id="kmeans-0", method="kmeans"):
    profile = np.asarray(l_profile, dtype=float)
    ab = np.asarray(ab_offsets, dtype=float)
    ab = ab - ab.mean(axis=0)
    shape = np.column_stack([profile, ab])
    return RampModel(id=model_id, method=method, shape=shape, l_profile=profile,
                     cluster_size=2, member_ids=("m0", "m1"))


def uniform_model(ab_ampl=4.0):
    t = np.linspace(0, 1, 9)
    ab = np.column_stack([ab_ampl * np.sin(math.pi * t), ab_ampl * np.cos(math.pi * t)])
    return make_model(np.linspace(10, 90, 9), ab)


def pairwise(pts):
    return np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)


class TestSeedSequential:
    def test_worked_example_l_range_and_anchor(self):
        model = uniform_model()
        seed = LabColor(78.0, -45.0, 32.0)
        ramp = seed_sequential(model, seed, gamut_mode="clip")
        ls = [c.L for c in ramp.colors]
        assert ls[0] == pytest.approx(8.0, abs=1e-9)
        assert ls[-1] == pytest.approx(88.0, abs=1e-9)
        assert ramp.anchor_index == 7
        anchor = ramp.colors[7]
        assert (anchor.L, anchor.a, anchor.b) == (78.0, -45.0, 32.0)

    def test_seed_equal_to_control_point_is_fixed_point(self):
        model = uniform_model(ab_ampl=2.0)
        anchor_idx = 4
        seed = LabColor(float(model.shape[anchor_idx, 0]),
                        float(model.shape[anchor_idx, 1]),
                        float(model.shape[anchor_idx, 2]))
        ramp = seed_sequential(model, seed, gamut_mode="clip")
        assert ramp.anchor_index == anchor_idx
        np.testing.assert_allclose(ramp.points(), model.shape, atol=1e-9)

    def test_pairwise_structure_invariance(self):
        rng = np.random.default_rng(97)
        base = pairwise(uniform_model().shape)
        for _ in range(200):
            seed = LabColor(float(rng.uniform(35, 65)), float(rng.uniform(-15, 15)),
                            float(rng.uniform(-15, 15)))
            ramp = seed_sequential(uniform_model(), seed, gamut_mode="clip")
            if ramp.gamut_status == "clean":
                np.testing.assert_allclose(pairwise(ramp.points()), base, atol=1e-9)

    def test_anchor_tie_goes_to_lower_index(self):
        model = uniform_model(ab_ampl=1.0)
        # L=75 is equidistant from profile values 70 (index 6) and 80 (index 7)
        ramp = seed_sequential(model, LabColor(75.0, 0.0, 0.0), gamut_mode="clip")
        assert ramp.anchor_index == 6

    def test_out_of_gamut_seed_rejected(self):
        with pytest.raises(OutOfGamutError):
            seed_sequential(uniform_model(), LabColor(50.0, 120.0, -120.0))

    def test_l_overflow_raises_not_clamps(self):
        # wide lightness span, flat profile: anchoring high pushes L past 100
        shape = np.column_stack([np.linspace(5, 95, 9), np.zeros(9), np.zeros(9)])
        model = RampModel(id="wide", method="kmeans", shape=shape,
                          l_profile=np.full(9, 50.0), cluster_size=2,
                          member_ids=("a", "b"))
        with pytest.raises(LightnessRangeError):
            seed_sequential(model, LabColor(98.0, 0.0, 0.0), gamut_mode="clip")

    def test_monotone_profile_gives_monotone_ramp(self):
        ramp = seed_sequential(uniform_model(), LabColor(50.0, 5.0, 5.0), gamut_mode="clip")
        ls = [c.L for c in ramp.colors]
        assert all(b > a for a, b in zip(ls, ls[1:]))


class TestSeedDiverging:
    def measured_angle(self, ramp):
        pts = ramp.points()
        center = pts[8]
        v1, v2 = (pts[0] - center)[1:], (pts[-1] - center)[1:]
        cos = np.clip(v1 @ v2 / (np.linalg.norm(v1) * np.linalg.norm(v2)), -1, 1)
        return math.degrees(math.acos(cos))

    def test_default_join_angle_115(self):
        ramp = seed_diverging(uniform_model(), LabColor(40.0, 8.0, 4.0), gamut_mode="clip")
        assert len(ramp.colors) == 17
        assert self.measured_angle(ramp) == pytest.approx(115.0, abs=0.1)

    def test_center_is_gray(self):
        ramp = seed_diverging(uniform_model(), LabColor(40.0, 8.0, 4.0), gamut_mode="clip")
        center = ramp.colors[8]
        assert center.a == 0.0 and center.b == 0.0

    def test_arm_l_profiles_mirror(self):
        ramp = seed_diverging(uniform_model(), LabColor(45.0, 5.0, 0.0), gamut_mode="clip")
        ls = [c.L for c in ramp.colors]
        assert ls[:9] == pytest.approx(ls[16:7:-1], abs=1e-9)

    def test_rotation_identity_idempotent(self):
        r1 = seed_diverging(uniform_model(), LabColor(40.0, 8.0, 4.0),
                            arm_rotation_degrees=0.0, gamut_mode="clip")
        r2 = seed_diverging(uniform_model(), LabColor(40.0, 8.0, 4.0),
                            arm_rotation_degrees=0.0, gamut_mode="clip")
        assert r1 == r2

    def test_rotation_changes_join_angle(self):
        ramp = seed_diverging(uniform_model(), LabColor(40.0, 8.0, 4.0),
                              arm_rotation_degrees=30.0, gamut_mode="clip")
        assert self.measured_angle(ramp) == pytest.approx(145.0, abs=0.1)

    def test_rotation_beyond_limit_strict(self):
        with pytest.raises(InvalidEditError):
            seed_diverging(uniform_model(), LabColor(40.0, 8.0, 4.0),
                           arm_rotation_degrees=61.0)

    def test_rotation_beyond_limit_clamped(self):
        with pytest.warns(UserWarning, match="clamped"):
            ramp = seed_diverging(uniform_model(), LabColor(40.0, 8.0, 4.0),
                                  arm_rotation_degrees=75.0, clamp_rotation=True,
                                  gamut_mode="clip")
        assert self.measured_angle(ramp) == pytest.approx(175.0, abs=0.1)


def clean_ramp():
    return seed_sequential(uniform_model(ab_ampl=3.0), LabColor(50.0, 4.0, 4.0))


class TestApplyUserEdit:
    def test_identity_edit_keeps_colors(self):
        ramp = clean_ramp()
        out = apply_user_edit(ramp, AffineEdit())
        assert out.colors == ramp.colors
        assert len(out.edits) == 1

    def test_translate_l_shifts_all(self):
        ramp = clean_ramp()
        out = apply_user_edit(ramp, AffineEdit(translate_l=3.0))
        for a, b in zip(ramp.colors, out.colors):
            assert b.L == pytest.approx(a.L + 3.0, abs=1e-9)
        assert out.gamut_status == "clean"

    def test_huge_scale_reverts_bit_for_bit(self):
        ramp = clean_ramp()
        out = apply_user_edit(ramp, AffineEdit(scale=50.0))
        assert out.gamut_status == "reverted"
        assert out.colors == ramp.colors
        assert out.edits == ramp.edits
        # oracle: scaling 50x really does exit the gamut
        pts = ramp.points()
        pivot = pts[ramp.anchor_index]
        scaled = (pts - pivot) * 50.0 + pivot
        in_range = (scaled[:, 0] >= 0) & (scaled[:, 0] <= 100)
        assert not all(in_gamut(LabColor(*p)) for p in scaled[in_range]) or not in_range.all()

    def test_random_edit_sequences_never_display_out_of_gamut(self):
        rng = np.random.default_rng(113)
        ramp = clean_ramp()
        for _ in range(300):
            edit = AffineEdit(
                translate_l=float(rng.uniform(-30, 30)),
                translate_a=float(rng.uniform(-40, 40)),
                translate_b=float(rng.uniform(-40, 40)),
                rotate_ab_degrees=float(rng.uniform(-180, 180)),
                scale=float(rng.uniform(0.5, 3.0)),
                reflect=bool(rng.integers(0, 2)),
            )
            nxt = apply_user_edit(ramp, edit)
            if nxt.gamut_status == "reverted":
                assert nxt.colors == ramp.colors
            else:
                assert all(in_gamut(c) for c in nxt.colors)
                ramp = nxt

    def test_rotate_then_inverse_restores(self):
        ramp = clean_ramp()
        fwd = apply_user_edit(ramp, AffineEdit(rotate_ab_degrees=25.0))
        back = apply_user_edit(fwd, AffineEdit(rotate_ab_degrees=-25.0))
        assert back.gamut_status == "clean"
        np.testing.assert_allclose(back.points(), ramp.points(), atol=1e-9)


class TestGamutFit:
    def test_clean_ramp_unchanged(self):
        ramp = clean_ramp()
        assert gamut_fit(ramp, "strict") == ramp
        assert gamut_fit(ramp, "clip") == ramp

    def test_strict_lists_offenders(self):
        colors = (LabColor(50.0, 0.0, 0.0), LabColor(50.0, 150.0, 0.0),
                  LabColor(60.0, 0.0, 0.0), LabColor(60.0, 0.0, -160.0))
        ramp = GeneratedRamp(colors=colors, model_id="x", seed=colors[0],
                             kind="linear", anchor_index=0)
        with pytest.raises(OutOfGamutError, match=r"\[1, 3\]"):
            gamut_fit(ramp, "strict")

    def test_clip_matches_chroma_scan_oracle(self):
        target = LabColor(50.0, 150.0, 0.0)
        ramp = GeneratedRamp(colors=(LabColor(50.0, 0.0, 0.0), target),
                             model_id="x", seed=LabColor(50.0, 0.0, 0.0),
                             kind="linear", anchor_index=0)
        fitted = gamut_fit(ramp, "clip")
        clipped = fitted.colors[1]
        assert fitted.gamut_status == "clipped"
        assert in_gamut(clipped)
        # brute-force 0.1-step chroma scan at this L and hue
        best = 0.0
        c = 0.0
        while c <= 150.0:
            if in_gamut(LabColor(50.0, c, 0.0)):
                best = c
            c += 0.1
        got = math.hypot(clipped.a, clipped.b)
        assert abs(got - best) <= 0.2

    def test_clip_preserves_l_and_hue(self):
        target = LabColor(35.0, 90.0, -70.0)
        ramp = GeneratedRamp(colors=(LabColor(35.0, 0.0, 0.0), target),
                             model_id="x", seed=LabColor(35.0, 0.0, 0.0),
                             kind="linear", anchor_index=0)
        clipped = gamut_fit(ramp, "clip").colors[1]
        assert clipped.L == target.L
        assert math.atan2(clipped.b, clipped.a) == pytest.approx(
            math.atan2(target.b, target.a), abs=1e-6)

    def test_anchor_never_clipped(self):
        colors = (LabColor(50.0, 150.0, 0.0), LabColor(50.0, 0.0, 0.0))
        ramp = GeneratedRamp(colors=colors, model_id="x", seed=colors[0],
                             kind="linear", anchor_index=0)
        with pytest.raises(OutOfGamutError, match="anchor"):
            gamut_fit(ramp, "clip")


class TestSampleRamp:
    def test_m2_returns_endpoints(self):
        ramp = clean_ramp()
        out = sample_ramp(ramp, 2)
        assert out[0] == ramp.colors[0]
        assert out[-1] == ramp.colors[-1]

    def test_m9_resampling_idempotent(self):
        ramp = clean_ramp()
        out = sample_ramp(ramp, 9)
        for a, b in zip(out, ramp.colors):
            assert delta_e(a, b) <= 0.5

    def test_straight_line_equidistant(self):
        ramp = linear_ramp(LabColor(10.0, 0.0, 0.0), LabColor(90.0, 0.0, 20.0), 9)
        out = sample_ramp(ramp, 5)
        pts = np.array([[c.L, c.a, c.b] for c in out])
        seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        np.testing.assert_allclose(seg, seg[0], atol=1e-6)

    def test_too_few_samples(self):
        with pytest.raises(InvalidRampError):
            sample_ramp(clean_ramp(), 1)


class TestLinearRamp:
    def test_midpoint_is_average(self):
        out = linear_ramp(LabColor(20.0, 10.0, -10.0), LabColor(80.0, -20.0, 30.0), 3)
        mid = out.colors[1]
        assert mid.L == pytest.approx(50.0, abs=1e-12)
        assert mid.a == pytest.approx(-5.0, abs=1e-12)
        assert mid.b == pytest.approx(10.0, abs=1e-12)

    def test_delta_l_between_neighbors(self):
        out = linear_ramp(LabColor(30.0, 0.0, 0.0), LabColor(70.0, 0.0, 0.0), 9)
        ls = [c.L for c in out.colors]
        for a, b in zip(ls, ls[1:]):
            assert b - a == pytest.approx(5.0, abs=1e-12)

    def test_endpoints_preserved(self):
        c1, c2 = LabColor(25.0, 12.0, -8.0), LabColor(75.0, -10.0, 25.0)
        for m in (2, 3, 9, 17):
            out = linear_ramp(c1, c2, m)
            assert out.colors[0] == c1
            assert out.colors[-1] == c2

    def test_kind_and_model_id(self):
        out = linear_ramp(LabColor(30.0, 0.0, 0.0), LabColor(70.0, 0.0, 0.0), 5)
        assert out.kind == "linear"
        assert out.model_id == "linear"


class TestFormats:
    def test_hex_lines(self):
        out = linear_ramp(LabColor(0.0, 0.0, 0.0), LabColor(100.0, 0.0, 0.0), 2)
        assert format_hex_lines(out.colors) == "#000000\n#FFFFFF\n"

    def test_lab_rows(self):
        out = linear_ramp(LabColor(30.0, 1.0, -1.0), LabColor(70.0, 0.0, 0.0), 3)
        text = format_lab_csv(out.colors)
        lines = text.strip().split("\n")
        assert len(lines) == 3
        assert lines[0] == "30.0000,1.0000,-1.0000"

    def test_css_gradient(self):
        out = linear_ramp(LabColor(0.0, 0.0, 0.0), LabColor(100.0, 0.0, 0.0), 3)
        text = format_css_gradient(out.colors)
        assert text.count("linear-gradient(") == 1
        assert "#000000 0%" in text
        assert "50%" in text
        assert "#FFFFFF 100%" in text
