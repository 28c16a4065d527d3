"""Turn models into ramps: seed with a single color, compose diverging ramps
around a gray center, apply user edits with gamut-revert semantics, and
sample to arbitrary length.

Seeding anchors the control point whose lightness-profile value sits closest
to the seed's L*, translates the model there, and leaves the relative
structure untouched. Edits that push any color outside the sRGB gamut return
the previous ramp unchanged with status "reverted".
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .colorspace import LabColor, format_hex, in_gamut, lab_to_srgb
from .curve import AffineEdit, apply_edit_points, resample_points
from .errors import InvalidEditError, InvalidRampError, LightnessRangeError, OutOfGamutError
from .modelbook import DEFAULT_DIVERGING_ANGLE, DEFAULT_ROTATION_LIMIT, RampModel

_CHROMA_TOLERANCE = 0.1
_L_SLACK = 1e-9


@dataclass(frozen=True)
class GeneratedRamp:
    """A seeded (and possibly edited) ramp plus its provenance."""

    colors: tuple[LabColor, ...]
    model_id: str
    seed: LabColor
    kind: str  # sequential | diverging | linear
    edits: tuple[AffineEdit, ...] = ()
    gamut_status: str = "clean"  # clean | clipped | reverted
    anchor_index: int = 0

    def points(self) -> np.ndarray:
        return np.array([[c.L, c.a, c.b] for c in self.colors])


def _colors_from_points(pts: np.ndarray) -> tuple[LabColor, ...]:
    return tuple(LabColor(float(L), float(a), float(b)) for L, a, b in pts)


def _check_l_range(pts: np.ndarray, context: str) -> np.ndarray:
    low, high = pts[:, 0].min(), pts[:, 0].max()
    if low < -_L_SLACK or high > 100.0 + _L_SLACK:
        raise LightnessRangeError(
            f"{context} pushes L* to [{low:.2f}, {high:.2f}], outside [0, 100]; "
            "try another model, seed, or edit")
    out = pts.copy()
    out[:, 0] = np.clip(out[:, 0], 0.0, 100.0)  # round-off only, see check above
    return out


def _max_chroma_color(color: LabColor) -> LabColor:
    """Largest in-gamut chroma at this L* and hue, found by bisection to
    within 0.1 chroma. L* and hue angle are untouched."""
    c = math.hypot(color.a, color.b)
    if in_gamut(color):
        return color
    gray = LabColor(color.L, 0.0, 0.0)
    if c < 1e-12 or not in_gamut(gray):
        raise OutOfGamutError(
            f"no sRGB color exists at L*={color.L:.2f} even at zero chroma")
    ua, ub = color.a / c, color.b / c
    lo, hi = 0.0, c
    while hi - lo > _CHROMA_TOLERANCE:
        mid = (lo + hi) / 2.0
        if in_gamut(LabColor(color.L, mid * ua, mid * ub)):
            lo = mid
        else:
            hi = mid
    return LabColor(color.L, lo * ua, lo * ub)


def gamut_fit(ramp: GeneratedRamp, mode: str = "strict") -> GeneratedRamp:
    """Resolve out-of-gamut colors: `strict` raises, `clip` reduces each
    offender's chroma toward the gray axis. The anchor color is never
    modified (seeding guarantees it is in gamut)."""
    if mode not in ("strict", "clip"):
        raise ValueError(f"gamut mode must be 'strict' or 'clip', got {mode!r}")
    offending = [i for i, c in enumerate(ramp.colors) if not in_gamut(c)]
    if not offending:
        return ramp
    if mode == "strict":
        raise OutOfGamutError(
            f"colors at indices {offending} are outside the sRGB gamut")
    if ramp.anchor_index in offending:
        raise OutOfGamutError(
            f"anchor color at index {ramp.anchor_index} is out of gamut; "
            "the seed must be an sRGB color")
    fitted = list(ramp.colors)
    for i in offending:
        fitted[i] = _max_chroma_color(fitted[i])
    return replace(ramp, colors=tuple(fitted), gamut_status="clipped")


def _seed_points(model: RampModel, seed: LabColor) -> tuple[np.ndarray, int]:
    anchor = int(np.argmin(np.abs(model.l_profile - seed.L)))  # ties: lower index
    target = np.array([seed.L, seed.a, seed.b])
    pts = model.shape + (target - model.shape[anchor])
    pts[anchor] = target  # anchor equals the seed bit-for-bit
    return pts, anchor


def seed_sequential(model: RampModel, seed: LabColor, gamut_mode: str = "strict") -> GeneratedRamp:
    """Anchor the model at the seed color: pick the control index whose
    lightness-profile value is nearest the seed's L*, then translate the
    whole curve so that control point equals the seed exactly."""
    if not in_gamut(seed):
        raise OutOfGamutError(f"seed ({seed.L:.2f}, {seed.a:.2f}, {seed.b:.2f}) "
                              "is not an sRGB color")
    pts, anchor = _seed_points(model, seed)
    pts = _check_l_range(pts, f"seeding model {model.id!r}")
    ramp = GeneratedRamp(
        colors=_colors_from_points(pts),
        model_id=model.id,
        seed=seed,
        kind="sequential",
        anchor_index=anchor,
    )
    return gamut_fit(ramp, gamut_mode)


def _rotate_ab(pts: np.ndarray, degrees: float, pivot: np.ndarray) -> np.ndarray:
    t = math.radians(degrees)
    rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    out = pts.copy()
    out[:, 1:] = (pts[:, 1:] - pivot[1:]) @ rot.T + pivot[1:]
    return out


def seed_diverging(model: RampModel, seed: LabColor, arm_rotation_degrees: float = 0.0,
                   join_angle_degrees: float = DEFAULT_DIVERGING_ANGLE,
                   rotation_limit_degrees: float = DEFAULT_ROTATION_LIMIT,
                   clamp_rotation: bool = False,
                   gamut_mode: str = "strict") -> GeneratedRamp:
    """Two copies of the seeded arm joined at the curve's end point, the
    duplicate rotated in a*-b* so the arms subtend the join angle (plus any
    user arm rotation), then the whole ramp translated so the shared center
    is a pure gray. 17 colors; the center (index 8) is the edit anchor."""
    if abs(arm_rotation_degrees) > rotation_limit_degrees:
        if not clamp_rotation:
            raise InvalidEditError(
                f"arm rotation {arm_rotation_degrees:.1f} exceeds the "
                f"±{rotation_limit_degrees:.0f} degree limit")
        clamped = math.copysign(rotation_limit_degrees, arm_rotation_degrees)
        warnings.warn(f"arm rotation {arm_rotation_degrees:.1f} clamped to {clamped:.1f}",
                      stacklevel=2)
        arm_rotation_degrees = clamped
    if not in_gamut(seed):
        raise OutOfGamutError(f"seed ({seed.L:.2f}, {seed.a:.2f}, {seed.b:.2f}) "
                              "is not an sRGB color")
    arm, _ = _seed_points(model, seed)
    arm = _check_l_range(arm, f"seeding model {model.id!r}")
    center = arm[-1]
    mirror = _rotate_ab(arm, join_angle_degrees + arm_rotation_degrees, center)
    full = np.vstack([arm, mirror[-2::-1]])
    full[:, 1:] -= center[1:]  # gray center: a* = b* = 0 exactly
    ramp = GeneratedRamp(
        colors=_colors_from_points(full),
        model_id=model.id,
        seed=seed,
        kind="diverging",
        anchor_index=len(arm) - 1,
    )
    return gamut_fit(ramp, gamut_mode)


def apply_user_edit(ramp: GeneratedRamp, edit: AffineEdit) -> GeneratedRamp:
    """Apply an affine edit about the ramp's anchor color. If any resulting
    color leaves the gamut the input ramp is returned unchanged with status
    "reverted"; otherwise the edit joins the ramp's edit stack."""
    pivot = ramp.points()[ramp.anchor_index]
    pts = apply_edit_points(ramp.points(), edit, pivot)
    if pts[:, 0].min() < -_L_SLACK or pts[:, 0].max() > 100.0 + _L_SLACK:
        return replace(ramp, gamut_status="reverted")
    pts[:, 0] = np.clip(pts[:, 0], 0.0, 100.0)
    colors = _colors_from_points(pts)
    if not all(in_gamut(c) for c in colors):
        return replace(ramp, gamut_status="reverted")
    return replace(ramp, colors=colors, edits=ramp.edits + (edit,), gamut_status="clean")


def sample_ramp(ramp: GeneratedRamp, m: int):
    """m arc-length-equidistant colors on the spline through the ramp's
    colors. m=9 reproduces an unedited seeded ramp within 0.5 dE."""
    if m < 2:
        raise InvalidRampError(f"need at least 2 samples, got {m}")
    pts = resample_points(ramp.points(), m)
    # cubic overshoot past the lightness bounds is sub-perceptual; pin it
    pts[:, 0] = np.clip(pts[:, 0], 0.0, 100.0)
    return _colors_from_points(pts)


def sample_in_gamut(ramp: GeneratedRamp, m: int, mode: str = "clip"):
    """sample_ramp plus gamut handling for display paths: spline
    interpolation between in-gamut colors can wander slightly outside."""
    colors = sample_ramp(ramp, m)
    if mode == "strict":
        bad = [i for i, c in enumerate(colors) if not in_gamut(c)]
        if bad:
            raise OutOfGamutError(f"sampled colors at indices {bad} left the gamut")
        return colors
    return tuple(c if in_gamut(c) else _max_chroma_color(c) for c in colors)


def linear_ramp(c1: LabColor, c2: LabColor, m: int, gamut_mode: str = "strict") -> GeneratedRamp:
    """The straight-line baseline: m colors evenly spaced on the CIELAB
    segment from c1 to c2."""
    if m < 2:
        raise InvalidRampError(f"need at least 2 colors, got {m}")
    for c in (c1, c2):
        if not in_gamut(c):
            raise OutOfGamutError(f"endpoint ({c.L:.2f}, {c.a:.2f}, {c.b:.2f}) "
                                  "is not an sRGB color")
    a = np.array([c1.L, c1.a, c1.b])
    b = np.array([c2.L, c2.a, c2.b])
    t = np.linspace(0.0, 1.0, m)[:, None]
    pts = a + t * (b - a)
    ramp = GeneratedRamp(
        colors=_colors_from_points(pts),
        model_id="linear",
        seed=c1,
        kind="linear",
        anchor_index=0,
    )
    return gamut_fit(ramp, gamut_mode)


# ---------------------------------------------------------------------------
# export formats shared by the CLI and server


def format_hex_lines(ramp_colors) -> str:
    return "".join(format_hex(lab_to_srgb(c)) + "\n" for c in ramp_colors)


def _fmt4(v: float) -> str:
    return f"{round(v, 4) + 0.0:.4f}"  # + 0.0 kills negative zero


def format_lab_csv(ramp_colors) -> str:
    return "".join(f"{_fmt4(c.L)},{_fmt4(c.a)},{_fmt4(c.b)}\n" for c in ramp_colors)


def format_css_gradient(ramp_colors) -> str:
    n = len(ramp_colors)
    stops = []
    for i, c in enumerate(ramp_colors):
        pct = 100.0 * i / (n - 1) if n > 1 else 0.0
        text = f"{pct:.4f}".rstrip("0").rstrip(".")
        stops.append(f"{format_hex(lab_to_srgb(c))} {text}%")
    return "linear-gradient(to right, " + ", ".join(stops) + ")\n"
