"""Normalized ramp curves: spline fitting, arc-length resampling, alignment,
and affine edits in CIELAB.

A normalized curve has exactly 9 control points taken at equal arc-length
fractions along an interpolating cubic B-spline through the source colors
(chord-length parameterization, scipy splprep). Arc length is measured on a
dense 1024-segment polyline sampling of the spline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.interpolate import splev, splprep

from .colorspace import LabColor
from .errors import InvalidEditError, InvalidRampError

CONTROL_POINTS = 9
_DENSE_SEGMENTS = 1024
_ZERO_SEG = 1e-12


class RampKind(str, Enum):
    SEQUENTIAL = "sequential"
    DIVERGING = "diverging"


class RampSource(str, Enum):
    COLORBREWER = "colorbrewer"
    R = "r"
    TABLEAU = "tableau"
    COLOURLOVERS = "colourlovers"
    OTHER = "other"


@dataclass(frozen=True)
class RawRamp:
    """A designer ramp as ingested: ordered CIELAB colors plus provenance."""

    id: str
    source: RampSource
    kind: RampKind
    colors: tuple[LabColor, ...]

    def __post_init__(self):
        if len(self.colors) < 2:
            raise InvalidRampError(f"ramp {self.id!r} has fewer than 2 colors")


@dataclass(frozen=True, eq=False)
class RampCurve:
    """A normalized 9-point curve; points is a read-only (9, 3) float array."""

    points: np.ndarray
    origin_id: str | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (CONTROL_POINTS, 3):
            raise InvalidRampError(f"curve must have shape (9, 3), got {pts.shape}")
        pts = np.array(pts)  # private copy
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_labcolors(cls, colors, origin_id=None) -> "RampCurve":
        return cls(np.array([[c.L, c.a, c.b] for c in colors]), origin_id)

    def labcolors(self) -> tuple[LabColor, ...]:
        return tuple(LabColor(float(L), float(a), float(b)) for L, a, b in self.points)


@dataclass(frozen=True)
class AffineEdit:
    """A user edit: reflect, then rotate in a*-b*, then uniform scale, then
    translate. Rotation/scale/reflection act about the supplied pivot."""

    translate_l: float = 0.0
    translate_a: float = 0.0
    translate_b: float = 0.0
    rotate_ab_degrees: float = 0.0
    scale: float = 1.0
    reflect: bool = False


@dataclass(frozen=True)
class AlignmentRecord:
    """The rigid motion applied to one curve by align_cluster:
    aligned = reflect? @ rotation @ (points - offset)."""

    offset: np.ndarray
    rotation: np.ndarray
    reflected: bool
    degenerate: bool = False


def _collapse_duplicates(points: np.ndarray) -> np.ndarray:
    keep = [0]
    for i in range(1, len(points)):
        if np.linalg.norm(points[i] - points[keep[-1]]) > _ZERO_SEG:
            keep.append(i)
    return points[keep]


def _dense_polyline(points: np.ndarray) -> np.ndarray:
    """Trace the interpolating curve through `points` as a dense polyline."""
    n = len(points)
    if n >= 4:
        tck, _ = splprep(points.T, s=0, k=3)
        u = np.linspace(0.0, 1.0, _DENSE_SEGMENTS + 1)
        return np.array(splev(u, tck)).T
    # fewer than 4 distinct colors: piecewise-linear, which its own chords
    # already trace exactly
    return points


def _resample_polyline(poly: np.ndarray, m: int) -> np.ndarray:
    seg = np.linalg.norm(np.diff(poly, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    if total <= _ZERO_SEG:
        raise InvalidRampError("curve has zero arc length")
    targets = np.linspace(0.0, total, m)
    out = np.column_stack([np.interp(targets, cum, poly[:, i]) for i in range(3)])
    out[0] = poly[0]
    out[-1] = poly[-1]
    return out


def resample_points(points: np.ndarray, m: int) -> np.ndarray:
    """Refit the interpolating spline through `points` and return m
    arc-length-equidistant samples (endpoints exact)."""
    if m < 2:
        raise InvalidRampError(f"need at least 2 output points, got {m}")
    pts = _collapse_duplicates(np.asarray(points, dtype=float))
    if len(pts) < 2:
        raise InvalidRampError("need at least 2 distinct colors")
    first, last = points[0].copy(), points[-1].copy()
    out = _resample_polyline(_dense_polyline(pts), m)
    out[0], out[-1] = first, last
    return out


def fit_and_resample(ramp: RawRamp) -> RampCurve:
    """Normalize a ramp to a 9-point curve on its interpolating cubic B-spline.

    Consecutive duplicate colors are collapsed before fitting. Ramps with
    fewer than 4 distinct colors fall back to piecewise-linear interpolation.
    """
    pts = np.array([[c.L, c.a, c.b] for c in ramp.colors])
    return RampCurve(resample_points(pts, CONTROL_POINTS), origin_id=ramp.id)


def curve_length(c: RampCurve) -> float:
    """Total length: summed CIE76 distance between consecutive control points."""
    return float(np.linalg.norm(np.diff(c.points, axis=0), axis=1).sum())


def _rotation_between(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Minimal-angle rotation matrix taking unit vector u onto unit vector v."""
    axis = np.cross(u, v)
    s = np.linalg.norm(axis)
    cos = float(np.dot(u, v))
    if s < 1e-12:
        if cos > 0:
            return np.eye(3)
        # opposite vectors: 180 degrees about any axis perpendicular to u
        perp = np.cross(u, [1.0, 0.0, 0.0])
        if np.linalg.norm(perp) < 1e-6:
            perp = np.cross(u, [0.0, 1.0, 0.0])
        perp /= np.linalg.norm(perp)
        k = _skew(perp)
        return np.eye(3) + 2.0 * (k @ k)
    k = _skew(axis)
    return np.eye(3) + k + (k @ k) * ((1.0 - cos) / (s * s))


def _skew(v: np.ndarray) -> np.ndarray:
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def _roll_about_l(point: np.ndarray) -> np.ndarray:
    """Rotation about the L* axis zeroing `point`'s b component with a >= 0."""
    a, b = point[1], point[2]
    r = math.hypot(a, b)
    if r < 1e-12:
        return np.eye(3)
    cos, sin = a / r, b / r
    # maps (a, b) -> (r, 0)
    return np.array([
        [1.0, 0.0, 0.0],
        [0.0, cos, sin],
        [0.0, -sin, cos],
    ])


_REFLECT_B = np.diag([1.0, 1.0, -1.0])
_REFERENCE_DIRECTION = np.array([1.0, 0.0, 0.0])  # the L* axis


def _canonical_frame(points: np.ndarray):
    """Translate the curve start to the origin and rotate its first->middle
    vector onto the L* axis; residual roll is fixed by zeroing the last
    point's b* component (a* >= 0). A curve whose first and middle points
    coincide is aligned by its first->last vector instead (roll fixed by the
    middle point); if that is degenerate too the curve is only translated and
    flagged. Returns (aligned points, offset, rotation, translate_only)."""
    offset = points[0].copy()
    centered = points - offset
    heading = centered[CONTROL_POINTS // 2]
    roll_landmark_index = -1
    if np.linalg.norm(heading) < 1e-9:
        heading = centered[-1]
        roll_landmark_index = CONTROL_POINTS // 2
        if np.linalg.norm(heading) < 1e-9:
            return centered, offset, np.eye(3), True
    primary = _rotation_between(heading / np.linalg.norm(heading), _REFERENCE_DIRECTION)
    rotated = centered @ primary.T
    roll = _roll_about_l(rotated[roll_landmark_index])
    rotation = roll @ primary
    return centered @ rotation.T, offset, rotation, False


def align_cluster(curves, max_passes: int = 10):
    """Align curves to a common frame and resolve hue handedness.

    Every curve is translated to start at the origin and rotated so its
    first->middle vector points along the L* axis (roll fixed by the last
    point, see _canonical_frame). Each curve after the first is then
    reflected across the b* = 0 plane whenever that strictly reduces its
    summed control-point distance to the running cluster mean; passes repeat
    until no curve flips.

    Returns (aligned curves, alignment records), index-matched to the input.
    """
    if not curves:
        raise InvalidRampError("align_cluster needs at least one curve")
    frames = []
    for c in curves:
        pts, offset, rotation, degenerate = _canonical_frame(c.points)
        frames.append([pts, offset, rotation, False, degenerate])

    if len(frames) > 1:
        # bootstrap handedness greedily against a running mean seeded by the
        # first curve (breaks the tie a symmetric pair would otherwise hit),
        # then settle with full-mean passes until no curve flips
        ref_sum = frames[0][0].copy()
        for i, frame in enumerate(frames[1:], start=1):
            mirrored = frame[0] @ _REFLECT_B
            ref = ref_sum / i
            if (np.linalg.norm(mirrored - ref, axis=1).sum()
                    < np.linalg.norm(frame[0] - ref, axis=1).sum() - 1e-12):
                frame[0] = mirrored
                frame[3] = True
            ref_sum += frame[0]
        for _ in range(max_passes):
            mean = np.mean([f[0] for f in frames], axis=0)
            changed = False
            for frame in frames:
                mirrored = frame[0] @ _REFLECT_B
                if (np.linalg.norm(mirrored - mean, axis=1).sum()
                        < np.linalg.norm(frame[0] - mean, axis=1).sum() - 1e-12):
                    frame[0] = mirrored
                    frame[3] = not frame[3]
                    changed = True
            if not changed:
                break

    aligned = [
        RampCurve(pts, origin_id=c.origin_id) for (pts, *_), c in zip(frames, curves)
    ]
    records = [
        AlignmentRecord(offset=offset, rotation=rotation, reflected=reflected,
                        degenerate=degenerate)
        for _, offset, rotation, reflected, degenerate in frames
    ]
    return aligned, records


def apply_edit_points(points: np.ndarray, e: AffineEdit, pivot: np.ndarray) -> np.ndarray:
    """Apply an affine edit to raw (m, 3) LAB points about a pivot."""
    if e.scale <= 0:
        raise InvalidEditError(f"scale must be positive, got {e.scale}")
    pts = np.asarray(points, dtype=float).copy()
    pivot = np.asarray(pivot, dtype=float)

    if e.reflect:
        # reflect across the plane spanned by the pivot's L* axis and the
        # curve's start->mid direction in a*-b*
        u = (pts[len(pts) // 2] - pts[0])[1:]
        if np.linalg.norm(u) < 1e-12:
            u = (pts[-1] - pts[0])[1:]
        if np.linalg.norm(u) < 1e-12:
            u = np.array([1.0, 0.0])
        u = u / np.linalg.norm(u)
        house = 2.0 * np.outer(u, u) - np.eye(2)
        pts[:, 1:] = (pts[:, 1:] - pivot[1:]) @ house.T + pivot[1:]

    if e.rotate_ab_degrees:
        t = math.radians(e.rotate_ab_degrees)
        rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
        pts[:, 1:] = (pts[:, 1:] - pivot[1:]) @ rot.T + pivot[1:]

    if e.scale != 1.0:
        pts = (pts - pivot) * e.scale + pivot

    pts[:, 0] += e.translate_l
    pts[:, 1] += e.translate_a
    pts[:, 2] += e.translate_b
    return pts


def apply_edit(c: RampCurve, e: AffineEdit, pivot: LabColor) -> RampCurve:
    """Apply an affine edit to a curve about a pivot color."""
    piv = np.array([pivot.L, pivot.a, pivot.b])
    return RampCurve(apply_edit_points(c.points, e, piv), origin_id=c.origin_id)
