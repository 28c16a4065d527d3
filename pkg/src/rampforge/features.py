"""Structural features of normalized curves used by k-means clustering.

Eight feature groups per curve: turning angles at interior points, their sum,
adjacent-pair distances, total length, first/second derivative magnitudes
(finite differences on the uniform arc-length parameterization), curvature as
1/r of the best-fit sphere, and the count of per-channel local extrema.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import CONTROL_POINTS, RampCurve
from .errors import FeatureError

# group name -> number of scalars, in canonical order; bit i of a feature
# subset mask selects group i
FEATURE_GROUPS = (
    ("local_angles", CONTROL_POINTS - 2),
    ("sum_of_angles", 1),
    ("local_discriminability", CONTROL_POINTS - 1),
    ("length", 1),
    ("speed", CONTROL_POINTS),
    ("acceleration", CONTROL_POINTS),
    ("curvature", 1),
    ("turning_points", 1),
)
FEATURE_DIMENSIONS = sum(width for _, width in FEATURE_GROUPS)

_MAX_SPHERE_RADIUS = 1e6


@dataclass(frozen=True)
class FeatureVector:
    local_angles: tuple[float, ...]
    sum_of_angles: float
    local_discriminability: tuple[float, ...]
    length: float
    speed: tuple[float, ...]
    acceleration: tuple[float, ...]
    curvature: float
    turning_points: int

    def as_array(self) -> np.ndarray:
        """Flatten to the canonical 37-dimensional vector (group order)."""
        return np.concatenate([
            self.local_angles,
            [self.sum_of_angles],
            self.local_discriminability,
            [self.length],
            self.speed,
            self.acceleration,
            [self.curvature],
            [float(self.turning_points)],
        ])


def sphere_curvature(c: RampCurve) -> float:
    """1/r of the algebraic (Kasa) least-squares sphere through the points.

    Returns 0 when the linear system is singular (collinear or coplanar
    points) or the fitted radius exceeds 1e6.
    """
    pts = c.points
    a = np.column_stack([2.0 * pts, np.ones(len(pts))])
    b = (pts ** 2).sum(axis=1)
    solution, _, _, sv = np.linalg.lstsq(a, b, rcond=None)
    if len(sv) < 4 or sv[-1] < sv[0] * 1e-10:
        return 0.0
    center, d = solution[:3], solution[3]
    r_sq = d + center @ center
    if r_sq <= 0:
        return 0.0
    r = float(np.sqrt(r_sq))
    if not np.isfinite(r) or r > _MAX_SPHERE_RADIUS:
        return 0.0
    return 1.0 / r


def turning_points(c: RampCurve) -> int:
    """Strict interior local extrema summed across the L*, a*, b* channels.

    Endpoints never count; plateaus (an equal neighbor) never count.
    """
    pts = c.points
    total = 0
    for ch in range(3):
        v = pts[:, ch]
        left = v[1:-1] - v[:-2]
        right = v[1:-1] - v[2:]
        total += int(np.sum((left > 0) & (right > 0)) + np.sum((left < 0) & (right < 0)))
    return total


def compute_features(c: RampCurve) -> FeatureVector:
    """All eight feature groups for one normalized curve."""
    pts = c.points
    diffs = np.diff(pts, axis=0)
    seg_lengths = np.linalg.norm(diffs, axis=1)
    for i, s in enumerate(seg_lengths):
        if s < 1e-12:
            raise FeatureError(f"zero-length segment between control points {i} and {i + 1}")

    unit = diffs / seg_lengths[:, None]
    cos = np.clip((unit[:-1] * unit[1:]).sum(axis=1), -1.0, 1.0)
    angles = np.arccos(cos)

    # finite differences on the uniform parameterization (unit index spacing),
    # one-sided at the ends
    speed = np.empty(CONTROL_POINTS)
    speed[1:-1] = np.linalg.norm((pts[2:] - pts[:-2]) / 2.0, axis=1)
    speed[0] = seg_lengths[0]
    speed[-1] = seg_lengths[-1]

    second = pts[2:] - 2.0 * pts[1:-1] + pts[:-2]
    accel = np.empty(CONTROL_POINTS)
    accel[1:-1] = np.linalg.norm(second, axis=1)
    accel[0] = accel[1]
    accel[-1] = accel[-2]

    return FeatureVector(
        local_angles=tuple(float(x) for x in angles),
        sum_of_angles=float(angles.sum()),
        local_discriminability=tuple(float(x) for x in seg_lengths),
        length=float(seg_lengths.sum()),
        speed=tuple(float(x) for x in speed),
        acceleration=tuple(float(x) for x in accel),
        curvature=sphere_curvature(c),
        turning_points=turning_points(c),
    )


def feature_matrix(curves) -> np.ndarray:
    """Stack feature vectors for a curve collection into an (n, 37) array."""
    return np.array([compute_features(c).as_array() for c in curves])


def standardize(matrix: np.ndarray) -> np.ndarray:
    """Z-score each scalar dimension across the corpus; constant dimensions
    are left at zero rather than dividing by a zero deviation."""
    mean = matrix.mean(axis=0)
    std = matrix.std(axis=0)
    std[std < 1e-12] = 1.0
    return (matrix - mean) / std


def subset_columns(mask: int) -> np.ndarray:
    """Column indices of the flattened feature vector selected by an 8-bit
    group mask (bit i = group i of FEATURE_GROUPS)."""
    if not 1 <= mask <= 255:
        raise ValueError(f"feature mask must be in [1, 255], got {mask}")
    cols = []
    offset = 0
    for bit, (_, width) in enumerate(FEATURE_GROUPS):
        if mask & (1 << bit):
            cols.extend(range(offset, offset + width))
        offset += width
    return np.array(cols, dtype=int)


def mask_to_names(mask: int) -> tuple[str, ...]:
    return tuple(name for bit, (name, _) in enumerate(FEATURE_GROUPS) if mask & (1 << bit))
