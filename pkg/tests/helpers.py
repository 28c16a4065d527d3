"""Independent oracles used by the test suite.

Everything here is deliberately written against published reference formulas
and kept separate from the package's own code paths, so tests cross-check
two implementations rather than one implementation against itself.
"""

import numpy as np

# Published sRGB D65 constants (IEC 61966-2-1 / Lindbloom tables).
_M = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
_WHITE = np.array([0.95047, 1.0, 1.08883])


def srgb_array_to_lab(rgb: np.ndarray) -> np.ndarray:
    """Vectorized sRGB (0-255 integer, shape (n, 3)) -> CIELAB (n, 3)."""
    c = rgb.astype(np.float64) / 255.0
    lin = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    xyz = lin @ _M.T
    t = xyz / _WHITE
    d = 6.0 / 29.0
    f = np.where(t > d ** 3, np.cbrt(t), t / (3 * d * d) + 4.0 / 29.0)
    return np.column_stack([
        116.0 * f[:, 1] - 16.0,
        500.0 * (f[:, 0] - f[:, 1]),
        200.0 * (f[:, 1] - f[:, 2]),
    ])


def min_delta_e_over_srgb_cube(target_lab) -> float:
    """Brute-force minimum CIE76 distance from target to any sRGB triple."""
    target = np.asarray(target_lab, dtype=np.float64)
    gb = np.stack(np.meshgrid(np.arange(256), np.arange(256), indexing="ij"),
                  axis=-1).reshape(-1, 2)
    best = np.inf
    for r in range(256):
        rgb = np.column_stack([np.full(len(gb), r), gb])
        lab = srgb_array_to_lab(rgb)
        d = np.sqrt(((lab - target) ** 2).sum(axis=1)).min()
        best = min(best, float(d))
    return best


def channel_extrema_count(values) -> int:
    """Strict interior local extrema in one channel; plateaus excluded."""
    count = 0
    for i in range(1, len(values) - 1):
        left = values[i] - values[i - 1]
        right = values[i] - values[i + 1]
        if (left > 0 and right > 0) or (left < 0 and right < 0):
            count += 1
    return count


def circle_points_ab(radius: float, arc_fraction: float, n: int, center_l: float = 50.0) -> np.ndarray:
    """n points equally spaced by angle along an arc in the a*-b* plane."""
    theta = np.linspace(0.0, 2.0 * np.pi * arc_fraction, n)
    return np.column_stack([
        np.full(n, center_l),
        radius * np.cos(theta),
        radius * np.sin(theta),
    ])
