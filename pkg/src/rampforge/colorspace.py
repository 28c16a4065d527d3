"""sRGB <-> CIELAB conversion, CIE76 color difference, and gamut tests.

All conversions use the D65 white point and the 2-degree standard observer
with the standard sRGB transfer function. The inverse RGB matrix is computed
numerically from the forward matrix so that round trips are exact to machine
precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import HexParseError, OutOfGamutError

# sRGB (linear) -> XYZ, D65. Rows sum to the white point by construction.
_RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
_XYZ_TO_RGB = np.linalg.inv(_RGB_TO_XYZ)

# White point = forward transform of linear RGB (1, 1, 1).
_WHITE = _RGB_TO_XYZ.sum(axis=1)

# CIELAB nonlinearity breakpoints.
_DELTA = 6.0 / 29.0
_DELTA3 = _DELTA ** 3

# Slack for the exact-inverse gamut membership test on linear RGB channels.
_GAMUT_SLACK = 1e-9

_HEX_RE = re.compile(r"#[0-9a-fA-F]{6}$")


@dataclass(frozen=True)
class SRGBColor:
    """A display color with integer channels in [0, 255]."""

    r: int
    g: int
    b: int

    def __post_init__(self):
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 0 <= v <= 255:
                raise ValueError(f"sRGB channel {name}={v!r} outside [0, 255]")


@dataclass(frozen=True)
class LabColor:
    """A point in CIELAB: L in [0, 100], a/b unbounded opponent axes."""

    L: float
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.L) and math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"non-finite LAB components ({self.L}, {self.a}, {self.b})")
        if not 0.0 <= self.L <= 100.0:
            raise ValueError(f"L={self.L} outside [0, 100]")


def parse_hex(text: str) -> SRGBColor:
    """Parse a '#RRGGBB' string (case-insensitive) into an SRGBColor."""
    if not isinstance(text, str) or not _HEX_RE.match(text):
        raise HexParseError(f"not a #RRGGBB hex color: {text!r}")
    return SRGBColor(int(text[1:3], 16), int(text[3:5], 16), int(text[5:7], 16))


def format_hex(c: SRGBColor) -> str:
    """Format an SRGBColor as uppercase '#RRGGBB'."""
    return f"#{c.r:02X}{c.g:02X}{c.b:02X}"


def _srgb_transfer_inv(u: float) -> float:
    # display-encoded channel in [0, 1] -> linear-light
    if u <= 0.04045:
        return u / 12.92
    return ((u + 0.055) / 1.055) ** 2.4


def _srgb_transfer(u: float) -> float:
    # linear-light channel in [0, 1] -> display-encoded
    if u <= 0.0031308:
        return u * 12.92
    return 1.055 * u ** (1.0 / 2.4) - 0.055


def _lab_f(t: float) -> float:
    if t > _DELTA3:
        return t ** (1.0 / 3.0)
    return t / (3.0 * _DELTA * _DELTA) + 4.0 / 29.0


def _lab_f_inv(u: float) -> float:
    if u > _DELTA:
        return u ** 3
    return 3.0 * _DELTA * _DELTA * (u - 4.0 / 29.0)


def srgb_to_lab(c: SRGBColor) -> LabColor:
    """Convert an sRGB color to CIELAB (D65, 2-degree observer)."""
    linear = np.array([
        _srgb_transfer_inv(c.r / 255.0),
        _srgb_transfer_inv(c.g / 255.0),
        _srgb_transfer_inv(c.b / 255.0),
    ])
    xyz = _RGB_TO_XYZ @ linear
    fx, fy, fz = (_lab_f(float(v)) for v in xyz / _WHITE)
    return LabColor(116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))


def _lab_to_linear_rgb(c: LabColor) -> np.ndarray:
    fy = (c.L + 16.0) / 116.0
    fx = fy + c.a / 500.0
    fz = fy - c.b / 200.0
    xyz = _WHITE * np.array([_lab_f_inv(fx), _lab_f_inv(fy), _lab_f_inv(fz)])
    return _XYZ_TO_RGB @ xyz


def lab_to_srgb(c: LabColor) -> SRGBColor:
    """Convert CIELAB to sRGB, raising OutOfGamutError if unrepresentable.

    Membership is exact inverse-transform: all three linear RGB channels must
    land in [0, 1] within 1e-9; there is no clamping.
    """
    linear = _lab_to_linear_rgb(c)
    if np.any(linear < -_GAMUT_SLACK) or np.any(linear > 1.0 + _GAMUT_SLACK):
        raise OutOfGamutError(
            f"LAB ({c.L:.4f}, {c.a:.4f}, {c.b:.4f}) has no sRGB representation"
        )
    clipped = np.clip(linear, 0.0, 1.0)
    return SRGBColor(*(int(round(_srgb_transfer(float(v)) * 255.0)) for v in clipped))


def in_gamut(c: LabColor) -> bool:
    """True iff the color is representable in sRGB."""
    linear = _lab_to_linear_rgb(c)
    return bool(np.all(linear >= -_GAMUT_SLACK) and np.all(linear <= 1.0 + _GAMUT_SLACK))


def delta_e(x: LabColor, y: LabColor) -> float:
    """CIE76 color difference: Euclidean distance in CIELAB."""
    return math.sqrt((x.L - y.L) ** 2 + (x.a - y.a) ** 2 + (x.b - y.b) ** 2)
