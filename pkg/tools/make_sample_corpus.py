#!/usr/bin/env python3
"""Generate the bundled sample corpus: synthetic designer-style ramps in four
structural families plus a handful of diverging ramps, all verified in-gamut.

Writes src/rampforge/data/sample_corpus.txt and its manifest. Deterministic;
rerun only when the corpus design changes.
"""

import json
import math
from pathlib import Path

import numpy as np

from rampforge.colorspace import LabColor, format_hex, in_gamut, lab_to_srgb

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "rampforge" / "data"


def max_chroma(L, ca, sa, ceiling=130.0):
    lo, hi = 0.0, ceiling
    while hi - lo > 0.05:
        mid = (lo + hi) / 2.0
        if in_gamut(LabColor(L, mid * ca, mid * sa)):
            lo = mid
        else:
            hi = mid
    return lo


def clip_chroma(L, a, b):
    """Cap chroma at 85% of the gamut boundary: designer ramps sit inside
    the gamut with margin, never on its wall."""
    c = math.hypot(a, b)
    if c < 1e-9:
        return LabColor(L, 0.0, 0.0)
    ca, sa = a / c, b / c
    c = min(c, 0.85 * max_chroma(L, ca, sa))
    return LabColor(L, c * ca, c * sa)


def arc_ramp(l0, l1, hue0, hue1, chroma_peak, n, chroma_floor=8.0):
    t = np.linspace(0, 1, n)
    colors = []
    for ti in t:
        L = l0 + (l1 - l0) * ti
        hue = math.radians(hue0 + (hue1 - hue0) * ti)
        c = chroma_floor + (chroma_peak - chroma_floor) * math.sin(math.pi * (0.1 + 0.8 * ti))
        colors.append(clip_chroma(L, c * math.cos(hue), c * math.sin(hue)))
    return colors


def kinked_ramp(l0, l1, hue0, swing, chroma, n):
    """Hue swings out and back: a deliberate mid-ramp kink."""
    t = np.linspace(0, 1, n)
    colors = []
    for ti in t:
        L = l0 + (l1 - l0) * ti
        hue = math.radians(hue0 + swing * math.sin(math.pi * ti))
        c = chroma * (0.45 + 0.55 * math.sin(math.pi * (0.12 + 0.76 * ti)))
        colors.append(clip_chroma(L, c * math.cos(hue), c * math.sin(hue)))
    return colors


def straight_ramp(l0, l1, ab0, ab1, n):
    t = np.linspace(0, 1, n)
    return [clip_chroma(l0 + (l1 - l0) * ti,
                        ab0[0] + (ab1[0] - ab0[0]) * ti,
                        ab0[1] + (ab1[1] - ab0[1]) * ti) for ti in t]


def diverging_ramp(arm_l0, center_l, hue_left, hue_right, chroma, n_per_arm):
    left = arc_ramp(arm_l0, center_l, hue_left, hue_left + 8, chroma, n_per_arm)
    right = arc_ramp(arm_l0, center_l, hue_right, hue_right - 8, chroma, n_per_arm)
    center = clip_chroma(center_l, 0.0, 0.0)
    return left[:-1] + [center] + right[-2::-1]


def main():
    lines = ["# bundled sample corpus: synthetic designer-style ramps",
             "# format: id,source,kind,hex1;hex2;..."]
    entries = []

    def add(ramp_id, source, kind, colors):
        hexes = ";".join(format_hex(lab_to_srgb(c)) for c in colors)
        entries.append((ramp_id, source, kind, len(colors)))
        lines.append(f"{ramp_id},{source},{kind},{hexes}")

    # family 1: cool arcs, long and saturated (colorbrewer-style blues/greens)
    specs = [(20, 95, 250, 190, 42, 9), (22, 93, 260, 200, 38, 7),
             (18, 94, 240, 185, 45, 11), (25, 96, 255, 205, 40, 5),
             (21, 92, 245, 180, 44, 13), (19, 95, 265, 210, 36, 8),
             (23, 94, 235, 175, 43, 6)]
    for i, (l0, l1, h0, h1, c, n) in enumerate(specs):
        add(f"cb-cool-{i}", "colorbrewer", "sequential", arc_ramp(l0, l1, h0, h1, c, n))

    # family 2: warm near-straight paths toward pale yellows (tableau-style)
    specs = [(18, 88, (28, 12), (4, 20), 9), (20, 90, (30, 14), (5, 22), 7),
             (17, 86, (26, 10), (4, 18), 10), (22, 92, (32, 16), (6, 23), 5),
             (19, 89, (29, 13), (5, 19), 12), (20, 87, (27, 11), (4, 21), 6),
             (18, 91, (31, 15), (5, 22), 8)]
    for i, (l0, l1, ab0, ab1, n) in enumerate(specs):
        add(f"tab-warm-{i}", "tableau", "sequential", straight_ramp(l0, l1, ab0, ab1, n))

    # family 3: kinked hue swings (colourlovers-style)
    specs = [(25, 90, 120, 32, 34, 9), (28, 92, 130, 28, 32, 8),
             (24, 88, 115, 36, 35, 11), (27, 91, 125, 26, 30, 6),
             (26, 89, 118, 30, 34, 10), (23, 93, 128, 34, 31, 7),
             (25, 90, 122, 29, 33, 13)]
    for i, (l0, l1, h0, sw, c, n) in enumerate(specs):
        add(f"cl-kink-{i}", "colourlovers", "sequential", kinked_ramp(l0, l1, h0, sw, c, n))

    # family 4: short muted purples (r-style)
    specs = [(32, 72, 320, 290, 26, 5), (30, 70, 315, 285, 28, 6),
             (34, 74, 325, 295, 24, 7), (31, 71, 318, 288, 27, 5),
             (33, 73, 322, 292, 25, 6), (30, 75, 316, 286, 29, 8),
             (32, 70, 324, 294, 23, 5)]
    for i, (l0, l1, h0, h1, c, n) in enumerate(specs):
        add(f"r-mauve-{i}", "r", "sequential", arc_ramp(l0, l1, h0, h1, c, n))

    # diverging: arms whose a*-b* separations average near 115 degrees
    specs = [(25, 92, 30, 125, 38, 6), (28, 94, 210, 315, 34, 5),
             (24, 91, 150, 265, 36, 7), (26, 93, 0, 115, 40, 6),
             (27, 92, 180, 305, 35, 5), (25, 95, 60, 195, 33, 6)]
    for i, (l0, lc, hl, hr, c, n) in enumerate(specs):
        add(f"cl-div-{i}", "colourlovers", "diverging", diverging_ramp(l0, lc, hl, hr, c, n))

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "sample_corpus.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    manifest = {
        "total": len(entries),
        "sequential": sum(1 for e in entries if e[2] == "sequential"),
        "diverging": sum(1 for e in entries if e[2] == "diverging"),
        "by_source": {},
        "min_colors": min(e[3] for e in entries),
        "max_colors": max(e[3] for e in entries),
    }
    for _, source, _, _ in entries:
        manifest["by_source"][source] = manifest["by_source"].get(source, 0) + 1
    (OUT_DIR / "sample_corpus_manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(entries)} ramps to {OUT_DIR}")


if __name__ == "__main__":
    main()
