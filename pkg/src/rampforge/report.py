"""Diagnostic report rendering: model curve projections and clustering score
tables, written as PNG figures next to their CSV counterparts.

Figures use the two projection planes the interactive tool also shows: the
a*-b* (hue) plane and the L*-C (lightness vs chroma) plane.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .clustering import write_score_table
from .modelbook import ModelBook, TrainingResult

_METHOD_COLORS = {"kmeans": "#1F77B4", "elastic": "#D62728"}


def model_projection_figure(book: ModelBook) -> Figure:
    """Small multiples of every model's shape, projected onto a*-b* and L*-C."""
    n = max(len(book.models), 1)
    fig = Figure(figsize=(2.4 * n, 5.0))
    axes = fig.subplots(2, n, squeeze=False)
    for col, model in enumerate(book.models):
        shape = model.shape
        chroma = np.hypot(shape[:, 1], shape[:, 2])
        color = _METHOD_COLORS.get(model.method, "#333333")
        ax_ab, ax_lc = axes[0][col], axes[1][col]
        ax_ab.plot(shape[:, 1], shape[:, 2], "-o", color=color, ms=3)
        ax_ab.plot(shape[0, 1], shape[0, 2], "s", color="black", ms=5)
        ax_ab.set_title(f"{model.id} (n={model.cluster_size})", fontsize=8)
        ax_ab.set_xlabel("a*", fontsize=7)
        ax_ab.set_ylabel("b*", fontsize=7)
        ax_ab.axhline(0, color="0.85", lw=0.5)
        ax_ab.axvline(0, color="0.85", lw=0.5)
        ax_ab.set_aspect("equal", adjustable="datalim")
        ax_lc.plot(chroma, shape[:, 0], "-o", color=color, ms=3)
        ax_lc.plot(chroma[0], shape[0, 0], "s", color="black", ms=5)
        ax_lc.set_xlabel("C", fontsize=7)
        ax_lc.set_ylabel("L*", fontsize=7)
        ax_lc.set_ylim(0, 100)
    for row in axes:
        for ax in row:
            ax.tick_params(labelsize=6)
    fig.suptitle("model curves: a*-b* (top) and L*-C (bottom) projections", fontsize=10)
    fig.tight_layout(rect=(0, 0, 1, 0.95))
    return fig


def feature_selection_figure(rows) -> Figure:
    """Best achievable tightness per k across all feature subsets."""
    fig = Figure(figsize=(6, 4))
    ax = fig.subplots()
    by_k: dict[int, list[float]] = {}
    for row in rows:
        if row.valid and math.isfinite(row.mean_tightness):
            by_k.setdefault(row.k, []).append(row.mean_tightness)
    ks = sorted(by_k)
    if ks:
        ax.plot(ks, [min(by_k[k]) for k in ks], "-o", color="#1F77B4", label="best subset")
        ax.plot(ks, [float(np.median(by_k[k])) for k in ks], "--", color="0.6",
                label="median subset")
        ax.legend(fontsize=8)
    ax.set_xlabel("k")
    ax.set_ylabel("mean cluster tightness")
    ax.set_title("feature-subset search")
    return fig


def weight_sweep_figure(rows) -> Figure:
    """Tightness against the shape/length balance w."""
    fig = Figure(figsize=(6, 4))
    ax = fig.subplots()
    ws = [float(r.config) for r in rows]
    ax.plot(ws, [r.mean_tightness for r in rows], "-o", color="#D62728")
    for w, r in zip(ws, rows):
        ax.annotate(f"k={r.k}", (w, r.mean_tightness), fontsize=7,
                    textcoords="offset points", xytext=(0, 6))
    ax.set_xlabel("w (shape weight)")
    ax.set_ylabel("mean cluster tightness")
    ax.set_title("elastic metric weight sweep")
    return fig


def write_model_summary(book: ModelBook, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "method", "cluster_size", "length",
                         "l_min", "l_max", "member_ids"])
        for m in book.models:
            length = float(np.linalg.norm(np.diff(m.shape, axis=0), axis=1).sum())
            writer.writerow([
                m.id, m.method, m.cluster_size, f"{length:.4f}",
                f"{m.l_profile.min():.4f}", f"{m.l_profile.max():.4f}",
                ";".join(m.member_ids),
            ])


def write_report(out_dir, book: ModelBook, result: TrainingResult | None = None) -> list[str]:
    """Render the report bundle into a directory; returns the files written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    fig = model_projection_figure(book)
    fig.savefig(out / "model_curves.png", dpi=150)
    written.append("model_curves.png")

    write_model_summary(book, out / "model_summary.csv")
    written.append("model_summary.csv")

    if result is not None:
        write_score_table(result.kmeans.table, out / "feature_selection_scores.csv")
        written.append("feature_selection_scores.csv")
        write_score_table(result.elastic.table, out / "weight_sweep_scores.csv")
        written.append("weight_sweep_scores.csv")
        feature_selection_figure(result.kmeans.table).savefig(
            out / "feature_selection.png", dpi=150)
        written.append("feature_selection.png")
        weight_sweep_figure(result.elastic.table).savefig(
            out / "weight_sweep.png", dpi=150)
        written.append("weight_sweep.png")
    return written
