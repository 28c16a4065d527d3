"""Representative curve models per cluster and the persisted model book.

Each model stores the cluster's aligned-and-reflected mean curve in a
canonical frame (a*-b* centroid at the origin, L channel translated so its
average matches the cluster's mean lightness profile) together with that
lightness profile, which is taken from the unaligned member curves and drives
seeding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .clustering import (
    Clustering,
    FeatureSelectionResult,
    WeightSweepResult,
    feature_selection,
    weight_sweep,
)
from .corpus import Corpus
from .curve import CONTROL_POINTS, RampKind, align_cluster, fit_and_resample
from .errors import ModelBookError

MODELBOOK_VERSION = 1
DEFAULT_DIVERGING_ANGLE = 115.0
DEFAULT_ROTATION_LIMIT = 60.0


@dataclass(frozen=True, eq=False)
class RampModel:
    """One cluster's representative: relative shape plus L* anchor profile."""

    id: str
    method: str
    shape: np.ndarray      # (9, 3), canonical frame
    l_profile: np.ndarray  # (9,), mean member L* per control index
    cluster_size: int
    member_ids: tuple[str, ...]

    def __post_init__(self):
        shape = np.array(np.asarray(self.shape, dtype=float))
        profile = np.array(np.asarray(self.l_profile, dtype=float))
        if shape.shape != (CONTROL_POINTS, 3):
            raise ModelBookError(f"model {self.id!r}: shape must be (9, 3), got {shape.shape}")
        if profile.shape != (CONTROL_POINTS,):
            raise ModelBookError(f"model {self.id!r}: l_profile must have 9 entries")
        if np.any(profile < 0.0) or np.any(profile > 100.0):
            raise ModelBookError(f"model {self.id!r}: l_profile outside [0, 100]")
        if self.cluster_size != len(self.member_ids):
            raise ModelBookError(
                f"model {self.id!r}: cluster_size {self.cluster_size} != "
                f"{len(self.member_ids)} member ids")
        shape.flags.writeable = False
        profile.flags.writeable = False
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "l_profile", profile)


@dataclass(frozen=True)
class ModelBook:
    version: int
    corpus_fingerprint: str
    models: tuple[RampModel, ...]
    diverging_angle_degrees: float = DEFAULT_DIVERGING_ANGLE
    diverging_rotation_limit_degrees: float = DEFAULT_ROTATION_LIMIT

    def __post_init__(self):
        ids = [m.id for m in self.models]
        if len(set(ids)) != len(ids):
            raise ModelBookError("model ids are not unique")
        if not 0.0 < self.diverging_angle_degrees <= 180.0:
            raise ModelBookError("diverging angle must be in (0, 180]")
        if not 0.0 < self.diverging_rotation_limit_degrees <= 90.0:
            raise ModelBookError("rotation limit must be in (0, 90]")

    def model(self, model_id: str) -> RampModel:
        for m in self.models:
            if m.id == model_id:
                return m
        raise ModelBookError(f"no model with id {model_id!r}")


@dataclass(frozen=True)
class TrainingConfig:
    rng_seed: int = 42
    k_range: tuple[int, int] = (2, 15)
    alpha: float = 1.0
    sigma: float | None = None
    gibbs_sweeps: int = 500
    jobs: int = 1


@dataclass(frozen=True)
class TrainingResult:
    book: ModelBook
    kmeans: FeatureSelectionResult
    elastic: WeightSweepResult


def build_representative(cluster, model_id: str = "model-0", method: str = "kmeans") -> RampModel:
    """Average a cluster of curves into its representative model.

    Curves are aligned and handedness-resolved first; the mean of the aligned
    control points is then moved to the canonical frame. The lightness
    profile is the per-index mean L* of the original, unaligned members.
    """
    if len(cluster) < 2:
        raise ModelBookError(f"representative needs a cluster of >= 2 curves, got {len(cluster)}")
    aligned, _ = align_cluster(cluster)
    mean_shape = np.mean([c.points for c in aligned], axis=0)
    l_profile = np.mean([c.points[:, 0] for c in cluster], axis=0)
    shape = mean_shape.copy()
    shape[:, 0] += l_profile.mean() - shape[:, 0].mean()
    shape[:, 1:] -= shape[:, 1:].mean(axis=0)
    member_ids = tuple(c.origin_id or f"curve-{i}" for i, c in enumerate(cluster))
    return RampModel(id=model_id, method=method, shape=shape, l_profile=l_profile,
                     cluster_size=len(cluster), member_ids=member_ids)


def _clusters_from(curves, clustering: Clustering):
    ids = [c.origin_id for c in curves]
    groups: dict[int, list] = {}
    for curve, cid in zip(curves, ids):
        groups.setdefault(clustering.assignments[cid], []).append(curve)
    return groups


def _models_for_method(curves, clustering: Clustering, method: str):
    groups = _clusters_from(curves, clustering)
    # stable ids: order clusters by descending size, then original index
    order = sorted(groups, key=lambda c: (-len(groups[c]), c))
    models = []
    index = 0
    for c in order:
        members = groups[c]
        if len(members) < 2:
            continue  # singleton clusters carry no averageable structure
        models.append(build_representative(members, model_id=f"{method}-{index}",
                                           method=method))
        index += 1
    return models


def _diverging_angle(corpus: Corpus) -> float:
    """Mean a*-b* angle between the end-to-center chords of the corpus's
    normalized diverging ramps; the stock 115 when the corpus has none."""
    angles = []
    for ramp in corpus.ramps:
        if ramp.kind is not RampKind.DIVERGING:
            continue
        pts = fit_and_resample(ramp).points
        center = pts[CONTROL_POINTS // 2]
        v1 = (pts[0] - center)[1:]
        v2 = (pts[-1] - center)[1:]
        n1, n2 = np.linalg.norm(v1), np.linalg.norm(v2)
        if n1 < 1e-9 or n2 < 1e-9:
            continue
        cos = float(np.clip(v1 @ v2 / (n1 * n2), -1.0, 1.0))
        angles.append(math.degrees(math.acos(cos)))
    if not angles:
        return DEFAULT_DIVERGING_ANGLE
    return float(np.mean(angles))


def train(corpus: Corpus, config: TrainingConfig | None = None) -> TrainingResult:
    """Full training pipeline: normalize sequential ramps, run both
    clustering methods, and average each cluster into a model."""
    config = config or TrainingConfig()
    sequential = [r for r in corpus.ramps if r.kind is RampKind.SEQUENTIAL]
    if len(sequential) < 16:
        raise ModelBookError(
            f"training needs at least 16 sequential ramps, got {len(sequential)}")
    curves = [fit_and_resample(r) for r in sequential]

    kmeans_result = feature_selection(curves, k_range=config.k_range,
                                      rng_seed=config.rng_seed, jobs=config.jobs)
    elastic_result = weight_sweep(curves, rng_seed=config.rng_seed,
                                  alpha=config.alpha, sigma=config.sigma,
                                  iterations=config.gibbs_sweeps)

    models = (_models_for_method(curves, kmeans_result.best, "kmeans")
              + _models_for_method(curves, elastic_result.best, "elastic"))
    book = ModelBook(
        version=MODELBOOK_VERSION,
        corpus_fingerprint=corpus.fingerprint,
        models=tuple(models),
        diverging_angle_degrees=_diverging_angle(corpus),
        diverging_rotation_limit_degrees=DEFAULT_ROTATION_LIMIT,
    )
    return TrainingResult(book=book, kmeans=kmeans_result, elastic=elastic_result)


def build_modelbook(corpus: Corpus, config: TrainingConfig | None = None) -> ModelBook:
    return train(corpus, config).book


# ---------------------------------------------------------------------------
# persistence


def _model_to_dict(m: RampModel) -> dict:
    return {
        "id": m.id,
        "method": m.method,
        "cluster_size": m.cluster_size,
        "member_ids": list(m.member_ids),
        "l_profile": [float(v) for v in m.l_profile],
        "shape": [[float(x) for x in row] for row in m.shape],
    }


def save_modelbook(book: ModelBook, path) -> None:
    """Write the documented JSON schema; float values keep full precision."""
    payload = {
        "version": book.version,
        "corpus_fingerprint": book.corpus_fingerprint,
        "diverging_angle_degrees": float(book.diverging_angle_degrees),
        "diverging_rotation_limit_degrees": float(book.diverging_rotation_limit_degrees),
        "models": [_model_to_dict(m) for m in book.models],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def _require(payload: dict, key: str, kind, context: str):
    if key not in payload:
        raise ModelBookError(f"{context}: missing field {key!r}")
    value = payload[key]
    if not isinstance(value, kind):
        raise ModelBookError(f"{context}: field {key!r} has wrong type")
    return value


def load_modelbook(path) -> ModelBook:
    """Load and validate a model book file (schema version 1)."""
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as err:
        raise ModelBookError(f"cannot read model book {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise ModelBookError(
            f"model book {path} is not valid JSON: {err.msg} at byte offset {err.pos} "
            f"(line {err.lineno})") from None
    if not isinstance(payload, dict):
        raise ModelBookError(f"model book {path}: top level must be an object")
    version = _require(payload, "version", int, "model book")
    if version != MODELBOOK_VERSION:
        raise ModelBookError(
            f"unsupported model book version {version} (expected {MODELBOOK_VERSION})")
    fingerprint = _require(payload, "corpus_fingerprint", str, "model book")
    angle = _require(payload, "diverging_angle_degrees", (int, float), "model book")
    limit = _require(payload, "diverging_rotation_limit_degrees", (int, float), "model book")
    entries = _require(payload, "models", list, "model book")
    models = []
    for i, entry in enumerate(entries):
        context = f"models[{i}]"
        if not isinstance(entry, dict):
            raise ModelBookError(f"{context}: must be an object")
        shape = _require(entry, "shape", list, context)
        profile = _require(entry, "l_profile", list, context)
        if len(shape) != CONTROL_POINTS or any(
                not isinstance(row, list) or len(row) != 3 for row in shape):
            raise ModelBookError(f"{context}: shape must be 9 rows of [L, a, b]")
        if len(profile) != CONTROL_POINTS:
            raise ModelBookError(f"{context}: l_profile must have 9 entries")
        method = _require(entry, "method", str, context)
        if method not in ("kmeans", "elastic"):
            raise ModelBookError(f"{context}: unknown method {method!r}")
        models.append(RampModel(
            id=_require(entry, "id", str, context),
            method=method,
            shape=np.array(shape, dtype=float),
            l_profile=np.array(profile, dtype=float),
            cluster_size=_require(entry, "cluster_size", int, context),
            member_ids=tuple(_require(entry, "member_ids", list, context)),
        ))
    return ModelBook(
        version=version,
        corpus_fingerprint=fingerprint,
        models=tuple(models),
        diverging_angle_degrees=float(angle),
        diverging_rotation_limit_degrees=float(limit),
    )


def modelbooks_equal(a: ModelBook, b: ModelBook) -> bool:
    """Field-for-field equality, exact on floats."""
    if (a.version, a.corpus_fingerprint, a.diverging_angle_degrees,
            a.diverging_rotation_limit_degrees) != \
            (b.version, b.corpus_fingerprint, b.diverging_angle_degrees,
             b.diverging_rotation_limit_degrees):
        return False
    if len(a.models) != len(b.models):
        return False
    for ma, mb in zip(a.models, b.models):
        if (ma.id, ma.method, ma.cluster_size, ma.member_ids) != \
                (mb.id, mb.method, mb.cluster_size, mb.member_ids):
            return False
        if not np.array_equal(ma.shape, mb.shape):
            return False
        if not np.array_equal(ma.l_profile, mb.l_profile):
            return False
    return True
