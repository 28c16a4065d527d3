"""Curve clustering: the tightness metric, k-means over selected structural
features with exhaustive subset search, and an elastic weighted-metric
clustering with Chinese-restaurant-process Gibbs inference.

Distances for the elastic method combine a square-root-velocity-function
shape term (minimized over rotations and optional reflection) with a curve
length term; both are normalized to [0, 1] by their corpus maxima before the
weighted sum. Cluster quality everywhere is the mean summed distance between
corresponding control points of aligned curves (lower is tighter).
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .curve import RampCurve, align_cluster, curve_length
from .errors import ClusteringError
from .features import feature_matrix, standardize, subset_columns

_MAX_LLOYD_ITERATIONS = 300
_KMEANS_RESTARTS = 8
_MAX_K = 15
SWEEP_TENTHS = tuple(range(11))  # w = 0.0, 0.1, ..., 1.0


@dataclass(frozen=True)
class Clustering:
    """A partition of curves: id -> cluster index (contiguous from 0)."""

    assignments: dict[str, int]
    k: int
    method: str
    feature_subset: int | None
    tightness_per_cluster: tuple[float, ...]
    mean_tightness: float


@dataclass(frozen=True, eq=False)
class SRVFSignature:
    """Square-root velocity samples of a unit-length curve, one per segment."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.array(np.asarray(self.samples, dtype=float))
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)


@dataclass(frozen=True)
class ScoreRow:
    """One evaluated configuration in a diagnostic score table."""

    method: str
    config: str  # feature mask for k-means, w for elastic
    k: int
    mean_tightness: float
    unweighted_mean_tightness: float
    min_cluster_size: int
    max_cluster_size: int
    valid: bool


def curve_ids(curves) -> list[str]:
    """Stable unique ids for a curve sequence (origin_id, else positional)."""
    ids = []
    seen = set()
    for i, c in enumerate(curves):
        cid = c.origin_id if c.origin_id and c.origin_id not in seen else f"curve-{i}"
        seen.add(cid)
        ids.append(cid)
    return ids


def tightness(cluster) -> float:
    """Mean summed distance between corresponding control points over all
    ordered curve pairs: 1/(n(n-1)) * sum_i sum_j sum_x |c_i(x) - c_j(x)|."""
    n = len(cluster)
    if n < 2:
        raise ClusteringError("tightness is undefined for clusters of size < 2")
    pts = np.stack([c.points for c in cluster])
    diff = pts[:, None, :, :] - pts[None, :, :, :]
    total = np.linalg.norm(diff, axis=3).sum()
    return float(total / (n * (n - 1)))


def evaluate_clusters(curves, labels):
    """Align each cluster and score it.

    Returns (per-cluster tightness ordered by label, size-weighted mean,
    unweighted mean, cluster sizes). Singleton clusters get inf and are
    excluded from the means; if every cluster is a singleton the means are
    inf as well.
    """
    labels = np.asarray(labels)
    k = labels.max() + 1
    per_cluster = []
    sizes = []
    for c in range(k):
        members = [curves[i] for i in np.flatnonzero(labels == c)]
        sizes.append(len(members))
        if len(members) < 2:
            per_cluster.append(math.inf)
            continue
        aligned, _ = align_cluster(members)
        per_cluster.append(tightness(aligned))
    finite = [(t, s) for t, s in zip(per_cluster, sizes) if math.isfinite(t)]
    if not finite:
        return per_cluster, math.inf, math.inf, sizes
    weighted = sum(t * s for t, s in finite) / sum(s for _, s in finite)
    unweighted = sum(t for t, _ in finite) / len(finite)
    return per_cluster, weighted, unweighted, sizes


# ---------------------------------------------------------------------------
# k-means over structural features


def _kmeans_pp_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(x)
    chosen = [int(rng.integers(n))]
    d2 = ((x - x[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total < 1e-12:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        chosen.append(idx)
        d2 = np.minimum(d2, ((x - x[idx]) ** 2).sum(axis=1))
    return x[chosen].copy()


def _lloyd(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Lloyd iteration until assignments stabilize (or 300 rounds). Clusters
    that lose all members are dropped, so coincident inputs can collapse to
    fewer than the requested k."""
    k = len(centers)
    labels = None
    x_sq = (x ** 2).sum(axis=1)[:, None]
    for _ in range(_MAX_LLOYD_ITERATIONS):
        d = x_sq - 2.0 * (x @ centers.T) + (centers ** 2).sum(axis=1)[None, :]
        new_labels = d.argmin(axis=1)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        centers = np.array([
            x[labels == c].mean(axis=0) if np.any(labels == c) else centers[c]
            for c in range(k)
        ])
    return labels


def _best_kmeans_labels(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Several k-means++ restarts from one seeded stream; lowest inertia wins
    (first winner on ties), which keeps the whole search deterministic."""
    best_labels = None
    best_inertia = math.inf
    for _ in range(_KMEANS_RESTARTS):
        labels = _lloyd(x, _kmeans_pp_init(x, k, rng))
        centers = np.array([x[labels == c].mean(axis=0) for c in np.unique(labels)])
        remap = {c: i for i, c in enumerate(np.unique(labels))}
        idx = np.array([remap[v] for v in labels])
        inertia = float(((x - centers[idx]) ** 2).sum())
        if inertia < best_inertia - 1e-12:
            best_inertia = inertia
            best_labels = labels
    return best_labels


def kmeans_cluster(curves, k: int, subset: int, rng_seed: int) -> Clustering:
    """Lloyd k-means (k-means++ init) on z-scored features restricted to the
    given 8-bit group mask. Tightness is scored on the aligned curves of each
    resulting cluster, not in feature space. The result can carry fewer than
    k clusters when inputs coincide (empty clusters are dropped)."""
    n = len(curves)
    if not 2 <= k <= n:
        raise ClusteringError(f"k={k} out of range for {n} curves")
    z = standardize(feature_matrix(curves))
    return _kmeans_on_features(curves, z, k, subset, rng_seed)


def _kmeans_on_features(curves, z: np.ndarray, k: int, subset: int, rng_seed) -> Clustering:
    x = z[:, subset_columns(subset)]
    rng = np.random.default_rng(rng_seed)
    labels = _relabel_by_first_occurrence(_best_kmeans_labels(x, k, rng))
    per_cluster, weighted, _, _ = evaluate_clusters(curves, labels)
    ids = curve_ids(curves)
    return Clustering(
        assignments=dict(zip(ids, (int(v) for v in labels))),
        k=int(labels.max()) + 1,
        method="kmeans",
        feature_subset=subset,
        tightness_per_cluster=tuple(per_cluster),
        mean_tightness=weighted,
    )


def _relabel_by_first_occurrence(labels: np.ndarray) -> np.ndarray:
    mapping = {}
    out = np.empty_like(labels)
    for i, v in enumerate(labels):
        if v not in mapping:
            mapping[v] = len(mapping)
        out[i] = mapping[v]
    return out


@dataclass(frozen=True)
class FeatureSelectionResult:
    best_subset: int
    best_k: int
    best: Clustering
    table: tuple[ScoreRow, ...]


def _evaluate_mask(points_stack, ids, z, mask, ks, rng_seed):
    curves = [RampCurve(p, origin_id=i) for p, i in zip(points_stack, ids)]
    rows = []
    cache = {}
    for k in ks:
        rng = np.random.default_rng([rng_seed, mask, k])
        x = z[:, subset_columns(mask)]
        labels = _relabel_by_first_occurrence(_best_kmeans_labels(x, k, rng))
        key = tuple(labels)
        if key not in cache:
            cache[key] = evaluate_clusters(curves, labels)
        per_cluster, weighted, unweighted, sizes = cache[key]
        valid = min(sizes) >= 2
        rows.append((ScoreRow(
            method="kmeans",
            config=str(mask),
            k=k,
            mean_tightness=weighted,
            unweighted_mean_tightness=unweighted,
            min_cluster_size=min(sizes),
            max_cluster_size=max(sizes),
            valid=valid,
        ), labels if valid else None))
    return rows


def feature_selection(curves, k_range=(2, _MAX_K), rng_seed: int = 42, jobs: int = 1) -> FeatureSelectionResult:
    """Exhaustive sweep of all 255 feature subsets x k in k_range.

    Configurations producing any cluster smaller than 2 are rejected (the
    tightness of a singleton is undefined). The winner minimizes the
    size-weighted mean cluster tightness; ties break toward smaller k, then
    the smaller subset mask.
    """
    n = len(curves)
    if n < 16:
        raise ClusteringError(f"feature selection needs at least 16 curves, got {n}")
    lo, hi = k_range
    ks = [k for k in range(lo, hi + 1) if k <= n]
    if not ks:
        raise ClusteringError(f"k range {k_range} empty for {n} curves")
    z = standardize(feature_matrix(curves))
    ids = curve_ids(curves)
    points_stack = np.stack([c.points for c in curves])

    masks = list(range(1, 256))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_mask = list(pool.map(
                _evaluate_mask,
                [points_stack] * len(masks), [ids] * len(masks), [z] * len(masks),
                masks, [ks] * len(masks), [rng_seed] * len(masks),
                chunksize=16,
            ))
    else:
        per_mask = [_evaluate_mask(points_stack, ids, z, mask, ks, rng_seed)
                    for mask in masks]

    rows = []
    best_key = None
    best_labels = None
    best_row = None
    for mask, mask_rows in zip(masks, per_mask):
        for row, labels in mask_rows:
            rows.append(row)
            if labels is None:
                continue
            key = (row.mean_tightness, row.k, mask)
            if best_key is None or key < best_key:
                best_key, best_labels, best_row = key, labels, row
    if best_row is None:
        raise ClusteringError(
            "every configuration produced a singleton cluster; score table has "
            f"{len(rows)} rejected rows")

    mask = int(best_row.config)
    per_cluster, weighted, _, _ = evaluate_clusters(curves, best_labels)
    best = Clustering(
        assignments=dict(zip(ids, (int(v) for v in best_labels))),
        k=int(np.max(best_labels)) + 1,
        method="kmeans",
        feature_subset=mask,
        tightness_per_cluster=tuple(per_cluster),
        mean_tightness=weighted,
    )
    return FeatureSelectionResult(best_subset=mask, best_k=best_row.k, best=best,
                                  table=tuple(rows))


# ---------------------------------------------------------------------------
# elastic (SRVF) metric and CRP Gibbs clustering


def srvf(c: RampCurve) -> SRVFSignature:
    """Square-root velocity samples of the unit-length-normalized curve on
    its uniform parameterization (8 segment velocities for 9 points)."""
    diffs = np.diff(c.points, axis=0)
    seg = np.linalg.norm(diffs, axis=1)
    if np.any(seg < 1e-12):
        raise ClusteringError("SRVF undefined: curve has a zero-length segment")
    total = seg.sum()
    velocity = diffs / total * (len(c.points) - 1)
    speed = np.linalg.norm(velocity, axis=1)
    return SRVFSignature(velocity / np.sqrt(speed)[:, None])


_REFLECT_AB = np.diag([1.0, 1.0, -1.0])


def _kabsch_residual(q1: np.ndarray, q2: np.ndarray) -> float:
    """Minimum L2 distance between SRVF sample sets over proper rotations."""
    h = q2.T @ q1
    u, _, vt = np.linalg.svd(h)
    d = np.sign(np.linalg.det(vt.T @ u.T))
    r = vt.T @ np.diag([1.0, 1.0, d]) @ u.T
    dt = 1.0 / len(q1)
    return float(np.linalg.norm(q1 - q2 @ r.T) * math.sqrt(dt))


def shape_distance(si: SRVFSignature, sj: SRVFSignature) -> float:
    """Elastic shape distance: SRVF L2 residual minimized over rotations and
    optional reflection."""
    plain = _kabsch_residual(si.samples, sj.samples)
    mirrored = _kabsch_residual(si.samples, sj.samples @ _REFLECT_AB)
    return min(plain, mirrored)


def weighted_distance(ci: RampCurve, cj: RampCurve, w: float,
                      shape_scale: float = 1.0, length_scale: float = 1.0) -> float:
    """w * shape term + (1 - w) * |length difference|, each term divided by
    its corpus-wide maximum when scales are supplied."""
    if not 0.0 <= w <= 1.0:
        raise ClusteringError(f"w must be in [0, 1], got {w}")
    ds = shape_distance(srvf(ci), srvf(cj)) / shape_scale
    dl = abs(curve_length(ci) - curve_length(cj)) / length_scale
    return w * ds + (1.0 - w) * dl


class WeightedCurveMetric:
    """Precomputed pairwise shape and length distances for one corpus, with
    corpus-maximum normalization baked in."""

    def __init__(self, curves):
        n = len(curves)
        signatures = [srvf(c) for c in curves]
        lengths = np.array([curve_length(c) for c in curves])
        ds = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                ds[i, j] = ds[j, i] = shape_distance(signatures[i], signatures[j])
        dl = np.abs(lengths[:, None] - lengths[None, :])
        self.shape_scale = float(ds.max()) or 1.0
        self.length_scale = float(dl.max()) or 1.0
        self._ds = ds / self.shape_scale
        self._dl = dl / self.length_scale

    def matrix(self, w: float) -> np.ndarray:
        if not 0.0 <= w <= 1.0:
            raise ClusteringError(f"w must be in [0, 1], got {w}")
        return w * self._ds + (1.0 - w) * self._dl


def default_sigma(d: np.ndarray) -> float:
    """Likelihood bandwidth: a low quantile of the pairwise distances.

    Within-cluster pairs populate the bottom of the distance distribution,
    so the 10th percentile tracks within-cluster spread. The overall median
    is dominated by between-cluster pairs and yields a likelihood too
    diffuse to overcome the CRP's rich-get-richer prior.
    """
    off_diag = d[np.triu_indices(len(d), k=1)]
    return max(float(np.quantile(off_diag, 0.10)), 1e-9)


def _medoid(d: np.ndarray, members) -> int:
    ms = sorted(members)
    sub = d[np.ix_(ms, ms)]
    return ms[int(np.argmin(sub.sum(axis=0)))]


def _partition_log_score(d, labels, medoids, alpha, sigma) -> float:
    score = 0.0
    for c, members in labels.items():
        score += math.log(alpha) + math.lgamma(len(members))
        m = medoids[c]
        for i in members:
            score -= d[i, m] ** 2 / (2.0 * sigma * sigma)
    return score


def elastic_cluster(curves, w: float = 0.5, alpha: float = 1.0,
                    sigma: float | None = None, iterations: int = 500,
                    rng_seed: int = 42, metric: WeightedCurveMetric | None = None) -> Clustering:
    """Cluster curves under the weighted elastic metric with CRP Gibbs
    sampling; the number of clusters is inferred.

    Each sweep resamples every curve's assignment with pseudo-likelihood
    exp(-d^2 / (2 sigma^2)) against cluster medoids and CRP prior weights
    (cluster size, alpha for a new table). The best-scoring visited partition
    (CRP prior x pseudo-likelihood) is returned. sigma defaults to a within-
    cluster scale estimate (see default_sigma).
    """
    n = len(curves)
    if n < 2:
        raise ClusteringError(f"elastic clustering needs at least 2 curves, got {n}")
    if alpha <= 0 or (sigma is not None and sigma <= 0):
        raise ClusteringError("alpha and sigma must be positive")
    if iterations < 1:
        raise ClusteringError(f"iterations must be >= 1, got {iterations}")
    d = (metric or WeightedCurveMetric(curves)).matrix(w)
    if sigma is None:
        sigma = default_sigma(d)

    rng = np.random.default_rng(rng_seed)
    assign = np.zeros(n, dtype=int)
    clusters = {0: set(range(n))}
    medoids = {0: _medoid(d, clusters[0])}
    next_label = 1

    best_score = _partition_log_score(d, clusters, medoids, alpha, sigma)
    best_assign = assign.copy()

    inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma)
    for _ in range(iterations):
        for i in range(n):
            old = assign[i]
            clusters[old].discard(i)
            if clusters[old]:
                medoids[old] = _medoid(d, clusters[old])
            else:
                del clusters[old], medoids[old]
            labels = sorted(clusters)
            logw = np.array(
                [math.log(len(clusters[c])) - d[i, medoids[c]] ** 2 * inv_two_sigma_sq
                 for c in labels] + [math.log(alpha)])
            logw -= logw.max()
            p = np.exp(logw)
            choice = int(rng.choice(len(p), p=p / p.sum()))
            if choice == len(labels):
                new = next_label
                next_label += 1
                clusters[new] = set()
            else:
                new = labels[choice]
            clusters[new].add(i)
            medoids[new] = _medoid(d, clusters[new])
            assign[i] = new
        score = _partition_log_score(d, clusters, medoids, alpha, sigma)
        if score > best_score:
            best_score = score
            best_assign = assign.copy()

    labels = _relabel_by_first_occurrence(best_assign)
    per_cluster, weighted, _, _ = evaluate_clusters(curves, labels)
    ids = curve_ids(curves)
    return Clustering(
        assignments=dict(zip(ids, (int(v) for v in labels))),
        k=int(labels.max()) + 1,
        method="elastic",
        feature_subset=None,
        tightness_per_cluster=tuple(per_cluster),
        mean_tightness=weighted,
    )


@dataclass(frozen=True)
class WeightSweepResult:
    best_w: float
    best: Clustering
    table: tuple[ScoreRow, ...]


def weight_sweep(curves, rng_seed: int = 42, alpha: float = 1.0,
                 sigma: float | None = None, iterations: int = 500) -> WeightSweepResult:
    """Run elastic_cluster for w in {0.0, 0.1, ..., 1.0} and score each
    result with aligned-cluster tightness. Ties break toward w = 0.5."""
    metric = WeightedCurveMetric(curves)
    rows = []
    results = []
    for tenth in SWEEP_TENTHS:
        w = tenth / 10.0
        clustering = elastic_cluster(curves, w=w, alpha=alpha, sigma=sigma,
                                     iterations=iterations, rng_seed=rng_seed,
                                     metric=metric)
        sizes = np.bincount(list(clustering.assignments.values()))
        finite = [t for t in clustering.tightness_per_cluster if math.isfinite(t)]
        unweighted = sum(finite) / len(finite) if finite else math.inf
        rows.append(ScoreRow(
            method="elastic",
            config=f"{w:.1f}",
            k=clustering.k,
            mean_tightness=clustering.mean_tightness,
            unweighted_mean_tightness=unweighted,
            min_cluster_size=int(sizes.min()),
            max_cluster_size=int(sizes.max()),
            valid=True,
        ))
        results.append(clustering)
    best_i = min(range(len(rows)),
                 key=lambda i: (rows[i].mean_tightness, abs(SWEEP_TENTHS[i] - 5), SWEEP_TENTHS[i]))
    return WeightSweepResult(best_w=SWEEP_TENTHS[best_i] / 10.0, best=results[best_i],
                             table=tuple(rows))


def write_score_table(rows, path) -> None:
    """Persist a diagnostic score table as CSV (floats at full precision so
    the argmin can be re-derived from the file)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "config", "k", "mean_tightness",
                         "unweighted_mean_tightness", "min_cluster_size",
                         "max_cluster_size", "valid"])
        for row in rows:
            writer.writerow([
                row.method, row.config, row.k, repr(row.mean_tightness),
                repr(row.unweighted_mean_tightness), row.min_cluster_size,
                row.max_cluster_size, int(row.valid),
            ])
