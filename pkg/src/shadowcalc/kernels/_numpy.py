"""Pure-NumPy reference implementation of the batch kernels.

Shapes: ``dirs`` and ``points`` are (B, n); ``normals`` is (F, n);
``measures``, ``offsets`` are (F,); ``centroids`` is (F, n). Direction
batches are chunked so that the (chunk, F) cosine matrix stays small even
for ball-like bodies with thousands of facets.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 2048


def _chunks(total: int):
    for start in range(0, total, _CHUNK):
        yield start, min(start + _CHUNK, total)


def shadow_halfsum_batch(dirs, normals, measures):
    """Shadow areas 0.5 * sum_F |<nu_F, u>| area_F for each direction u."""
    dirs = np.ascontiguousarray(dirs, dtype=float)
    normals = np.ascontiguousarray(normals, dtype=float)
    measures = np.ascontiguousarray(measures, dtype=float)
    out = np.empty(dirs.shape[0])
    for lo, hi in _chunks(dirs.shape[0]):
        out[lo:hi] = 0.5 * (np.abs(dirs[lo:hi] @ normals.T) @ measures)
    return out


def illuminated_batch(dirs, normals, measures, centroids, tol):
    """Per-direction moments of the facets lit from each direction.

    Returns ``(weighted_measure, weighted_moment, unweighted_measure,
    unweighted_moment, tangent_count)`` where the weighted quantities carry
    the cosine factor <nu_F, u> and a facet is lit when that cosine exceeds
    ``tol`` (tangent when its magnitude is at most ``tol``).
    """
    dirs = np.ascontiguousarray(dirs, dtype=float)
    normals = np.ascontiguousarray(normals, dtype=float)
    measures = np.ascontiguousarray(measures, dtype=float)
    centroids = np.ascontiguousarray(centroids, dtype=float)
    n_dirs, dim = dirs.shape
    w_meas = np.empty(n_dirs)
    w_mom = np.empty((n_dirs, dim))
    u_meas = np.empty(n_dirs)
    u_mom = np.empty((n_dirs, dim))
    tangent = np.empty(n_dirs, dtype=np.int64)
    weighted_centroids = measures[:, None] * centroids
    for lo, hi in _chunks(n_dirs):
        cos = dirs[lo:hi] @ normals.T
        lit = cos > tol
        cos_lit = np.where(lit, cos, 0.0)
        w_meas[lo:hi] = cos_lit @ measures
        w_mom[lo:hi] = cos_lit @ weighted_centroids
        u_meas[lo:hi] = lit @ measures
        u_mom[lo:hi] = lit @ weighted_centroids
        tangent[lo:hi] = np.sum(np.abs(cos) <= tol, axis=1)
    return w_meas, w_mom, u_meas, u_mom, tangent


def contains_batch(points, normals, offsets, tol):
    """Boolean mask of points satisfying every facet inequality."""
    points = np.ascontiguousarray(points, dtype=float)
    normals = np.ascontiguousarray(normals, dtype=float)
    offsets = np.ascontiguousarray(offsets, dtype=float)
    out = np.empty(points.shape[0], dtype=bool)
    bound = offsets + tol
    for lo, hi in _chunks(points.shape[0]):
        out[lo:hi] = np.all(points[lo:hi] @ normals.T <= bound, axis=1)
    return out
