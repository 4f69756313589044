# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels; mirrors the contract of ``_numpy`` exactly.

Plain nested loops over (direction, facet) pairs. Dimensions are tiny
(n <= 5) while direction and facet counts are large, so the win over NumPy
comes from skipping the (B, F) temporary matrices and doing a single pass.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def shadow_halfsum_batch(dirs, normals, measures):
    """Shadow areas 0.5 * sum_F |<nu_F, u>| area_F for each direction u."""
    cdef const double[:, ::1] d = np.ascontiguousarray(dirs, dtype=np.float64)
    cdef const double[:, ::1] nu = np.ascontiguousarray(normals, dtype=np.float64)
    cdef const double[::1] area = np.ascontiguousarray(measures, dtype=np.float64)
    cdef Py_ssize_t n_dirs = d.shape[0], n_fac = nu.shape[0], dim = d.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n_dirs)
    cdef double[::1] o = out
    cdef Py_ssize_t i, f, k
    cdef double acc, dot
    with nogil:
        for i in range(n_dirs):
            acc = 0.0
            for f in range(n_fac):
                dot = 0.0
                for k in range(dim):
                    dot += d[i, k] * nu[f, k]
                acc += (dot if dot >= 0.0 else -dot) * area[f]
            o[i] = 0.5 * acc
    return out


def illuminated_batch(dirs, normals, measures, centroids, tol):
    """Per-direction moments of the facets lit from each direction.

    Returns ``(weighted_measure, weighted_moment, unweighted_measure,
    unweighted_moment, tangent_count)``; see the ``_numpy`` twin for the
    semantics.
    """
    cdef const double[:, ::1] d = np.ascontiguousarray(dirs, dtype=np.float64)
    cdef const double[:, ::1] nu = np.ascontiguousarray(normals, dtype=np.float64)
    cdef const double[::1] area = np.ascontiguousarray(measures, dtype=np.float64)
    cdef const double[:, ::1] cen = np.ascontiguousarray(centroids, dtype=np.float64)
    cdef double eps = tol
    cdef Py_ssize_t n_dirs = d.shape[0], n_fac = nu.shape[0], dim = d.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w_meas = np.empty(n_dirs)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] w_mom = np.empty((n_dirs, dim))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] u_meas = np.empty(n_dirs)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] u_mom = np.empty((n_dirs, dim))
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tangent = np.empty(n_dirs, dtype=np.int64)
    cdef double[::1] wm = w_meas
    cdef double[:, ::1] wv = w_mom
    cdef double[::1] um = u_meas
    cdef double[:, ::1] uv = u_mom
    cdef cnp.int64_t[::1] tg = tangent
    cdef Py_ssize_t i, f, k
    cdef double dot, wa
    cdef cnp.int64_t n_tan
    with nogil:
        for i in range(n_dirs):
            wm[i] = 0.0
            um[i] = 0.0
            for k in range(dim):
                wv[i, k] = 0.0
                uv[i, k] = 0.0
            n_tan = 0
            for f in range(n_fac):
                dot = 0.0
                for k in range(dim):
                    dot += d[i, k] * nu[f, k]
                if dot > eps:
                    wa = dot * area[f]
                    wm[i] += wa
                    um[i] += area[f]
                    for k in range(dim):
                        wv[i, k] += wa * cen[f, k]
                        uv[i, k] += area[f] * cen[f, k]
                elif dot >= -eps:
                    n_tan += 1
            tg[i] = n_tan
    return w_meas, w_mom, u_meas, u_mom, tangent


def contains_batch(points, normals, offsets, tol):
    """Boolean mask of points satisfying every facet inequality."""
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] nu = np.ascontiguousarray(normals, dtype=np.float64)
    cdef const double[::1] off = np.ascontiguousarray(offsets, dtype=np.float64)
    cdef double eps = tol
    cdef Py_ssize_t n_pts = p.shape[0], n_fac = nu.shape[0], dim = p.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, cast=True] out = np.empty(
        n_pts, dtype=bool)
    cdef cnp.uint8_t[::1] o = out
    cdef Py_ssize_t i, f, k
    cdef double dot
    cdef bint inside
    with nogil:
        for i in range(n_pts):
            inside = 1
            for f in range(n_fac):
                dot = 0.0
                for k in range(dim):
                    dot += p[i, k] * nu[f, k]
                if dot > off[f] + eps:
                    inside = 0
                    break
            o[i] = inside
    return out
