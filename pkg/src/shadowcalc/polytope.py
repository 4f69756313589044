"""Full-dimensional convex polytopes in R^n for n = 2..5.

Provides the vertex/facet representation used everywhere else:

- ``hull``: convex hull of a point cloud with whole-facet enumeration
  (coplanar simplices merged, e.g. a cube gets 6 square facets, not 12
  triangles),
- exact measures: ``volume``, ``surface_area``, ``volume_moment``,
  ``boundary_moment``,
- the polytope JSON interchange format.

Volumes and first moments are computed by fan triangulation from an interior
point; each facet stores its own (n-1)-measure and centroid obtained from its
simplicial pieces. Facet enumeration is delegated to Qhull
(``scipy.spatial.ConvexHull``); everything metric is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DegenerateInput, DimensionOutOfRange

DIM_MIN = 2
DIM_MAX = 5

#: Relative tolerance of geometric predicates (coplanarity, containment),
#: scaled by the polytope's coordinate magnitude.
PREDICATE_RTOL = 1e-9

_FACTORIAL = [1, 1, 2, 6, 24, 120]


@dataclass(frozen=True)
class Moment:
    """A mass and its unnormalized first moment vector.

    ``measure`` is the r-dimensional Hausdorff mass of the underlying set and
    ``first_moment`` the integral of the position vector over it, so the
    centroid is ``first_moment / measure``.
    """

    measure: float
    first_moment: np.ndarray

    @property
    def centroid(self) -> np.ndarray:
        return self.first_moment / self.measure

    def to_dict(self) -> dict:
        return {
            "measure": float(self.measure),
            "first_moment": [float(x) for x in self.first_moment],
        }


@dataclass(frozen=True)
class Facet:
    """One (n-1)-face: outward unit normal, plane offset, measure, centroid.

    ``vertex_ids`` index into the owning polytope's vertex array. The facet
    plane is ``{x : <normal, x> = offset}`` with the normal pointing away from
    the interior.
    """

    vertex_ids: np.ndarray
    normal: np.ndarray
    offset: float
    measure: float
    centroid: np.ndarray


class Polytope:
    """Immutable full-dimensional convex polytope.

    Construct via :func:`hull`; direct instantiation assumes consistent data.
    All derived quantities (volume, surface area, moments) are computed once
    at construction and shared freely across threads.
    """

    __slots__ = (
        "dim",
        "vertices",
        "facets",
        "scale",
        "_facet_simplices",
        "_volume",
        "_volume_first_moment",
        "_surface_area",
    )

    def __init__(self, dim, vertices, facets, facet_simplices, volume,
                 volume_first_moment, surface_area):
        self.dim = int(dim)
        self.vertices = vertices
        self.facets = facets
        self.scale = float(np.max(np.abs(vertices))) if len(vertices) else 0.0
        self._facet_simplices = facet_simplices
        self._volume = float(volume)
        self._volume_first_moment = volume_first_moment
        self._surface_area = float(surface_area)
        self.vertices.setflags(write=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def facet_normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.facets])

    def facet_offsets(self) -> np.ndarray:
        return np.array([f.offset for f in self.facets])

    def facet_measures(self) -> np.ndarray:
        return np.array([f.measure for f in self.facets])

    def facet_centroids(self) -> np.ndarray:
        return np.array([f.centroid for f in self.facets])

    def contains(self, points, tol=None) -> np.ndarray:
        """Half-space membership test for one point or a batch of points."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if tol is None:
            tol = PREDICATE_RTOL * max(self.scale, 1.0)
        inside = np.all(
            pts @ self.facet_normals().T <= self.facet_offsets() + tol, axis=1
        )
        return inside if np.asarray(points).ndim > 1 else bool(inside[0])

    def __repr__(self) -> str:
        return (f"Polytope(dim={self.dim}, vertices={self.n_vertices}, "
                f"facets={self.n_facets}, volume={self._volume:.6g})")


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise DegenerateInput("expected a 2-d array of points, one row per point")
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("points contain NaN or infinity")
    return pts


def _affine_rank(pts: np.ndarray, tol: float) -> int:
    centered = pts - pts.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    return int(np.sum(sv > tol * max(1.0, sv[0] if len(sv) else 0.0)))


def _simplex_measures(vertices: np.ndarray, tri: np.ndarray) -> np.ndarray:
    """(n-1)-dimensional measures of simplicial facets given by index rows."""
    n = vertices.shape[1]
    edges = vertices[tri[:, 1:]] - vertices[tri[:, :1]]
    gram = edges @ edges.transpose(0, 2, 1)
    dets = np.linalg.det(gram)
    return np.sqrt(np.maximum(dets, 0.0)) / _FACTORIAL[n - 1]


def _fan_volume_moment(vertices: np.ndarray, tri: np.ndarray,
                       apex: np.ndarray) -> tuple[float, np.ndarray]:
    """Volume and first moment of the fan of simplices from ``apex``."""
    n = vertices.shape[1]
    spans = vertices[tri] - apex
    vols = np.abs(np.linalg.det(spans)) / _FACTORIAL[n]
    centroids = (vertices[tri].sum(axis=1) + apex) / (n + 1)
    return float(vols.sum()), vols @ centroids


def _merge_coplanar(normals: np.ndarray, offsets: np.ndarray,
                    scale: float) -> list[list[int]]:
    """Group simplex indices whose supporting planes coincide within tolerance."""
    tol_off = PREDICATE_RTOL * max(scale, 1.0)
    bucket_width = max(tol_off, 1e-6 * max(scale, 1.0))
    keys = np.round(offsets / bucket_width).astype(np.int64)
    buckets: dict[int, list[int]] = {}
    groups: list[list[int]] = []
    group_normal: list[np.ndarray] = []
    group_offset: list[float] = []
    for i in range(len(normals)):
        assigned = -1
        for key in (keys[i] - 1, keys[i], keys[i] + 1):
            for g in buckets.get(key, ()):
                if (abs(group_offset[g] - offsets[i]) <= tol_off
                        and group_normal[g] @ normals[i] >= 1.0 - 1e-9):
                    assigned = g
                    break
            if assigned >= 0:
                break
        if assigned >= 0:
            groups[assigned].append(i)
        else:
            assigned = len(groups)
            groups.append([i])
            group_normal.append(normals[i])
            group_offset.append(float(offsets[i]))
            buckets.setdefault(int(keys[i]), []).append(assigned)
    return groups


def _interval_polytope(values: np.ndarray) -> Polytope:
    """1-d hull (used for projections out of R^2); facets are endpoints."""
    a, b = float(values.min()), float(values.max())
    tol = PREDICATE_RTOL * max(1.0, abs(a), abs(b))
    if b - a <= tol:
        raise DegenerateInput("interval hull has zero length")
    vertices = np.array([[a], [b]])
    facets = [
        Facet(np.array([0]), np.array([-1.0]), -a, 1.0, np.array([a])),
        Facet(np.array([1]), np.array([1.0]), b, 1.0, np.array([b])),
    ]
    first_moment = np.array([0.5 * (b * b - a * a)])
    return Polytope(1, vertices, facets, [np.array([[0]]), np.array([[1]])],
                    b - a, first_moment, 2.0)


def hull(points) -> Polytope:
    """Convex hull of a point cloud, with facet enumeration.

    Parameters
    ----------
    points : array-like, shape (m, n)
        At least n+1 points spanning R^n, 2 <= n <= 5. Duplicates and
        interior points are allowed and dropped.

    Returns
    -------
    Polytope
        Vertex set restricted to the extreme points (in lexicographic
        order), facets merged to whole (n-1)-faces with outward unit
        normals.

    Raises
    ------
    DimensionOutOfRange
        If n is not in 2..5.
    DegenerateInput
        If the points do not span R^n or are otherwise unusable.
    """
    pts = _as_points(points)
    n = pts.shape[1]
    if n == 1:
        # Internal path for projections from R^2; not part of the public
        # contract, which starts at n = 2.
        return _interval_polytope(pts[:, 0])
    if not (DIM_MIN <= n <= DIM_MAX):
        raise DimensionOutOfRange(f"dimension {n} outside supported range "
                                  f"{DIM_MIN}..{DIM_MAX}")
    if pts.shape[0] < n + 1:
        raise DegenerateInput(f"need at least {n + 1} points in R^{n}, "
                              f"got {pts.shape[0]}")
    if _affine_rank(pts, PREDICATE_RTOL) < n:
        raise DegenerateInput(f"points span an affine subspace of dimension "
                              f"< {n}")

    try:
        qh = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateInput(f"hull construction failed: {exc}") from exc

    extreme = np.array(sorted(qh.vertices))
    vertices = pts[extreme]
    order = np.lexsort(vertices.T[::-1])
    vertices = np.ascontiguousarray(vertices[order])
    old_to_new = {int(extreme[order[k]]): k for k in range(len(order))}
    tri = np.array([[old_to_new[int(i)] for i in simplex]
                    for simplex in qh.simplices])

    normals = qh.equations[:, :-1]
    offsets = -qh.equations[:, -1]
    scale = float(np.max(np.abs(vertices)))
    groups = _merge_coplanar(normals, offsets, scale)

    simplex_measures = _simplex_measures(vertices, tri)
    simplex_centroids = vertices[tri].mean(axis=1)

    facets = []
    facet_simplices = []
    for members in groups:
        members = np.asarray(members)
        normal = normals[members].mean(axis=0)
        normal = normal / np.linalg.norm(normal)
        ids = np.unique(tri[members])
        offset = float(np.mean(vertices[ids] @ normal))
        meas = float(simplex_measures[members].sum())
        centroid = (simplex_measures[members] @ simplex_centroids[members]) / meas
        facets.append(Facet(ids, normal, offset, meas, centroid))
        facet_simplices.append(tri[members])

    interior = vertices.mean(axis=0)
    volume, first_moment = _fan_volume_moment(vertices, tri, interior)
    if volume <= 0.0:
        raise DegenerateInput("hull has zero volume")
    surface = float(simplex_measures.sum())
    return Polytope(n, vertices, facets, facet_simplices, volume,
                    first_moment, surface)


def _hull_volume_moment(points) -> tuple[float, np.ndarray]:
    """Fast volume + first moment of conv(points), skipping facet assembly.

    Used by the epsilon-ladder evaluations in the Minkowski module, where
    only the metric quantities of intermediate hulls are needed.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape[1] == 1:
        a, b = float(pts.min()), float(pts.max())
        return b - a, np.array([0.5 * (b * b - a * a)])
    try:
        qh = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateInput(f"hull construction failed: {exc}") from exc
    apex = pts[qh.vertices].mean(axis=0)
    return _fan_volume_moment(pts, qh.simplices, apex)


def volume(poly: Polytope) -> float:
    """n-dimensional volume, from the fan triangulation."""
    return poly._volume


def surface_area(poly: Polytope) -> float:
    """Sum of facet (n-1)-measures, the exact polytopal surface area."""
    return poly._surface_area


def volume_moment(poly: Polytope) -> Moment:
    """Volume mass together with the first moment of the solid body."""
    return Moment(poly._volume, poly._volume_first_moment.copy())


def boundary_moment(poly: Polytope) -> Moment:
    """Surface mass together with the first moment of the boundary."""
    first = np.zeros(poly.dim)
    for f in poly.facets:
        first += f.measure * f.centroid
    return Moment(poly._surface_area, first)


def validate(poly: Polytope) -> None:
    """Check structural invariants; raises AssertionError on violation.

    Intended for tests and debugging, not the hot path.
    """
    tol = PREDICATE_RTOL * max(poly.scale, 1.0)
    normals = poly.facet_normals()
    offsets = poly.facet_offsets()
    norms = np.linalg.norm(normals, axis=1)
    assert np.all(np.abs(norms - 1.0) <= 1e-12), "facet normal not unit length"
    slack = poly.vertices @ normals.T - offsets
    assert np.max(slack) <= tol, "vertex outside a facet half-space"
    for f in poly.facets:
        plane_err = np.abs(poly.vertices[f.vertex_ids] @ f.normal - f.offset)
        assert np.max(plane_err) <= tol, "facet vertex off its plane"
        assert f.measure > 0.0, "facet with nonpositive measure"
        assert abs(f.centroid @ f.normal - f.offset) <= tol, \
            "facet centroid off the facet plane"
    assert poly._volume > 0.0, "polytope with nonpositive volume"
    # Every vertex of a full-dimensional polytope meets at least n facets.
    on_facet = np.abs(slack) <= tol
    assert np.all(on_facet.sum(axis=1) >= poly.dim), \
        "vertex incident to fewer than n facets (not extreme?)"
    if poly.dim == 3:
        edges = set()
        for simplices in poly._facet_simplices:
            seen: dict[tuple[int, int], int] = {}
            for simplex in simplices:
                for a in range(3):
                    for b in range(a + 1, 3):
                        key = tuple(sorted((int(simplex[a]), int(simplex[b]))))
                        seen[key] = seen.get(key, 0) + 1
            edges.update(k for k, count in seen.items() if count == 1)
        euler = poly.n_vertices - len(edges) + poly.n_facets
        assert euler == 2, f"Euler characteristic {euler} != 2"


def polytope_to_dict(poly: Polytope) -> dict:
    """Serializable form of a polytope, including derived facet data."""
    return {
        "dim": poly.dim,
        "vertices": [[float(x) for x in v] for v in poly.vertices],
        "facets": [
            {
                "vertices": [int(i) for i in f.vertex_ids],
                "normal": [float(x) for x in f.normal],
                "offset": float(f.offset),
            }
            for f in poly.facets
        ],
    }


def polytope_from_dict(data: dict) -> Polytope:
    """Build a polytope from the JSON interchange format.

    Only ``dim`` and ``vertices`` are read; facets are always rederived so
    that hand-written or stale facet lists cannot poison downstream math.
    """
    if "vertices" not in data:
        raise DegenerateInput('polytope JSON needs a "vertices" array')
    pts = _as_points(data["vertices"])
    if "dim" in data and int(data["dim"]) != pts.shape[1]:
        raise DimensionOutOfRange(
            f'declared dim {data["dim"]} does not match vertex length '
            f"{pts.shape[1]}")
    return hull(pts)
