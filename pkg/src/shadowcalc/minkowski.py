"""Minkowski sums, directional derivatives of measures, mixed volumes.

The central object is the derivative of a measure along a Minkowski summand,

    D_Q(f)(P) = lim_{eps -> 0+} (f(P + eps Q) - f(P)) / eps,

for f the volume or the volume first moment. Three facts drive the
implementation:

- For a segment summand [a, b] with w = b - a, the cylinder decomposition of
  (P + eps[0, w]) \\ P makes the volume *exactly linear* in eps and the first
  moment *exactly quadratic*, so the volume derivative is a single hull
  difference at eps = 1 and the moment derivative has the closed facet form
  ``vol(P) a + sum_F <nu_F, w>^+ area_F centroid_F``.
- For a body summand Q, ``vol(P + eps Q)`` is a polynomial of degree n in
  eps (degree n+1 for the moment) whose constant term is known, so the
  derivative is recovered by solving a small Vandermonde system on a
  geometric epsilon ladder.
- Expanding ``vol(sum_i lam_i K_i)`` in the same way yields the mixed
  volumes as polynomial coefficients; :func:`mixed_volume_fit` extracts the
  full table by least squares on a lambda grid.

Ball approximants (inscribed polytopes with vertices on the unit sphere)
feed the surface-area-as-derivative identity: as the approximant refines,
``D_B(vol)(P)`` increases monotonically to the surface area of P.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull
from scipy.special import ndtri

from .errors import (DegenerateInput, DimensionMismatch, DimensionOutOfRange,
                     IllConditionedGrid)
from .polytope import (DIM_MAX, DIM_MIN, Moment, Polytope,
                       _hull_volume_moment, hull, volume)

#: Condition-number ceiling for the mixed-volume design matrix.
COND_LIMIT = 1e8

#: Default leading rung of the epsilon ladder, relative to body scale.
EPS0_RSCALE = 1e-2

_LEVEL_MAX = {2: 12, 3: 6, 4: 6, 5: 6}


@dataclass(frozen=True)
class Segment:
    """Closed segment [a, b], a Minkowski summand of dimension one.

    Sum and derivative operations canonicalize the segment to its
    origin-anchored representative [0, b - a]: translating a summand never
    changes a Minkowski-sum volume, and the derivative operators are
    defined against [0, u]. ``length`` is the Euclidean length of b - a.
    """

    a: np.ndarray
    b: np.ndarray
    length: float = 0.0

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).reshape(-1)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if a.shape != b.shape or a.size < 2:
            raise DimensionMismatch("segment endpoints must share a length "
                                    ">= 2")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise DegenerateInput("segment endpoints contain NaN or infinity")
        if np.array_equal(a, b):
            raise DegenerateInput("segment endpoints coincide")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "length", float(np.linalg.norm(b - a)))

    @property
    def dim(self) -> int:
        return self.a.size

    @property
    def vector(self) -> np.ndarray:
        return self.b - self.a

    def to_dict(self) -> dict:
        return {"a": [float(x) for x in self.a],
                "b": [float(x) for x in self.b]}

    @classmethod
    def from_dict(cls, data: dict) -> "Segment":
        return cls(np.asarray(data["a"], dtype=float),
                   np.asarray(data["b"], dtype=float))


class BallApprox(Polytope):
    """Inscribed polytopal approximant of the unit ball at a given level.

    Vertices lie on the unit sphere and vertex sets are nested across
    levels, so support functions, derivative estimates, and inradii are all
    nondecreasing in the level. ``inradius`` (the smallest facet offset)
    quantifies the approximation: the approximant contains the ball of that
    radius.
    """

    __slots__ = ("level",)

    def __init__(self, level: int, base: Polytope):
        super().__init__(base.dim, base.vertices, base.facets,
                         base._facet_simplices, base._volume,
                         base._volume_first_moment, base._surface_area)
        self.level = int(level)

    @property
    def inradius(self) -> float:
        return float(min(f.offset for f in self.facets))

    def to_dict(self) -> dict:
        return {"ball": {"dim": self.dim, "level": self.level}}

    def __repr__(self) -> str:
        return (f"BallApprox(dim={self.dim}, level={self.level}, "
                f"vertices={self.n_vertices}, inradius={self.inradius:.6f})")


def _icosahedron_vertices() -> np.ndarray:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    verts = []
    for s1 in (-1.0, 1.0):
        for s2 in (-phi, phi):
            verts.append((0.0, s1, s2))
            verts.append((s1, s2, 0.0))
            verts.append((s2, 0.0, s1))
    verts = np.array(verts)
    return verts / np.linalg.norm(verts, axis=1, keepdims=True)


def _icosphere_vertices(level: int) -> np.ndarray:
    """Vertices of the icosahedron subdivided ``level`` times, normalized.

    Midpoint subdivision keeps every existing vertex, so level l vertices
    are a subset of level l+1 vertices (12, 42, 162, 642, 2562, ...).
    """
    verts = [tuple(v) for v in _icosahedron_vertices()]
    faces = [tuple(int(i) for i in s)
             for s in ConvexHull(np.array(verts)).simplices]
    for _ in range(level):
        midpoint: dict[tuple[int, int], int] = {}

        def mid(i, j):
            key = (i, j) if i < j else (j, i)
            idx = midpoint.get(key)
            if idx is None:
                m = np.array(verts[i]) + np.array(verts[j])
                m /= np.linalg.norm(m)
                idx = len(verts)
                verts.append(tuple(m))
                midpoint[key] = idx
            return idx

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc),
                          (ab, bc, ca)]
        faces = new_faces
    return np.array(verts)


def _kronecker_sphere(dim: int, count: int) -> np.ndarray:
    """Low-discrepancy points on S^(dim-1) via a Kronecker sequence.

    A rank-1 lattice with the generalized golden ratio as generator fills
    the unit cube; the inverse normal CDF maps it to Gaussian samples,
    whose normalizations are uniform on the sphere. Deterministic, and
    prefixes are nested: the first half of level l+1 is exactly level l.
    """
    roots = np.roots([1.0] + [0.0] * (dim - 1) + [-1.0, -1.0])
    gamma = float(np.real(roots[np.argmax(np.real(roots))]))
    alpha = gamma ** -np.arange(1.0, dim + 1.0)
    i = np.arange(1, count + 1, dtype=float)
    u = np.mod(0.5 + np.outer(i, alpha), 1.0)
    z = ndtri(np.clip(u, 1e-12, 1.0 - 1e-12))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def ball_approx(dim: int, level: int) -> BallApprox:
    """Inscribed approximant of the unit ball in R^dim.

    Parameters
    ----------
    dim : int
        Ambient dimension, 2..5.
    level : int
        Refinement level, >= 0. Vertex counts: regular 3 * 2^(level+2)-gon
        for dim 2; subdivided icosahedron (12, 42, 162, 642, 2562, ...) for
        dim 3; nested Kronecker sets of size 2^(level+6) for dims 4 and 5.

    Returns
    -------
    BallApprox
        Polytope with all vertices on the unit sphere, containing the
        origin, with vertex sets nested across levels.
    """
    dim = int(dim)
    if not (DIM_MIN <= dim <= DIM_MAX):
        raise DimensionOutOfRange(f"dimension {dim} outside supported range "
                                  f"{DIM_MIN}..{DIM_MAX}")
    level = int(level)
    if level < 0 or level > _LEVEL_MAX[dim]:
        raise DegenerateInput(f"ball level {level} outside 0..{_LEVEL_MAX[dim]} "
                              f"for dimension {dim}")
    if dim == 2:
        m = 3 * 2 ** (level + 2)
        theta = 2.0 * np.pi * np.arange(m) / m
        verts = np.column_stack([np.cos(theta), np.sin(theta)])
    elif dim == 3:
        verts = _icosphere_vertices(level)
    else:
        verts = _kronecker_sphere(dim, 2 ** (level + 6))
    return BallApprox(level, hull(verts))


def _summand_vertices(summand) -> np.ndarray:
    if isinstance(summand, Polytope):
        return summand.vertices
    if isinstance(summand, Segment):
        return np.vstack([np.zeros(summand.dim), summand.vector])
    raise DegenerateInput(f"unsupported Minkowski summand "
                          f"{type(summand).__name__}")


def _vertex_sums(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    return (first[:, None, :] + second[None, :, :]).reshape(
        -1, first.shape[1])


def minkowski_sum(poly: Polytope, summand) -> Polytope:
    """Minkowski sum of a polytope with a polytope or segment summand.

    The sum of convex polytopes is the hull of pairwise vertex sums; no
    facet-level machinery is needed at these dimensions.
    """
    other = _summand_vertices(summand)
    if other.shape[1] != poly.dim:
        raise DimensionMismatch(f"summand in R^{other.shape[1]} does not "
                                f"match polytope in R^{poly.dim}")
    return hull(_vertex_sums(poly.vertices, other))


def _segment_list(summand) -> list[Segment] | None:
    if isinstance(summand, Segment):
        return [summand]
    if isinstance(summand, (list, tuple)) and summand and all(
            isinstance(s, Segment) for s in summand):
        return list(summand)
    return None


def _scaled_sum_vertices(poly: Polytope, summand, eps: float) -> np.ndarray:
    """Vertex candidates of P + eps * Q (segments canonicalized to [0, w])."""
    segments = _segment_list(summand)
    if segments is not None:
        pts = poly.vertices
        for seg in segments:
            pts = np.vstack([pts, pts + eps * seg.vector])
        return pts
    return _vertex_sums(poly.vertices, eps * _summand_vertices(summand))


def _summand_dim(summand) -> int:
    segments = _segment_list(summand)
    if segments is not None:
        return segments[0].dim
    return _summand_vertices(summand).shape[1]


def _volume_degree(poly: Polytope, summand) -> int:
    """Degree of vol(P + eps Q) in eps.

    Generic body summands give degree n. A zonotope summand built from k
    segments gives degree min(n, k): by multilinearity, mixed volumes with
    any segment repeated vanish, so only terms with distinct segments
    survive.
    """
    segments = _segment_list(summand)
    if segments is not None:
        return min(poly.dim, len(segments))
    return poly.dim


def _ladder_fit(poly: Polytope, summand, degree: int, eps0: float,
                eps_ladder=None):
    """Coefficients of f(P + eps Q) - f(P) as a polynomial in t = eps/eps0.

    The ladder defaults to eps0 * 2^-j for j = 0, 1, 2, extended to
    ``degree`` rungs when the polynomial needs more points; the constant
    term is pinned at the known eps = 0 value. The Vandermonde system is
    solved in the scaled variable t = eps/eps0 (well conditioned at these
    degrees; overdetermined ladders are resolved by least squares, which
    is still exact on polynomial data).

    Returns (volume coefficients, moment coefficients) with rows indexed
    by the power 1..degree.
    """
    if eps_ladder is not None:
        eps = np.asarray(eps_ladder, dtype=float).reshape(-1)
        if eps.size < degree:
            raise DegenerateInput(f"epsilon ladder needs at least {degree} "
                                  f"rungs, got {eps.size}")
        if np.any(eps <= 0.0) or not np.all(np.isfinite(eps)):
            raise DegenerateInput("epsilon ladder rungs must be positive "
                                  "and finite")
        eps0 = float(np.max(eps))
    else:
        eps = eps0 * 0.5 ** np.arange(max(3, degree))
    t = eps / eps0
    vol0, mom0 = volume(poly), poly._volume_first_moment
    rhs_vol = np.empty(t.size)
    rhs_mom = np.empty((t.size, poly.dim))
    for j, ej in enumerate(eps):
        v, m = _hull_volume_moment(_scaled_sum_vertices(poly, summand, ej))
        rhs_vol[j] = v - vol0
        rhs_mom[j] = m - mom0
    powers = np.arange(1, degree + 1)
    vander = t[:, None] ** powers[None, :]
    cond = np.linalg.cond(vander)
    if cond > COND_LIMIT:
        raise IllConditionedGrid(f"epsilon ladder condition number "
                                 f"{cond:.3g} exceeds {COND_LIMIT:.0e}")
    coeff_vol, *_ = np.linalg.lstsq(vander, rhs_vol, rcond=None)
    coeff_mom, *_ = np.linalg.lstsq(vander, rhs_mom, rcond=None)
    return coeff_vol, coeff_mom, eps0


def _check_summand(poly: Polytope, summand) -> None:
    if _summand_dim(summand) != poly.dim:
        raise DimensionMismatch(f"summand in R^{_summand_dim(summand)} does "
                                f"not match polytope in R^{poly.dim}")


def dir_derivative_volume(poly: Polytope, summand,
                          eps_ladder=None, method: str = "auto") -> float:
    """Derivative of the volume along a Minkowski summand.

    Parameters
    ----------
    poly : Polytope
        The body being inflated.
    summand : Segment, sequence of Segment, or Polytope
        Direction of the derivative. Segments are canonicalized to
        [0, b - a]; a sequence of segments is treated as their Minkowski
        sum (a zonotope), over which the derivative is additive.
    eps_ladder : sequence of float, optional
        Explicit ladder rungs for the polynomial fit (ignored by the exact
        segment path). Defaults to ``eps0 * 2^-j`` with
        ``eps0 = 1e-2 * poly.scale``.
    method : {"auto", "exact", "ladder"}
        ``exact`` (single segments only) exploits exact linearity in eps
        and evaluates one hull difference at eps = 1; ``ladder`` fits the
        volume polynomial on the epsilon ladder. ``auto`` picks ``exact``
        for single segments, ``ladder`` otherwise.

    Returns
    -------
    float
        ``D_Q(vol)(P)``. For a segment [0, u] this equals |u| times the
        shadow area of P perpendicular to u; for a body summand it equals
        ``n * V(P, ..., P, Q)`` in mixed-volume notation.
    """
    _check_summand(poly, summand)
    single_segment = isinstance(summand, Segment)
    if method == "auto":
        method = "exact" if single_segment else "ladder"
    if method == "exact":
        if not single_segment:
            raise DegenerateInput('method="exact" applies to single segments '
                                  "only")
        v1, _ = _hull_volume_moment(_scaled_sum_vertices(poly, summand, 1.0))
        return v1 - volume(poly)
    if method != "ladder":
        raise DegenerateInput(f"unknown derivative method {method!r}")
    coeff_vol, _, eps0 = _ladder_fit(poly, summand,
                                     _volume_degree(poly, summand),
                                     EPS0_RSCALE * poly.scale, eps_ladder)
    return float(coeff_vol[0] / eps0)


def dir_derivative_moment(poly: Polytope, summand,
                          eps_ladder=None, method: str = "auto") -> Moment:
    """Derivative of the volume moment along a Minkowski summand.

    Returns a :class:`Moment` whose measure part is the volume derivative
    and whose vector part is the derivative of the volume first moment.
    For a segment canonicalized to [0, w] the vector part has the exact
    closed facet form

        sum_F <nu_F, w>^+ area_F centroid_F,

    from the cylinder decomposition of the swept region (each lit facet
    contributes its prism, whose moment is linear in eps at first order).
    For body summands the moment of P + eps Q is a polynomial of degree
    n+1 in eps and the linear coefficient is fitted on the epsilon ladder;
    ``method="ladder"`` also provides an independent cross-check of the
    segment closed form.
    """
    _check_summand(poly, summand)
    single_segment = isinstance(summand, Segment)
    if method == "auto":
        method = "exact" if single_segment else "ladder"
    if method == "exact":
        if not single_segment:
            raise DegenerateInput('method="exact" applies to single segments '
                                  "only")
        w = summand.vector
        cos = poly.facet_normals() @ w
        lit = cos > 0.0
        meas = poly.facet_measures()[lit]
        vector = (cos[lit] * meas) @ poly.facet_centroids()[lit]
        return Moment(float(cos[lit] @ meas), vector)
    if method != "ladder":
        raise DegenerateInput(f"unknown derivative method {method!r}")
    degree = min(_volume_degree(poly, summand) + 1, poly.dim + 1)
    coeff_vol, coeff_mom, eps0 = _ladder_fit(poly, summand, degree,
                                             EPS0_RSCALE * poly.scale,
                                             eps_ladder)
    return Moment(float(coeff_vol[0] / eps0), coeff_mom[0] / eps0)


@dataclass(frozen=True)
class MixedVolumeTable:
    """All mixed volumes V(K_{i_1}, ..., K_{i_n}) of a family of bodies.

    ``rows`` maps each multiset of body indices (sorted tuples of length n)
    to the symmetric mixed volume. ``fit_residual`` is the relative
    infinity-norm residual of the polynomial fit and ``cond`` the condition
    number of its design matrix.
    """

    dim: int
    n_bodies: int
    rows: dict[tuple[int, ...], float]
    fit_residual: float
    cond: float

    def value(self, multiset) -> float:
        key = tuple(sorted(int(i) for i in multiset))
        if len(key) != self.dim:
            raise DimensionMismatch(f"multiset must have {self.dim} entries")
        if key not in self.rows:
            raise DegenerateInput(f"multiset {key} references unknown bodies")
        return self.rows[key]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "bodies": self.n_bodies,
            "rows": [{"multiset": list(k), "value": float(v)}
                     for k, v in sorted(self.rows.items())],
            "fit_residual": float(self.fit_residual),
        }


def default_lambda_grid(n_bodies: int) -> np.ndarray:
    """Deterministic tensor grid of scale vectors in (0, 2].

    Quarter-integer steps for two bodies; half-integer steps for three,
    keeping the sample count (64) a small multiple of the largest
    coefficient count while staying well conditioned.
    """
    if n_bodies == 2:
        base = np.arange(1, 9) * 0.25
    else:
        base = np.arange(1, 5) * 0.5
    return np.array(list(itertools.product(base, repeat=n_bodies)))


def mixed_volume_fit(bodies, lambda_grid=None) -> MixedVolumeTable:
    """Extract all mixed volumes of a body family by polynomial fitting.

    Expands ``vol(lam_1 K_1 + ... + lam_m K_m)`` as the homogeneous
    degree-n polynomial ``sum_alpha multinomial(alpha) V_alpha lam^alpha``
    and recovers the coefficients by least squares over ``lambda_grid``.

    Parameters
    ----------
    bodies : sequence of Polytope
        Two or three full-dimensional bodies of one dimension n.
    lambda_grid : array-like, shape (s, m), optional
        Scale vectors with components in (0, 2]; at least as many rows as
        there are degree-n multisets of m bodies. Defaults to
        :func:`default_lambda_grid`.

    Returns
    -------
    MixedVolumeTable
        ``fit_residual`` is the maximum absolute fit error over the grid.

    Raises
    ------
    IllConditionedGrid
        If the design matrix condition number exceeds ``COND_LIMIT`` (for
        example, a grid with too few distinct scale vectors).
    """
    bodies = list(bodies)
    if not (2 <= len(bodies) <= 3):
        raise DegenerateInput("mixed_volume_fit takes two or three bodies, "
                              f"got {len(bodies)}")
    for body in bodies:
        if not isinstance(body, Polytope):
            raise DegenerateInput("mixed-volume bodies must be "
                                  "full-dimensional polytopes (segments are "
                                  "not accepted)")
    n = bodies[0].dim
    for body in bodies:
        if body.dim != n:
            raise DimensionMismatch("all bodies must share one dimension")
    m = len(bodies)
    if lambda_grid is None:
        lambda_grid = default_lambda_grid(m)
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.ndim != 2 or grid.shape[1] != m:
        raise DegenerateInput(f"lambda grid must be (s, {m})")
    if (np.any(grid <= 0.0) or np.any(grid > 2.0)
            or not np.all(np.isfinite(grid))):
        raise DegenerateInput("lambda grid components must lie in (0, 2]")

    multisets = list(itertools.combinations_with_replacement(range(m), n))
    if grid.shape[0] < len(multisets):
        raise IllConditionedGrid(f"grid has {grid.shape[0]} samples but "
                                 f"{len(multisets)} coefficients are needed")
    # Exponent vector of each multiset: alpha_i = multiplicity of body i.
    alphas = np.zeros((len(multisets), m))
    for r, ms in enumerate(multisets):
        for i in ms:
            alphas[r, i] += 1.0

    design = np.prod(grid[:, None, :] ** alphas[None, :, :], axis=2)
    cond = float(np.linalg.cond(design))
    if cond > COND_LIMIT:
        raise IllConditionedGrid(f"design matrix condition number {cond:.3g} "
                                 f"exceeds {COND_LIMIT:.0e}")

    samples = np.empty(grid.shape[0])
    for s, lam in enumerate(grid):
        pts = lam[0] * bodies[0].vertices
        for i in range(1, m):
            pts = _vertex_sums(pts, lam[i] * bodies[i].vertices)
        samples[s], _ = _hull_volume_moment(pts)

    coeffs, *_ = np.linalg.lstsq(design, samples, rcond=None)
    residual = float(np.max(np.abs(design @ coeffs - samples)))

    rows = {}
    for r, ms in enumerate(multisets):
        multinomial = math.factorial(n)
        for count in np.bincount(np.array(ms), minlength=m):
            multinomial //= math.factorial(int(count))
        rows[tuple(ms)] = float(coeffs[r] / multinomial)
    return MixedVolumeTable(n, m, rows, residual, cond)
