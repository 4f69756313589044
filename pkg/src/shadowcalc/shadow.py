"""Shadows (orthogonal projections) and illuminated boundaries.

For a direction u on the unit sphere, the shadow of a polytope K is its image
under orthogonal projection onto the hyperplane u-perp. Two independent
routes compute its (n-1)-measure:

- ``method="hull"`` projects the vertices into an explicit orthonormal basis
  of u-perp and takes the volume of the lower-dimensional hull;
- ``method="halfsum"`` evaluates ``0.5 * sum_F |<nu_F, u>| area(F)`` over the
  facets, which equals the shadow measure exactly because almost every line
  parallel to u that meets K enters through one facet and leaves through one
  facet.

The illuminated boundary for u is the set of facets whose outward normals
have positive cosine against u. Its cosine-weighted measure reproduces the
shadow area, and its cosine-weighted first moment is the integrand of the
moment analogue of the surface-area formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateInput, DimensionMismatch
from .polytope import Moment, Polytope, hull, volume

#: A facet is tangent to direction u when |<normal, u>| falls below this.
ILLUMINATED_TOL = 1e-9


@dataclass(frozen=True)
class Direction:
    """Unit direction with an orthonormal basis of its orthogonal complement.

    ``vector`` has unit length; ``basis`` is an (n-1, n) array whose rows
    are orthonormal and orthogonal to ``vector``. The basis is generated
    deterministically from the standard basis by dropping the axis most
    parallel to ``vector`` (lowest index on ties) and running Gram-Schmidt,
    so identical inputs always produce identical projection frames.
    """

    vector: np.ndarray
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.vector.shape[0]


def direction(u) -> Direction:
    """Normalize ``u`` and attach a basis of the orthogonal complement."""
    if isinstance(u, Direction):
        return u
    vec = np.asarray(u, dtype=float).reshape(-1)
    if vec.size < 2 or not np.all(np.isfinite(vec)):
        raise DegenerateInput("direction must be a finite vector of length >= 2")
    norm = np.linalg.norm(vec)
    if norm <= 0.0:
        raise DegenerateInput("direction vector has zero length")
    vec = vec / norm
    n = vec.size
    drop = int(np.argmax(np.abs(vec)))
    rows = []
    for axis in range(n):
        if axis == drop:
            continue
        cand = np.zeros(n)
        cand[axis] = 1.0
        cand -= (cand @ vec) * vec
        for row in rows:
            cand -= (cand @ row) * row
        cand_norm = np.linalg.norm(cand)
        cand /= cand_norm
        rows.append(cand)
    basis = np.array(rows)
    basis.setflags(write=False)
    vec.setflags(write=False)
    return Direction(vec, basis)


def _check_dim(poly: Polytope, d: Direction) -> None:
    if d.dim != poly.dim:
        raise DimensionMismatch(f"direction of length {d.dim} does not match "
                                f"polytope in R^{poly.dim}")


def project(poly: Polytope, u) -> Polytope:
    """Shadow of ``poly`` in direction ``u`` as an (n-1)-polytope.

    Coordinates are taken in the deterministic basis of ``direction(u)``,
    so for n = 2 the result is an interval and for n >= 3 a polytope in
    R^(n-1). The shadow of the vertex set spans the shadow of the body.
    """
    d = direction(u)
    _check_dim(poly, d)
    return hull(poly.vertices @ d.basis.T)


def shadow_area(poly: Polytope, u, method: str = "halfsum") -> float:
    """(n-1)-measure of the shadow of ``poly`` in direction ``u``.

    ``method="halfsum"`` uses the facet-normal identity and never builds the
    projected hull; ``method="hull"`` measures the projected polytope
    directly. The two agree to roundoff and are cross-checked in the
    verification harness.
    """
    d = direction(u)
    _check_dim(poly, d)
    if method == "halfsum":
        area = kernels.shadow_halfsum_batch(
            d.vector[None, :], poly.facet_normals(), poly.facet_measures())
        return float(area[0])
    if method == "hull":
        return volume(project(poly, d))
    raise DegenerateInput(f"unknown shadow method {method!r}")


def shadow_areas(poly: Polytope, directions: np.ndarray) -> np.ndarray:
    """Shadow areas for a batch of unit directions (rows), via the half-sum
    identity. This is the hot path of the surface-area verification."""
    dirs = np.asarray(directions, dtype=float)
    if dirs.ndim != 2 or dirs.shape[1] != poly.dim:
        raise DimensionMismatch("direction batch must be (N, n) with n = "
                                f"{poly.dim}")
    return kernels.shadow_halfsum_batch(dirs, poly.facet_normals(),
                                        poly.facet_measures())


@dataclass(frozen=True)
class IlluminatedBoundary:
    """Facets of a polytope lit from direction u, with their moments.

    ``weighted_moment`` carries the cosine-weighted measure and first
    moment; its measure equals the shadow area exactly (prism identity).
    ``unweighted_moment`` carries the plain surface measure and moment of
    the lit facets. ``tangent_count`` is the number of facets whose normal
    is orthogonal to u within :data:`ILLUMINATED_TOL`; those contribute to
    neither moment.
    """

    direction: np.ndarray
    facet_ids: np.ndarray
    weighted_moment: Moment
    unweighted_moment: Moment
    tangent_count: int

    def to_dict(self) -> dict:
        return {
            "facets": [int(i) for i in self.facet_ids],
            "weighted_moment": [float(x) for x in
                                self.weighted_moment.first_moment],
            "tangent_count": int(self.tangent_count),
        }


def illuminated(poly: Polytope, u, tol: float = ILLUMINATED_TOL) -> IlluminatedBoundary:
    """Illuminated boundary of ``poly`` for direction ``u``."""
    d = direction(u)
    _check_dim(poly, d)
    cosines = poly.facet_normals() @ d.vector
    lit = cosines > tol
    measures = poly.facet_measures()
    centroids = poly.facet_centroids()
    lit_meas = measures[lit]
    lit_cos = cosines[lit]
    weighted = Moment(float(lit_cos @ lit_meas),
                      (lit_cos * lit_meas) @ centroids[lit])
    unweighted = Moment(float(lit_meas.sum()), lit_meas @ centroids[lit])
    tangent = int(np.sum(np.abs(cosines) <= tol))
    return IlluminatedBoundary(d.vector, np.nonzero(lit)[0], weighted,
                               unweighted, tangent)


def illuminated_moments(poly: Polytope, directions: np.ndarray,
                        weighted: bool = True,
                        tol: float = ILLUMINATED_TOL) -> np.ndarray:
    """First moments of the illuminated boundary for a batch of directions.

    Returns an (N, n) array; row i is the (cosine-weighted when ``weighted``)
    first moment of the boundary lit from ``directions[i]``. Hot path of the
    moment verification.
    """
    dirs = np.asarray(directions, dtype=float)
    if dirs.ndim != 2 or dirs.shape[1] != poly.dim:
        raise DimensionMismatch("direction batch must be (N, n) with n = "
                                f"{poly.dim}")
    out = kernels.illuminated_batch(dirs, poly.facet_normals(),
                                    poly.facet_measures(),
                                    poly.facet_centroids(), tol)
    return out[1] if weighted else out[3]
