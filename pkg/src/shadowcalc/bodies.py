"""Builtin test bodies: cubes, simplices, cross-polytopes, random hulls.

These are the stock inputs for the verification harness and the CLI. All
constructors return fully assembled :class:`~shadowcalc.polytope.Polytope`
objects with known exact measures:

============== =============== ======================
body           volume          surface area
============== =============== ======================
cube(n)        1               2n
simplex(n)     1/n!            n/(n-1)! + sqrt(n)/(n-1)!
cross(n)       2^n/n!          2^n sqrt(n)/(n-1)!
============== =============== ======================
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import DimensionOutOfRange
from .polytope import DIM_MAX, DIM_MIN, Polytope, hull


def _check_dim(dim: int) -> int:
    dim = int(dim)
    if not (DIM_MIN <= dim <= DIM_MAX):
        raise DimensionOutOfRange(f"dimension {dim} outside supported range "
                                  f"{DIM_MIN}..{DIM_MAX}")
    return dim


def cube(dim: int, centered: bool = False) -> Polytope:
    """Unit cube [0, 1]^n, or [-1/2, 1/2]^n when ``centered``."""
    dim = _check_dim(dim)
    verts = np.array(list(itertools.product((0.0, 1.0), repeat=dim)))
    if centered:
        verts -= 0.5
    return hull(verts)


def simplex(dim: int) -> Polytope:
    """Standard simplex conv{0, e_1, ..., e_n}."""
    dim = _check_dim(dim)
    verts = np.vstack([np.zeros(dim), np.eye(dim)])
    return hull(verts)


def cross_polytope(dim: int) -> Polytope:
    """Cross-polytope conv{+-e_1, ..., +-e_n}."""
    dim = _check_dim(dim)
    eye = np.eye(dim)
    return hull(np.vstack([eye, -eye]))


def random_polytope(dim: int, n_points: int = 30, seed: int = 0) -> Polytope:
    """Hull of ``n_points`` i.i.d. standard Gaussian points.

    Deterministic for a fixed ``seed``. Gaussian clouds of at least n+2
    points are full-dimensional with probability one, so no degeneracy
    retry loop is needed.
    """
    dim = _check_dim(dim)
    n_points = int(n_points)
    if n_points < dim + 1:
        n_points = dim + 1
    rng = np.random.default_rng(seed)
    return hull(rng.standard_normal((n_points, dim)))
