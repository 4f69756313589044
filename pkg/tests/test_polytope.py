"""Hull construction, exact measures, serialization, and validation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shadowcalc import (DegenerateInput, DimensionOutOfRange, bodies,
                        boundary_moment, hull, polytope_from_dict,
                        polytope_to_dict, surface_area, validate, volume,
                        volume_moment)
from conftest import random_rotation


# Closed-form measures: cube [0,1]^n, simplex conv{0, e_i}, cross conv{±e_i}.
def cube_volume(n):
    return 1.0


def cube_surface(n):
    return 2.0 * n


def simplex_volume(n):
    return 1.0 / math.factorial(n)


def simplex_surface(n):
    return (n + math.sqrt(n)) / math.factorial(n - 1)


def cross_volume(n):
    return 2.0 ** n / math.factorial(n)


def cross_surface(n):
    return 2.0 ** n * math.sqrt(n) / math.factorial(n - 1)


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
@pytest.mark.parametrize("family,vol_fn,surf_fn", [
    ("cube", cube_volume, cube_surface),
    ("simplex", simplex_volume, simplex_surface),
    ("cross", cross_volume, cross_surface),
])
def test_exact_measures(dim, family, vol_fn, surf_fn):
    maker = {"cube": bodies.cube, "simplex": bodies.simplex,
             "cross": bodies.cross_polytope}[family]
    poly = maker(dim)
    assert volume(poly) == pytest.approx(vol_fn(dim), rel=1e-12)
    assert surface_area(poly) == pytest.approx(surf_fn(dim), rel=1e-12)


def test_hull_strips_interior_points(cube3):
    pts = np.vstack([cube3.vertices, [[0.5, 0.5, 0.5], [0.25, 0.5, 0.75]]])
    rebuilt = hull(pts)
    assert rebuilt.n_vertices == 8
    assert volume(rebuilt) == pytest.approx(1.0, rel=1e-12)


def test_hull_idempotent_and_canonical(cube3):
    rng = np.random.default_rng(3)
    shuffled = cube3.vertices[rng.permutation(8)]
    rebuilt = hull(shuffled)
    np.testing.assert_array_equal(rebuilt.vertices, cube3.vertices)


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_rigid_motion_invariance(dim):
    poly = bodies.random_polytope(dim, 18, seed=11)
    rot = random_rotation(dim, seed=5)
    shift = np.arange(1, dim + 1, dtype=float)
    moved = hull(poly.vertices @ rot.T + shift)
    assert volume(moved) == pytest.approx(volume(poly), rel=1e-10)
    assert surface_area(moved) == pytest.approx(surface_area(poly),
                                                rel=1e-10)


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_scaling_laws(dim):
    poly = bodies.simplex(dim)
    t = 1.7
    scaled = hull(poly.vertices * t)
    assert volume(scaled) == pytest.approx(t ** dim * volume(poly),
                                           rel=1e-12)
    assert surface_area(scaled) == pytest.approx(
        t ** (dim - 1) * surface_area(poly), rel=1e-12)


def test_containment_monotonicity(cube3, simplex3):
    assert volume(simplex3) < volume(cube3)
    assert all(cube3.contains(v) for v in simplex3.vertices)


def test_contains(cube3):
    assert cube3.contains(np.full(3, 0.5))
    assert cube3.contains(np.zeros(3))  # vertex, boundary inclusive
    assert not cube3.contains(np.full(3, 1.5))


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_volume_moment_centroids(dim):
    cube_moment = volume_moment(bodies.cube(dim))
    np.testing.assert_allclose(cube_moment.centroid, np.full(dim, 0.5),
                               atol=1e-12)
    simplex_moment = volume_moment(bodies.simplex(dim))
    np.testing.assert_allclose(simplex_moment.centroid,
                               np.full(dim, 1.0 / (dim + 1)), atol=1e-12)


def test_boundary_moment_cube3(cube3):
    moment = boundary_moment(cube3)
    assert moment.measure == pytest.approx(6.0, rel=1e-12)
    np.testing.assert_allclose(moment.first_moment, [3.0, 3.0, 3.0],
                               atol=1e-12)


def test_boundary_moment_centered_is_zero(centered_cube3):
    np.testing.assert_allclose(boundary_moment(centered_cube3).first_moment,
                               np.zeros(3), atol=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_json_round_trip(dim):
    poly = bodies.random_polytope(dim, 14, seed=2)
    clone = polytope_from_dict(polytope_to_dict(poly))
    np.testing.assert_array_equal(clone.vertices, poly.vertices)
    assert volume(clone) == pytest.approx(volume(poly), rel=1e-12)
    assert surface_area(clone) == pytest.approx(surface_area(poly),
                                                rel=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_validate_builtins(dim):
    for maker in (bodies.cube, bodies.simplex, bodies.cross_polytope):
        validate(maker(dim))
    validate(bodies.random_polytope(dim, 20, seed=8))


def test_merged_facets_cube(cube3):
    # Coplanar qhull triangles must merge into the 6 square faces.
    assert cube3.n_facets == 6
    assert sorted(len(f.vertex_ids) for f in cube3.facets) == [4] * 6


def test_degenerate_inputs():
    with pytest.raises(DegenerateInput):
        hull(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))  # collinear
    with pytest.raises(DegenerateInput):
        hull(np.array([[0.0, 0.0], [1.0, 0.0]]))  # too few points
    with pytest.raises(DegenerateInput):
        hull(np.array([[0.0, 0.0], [np.nan, 1.0], [1.0, 0.0]]))
    with pytest.raises(DegenerateInput):
        hull(np.zeros((3, 1)))  # one-dimensional, but zero length
    with pytest.raises(DimensionOutOfRange):
        hull(np.random.default_rng(0).standard_normal((10, 6)))


def test_interval_hull_supports_projections():
    # R^1 hulls back the shadow path out of R^2: volume is the length.
    interval = hull(np.array([[0.25], [2.0], [1.0]]))
    assert interval.dim == 1
    assert volume(interval) == pytest.approx(1.75, rel=1e-12)


def test_from_dict_rejects_bad_dim():
    poly = bodies.cube(2)
    data = polytope_to_dict(poly)
    data["dim"] = 7
    with pytest.raises(DimensionOutOfRange):
        polytope_from_dict(data)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000),
       n_points=st.integers(min_value=5, max_value=40))
def test_hull_contains_generators_and_fits_bbox(seed, n_points):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-5.0, 5.0, (n_points, 3))
    try:
        poly = hull(pts)
    except DegenerateInput:
        return  # flat cloud: correctly rejected
    box = np.prod(pts.max(axis=0) - pts.min(axis=0))
    assert 0.0 < volume(poly) <= box + 1e-9
    assert all(poly.contains(p) for p in pts)
    validate(poly)
