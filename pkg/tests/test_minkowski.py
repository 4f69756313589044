"""Minkowski sums, directional derivatives, ball approximants, mixed volumes."""

import numpy as np
import pytest

from shadowcalc import (BallApprox, DegenerateInput, DimensionMismatch,
                        IllConditionedGrid, Segment, ball_approx, bodies,
                        dir_derivative_moment, dir_derivative_volume, hull,
                        kappa, minkowski_sum, mixed_volume_fit, shadow_area,
                        surface_area, validate, volume)


def seg(*b):
    return Segment(np.zeros(len(b)), np.array(b, dtype=float))


class TestSegment:
    def test_length_and_vector(self):
        s = Segment(np.array([1.0, 1.0]), np.array([1.0, 4.0]))
        assert s.length == pytest.approx(3.0)
        np.testing.assert_allclose(s.vector, [0.0, 3.0])

    def test_rejects_degenerate(self):
        with pytest.raises(DegenerateInput):
            Segment(np.zeros(3), np.zeros(3))
        with pytest.raises(DimensionMismatch):
            Segment(np.zeros(2), np.zeros(3) + 1.0)
        with pytest.raises(DegenerateInput):
            Segment(np.zeros(2), np.array([np.inf, 1.0]))

    def test_round_trip(self):
        s = Segment(np.array([0.5, -1.0]), np.array([2.0, 0.25]))
        clone = Segment.from_dict(s.to_dict())
        np.testing.assert_allclose(clone.a, s.a)
        np.testing.assert_allclose(clone.b, s.b)


class TestMinkowskiSum:
    def test_cube_plus_cube(self, cube3):
        doubled = minkowski_sum(cube3, cube3)
        assert volume(doubled) == pytest.approx(8.0, rel=1e-12)

    def test_cube_plus_segment(self, cube3):
        swept = minkowski_sum(cube3, seg(0.75, 0.0, 0.0))
        assert volume(swept) == pytest.approx(1.75, rel=1e-12)
        assert swept.n_vertices == 8

    def test_segment_translation_dropped(self, cube3):
        # Segments enter as [0, b-a]: a pure shift never changes the sum.
        shifted = Segment(np.array([5.0, 5.0, 5.0]),
                          np.array([5.75, 5.0, 5.0]))
        np.testing.assert_array_equal(
            minkowski_sum(cube3, shifted).vertices,
            minkowski_sum(cube3, seg(0.75, 0.0, 0.0)).vertices)

    def test_commutativity(self, cube3, cross3):
        ab = minkowski_sum(cube3, cross3)
        ba = minkowski_sum(cross3, cube3)
        np.testing.assert_array_equal(ab.vertices, ba.vertices)

    def test_dim_mismatch(self, cube3, square):
        with pytest.raises(DimensionMismatch):
            minkowski_sum(cube3, square)


class TestBallApprox:
    def test_dim2_level0_is_12gon(self):
        ball = ball_approx(2, 0)
        assert ball.n_vertices == 12
        assert volume(ball) == pytest.approx(3.0, rel=1e-12)

    def test_dim3_level4_close_to_ball(self):
        ball = ball_approx(3, 4)
        assert volume(ball) == pytest.approx(kappa(3), rel=5e-3)

    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    def test_nested_and_monotone(self, dim):
        prev = None
        for level in range(0 if dim == 2 else 1, 4):
            ball = ball_approx(dim, level)
            assert isinstance(ball, BallApprox)
            assert ball.level == level
            assert np.all(np.linalg.norm(ball.vertices, axis=1)
                          <= 1.0 + 1e-12)
            assert 0.0 < ball.inradius <= 1.0
            if prev is not None:
                assert volume(ball) >= volume(prev) - 1e-12
                assert ball.inradius >= prev.inradius - 1e-12
            prev = ball

    def test_level_bounds(self):
        with pytest.raises(DegenerateInput):
            ball_approx(3, 99)

    def test_validates(self):
        validate(ball_approx(3, 2))
        validate(ball_approx(4, 2))


class TestDirDerivativeVolume:
    def test_equals_shadow_area(self, cube3):
        u = np.array([0.3, -1.1, 0.6])
        unit = u / np.linalg.norm(u)
        d = dir_derivative_volume(cube3, Segment(np.zeros(3), unit))
        assert d == pytest.approx(shadow_area(cube3, u), rel=1e-12)

    def test_ladder_matches_exact(self, simplex3):
        s = seg(0.4, 0.8, -0.2)
        exact = dir_derivative_volume(simplex3, s, method="exact")
        ladder = dir_derivative_volume(simplex3, s, method="ladder")
        assert ladder == pytest.approx(exact, rel=1e-9)

    def test_homogeneity(self, cross3):
        s = seg(1.0, 0.5, 0.25)
        base = dir_derivative_volume(cross3, s)
        scaled = dir_derivative_volume(
            cross3, Segment(np.zeros(3), 3.0 * s.vector))
        assert scaled == pytest.approx(3.0 * base, rel=1e-9)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_self_derivative_is_n_volume(self, dim):
        # D_K vol at K equals n * vol(K) by Euler homogeneity.
        poly = bodies.random_polytope(dim, 15, seed=33)
        d = dir_derivative_volume(poly, poly)
        assert d == pytest.approx(dim * volume(poly), rel=1e-8)

    def test_ball_derivative_approaches_surface(self, cube3):
        # The defining limit of surface area, at a finite level.
        d = dir_derivative_volume(cube3, ball_approx(3, 3))
        assert d == pytest.approx(surface_area(cube3), rel=1e-6)

    def test_segment_list_additivity(self, cube3):
        u, v = seg(1.0, 0.0, 0.0), seg(0.0, 1.0, 0.0)
        both = dir_derivative_volume(cube3, [u, v])
        assert both == pytest.approx(
            dir_derivative_volume(cube3, u)
            + dir_derivative_volume(cube3, v), rel=1e-9)

    def test_explicit_ladder(self, cube3):
        s = seg(0.2, 0.5, 1.0)
        default = dir_derivative_volume(cube3, s, method="ladder")
        custom = dir_derivative_volume(
            cube3, s, eps_ladder=[4e-3, 2e-3, 1e-3], method="ladder")
        assert custom == pytest.approx(default, rel=1e-9)
        # a polytope summand makes the volume cubic in eps: two rungs
        # cannot determine the fit
        with pytest.raises(DegenerateInput):
            dir_derivative_volume(cube3, cube3, eps_ladder=[1e-3, 5e-4],
                                  method="ladder")
        with pytest.raises(DegenerateInput):
            dir_derivative_volume(cube3, s, eps_ladder=[1e-3, -1e-4, 1e-5],
                                  method="ladder")


class TestDirDerivativeMoment:
    def test_cube_axis_direction(self, cube3):
        moment = dir_derivative_moment(cube3, seg(1.0, 0.0, 0.0))
        assert moment.measure == pytest.approx(1.0, rel=1e-12)
        np.testing.assert_allclose(moment.first_moment, [1.0, 0.5, 0.5],
                                   atol=1e-12)

    def test_ladder_matches_exact(self):
        poly = bodies.random_polytope(3, 16, seed=44)
        s = seg(0.3, -0.7, 0.55)
        exact = dir_derivative_moment(poly, s, method="exact")
        ladder = dir_derivative_moment(poly, s, method="ladder")
        assert ladder.measure == pytest.approx(exact.measure, rel=1e-8)
        np.testing.assert_allclose(ladder.first_moment, exact.first_moment,
                                   rtol=1e-6, atol=1e-10)


class TestMixedVolume:
    def test_cube_cross_table(self, cube3, cross3):
        table = mixed_volume_fit([cube3, cross3])
        assert table.fit_residual <= 1e-8
        # closed forms: V(C,C,X) = 2 (4 * support sum over cube facets / 3),
        # V(C,X,X) = 2, diagonals are the volumes.
        assert table.value((0, 0, 0)) == pytest.approx(1.0, rel=1e-9)
        assert table.value((0, 0, 1)) == pytest.approx(2.0, rel=1e-9)
        assert table.value((0, 1, 1)) == pytest.approx(2.0, rel=1e-9)
        assert table.value((1, 1, 1)) == pytest.approx(volume(cross3),
                                                       rel=1e-9)

    def test_reconstructs_sum_volume(self, cube3, cross3):
        table = mixed_volume_fit([cube3, cross3])
        lam = (0.8, 1.3)
        pts = np.vstack([0.8 * cube3.vertices[:, None, :]
                         + 1.3 * cross3.vertices[None, :, :]]).reshape(-1, 3)
        direct = volume(hull(pts))
        from math import factorial
        total = 0.0
        for alpha in table.rows:
            counts = np.bincount(alpha, minlength=2)
            multinomial = factorial(3) // (factorial(counts[0])
                                           * factorial(counts[1]))
            total += (multinomial * table.rows[alpha]
                      * lam[0] ** counts[0] * lam[1] ** counts[1])
        assert total == pytest.approx(direct, rel=1e-9)

    def test_permutation_symmetry(self, cube3, cross3):
        ab = mixed_volume_fit([cube3, cross3])
        ba = mixed_volume_fit([cross3, cube3])
        assert ab.value((0, 0, 1)) == pytest.approx(ba.value((1, 1, 0)),
                                                    rel=1e-9)

    def test_three_bodies(self):
        trio = [bodies.cube(2), bodies.cross_polytope(2),
                bodies.simplex(2)]
        table = mixed_volume_fit(trio)
        assert table.fit_residual <= 1e-8
        assert table.value((0, 0)) == pytest.approx(1.0, rel=1e-9)
        assert table.value((2, 2)) == pytest.approx(0.5, rel=1e-9)

    def test_errors(self, cube3, square):
        with pytest.raises(DegenerateInput):
            mixed_volume_fit([cube3])
        with pytest.raises(DegenerateInput):
            mixed_volume_fit([cube3] * 4)
        with pytest.raises(DimensionMismatch):
            mixed_volume_fit([cube3, square])
        with pytest.raises(DegenerateInput):
            mixed_volume_fit([cube3, cube3],
                             lambda_grid=[[0.5, 3.0], [1.0, 1.0]])
        with pytest.raises(DegenerateInput):
            mixed_volume_fit([cube3, seg(1.0, 0.0, 0.0)])
        with pytest.raises(IllConditionedGrid):
            mixed_volume_fit([cube3, cube3],
                             lambda_grid=[[1.0, 1.0]] * 6)


def test_sum_with_ball_validates(cube3):
    fattened = minkowski_sum(cube3, ball_approx(3, 1))
    assert volume(fattened) > volume(cube3) + 4.0  # >= vol + S * inradius
    validate(fattened)
