"""Shared fixtures: canonical bodies and a rotation helper."""

import json

import numpy as np
import pytest

from shadowcalc import bodies, polytope_to_dict


@pytest.fixture
def square():
    return bodies.cube(2)


@pytest.fixture
def cube3():
    return bodies.cube(3)


@pytest.fixture
def centered_cube3():
    return bodies.cube(3, centered=True)


@pytest.fixture
def simplex3():
    return bodies.simplex(3)


@pytest.fixture
def cross3():
    return bodies.cross_polytope(3)


@pytest.fixture
def cube3_file(tmp_path, cube3):
    path = tmp_path / "cube3.json"
    path.write_text(json.dumps(polytope_to_dict(cube3)))
    return str(path)


def random_rotation(dim: int, seed: int) -> np.ndarray:
    """Haar-ish rotation: QR of a Gaussian matrix, determinant fixed to +1."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
