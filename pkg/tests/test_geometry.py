import math

import numpy as np
import pytest

from hbops.errors import DimensionError, ParameterError
from hbops.geometry import ball_norm, inner_product, make_grid, shell_radius


def test_inner_product_basis():
    e1, e2 = np.array([1, 0j]), np.array([0, 1 + 0j])
    assert inner_product(e1, e1) == 1
    assert inner_product(e1, e2) == 0
    z = np.array([0.5, 0.5j])
    assert inner_product(z, z) == pytest.approx(0.5)


def test_inner_product_is_conjugate_linear_in_second_slot():
    z = np.array([0.3 + 0.1j, -0.2j])
    w = np.array([0.1, 0.4 + 0.2j])
    c = 2 - 1j
    assert inner_product(z, c * w) == pytest.approx(np.conj(c) * inner_product(z, w))
    assert inner_product(w, z) == pytest.approx(np.conj(inner_product(z, w)))


def test_ball_norm_examples():
    assert ball_norm(np.zeros(3)) == 0.0
    assert ball_norm(np.array([1.0, 0.0])) == 1.0
    v = np.array([0.6, 0.8j]) / math.sqrt(2)
    assert ball_norm(v) == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_shell_radii():
    assert [shell_radius(j) for j in range(3)] == [0.0, 0.5, 0.75]


def test_small_disc_grid_has_origin_once():
    G = make_grid(1, 3, 4, seed=7)
    # 3 shells x 4 directions, with the r = 0 shell collapsed to one point
    assert len(G) == 1 + 2 * 4
    radii = np.unique(np.round(ball_norm(G.points), 15))
    assert list(radii) == [0.0, 0.5, 0.75]


def test_single_level_grid_collapses_to_origin():
    G = make_grid(2, 1, 100, seed=3)
    assert G.points.shape == (1, 2)
    assert np.all(G.points == 0)


def test_grid_is_deterministic():
    a = make_grid(2, 6, 50, seed=11).points
    b = make_grid(2, 6, 50, seed=11).points
    assert a.tobytes() == b.tobytes()
    c = make_grid(2, 6, 50, seed=12).points
    assert not np.array_equal(a, c)


def test_points_stay_inside_ball_and_on_shells():
    G = make_grid(3, 10, 64, seed=1, substeps=3)
    r = ball_norm(G.points)
    assert r.max() < 1
    assert np.allclose(r, G.shells[G.shell_of_point], atol=1e-14)


def test_substeps_fill_levels():
    G = make_grid(1, 5, 8, substeps=4)
    assert len(G.shells) == 1 + 4 * 4
    assert G.shell_level.tolist() == [0] + [l for l in range(1, 5) for _ in range(4)]
    # level l ends exactly at the dyadic radius 1 - 2^-l
    for l in range(1, 5):
        assert G.shells[G.shell_level == l].max() == pytest.approx(shell_radius(l))


def test_direction_prefixes_are_stable():
    small = make_grid(2, 3, 16, seed=5).directions
    big = make_grid(2, 3, 64, seed=5).directions
    assert np.array_equal(small, big[:16])


def test_level_maxima():
    G = make_grid(1, 3, 2)
    vals = np.arange(len(G), dtype=float)
    assert G.level_maxima(vals).tolist() == [0.0, 2.0, 4.0]


def test_descriptor_roundtrip():
    G = make_grid(2, 7, 33, seed=4, substeps=2)
    d = G.descriptor()
    assert make_grid(d["n"], d["shells"], d["points"], d["seed"], d["substeps"]) == G


@pytest.mark.parametrize("args", [(0, 3, 4), (1, 0, 4), (1, 3, 0)])
def test_bad_grid_parameters(args):
    with pytest.raises((DimensionError, ParameterError)):
        make_grid(*args)
