import numpy as np
import pytest

from pinch4 import (
    DegenerateDelta,
    einstein_simplex,
    enumerate_faces,
    membership,
    ville_cells,
)


def test_simplex_dimensions_and_names():
    for k in (5, 6, 7):
        p = einstein_simplex(0.3, k)
        assert p.dim_ambient == k
        assert p.dim == k
        assert len(p.vertices) == k + 1
        assert p.name == f"d{k}"


def test_vertices_affinely_independent():
    for k in (5, 6, 7):
        V = einstein_simplex(0.37, k).vertex_array()
        D = V[1:] - V[0]
        assert np.linalg.matrix_rank(D, tol=1e-10) == k


def test_known_vertex_rows():
    d = 0.3
    V = einstein_simplex(d, 5).vertex_array()
    p1 = [2 / 3 * (d - 1), 2 / 3 * (d - 1), 0, 0, (2 * d + 1) / 3]
    p2 = [4 / 3 * (d - 1), 2 / 3 * (1 - d), 0, 0, (d + 2) / 3]
    assert np.allclose(V[0], p1, atol=1e-15)
    assert np.allclose(V[1], p2, atol=1e-15)
    assert np.allclose(V[4], [0, 0, 0, 0, 1], atol=0)
    assert np.allclose(V[5], [0, 0, 0, 0, d], atol=0)
    # swapping the self-dual and anti-self-dual pairs gives rows 3 and 4
    assert np.allclose(V[2], np.concatenate([V[0][2:4], V[0][:2], V[0][4:]]))
    assert np.allclose(V[3], np.concatenate([V[1][2:4], V[1][:2], V[1][4:]]))


def test_augmented_simplices_project_down():
    d = 0.22
    V5 = einstein_simplex(d, 5).vertex_array()
    V6 = einstein_simplex(d, 6).vertex_array()
    V7 = einstein_simplex(d, 7).vertex_array()
    lift6 = [0, 1, 2, 3, 4, 4, 5]
    for i, j in enumerate(lift6):
        assert np.allclose(V6[i][:5], V5[j], atol=1e-15), f"q{i + 1}"
    lift7 = [0, 1, 2, 3, 4, 5, 6, 6]
    for i, j in enumerate(lift7):
        assert np.allclose(V7[i][:6], V6[j], atol=1e-15), f"v{i + 1}"
    # the duplicated rows split along the new coordinate
    assert V6[4][5] != V6[5][5]
    assert V7[6][6] != V7[7][6]


def test_face_counts():
    p6 = einstein_simplex(0.3, 6)
    assert len(enumerate_faces(p6, 0)) == 7
    assert len(enumerate_faces(p6, 1)) == 7 + 21
    assert len(enumerate_faces(p6, 3)) == 7 + 21 + 35 + 35
    p5 = einstein_simplex(0.3, 5)
    assert len(enumerate_faces(p5, 1)) == 6 + 15


def test_degenerate_delta_rejected():
    for bad in (0.0, 1.0, -0.1, 1.7):
        with pytest.raises(DegenerateDelta):
            einstein_simplex(bad, 6)


def test_ville_cells_shapes():
    d = 0.4
    cells = ville_cells(d)
    assert [c.kind for c in cells] == ["simplex", "prism", "prism",
                                       "simplex"]
    assert [len(c.vertices) for c in cells] == [4, 6, 6, 4]
    m = 0.5 * (1.0 + d)
    V1 = cells[0].vertex_array()
    assert np.allclose(V1, [[m, m, m], [m, m, 1], [m, 1, 1], [1, 1, 1]])
    V4 = cells[3].vertex_array()
    assert np.allclose(V4, [[d, d, d], [d, d, m], [d, m, m], [m, m, m]])


def test_ville_cells_tile_the_corner():
    # cells live in ascending coordinate order; the index is the count
    # of coordinates below the midpoint, and membership must agree
    d = 0.35
    m = 0.5 * (1.0 + d)
    cells = ville_cells(d)
    rng = np.random.default_rng(2)
    for _ in range(200):
        x = np.sort(rng.uniform(d, 1.0, size=3))
        k = int((x < m).sum())
        assert membership(cells[k], x), f"{x} not in cell {k + 1}"


def test_prism_quads_are_parallelograms():
    for cell in ville_cells(0.27)[1:3]:
        V = cell.vertex_array()
        for face in cell.faces:
            if len(face) == 4:
                a, b, c, e = (V[i] for i in face)
                assert np.allclose((b - a) + (e - c), 0, atol=1e-14) or \
                    np.allclose((b - a) - (e - c), 0, atol=1e-14), face


def test_membership_simplex():
    p = einstein_simplex(0.3, 6)
    V = p.vertex_array()
    assert membership(p, V.mean(axis=0))
    assert membership(p, V[3])
    assert not membership(p, V.mean(axis=0) + 0.1)
    # slightly outside through a facet
    out = V[0] + 1.02 * (V[0] - V.mean(axis=0))
    assert not membership(p, out)


def test_membership_prism():
    cell = ville_cells(0.3)[1]
    V = cell.vertex_array()
    assert membership(cell, V.mean(axis=0))
    for v in V:
        assert membership(cell, v)
    assert not membership(cell, V.mean(axis=0) + np.array([0.2, 0, 0]))


def test_prism_membership_matches_hull():
    scipy = pytest.importorskip("scipy.spatial")
    d = 0.42
    cell = ville_cells(d)[2]
    V = cell.vertex_array()
    hull = scipy.Delaunay(V)
    rng = np.random.default_rng(9)
    pts = rng.uniform(d - 0.1, 1.05, size=(500, 3))
    for x in pts:
        ours = membership(cell, x, tol=1e-9)
        theirs = hull.find_simplex(x) >= 0
        assert ours == theirs, f"{x}: membership {ours}, hull {theirs}"
