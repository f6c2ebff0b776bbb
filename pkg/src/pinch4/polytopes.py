"""Polytopes whose vertices depend affinely on the pinching constant.

Two families live here.  The Einstein simplices parametrize conjugacy
classes of delta-pinched operators with zero mixing block: the base
5-simplex in coordinates (w1+, w2+, w1-, w2-, u), and its augmentations
by one or two Finsler-Thorpe shifts t1, t2.  The Ville cells are the four
3-dimensional pieces (two simplices and two prisms) that partition the
ordered cube slab delta <= v1 <= v2 <= v3 <= 1 by which coordinates sit
closer to delta than to 1.

Every vertex is stored as base + delta * slope so one polytope object can
be re-evaluated at any delta.  Faces are index tuples into the vertex
list; for simplices every nonempty subset is a face, for prisms the
lattice is hard-coded (quads are kept in cyclic corner order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDelta

_MEMBER_TOL = 1e-10


@dataclass
class AffineVertex:
    base: np.ndarray
    slope: np.ndarray

    def eval(self, delta: float) -> np.ndarray:
        return self.base + delta * self.slope


@dataclass
class Polytope:
    dim_ambient: int
    vertices: list
    kind: str                      # "simplex" or "prism"
    delta: float
    faces: tuple = ()              # complete face lattice, index tuples
    name: str = ""
    # prisms only: vertical (bottom, top) vertex pairs and the two
    # triangle faces, used for product parametrizations
    pairing: tuple = ()
    triangles: tuple = ()

    @property
    def dim(self) -> int:
        if self.kind == "simplex":
            return len(self.vertices) - 1
        return 3

    def vertex_array(self, delta: float | None = None) -> np.ndarray:
        d = self.delta if delta is None else delta
        return np.array([v.eval(d) for v in self.vertices])

    def face_set(self) -> set:
        return {frozenset(f) for f in self.faces}


def _av(base, slope) -> AffineVertex:
    return AffineVertex(np.asarray(base, dtype=float),
                        np.asarray(slope, dtype=float))


def _simplex_lattice(m: int) -> tuple:
    out = []
    for size in range(1, m + 1):
        out.extend(itertools.combinations(range(m), size))
    return tuple(out)


# Vertices of the Einstein simplices, written as (base, slope) pairs in
# the coordinate order w1+, w2+, w1-, w2-, u, then t1, then t2.
_P_ROWS = [
    ((-2 / 3, -2 / 3, 0, 0, 1 / 3), (2 / 3, 2 / 3, 0, 0, 2 / 3)),
    ((-4 / 3, 2 / 3, 0, 0, 2 / 3), (4 / 3, -2 / 3, 0, 0, 1 / 3)),
    ((0, 0, -2 / 3, -2 / 3, 1 / 3), (0, 0, 2 / 3, 2 / 3, 2 / 3)),
    ((0, 0, -4 / 3, 2 / 3, 2 / 3), (0, 0, 4 / 3, -2 / 3, 1 / 3)),
    ((0, 0, 0, 0, 1), (0, 0, 0, 0, 0)),
    ((0, 0, 0, 0, 0), (0, 0, 0, 0, 1)),
]

# t1 column of q_1..q_7 (base, slope), appended to p-rows 1,2,3,4,5,5,6.
_T1_COL = [(1 / 3, -1 / 3), (2 / 3, -2 / 3), (-1 / 3, 1 / 3),
           (-2 / 3, 2 / 3), (-1, 1), (1, -1), (0, 0)]
_Q_FROM_P = [0, 1, 2, 3, 4, 4, 5]

# t2 column of v_1..v_8, appended to q-rows 1..6, 7, 7; rows 7 and 8
# carry t1 = 0.
_T2_COL = [(-2 / 3, 2 / 3), (-1 / 3, 1 / 3), (2 / 3, -2 / 3),
           (1 / 3, -1 / 3), (0, 0), (0, 0), (-1, 1), (1, -1)]
_V_FROM_Q = [0, 1, 2, 3, 4, 5, 6, 6]


def einstein_simplex(delta: float, variant: int = 5) -> Polytope:
    """The Einstein simplex (variant 5) or an augmented one (6 or 7).

    Vertices follow the labeling p_1..p_6, q_1..q_7, v_1..v_8 in index
    order.  Raises DegenerateDelta unless 0 < delta < 1, where the
    simplices have full dimension.
    """
    if not 0.0 < delta < 1.0:
        raise DegenerateDelta(f"delta = {delta} not in (0, 1)")
    if variant not in (5, 6, 7):
        raise ValueError(f"variant must be 5, 6 or 7, got {variant}")
    pverts = [_av(b, s) for b, s in _P_ROWS]
    if variant == 5:
        verts = pverts
    elif variant == 6:
        verts = []
        for i, j in enumerate(_Q_FROM_P):
            p = pverts[j]
            tb, ts = _T1_COL[i]
            verts.append(_av(np.append(p.base, tb), np.append(p.slope, ts)))
    else:
        qverts = einstein_simplex(delta, 6).vertices
        verts = []
        for i, j in enumerate(_V_FROM_Q):
            q = qverts[j]
            base, slope = q.base.copy(), q.slope.copy()
            if i >= 6:
                base[5], slope[5] = 0.0, 0.0
            tb, ts = _T2_COL[i]
            verts.append(_av(np.append(base, tb), np.append(slope, ts)))
    m = len(verts)
    return Polytope(dim_ambient=variant, vertices=verts, kind="simplex",
                    delta=delta, faces=_simplex_lattice(m),
                    name=f"d{variant}")


# Ville cell vertex coordinates as (base, slope) per entry: the symbols
# delta, mbar = (1 + delta)/2, and 1 map to (0,1), (1/2,1/2), (1,0).
_D = (0.0, 1.0)
_M = (0.5, 0.5)
_ONE = (1.0, 0.0)

_VILLE_VERTS = [
    # V1, simplex
    [(_M, _M, _M), (_M, _M, _ONE), (_M, _ONE, _ONE), (_ONE, _ONE, _ONE)],
    # V2, prism
    [(_D, _M, _M), (_D, _M, _ONE), (_D, _ONE, _ONE),
     (_M, _M, _M), (_M, _M, _ONE), (_M, _ONE, _ONE)],
    # V3, prism
    [(_D, _D, _M), (_D, _D, _ONE), (_D, _M, _M), (_D, _M, _ONE),
     (_M, _M, _M), (_M, _M, _ONE)],
    # V4, simplex
    [(_D, _D, _D), (_D, _D, _M), (_D, _M, _M), (_M, _M, _M)],
]

_PRISM_LATTICES = {
    # (edges, triangles, quads in cyclic corner order, vertical pairing)
    1: (((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
         (0, 3), (1, 4), (2, 5)),
        ((0, 1, 2), (3, 4, 5)),
        ((0, 1, 4, 3), (1, 2, 5, 4), (0, 2, 5, 3)),
        ((0, 3), (1, 4), (2, 5))),
    2: (((0, 1), (2, 3), (4, 5), (0, 2), (2, 4), (0, 4),
         (1, 3), (3, 5), (1, 5)),
        ((0, 2, 4), (1, 3, 5)),
        ((0, 1, 3, 2), (2, 3, 5, 4), (0, 1, 5, 4)),
        ((0, 1), (2, 3), (4, 5))),
}


def ville_cells(delta: float) -> list:
    """The four cells V1..V4 of the ordered slab, in order."""
    if not 0.0 < delta < 1.0:
        raise DegenerateDelta(f"delta = {delta} not in (0, 1)")
    cells = []
    for i, rows in enumerate(_VILLE_VERTS):
        verts = [_av([b for b, _ in row], [s for _, s in row])
                 for row in rows]
        if i in (0, 3):
            cells.append(Polytope(dim_ambient=3, vertices=verts,
                                  kind="simplex", delta=delta,
                                  faces=_simplex_lattice(4),
                                  name=f"v{i + 1}"))
        else:
            edges, tris, quads, pairing = _PRISM_LATTICES[i]
            faces = (tuple((j,) for j in range(6)) + edges + tris + quads
                     + ((0, 1, 2, 3, 4, 5),))
            cells.append(Polytope(dim_ambient=3, vertices=verts,
                                  kind="prism", delta=delta, faces=faces,
                                  name=f"v{i + 1}", pairing=pairing,
                                  triangles=tris))
    return cells


def enumerate_faces(p: Polytope, max_dim: int) -> list:
    """All faces of p of dimension at most max_dim.

    Simplex faces of dimension k are the (k+1)-subsets of vertices.
    Prism quads count as dimension 2 and the solid cell as dimension 3.
    Ordered by dimension, then lexicographically.
    """
    out = []
    for f in p.faces:
        if p.kind == "simplex":
            dim = len(f) - 1
        else:
            dim = {1: 0, 2: 1, 3: 2, 4: 2, 6: 3}[len(f)]
        if dim <= max_dim:
            out.append(f)
    out.sort(key=lambda f: (len(f), tuple(sorted(f))))
    return out


def membership(p: Polytope, x, delta: float | None = None,
               tol: float = _MEMBER_TOL) -> bool:
    """Whether x lies in p (evaluated at delta), within tolerance.

    Simplices use barycentric coordinates: all >= -tol with the sum
    within tol of 1.  Prisms check the five facet inequalities with
    outward unit normals.
    """
    x = np.asarray(x, dtype=float)
    V = p.vertex_array(delta)
    if p.kind == "simplex":
        A = np.vstack([V.T, np.ones(len(V))])
        rhs = np.append(x, 1.0)
        bary, *_ = np.linalg.lstsq(A, rhs, rcond=None)
        resid = np.linalg.norm(A @ bary - rhs)
        return (resid <= 1e-9 * max(1.0, np.linalg.norm(rhs))
                and bary.min() >= -tol and abs(bary.sum() - 1.0) <= tol)
    centroid = V.mean(axis=0)
    for f in p.faces:
        if len(f) not in (3, 4):
            continue
        pts = V[list(f)]
        n = np.cross(pts[1] - pts[0], pts[2] - pts[0])
        nn = np.linalg.norm(n)
        if nn == 0.0:
            continue
        n = n / nn
        if n @ (centroid - pts[0]) > 0:
            n = -n
        if n @ (x - pts[0]) > tol:
            return False
    return True
