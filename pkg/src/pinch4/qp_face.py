"""Quadratic forms on polytopes, optimized by face enumeration.

A QuadForm stores Q(x) = c0 + b.x + x.a.x, so the Hessian is 2a.  The
optimizer uses the standard fact that if Q has d eigenvalue directions
adverse to the sense (negative for a maximum, positive for a minimum),
then the extremum over a polytope is attained either at a vertex or at
an interior critical point of a face of dimension at most d on which the
restricted Hessian is definite in the favorable direction.  So it walks
the face lattice up to dimension d, restricts, and collects candidates.

Restricted Hessians are reported in the vertex-difference parametrization
x(s) = v0 + sum_j s_j (v_j - v0) of the face, not in an orthonormal
basis; all closed-form spot values used by the tests follow that
convention.  Prism quads use the corner parametrization
x(s, t) = v0 + s e1 + t e2 instead, with e1, e2 the two edge vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (DimensionMismatch, NoSignChange, NotAFace,
                     Pinch4Error)
from .polytopes import Polytope, enumerate_faces

_DEF_TOL = 1e-12   # relative cutoff for calling an eigenvalue nonzero
_RELINT_TOL = 1e-9
_SCAN_TOL = 1e-11


@dataclass
class QuadForm:
    """Q(x) = c0 + b.x + x.a.x on R^n, with a symmetric."""

    n: int
    c0: float
    b: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        self.b = np.asarray(self.b, dtype=float).reshape(self.n)
        self.a = np.asarray(self.a, dtype=float).reshape(self.n, self.n)
        asym = np.abs(self.a - self.a.T).max()
        if asym > 1e-14:
            raise Pinch4Error(f"a is not symmetric (defect {asym:.3e})")

    def value(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(self.c0 + self.b @ x + x @ self.a @ x)

    def value_many(self, xs: np.ndarray) -> np.ndarray:
        """Evaluate on rows of xs."""
        xs = np.asarray(xs, dtype=float)
        return self.c0 + xs @ self.b + np.einsum(
            "ni,ij,nj->n", xs, self.a, xs)

    def gradient(self, x) -> np.ndarray:
        return self.b + 2.0 * (self.a @ np.asarray(x, dtype=float))

    def hessian(self) -> np.ndarray:
        return 2.0 * self.a


@dataclass
class RestrictedForm:
    """Q restricted to the affine hull of a face.

    hess_eigs are the eigenvalues of the restricted Hessian (one per face
    dimension).  critical_bary and value_at_critical are filled only when
    that Hessian is definite, in which case critical_bary holds the
    barycentric (or corner) weights of the unique critical point.
    """

    face: tuple
    hess_eigs: np.ndarray
    critical_bary: np.ndarray | None = None
    value_at_critical: float | None = None
    critical_point: np.ndarray | None = None

    def is_definite(self, sense: str) -> bool:
        if len(self.hess_eigs) == 0:
            return True
        thr = _DEF_TOL * (1.0 + np.abs(self.hess_eigs).max())
        if sense == "min":
            return bool(self.hess_eigs.min() > thr)
        return bool(self.hess_eigs.max() < -thr)


@dataclass
class Extremum:
    value: float
    point: np.ndarray
    face: tuple
    sense: str
    candidates: list = field(default_factory=list)


def _face_frame(q: QuadForm, p: Polytope, face: tuple,
                delta: float | None):
    """Return (v0, D, weight_fn) for the face parametrization.

    weight_fn maps the parameter vector s to the tuple of vertex weights
    used for relative-interior tests, aligned with the face index order.
    """
    V = p.vertex_array(delta)
    idx = list(face)
    if p.kind == "prism" and len(face) == 4:
        # parallelogram, corners in cyclic order
        v0 = V[idx[0]]
        D = np.column_stack([V[idx[1]] - v0, V[idx[3]] - v0])

        def weights(sv):
            s, t = sv
            return np.array([(1 - s) * (1 - t), s * (1 - t),
                             s * t, (1 - s) * t])
        return v0, D, weights
    if p.kind == "prism" and len(face) == 6:
        bottoms = [a for a, _ in p.pairing]
        tops = [b for _, b in p.pairing]
        B, T = V[bottoms], V[tops]
        v0 = B[0]
        D = np.column_stack([B[1] - B[0], B[2] - B[0], T[0] - B[0]])

        def weights(sv):
            s1, s2, s3 = sv
            beta = np.array([1 - s1 - s2, s1, s2])
            w = np.empty(6)
            for k in range(3):
                w[bottoms[k]] = beta[k] * (1 - s3)
                w[tops[k]] = beta[k] * s3
            return w[idx]
        return v0, D, weights
    # simplex face (of either kind of polytope)
    v0 = V[idx[0]]
    D = np.column_stack([V[j] - v0 for j in idx[1:]])

    def weights(sv):
        return np.concatenate([[1.0 - sv.sum()], sv])
    return v0, D, weights


def restrict(q: QuadForm, p: Polytope, face, delta: float | None = None
             ) -> RestrictedForm:
    """Restrict q to a face of p, solving for the critical point.

    face is an index tuple; raises NotAFace if it is not in the face
    lattice of p, and DimensionMismatch if ambient dimensions differ.
    """
    if q.n != p.dim_ambient:
        raise DimensionMismatch(
            f"form on R^{q.n}, polytope in R^{p.dim_ambient}")
    face = tuple(face)
    if frozenset(face) not in p.face_set():
        raise NotAFace(f"{face} is not a face of {p.name or 'polytope'}")
    if len(face) == 1:
        V = p.vertex_array(delta)
        x = V[face[0]]
        return RestrictedForm(face, np.empty(0), np.array([1.0]),
                              q.value(x), x)
    v0, D, weights = _face_frame(q, p, face, delta)
    hess = D.T @ q.hessian() @ D
    eigs = np.linalg.eigvalsh(hess)
    rf = RestrictedForm(face, eigs)
    thr = _DEF_TOL * (1.0 + np.abs(eigs).max())
    if eigs.min() > thr or eigs.max() < -thr:
        s = np.linalg.solve(hess, -(D.T @ q.gradient(v0)))
        x = v0 + D @ s
        rf.critical_bary = weights(s)
        rf.value_at_critical = q.value(x)
        rf.critical_point = x
    return rf


def optimize(q: QuadForm, p: Polytope, sense: str = "min",
             delta: float | None = None) -> Extremum:
    """Extremize q over p by face enumeration.

    Candidates are all vertices, plus the critical point of every face of
    dimension at most d (the number of adverse Hessian eigenvalues) whose
    restriction is definite in the favorable direction and whose critical
    point lies in the face's relative interior.  Ties resolve to the
    lexicographically smallest face.
    """
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    if q.n != p.dim_ambient:
        raise DimensionMismatch(
            f"form on R^{q.n}, polytope in R^{p.dim_ambient}")
    heigs = np.linalg.eigvalsh(q.hessian())
    thr = _DEF_TOL * (1.0 + np.abs(heigs).max())
    if sense == "min":
        d = int((heigs > thr).sum())
    else:
        d = int((heigs < -thr).sum())
    best = None
    candidates = []
    for face in enumerate_faces(p, min(d, p.dim)):
        rf = restrict(q, p, face, delta)
        if len(face) > 1:
            if not rf.is_definite(sense):
                continue
            if rf.critical_bary is None or rf.critical_bary.min() <= _RELINT_TOL:
                continue
        candidates.append((face, rf.value_at_critical))
        better = (best is None
                  or (sense == "min" and rf.value_at_critical < best[1])
                  or (sense == "max" and rf.value_at_critical > best[1])
                  or (rf.value_at_critical == best[1]
                      and tuple(sorted(face)) < tuple(sorted(best[0]))))
        if better:
            best = (face, rf.value_at_critical, rf.critical_point)
    face, value, point = best
    return Extremum(value, point, face, sense, candidates)


def threshold_scan(family, predicate: str, lo: float, hi: float) -> float:
    """Bisect for the delta where a restricted-form predicate flips.

    family maps delta to (QuadForm, Polytope, face).  predicate is
    "relint" (critical point has all weights positive) or "sign"
    (critical value is nonnegative).  Raises NoSignChange if the
    predicate agrees at both bracket ends.  Bracket is narrowed to 1e-11
    and the midpoint returned.
    """
    if predicate not in ("relint", "sign"):
        raise ValueError(f"unknown predicate {predicate!r}")

    def holds(delta):
        qq, pp, face = family(delta)
        rf = restrict(qq, pp, face, delta)
        if predicate == "relint":
            return (rf.critical_bary is not None
                    and rf.critical_bary.min() > 0.0)
        return (rf.value_at_critical is not None
                and rf.value_at_critical >= 0.0)

    flo, fhi = holds(lo), holds(hi)
    if flo == fhi:
        raise NoSignChange(f"predicate is {flo} at both {lo} and {hi}")
    while hi - lo > _SCAN_TOL:
        mid = 0.5 * (lo + hi)
        if holds(mid) == flo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
