"""Algebraic curvature operators of 4-manifolds in block normal form.

An operator is stored by the data (u, wplus, wminus, c): the scalar part
u = scal/12, the ordered eigenvalue triples of the self-dual and
anti-self-dual Weyl blocks, and the 3x3 mixing block c written in the
eigenbases of the two Weyl blocks.  The full 6x6 symmetric matrix acting
on 2-forms is

    [ u*I + diag(wplus)   c^T              ]
    [ c                   u*I + diag(wminus) ]

with the splitting ordered self-dual first.  The Hodge star in this basis
is STAR = diag(1, 1, 1, -1, -1, -1).

Pinching certificates follow Finsler-Thorpe: R has sectional curvature in
[delta, 1] (after scaling, possibly of -R) if and only if there are reals
t1, t2 with R - delta*Id + t1*STAR >= 0 and Id - R + t2*STAR >= 0.
pinch_certificate searches each t by maximizing the smallest eigenvalue,
which is a concave function of t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import BadDelta, NonPositiveLambda, NonTraceless, NonUnitPlane

STAR = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])

_TRACE_TOL = 1e-9


@dataclass
class CurvOp:
    """Curvature operator in block normal form.

    u is scal/12, wplus and wminus are the Weyl eigenvalue triples sorted
    ascending (each summing to zero), c is the off-diagonal block in the
    Weyl eigenbases.
    """

    u: float
    wplus: np.ndarray
    wminus: np.ndarray
    c: np.ndarray

    def matrix(self) -> np.ndarray:
        """Return the symmetric 6x6 matrix on Lambda^2."""
        top = self.u * np.eye(3) + np.diag(self.wplus)
        bot = self.u * np.eye(3) + np.diag(self.wminus)
        return np.block([[top, self.c.T], [self.c, bot]])

    def reversed_orientation(self) -> "CurvOp":
        """The same operator read with the opposite orientation.

        Swaps the two Weyl blocks and transposes the mixing block.
        """
        return CurvOp(self.u, self.wminus.copy(), self.wplus.copy(),
                      self.c.T.copy())

    def to_dict(self) -> dict:
        return {
            "u": float(self.u),
            "wplus": [float(x) for x in self.wplus],
            "wminus": [float(x) for x in self.wminus],
            "c": [float(x) for x in self.c.reshape(-1)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(data: dict) -> "CurvOp":
        c = np.asarray(data["c"], dtype=float).reshape(3, 3)
        return make_operator(float(data["u"]), data["wplus"],
                             data["wminus"], c)

    @staticmethod
    def from_json(text: str) -> "CurvOp":
        return CurvOp.from_dict(json.loads(text))


@dataclass
class Bivector:
    """Unit decomposable 2-plane encoded by its two Weyl-basis factors."""

    h: np.ndarray
    k: np.ndarray


@dataclass
class Certificate:
    """Outcome of a pinching feasibility search.

    margin1 and margin2 are the best achievable smallest eigenvalues of
    R - delta*Id + t1*STAR and Id - R + t2*STAR (for sign * R).  feasible
    means both clear -tol; boundary marks a feasible certificate where
    one margin is negative but within tolerance of zero.
    """

    feasible: bool
    sign: int
    t1: float
    t2: float
    margin1: float
    margin2: float
    boundary: bool


def make_operator(u, wplus, wminus, c=None) -> CurvOp:
    """Build a CurvOp, sorting the Weyl triples into normal form.

    Raises NonTraceless if either triple sums to more than 1e-9 in
    absolute value.  Sorting permutations are applied simultaneously to
    the rows/columns of c so the represented operator is unchanged
    (columns of c live on the self-dual side, rows on the anti-self-dual
    side).
    """
    wp = np.asarray(wplus, dtype=float).reshape(3).copy()
    wm = np.asarray(wminus, dtype=float).reshape(3).copy()
    if abs(wp.sum()) > _TRACE_TOL:
        raise NonTraceless(f"wplus sums to {wp.sum():.3e}")
    if abs(wm.sum()) > _TRACE_TOL:
        raise NonTraceless(f"wminus sums to {wm.sum():.3e}")
    if c is None:
        cc = np.zeros((3, 3))
    else:
        cc = np.asarray(c, dtype=float).reshape(3, 3).copy()
    perm_p = np.argsort(wp, kind="stable")
    perm_m = np.argsort(wm, kind="stable")
    wp = wp[perm_p]
    wm = wm[perm_m]
    cc = cc[perm_m][:, perm_p]
    return CurvOp(float(u), wp, wm, cc)


def euler_form(r: CurvOp) -> float:
    """Gauss-Bonnet integrand, normalized so chi = (1/pi^2) * integral.

    For the round metric (r = Id) this gives 3/4, and the unit round
    4-sphere has volume 8 pi^2 / 3, recovering chi(S^4) = 2.
    """
    nc = float(np.sum(r.c * r.c))
    return (6.0 * r.u ** 2 + float(r.wplus @ r.wplus)
            + float(r.wminus @ r.wminus) - 2.0 * nc) / 8.0


def signature_form(r: CurvOp) -> float:
    """Signature integrand in the same normalization as euler_form."""
    return (float(r.wplus @ r.wplus) - float(r.wminus @ r.wminus)) / 12.0


def i_lambda(r: CurvOp, lam: float) -> float:
    """euler_form - signature_form / lam; the lam-weighted integrand."""
    if lam <= 0.0:
        raise NonPositiveLambda(f"lambda = {lam}")
    return euler_form(r) - signature_form(r) / lam


def sec(r: CurvOp, plane: Bivector) -> float:
    """Sectional curvature of the plane encoded by (h, k).

    Both factors must be unit vectors (checked to 1e-12).
    """
    h = np.asarray(plane.h, dtype=float).reshape(3)
    k = np.asarray(plane.k, dtype=float).reshape(3)
    if abs(h @ h - 1.0) > 1e-12 or abs(k @ k - 1.0) > 1e-12:
        raise NonUnitPlane(f"|h|^2 = {h @ h:.15g}, |k|^2 = {k @ k:.15g}")
    qp = r.u + float(h @ (r.wplus * h))
    qm = r.u + float(k @ (r.wminus * k))
    return 0.5 * (qp + qm) + float(k @ r.c @ h)


def project_einstein(r: CurvOp) -> CurvOp:
    """Drop the mixing block; the Einstein part of the operator."""
    return replace(r, c=np.zeros((3, 3)))


def _max_min_eig(m: np.ndarray, bracket: float) -> tuple[float, float]:
    """Maximize t -> lambda_min(m + t*STAR) over [-bracket, bracket].

    The objective is concave in t, so golden-section search converges.
    Returns (t, value).  Runs at most 200 iterations and stops early once
    the bracket width falls below 1e-14 * max(1, bracket).
    """
    invphi = (np.sqrt(5.0) - 1.0) / 2.0

    def f(t):
        return np.linalg.eigvalsh(m + t * STAR)[0]

    a, b = -bracket, bracket
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    stop = 1e-14 * max(1.0, bracket)
    for _ in range(200):
        if b - a < stop:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    return t, f(t)


def pinch_certificate(r: CurvOp, delta: float, tol: float = 1e-9) -> Certificate:
    """Search for a Finsler-Thorpe certificate that r is delta-pinched.

    Tries sign = +1 first, then sign = -1 (the operator with reversed
    sign convention).  Returns the first feasible certificate, or the
    sign = +1 attempt marked infeasible if neither works.
    """
    if not 0.0 < delta <= 1.0:
        raise BadDelta(f"delta = {delta} not in (0, 1]")
    mat = r.matrix()
    first = None
    for sign in (1, -1):
        ms = sign * mat
        bracket = float(np.linalg.norm(ms, 2)) + delta + 1.0
        t1, margin1 = _max_min_eig(ms - delta * np.eye(6), bracket)
        t2, margin2 = _max_min_eig(np.eye(6) - ms, bracket)
        t1, margin1, t2, margin2 = (float(t1), float(margin1),
                                    float(t2), float(margin2))
        feasible = margin1 >= -tol and margin2 >= -tol
        boundary = feasible and min(margin1, margin2) < 0.0
        cert = Certificate(feasible, sign, t1, t2, margin1, margin2, boundary)
        if feasible:
            return cert
        if first is None:
            first = cert
    return first
