"""The specific quadratic forms fed to the face optimizer.

Coordinates follow the Einstein simplices: (w1+, w2+, w1-, w2-, u) with
the optional t1 slot appended, the third Weyl eigenvalue of each block
being minus the sum of the first two.  f_ville lives on the ordered
triple (v1, v2, v3) of averaged sectional curvatures.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParameter, EtaOutOfRange, NonPositiveLambda
from .qp_face import QuadForm

# Gram matrix of |w|^2 = w1^2 + w2^2 + (w1 + w2)^2 on the (w1, w2) slice:
# x.P2.x with P2 = 2*[[1, 1/2], [1/2, 1]].
_P2 = np.array([[1.0, 0.5], [0.5, 1.0]])


def q_lambda(lam: float, delta: float) -> QuadForm:
    """The lambda-weighted integrand minorant on R^6.

    Q(w, u, t1) = (1/4 - 1/(6 lam)) |w+|^2 + (1/4 + 1/(6 lam)) |w-|^2
                  - (1/2)(w1+ w1- + w2+ w2-) - (1/4)(w1+ w2- + w2+ w1-)
                  + (3/4) t1^2 + (3/2) delta u - (3/4) delta^2.
    """
    if lam <= 0.0:
        raise NonPositiveLambda(f"lambda = {lam}")
    cp = (3.0 * lam - 2.0) / (12.0 * lam)
    cm = (3.0 * lam + 2.0) / (12.0 * lam)
    a = np.zeros((6, 6))
    a[0:2, 0:2] = cp * _P2
    a[2:4, 2:4] = cm * _P2
    cross = np.array([[-0.25, -0.125], [-0.125, -0.25]])
    a[0:2, 2:4] = cross
    a[2:4, 0:2] = cross
    a[5, 5] = 0.75
    b = np.zeros(6)
    b[4] = 1.5 * delta
    return QuadForm(6, -0.75 * delta ** 2, b, a)


def q_half(delta: float) -> QuadForm:
    """The lam = 1/2 instance with hard-coded rational coefficients.

    Kept independent of q_lambda on purpose; q_lambda(0.5, delta) must
    reproduce these numbers bit for bit.
    """
    a = np.zeros((6, 6))
    a[0, 0] = a[1, 1] = -1.0 / 12.0
    a[0, 1] = a[1, 0] = -1.0 / 24.0
    a[2, 2] = a[3, 3] = 7.0 / 12.0
    a[2, 3] = a[3, 2] = 7.0 / 24.0
    for i, j, v in ((0, 2, -0.25), (1, 3, -0.25), (0, 3, -0.125),
                    (1, 2, -0.125)):
        a[i, j] = a[j, i] = v
    a[5, 5] = 0.75
    b = np.zeros(6)
    b[4] = 1.5 * delta
    return QuadForm(6, -0.75 * delta ** 2, b, a)


def q_eta(eta: float) -> QuadForm:
    """Weyl norm combination 2 |w+|^2 + 2 eta |w-|^2 on R^5."""
    if not -1.0 <= eta <= 1.0:
        raise EtaOutOfRange(f"eta = {eta} not in [-1, 1]")
    a = np.zeros((5, 5))
    a[0:2, 0:2] = 2.0 * _P2
    a[2:4, 2:4] = 2.0 * eta * _P2
    return QuadForm(5, 0.0, np.zeros(5), a)


def q_euler() -> QuadForm:
    """Gauss-Bonnet integrand on the Einstein simplex coordinates."""
    a = np.zeros((5, 5))
    a[0:2, 0:2] = 0.25 * _P2
    a[2:4, 2:4] = 0.25 * _P2
    a[4, 4] = 0.75
    return QuadForm(5, 0.0, np.zeros(5), a)


def ville_cell(v, delta: float) -> int:
    """Cell index 1..4 of an ordered triple in the slab.

    Coordinates below the midpoint (1 + delta)/2 count as close to delta;
    cell i has exactly i - 1 such coordinates.
    """
    v = np.asarray(v, dtype=float)
    mbar = 0.5 * (1.0 + delta)
    return 1 + int((v < mbar).sum())


def f_ville(lam: float, delta: float, cell: int) -> QuadForm:
    """The comparison function F_lam on one Ville cell, as a quadratic.

    F(v) = (4/(9 lam) - 1/3)(sum v)^2 + (2 - 4/(3 lam)) sum v^2
           - (lam/2)(sum m)^2 - sum m^2,
    where m_j = v_j - delta on the first cell-1 coordinates and 1 - v_j
    on the rest.  On its cell each m_j equals min(v_j - delta, 1 - v_j),
    so the piecewise-defined F is recovered cell by cell.
    """
    if lam <= 0.0:
        raise NonPositiveLambda(f"lambda = {lam}")
    if cell not in (1, 2, 3, 4):
        raise BadParameter(f"cell must be 1..4, got {cell}")
    sgn = np.array([1.0 if j < cell - 1 else -1.0 for j in range(3)])
    off = np.where(sgn > 0, -delta, 1.0)
    c1 = 4.0 / (9.0 * lam) - 1.0 / 3.0
    c2 = 2.0 - 4.0 / (3.0 * lam)
    a = (c1 * np.ones((3, 3)) + (c2 - 1.0) * np.eye(3)
         - 0.5 * lam * np.outer(sgn, sgn))
    b = -lam * off.sum() * sgn - 2.0 * sgn * off
    c0 = -0.5 * lam * off.sum() ** 2 - float(off @ off)
    return QuadForm(3, c0, b, a)
