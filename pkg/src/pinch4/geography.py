"""Piecewise pinching-to-geography curves and topology bounds.

lambda_of_delta evaluates three piecewise-algebraic curves: the
sharp-for-2-faces curve ("star"), the boundary-cell curve ("ville"), and
their pointwise minimum ("best").  Breakpoints between branches are roots
of fixed integer polynomials, located once by bisection inside brackets
that isolate the intended root.

The remaining functions turn a pinching constant into constraints on the
Euler characteristic and signature, enumerate the simply connected
homeotypes compatible with those constraints, and clip the admissible
(|sigma|, chi) region to a polygon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (BadDelta, BadParameter, EmptyRegion, NonPositiveLambda,
                     OutOfDomain)


def _bisect(f, lo: float, hi: float, tol: float = 1e-15) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    assert flo * fhi < 0.0, f"no sign change on [{lo}, {hi}]"
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _poly_root(coeffs, lo: float, hi: float) -> float:
    """Root of a polynomial (highest degree first) inside [lo, hi]."""
    return _bisect(lambda x: float(np.polyval(coeffs, x)), lo, hi)


class _Breaks:
    """Branch breakpoints, computed once on first use.

    Each is pinned as a root of an integer polynomial inside a bracket
    that contains exactly one real root, except d2_star which is exact.
    """

    def __init__(self):
        # smallest root of 2 d^3 - 40 d^2 + 89 d - 6
        self.d1 = _poly_root([2, -40, 89, -6], 0.01, 0.12)
        # largest root in (0,1) of the degree-6 envelope discriminant
        self.d2 = _poly_root([2279, 6246, 4470, 2060, -450, -24, -1],
                             0.15, 0.25)
        # largest root in (0,1) of 140 d^4 + 40 d^3 - 6 d^2 + 88 d - 19
        self.d3 = _poly_root([140, 40, -6, 88, -19], 0.15, 0.25)
        self.d2_star = 4.0 - 1.5 * math.sqrt(6.0)
        # smallest root of d^4 - 18 d^3 + 2 d^2 - 6 d + 1
        self.d0v = _poly_root([1, -18, 2, -6, 1], 0.1, 0.2)
        # only real root of 31 d^3 + d^2 + 5 d - 1
        self.d1v = _poly_root([31, 1, 5, -1], 0.1, 0.2)
        self.d2v = self.d3


_BREAKS = None


def breakpoints() -> "_Breaks":
    global _BREAKS
    if _BREAKS is None:
        _BREAKS = _Breaks()
    return _BREAKS


def _star1(d: float) -> float:
    return ((math.sqrt(24.0 / d + 8.0 - 8.0 * d + d * d) + d - 4.0)
            / (6.0 * (3.0 - d)))


def _star2(d: float) -> float:
    return (4.0 / (3.0 * math.sqrt(15.0))) * (1.0 - d) / math.sqrt(
        d * (d + 2.0))


def _tail(d: float) -> float:
    return 8.0 * (1.0 - d) ** 2 / (24.0 * d * d - 12.0 * d + 15.0)


def _best3(d: float) -> float:
    rad = 55.0 * d ** 4 + 40.0 * d ** 3 + 6.0 * d * d + 8.0 * d - 1.0
    return ((26.0 * d * d + 8.0 * d + 2.0
             - 2.0 * math.sqrt(3.0) * math.sqrt(rad))
            / (3.0 * (1.0 - d) ** 2))


def _ville1(d: float) -> float:
    rad = 11.0 * d ** 4 + 68.0 * d ** 3 + 6.0 * d * d + 28.0 * d - 5.0
    return ((7.0 * d * d + 10.0 * d + 1.0
             - math.sqrt(3.0) * math.sqrt(rad))
            / (6.0 * (1.0 - d) ** 2))


def lambda_of_delta(delta: float, which: str = "best") -> float:
    """Evaluate one of the piecewise lambda curves at delta.

    which is "best", "star" or "ville".  The ville curve is only defined
    from its threshold d0v up to 1; elsewhere OutOfDomain is raised, as
    it is for delta outside (0, 1].
    """
    br = breakpoints()
    if not 0.0 < delta <= 1.0:
        raise OutOfDomain(f"delta = {delta} not in (0, 1]")
    if which == "star":
        if delta < br.d1:
            return _star1(delta)
        if delta < br.d2_star:
            return _star2(delta)
        return _tail(delta)
    if which == "ville":
        if delta < br.d0v - 1e-12:
            raise OutOfDomain(
                f"ville curve starts at {br.d0v:.12g}, got {delta}")
        if delta <= br.d1v:
            return _ville1(delta)
        if delta <= br.d2v:
            return _best3(delta)
        return _tail(delta)
    if which == "best":
        if delta < br.d1:
            return _star1(delta)
        if delta < br.d2:
            return _star2(delta)
        if delta <= br.d3:
            return _best3(delta)
        return _tail(delta)
    raise BadParameter(f"unknown curve {which!r}")


def lambda_bar(delta: float) -> float:
    """Upper end 8 delta / (3 (1-delta)^2) of the admissible lambda window."""
    if not 0.0 < delta < 1.0:
        raise OutOfDomain(f"delta = {delta} not in (0, 1)")
    return 8.0 * delta / (3.0 * (1.0 - delta) ** 2)


@dataclass
class GeoBounds:
    chi_max: float
    sigma_max: float
    context: str


def geography_bounds(delta: float, context: str = "positive",
                     vol: float | None = None,
                     diam: float | None = None) -> GeoBounds:
    """Upper bounds on chi and |sigma| for a delta-pinched 4-manifold.

    context "positive" needs only delta; "negative_vol" needs the volume
    and "negative_diam" the diameter of the normalized metric.
    """
    if not 0.0 < delta <= 1.0:
        raise BadParameter(f"delta = {delta} not in (0, 1]")
    if context == "positive":
        s = (1.0 / delta - 1.0) ** 2
        return GeoBounds(8.0 / 9.0 * s, 8.0 / 27.0 * s, context)
    if context == "negative_vol":
        if vol is None or vol <= 0.0:
            raise BadParameter(f"need a positive volume, got {vol}")
        return GeoBounds(3.0 / (4.0 * math.pi ** 2) * vol,
                         2.0 / (9.0 * math.pi ** 2) * (1.0 - delta) ** 2 * vol,
                         context)
    if context == "negative_diam":
        if diam is None or diam <= 0.0:
            raise BadParameter(f"need a positive diameter, got {diam}")
        s = (2.0 + math.cosh(diam)) * math.sinh(0.5 * diam) ** 4
        return GeoBounds(2.0 * s,
                         16.0 / 27.0 * (1.0 - delta) ** 2 * s, context)
    raise BadParameter(f"unknown context {context!r}")


def min_volume(delta: float) -> float:
    """Volume below which a negatively pinched metric forces sigma = 0."""
    if not 0.0 < delta < 1.0:
        raise BadParameter(f"delta = {delta} not in (0, 1)")
    return 9.0 * math.pi ** 2 / (2.0 * (1.0 - delta) ** 2)


def min_diameter(delta: float) -> float:
    """Diameter below which a negatively pinched metric forces sigma = 0.

    Solves (2 + cosh D) sinh(D/2)^4 = 27 / (16 (1-delta)^2), whose left
    side is strictly increasing in D.
    """
    if not 0.0 < delta < 1.0:
        raise BadParameter(f"delta = {delta} not in (0, 1)")
    target = 27.0 / (16.0 * (1.0 - delta) ** 2)

    def f(x):
        return (2.0 + math.cosh(x)) * math.sinh(0.5 * x) ** 4 - target

    hi = 1.0
    while f(hi) < 0.0:
        hi *= 2.0
    return _bisect(f, 1e-12, hi, tol=1e-10)


@dataclass
class EulerGap:
    value: float
    applies: bool


def euler_gap(delta: float) -> EulerGap:
    """Lower bound (24 d^2 - 12 d + 15) / (8 (1-d)^2) on chi/|sigma|.

    Only valid on the tail branch of the best curve; applies reports
    whether delta is at or beyond that breakpoint.
    """
    if not 0.0 < delta < 1.0:
        raise BadParameter(f"delta = {delta} not in (0, 1)")
    value = (24.0 * delta * delta - 12.0 * delta + 15.0) / (
        8.0 * (1.0 - delta) ** 2)
    return EulerGap(value, delta >= breakpoints().d3 - 1e-12)


def b1_bound(bplus: int, bminus: int, lam: float) -> float:
    """First Betti number bound from the lam-weighted Bochner argument."""
    if lam <= 0.0:
        raise NonPositiveLambda(f"lambda = {lam}")
    hi, lo = max(bplus, bminus), min(bplus, bminus)
    return 1.0 + (lam - 1.0) / (2.0 * lam) * hi + (lam + 1.0) / (
        2.0 * lam) * lo


@dataclass
class HomeoMenu:
    labels: list
    nonspin: list
    spin: list
    nonorientable_chi_max: float


def homeo_menu(delta: float) -> HomeoMenu:
    """Simply connected homeotypes compatible with the chi/sigma bounds.

    Non-spin sums of r CP2 and s conjugate CP2 need r + s + 2 <= chi_max
    and |r - s| <= sigma_max; spin sums of r copies of S2xS2 need
    2r + 2 <= chi_max.  S4 always qualifies.  For the non-orientable
    side only the chi bound chi <= (4/9)(1/delta - 1)^2 is reported.
    """
    if not 0.0 < delta <= 1.0:
        raise BadDelta(f"delta = {delta} not in (0, 1]")
    gb = geography_bounds(delta, "positive")
    labels = ["S4"]
    nonspin = []
    spin = []
    rs_cap = int(math.floor(gb.chi_max - 2.0 + 1e-9))
    for total in range(1, rs_cap + 1):
        for r in range(total + 1):
            s = total - r
            if abs(r - s) <= gb.sigma_max + 1e-9:
                nonspin.append((r, s))
                labels.append(f"#^{r} CP2 #^{s} CP2bar")
    r = 1
    while 2 * r + 2 <= gb.chi_max + 1e-9:
        spin.append(r)
        labels.append(f"#^{r} S2xS2")
        r += 1
    return HomeoMenu(labels, nonspin, spin,
                     4.0 / 9.0 * (1.0 / delta - 1.0) ** 2)


def _clip_halfplane(poly, normal, offset):
    """Keep the part of the polygon with normal . p >= offset."""
    out = []
    m = len(poly)
    for i in range(m):
        p, q = np.asarray(poly[i]), np.asarray(poly[(i + 1) % m])
        fp = normal @ p - offset
        fq = normal @ q - offset
        if fp >= 0.0:
            out.append(tuple(p))
        if (fp >= 0.0) != (fq >= 0.0):
            t = fp / (fp - fq)
            out.append(tuple(p + t * (q - p)))
    # drop duplicates introduced by vertices on the cut line
    dedup = []
    for pt in out:
        if not dedup or max(abs(pt[0] - dedup[-1][0]),
                            abs(pt[1] - dedup[-1][1])) > 1e-12:
            dedup.append(pt)
    if len(dedup) > 1 and max(abs(dedup[0][0] - dedup[-1][0]),
                              abs(dedup[0][1] - dedup[-1][1])) <= 1e-12:
        dedup.pop()
    return dedup


def region_polygon(delta: float):
    """Vertices (|sigma|, chi), counterclockwise, of the admissible region.

    The region is the box 0 <= |sigma| <= sigma_max, 0 <= chi <= chi_max
    cut by chi >= |sigma| + 2 and chi >= |sigma| / lambda(delta).  When
    chi_max drops below 2 the region collapses; the degenerate marker
    [(0, 2)] is returned for that case.
    """
    if not 0.0 < delta <= 1.0:
        raise BadDelta(f"delta = {delta} not in (0, 1]")
    gb = geography_bounds(delta, "positive")
    if gb.chi_max < 2.0:
        return [(0.0, 2.0)]
    lam = lambda_of_delta(delta, "best")
    poly = [(0.0, 0.0), (gb.sigma_max, 0.0),
            (gb.sigma_max, gb.chi_max), (0.0, gb.chi_max)]
    poly = _clip_halfplane(poly, np.array([-1.0, 1.0]), 2.0)
    if lam > 0.0:
        poly = _clip_halfplane(poly, np.array([-1.0 / lam, 1.0]), 0.0)
    else:
        poly = _clip_halfplane(poly, np.array([-1.0, 0.0]), 0.0)
    if not poly:
        raise EmptyRegion(f"no admissible (sigma, chi) at delta = {delta}")
    # enforce counterclockwise orientation
    area = 0.0
    m = len(poly)
    for i in range(m):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % m]
        area += x0 * y1 - x1 * y0
    if area < 0.0:
        poly.reverse()
    return poly
