"""Randomized cross-checks: sampling, inequality audits, grid search.

sample_pinched runs 256 parallel Metropolis-style chains over the space
of delta-pinched curvature operators, started at the identity.  A
proposal is accepted when both Finsler-Thorpe pencils admit a shift that
makes them PSD; that test is done algebraically, not by line search.
The key fact is that {t : M + t * STAR >= 0} is a closed interval whose
endpoints make M + t * STAR singular, i.e. -t is an eigenvalue of
STAR @ M (STAR is its own inverse).  So probing the smallest eigenvalue
of M + t * STAR at all real pencil eigenvalues and at midpoints of
consecutive ones decides feasibility exactly, in one batched pass.

The random stream comes from a counter-based Philox generator keyed by
the seed, re-jumped for every round, so the emitted operators depend
only on (delta, seed) and n truncates a fixed stream.

audit replays every inequality the certified operators must satisfy and
records the worst margin per check.  grid_extremum is the brute-force
twin of the face-enumeration optimizer.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .curvature import STAR, CurvOp, euler_form
from .errors import BadDelta, ResolutionTooLarge, StuckSampler
from .geography import breakpoints, lambda_of_delta
from .polytopes import Polytope
from .qp_face import QuadForm
from .quadforms import f_ville
from .ricci_bound import ricci_rhs

_CHAINS = 256
_PENCIL_TOL = 1e-12
_STUCK_MIN_PROPOSALS = 100_000
_STUCK_RATE = 1e-3

_SDIAG = np.diag(STAR).copy()


def _pencil_probe(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Best achievable smallest eigenvalue of M + t*STAR, per matrix.

    mats has shape (n, 6, 6), symmetric.  Returns (values, shifts) where
    values[i] = max over the probed t of lambda_min(mats[i] + t*STAR)
    and shifts[i] is the maximizing t.  The probe set (real pencil
    eigenvalues plus midpoints of consecutive ones, padded with 0) hits
    the feasible interval whenever it is nonempty.
    """
    n = mats.shape[0]
    pencil = -_SDIAG[None, :, None] * mats
    eigs = np.linalg.eigvals(pencil)
    scale = 1.0 + np.abs(eigs).max(axis=1)
    cands = np.zeros((n, 11))
    for i in range(n):
        re = np.sort(eigs[i][np.abs(eigs[i].imag)
                             <= 1e-9 * scale[i]].real)
        k = len(re)
        cands[i, :k] = re
        if k > 1:
            cands[i, k:2 * k - 1] = 0.5 * (re[:-1] + re[1:])
            k = 2 * k - 1
        if k < 11:
            cands[i, k:] = cands[i, 0]
    probe = mats[:, None, :, :] + cands[:, :, None, None] * STAR
    mins = np.linalg.eigvalsh(probe)[..., 0]
    best = mins.argmax(axis=1)
    idx = np.arange(n)
    return mins[idx, best], cands[idx, best]


def _sample_arrays(delta: float, n: int, seed: int) -> dict:
    """Run the chains; return the accepted states as flat arrays."""
    if not 0.0 < delta <= 1.0:
        raise BadDelta(f"delta = {delta} not in (0, 1]")
    K = _CHAINS
    u = np.ones(K)
    wp = np.zeros((K, 3))
    wm = np.zeros((K, 3))
    cc = np.zeros((K, 3, 3))
    base_step = 0.05 * (1.0 - delta)
    halvings = np.zeros(K, dtype=int)
    rejects = np.zeros(K, dtype=int)
    out = {k: [] for k in ("u", "wp", "wm", "c", "t1", "t2")}
    count = 0
    proposals = 0
    accepts = 0
    rnd = 0
    eye = np.eye(6)
    while count < n:
        gen = np.random.Generator(np.random.Philox(key=seed).jumped(rnd))
        rnd += 1
        z = gen.standard_normal((K, 16))
        step = base_step * 0.5 ** halvings
        pu = u + step * z[:, 0]
        pwp = wp + step[:, None] * z[:, 1:4]
        pwm = wm + step[:, None] * z[:, 4:7]
        pwp -= pwp.mean(axis=1, keepdims=True)
        pwm -= pwm.mean(axis=1, keepdims=True)
        pcc = cc + step[:, None, None] * z[:, 7:16].reshape(K, 3, 3)
        mats = _block_matrices(pu, pwp, pwm, pcc)
        v1, t1 = _pencil_probe(mats - delta * eye)
        v2, t2 = _pencil_probe(eye[None] - mats)
        ok = (v1 >= -_PENCIL_TOL) & (v2 >= -_PENCIL_TOL)
        proposals += K
        accepts += int(ok.sum())
        u[ok] = pu[ok]
        # canonicalize accepted states: sorted Weyl triples, mixing
        # block permuted along
        order_p = np.argsort(pwp[ok], axis=1, kind="stable")
        order_m = np.argsort(pwm[ok], axis=1, kind="stable")
        wp[ok] = np.take_along_axis(pwp[ok], order_p, axis=1)
        wm[ok] = np.take_along_axis(pwm[ok], order_m, axis=1)
        csub = pcc[ok]
        csub = np.take_along_axis(
            csub, order_m[:, :, None].repeat(3, axis=2), axis=1)
        csub = np.take_along_axis(
            csub, order_p[:, None, :].repeat(3, axis=1), axis=2)
        cc[ok] = csub
        rejects[~ok] += 1
        rejects[ok] = 0
        halvings[ok] = 0
        halvings[rejects >= 10] += 1
        rejects[rejects >= 10] = 0
        out["u"].append(u[ok].copy())
        out["wp"].append(wp[ok].copy())
        out["wm"].append(wm[ok].copy())
        out["c"].append(cc[ok].copy())
        out["t1"].append(t1[ok])
        out["t2"].append(t2[ok])
        count += int(ok.sum())
        if proposals >= _STUCK_MIN_PROPOSALS and accepts < _STUCK_RATE * proposals:
            raise StuckSampler(
                f"{accepts} accepts in {proposals} proposals at delta = {delta}")
    return {k: np.concatenate(v)[:n] for k, v in out.items()}


def _block_matrices(u, wp, wm, cc) -> np.ndarray:
    """Assemble (n, 6, 6) operators from component arrays."""
    n = len(u)
    mats = np.zeros((n, 6, 6))
    idx = np.arange(3)
    mats[:, idx, idx] = u[:, None] + wp
    mats[:, idx + 3, idx + 3] = u[:, None] + wm
    mats[:, 3:, :3] = cc
    mats[:, :3, 3:] = np.swapaxes(cc, 1, 2)
    return mats


def sample_pinched(delta: float, n: int, seed: int) -> list:
    """n pseudo-random delta-pinched operators, deterministic in seed."""
    arr = _sample_arrays(delta, n, seed)
    return [CurvOp(float(arr["u"][i]), arr["wp"][i].copy(),
                   arr["wm"][i].copy(), arr["c"][i].copy())
            for i in range(n)]


@dataclass
class CheckResult:
    worst_margin: float
    violations: int


@dataclass
class AuditReport:
    delta: float
    samples: int
    seed: int
    checks: dict

    @property
    def total_violations(self) -> int:
        return sum(c.violations for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "samples": self.samples,
            "seed": self.seed,
            "checks": {k: {"worst_margin": c.worst_margin,
                           "violations": c.violations}
                       for k, c in self.checks.items()},
            "total_violations": self.total_violations,
        }


def _margins_to_check(margins: np.ndarray, tol: float = 1e-9) -> CheckResult:
    return CheckResult(float(margins.min()), int((margins < -tol).sum()))


def audit(delta: float, n: int, seed: int) -> AuditReport:
    """Sample n certified operators and replay the claimed inequalities.

    Margins are (left side) - (right side) of each claimed >= 0
    inequality; a margin below -1e-9 counts as a violation.  The
    boundary-cell comparison only applies from the ville threshold up.
    """
    arr = _sample_arrays(delta, n, seed)
    u, wp, wm, cc, t1 = (arr["u"], arr["wp"], arr["wm"], arr["c"],
                         arr["t1"])
    nwp = np.sum(wp * wp, axis=1)
    nwm = np.sum(wm * wm, axis=1)
    ncc = np.sum(cc * cc, axis=(1, 2))
    chi = (6.0 * u * u + nwp + nwm - 2.0 * ncc) / 8.0
    sig = (nwp - nwm) / 12.0
    checks = {}
    lam = lambda_of_delta(delta, "best")
    if lam > 0.0:  # the curve closes at delta = 1 where 1/lambda blows up
        checks["ilambda"] = _margins_to_check(chi - sig / lam)
    checks["ricci"] = _margins_to_check(
        ricci_rhs(u, wp, wm, delta, t1) - ncc)
    weyl_cap = (8.0 / 3.0) * (1.0 - delta) ** 2
    weyl = np.minimum.reduce([weyl_cap - (nwp + eta * nwm)
                              for eta in (-1.0, 0.0, 1.0)])
    checks["weyl"] = _margins_to_check(weyl)
    checks["euler"] = _margins_to_check(chi)
    lamv = (lambda_of_delta(delta, "ville")
            if delta >= breakpoints().d0v else 0.0)
    if lamv > 0.0:
        v = u[:, None] + 0.5 * wp          # ascending since wp is sorted
        cell = 1 + (v < 0.5 * (1.0 + delta)).sum(axis=1)
        fvals = np.empty(n)
        for c in (1, 2, 3, 4):
            mask = cell == c
            if mask.any():
                fvals[mask] = f_ville(lamv, delta, c).value_many(v[mask])
        checks["ville"] = _margins_to_check(
            4.0 * (chi - sig / lamv) - fvals)
    return AuditReport(delta, n, seed, checks)


@dataclass
class GridExtremum:
    value: float
    point: np.ndarray
    resolution: int
    sense: str


@functools.lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer tuples of the given length summing to
    total, as rows.  Cached; callers must not mutate the result."""
    if parts == 1:
        return np.array([[total]], dtype=np.int32)
    blocks = []
    for v in range(total + 1):
        sub = _compositions(total - v, parts - 1)
        blocks.append(np.column_stack(
            [np.full(len(sub), v, dtype=np.int32), sub]))
    return np.vstack(blocks)


def grid_extremum(q: QuadForm, p: Polytope, resolution: int,
                  sense: str = "min") -> GridExtremum:
    """Brute-force extremum of q over a dense lattice in p.

    Simplices use the barycentric lattice with the given denominator;
    prisms the product of the triangle lattice and an evenly divided
    segment.  Raises ResolutionTooLarge beyond 1e8 lattice points.
    """
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    better = np.less if sense == "min" else np.greater
    V = p.vertex_array()
    best_val, best_pt = None, None
    if p.kind == "simplex":
        m = len(V)
        npts = math.comb(resolution + m - 1, m - 1)
        if npts > 1e8:
            raise ResolutionTooLarge(f"{npts} lattice points")
        for k0 in range(resolution + 1):
            rest = _compositions(resolution - k0, m - 1)
            kk = np.column_stack(
                [np.full(len(rest), k0, dtype=np.int32), rest])
            xs = (kk.astype(float) / resolution) @ V
            vals = q.value_many(xs)
            i = vals.argmin() if sense == "min" else vals.argmax()
            if best_val is None or better(vals[i], best_val):
                best_val, best_pt = float(vals[i]), xs[i].copy()
    else:
        npts = math.comb(resolution + 2, 2) * (resolution + 1)
        if npts > 1e8:
            raise ResolutionTooLarge(f"{npts} lattice points")
        bottoms = [a for a, _ in p.pairing]
        tops = [b for _, b in p.pairing]
        B, T = V[bottoms], V[tops]
        beta = _compositions(resolution, 3).astype(float) / resolution
        for j in range(resolution + 1):
            s = j / resolution
            xs = beta @ ((1.0 - s) * B + s * T)
            vals = q.value_many(xs)
            i = vals.argmin() if sense == "min" else vals.argmax()
            if best_val is None or better(vals[i], best_val):
                best_val, best_pt = float(vals[i]), xs[i].copy()
    return GridExtremum(best_val, best_pt, resolution, sense)
