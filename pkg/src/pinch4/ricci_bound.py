"""Bounds on the mixing block of a pinched curvature operator.

ricci_rhs is the upper bound for the squared Frobenius norm of the
off-diagonal block c that follows from the trace-free Ricci estimate:
for a delta-pinched operator with Finsler-Thorpe shift t1,

    |c|_F^2 <= 3 (u - delta)^2 - 3 t1^2 + <w+, w->.

schur_offdiag_bound is the linear-algebra half: a PSD block matrix
[[A, B^T], [B, C]] with spec(A) = lam and spec(C) = mu (both ascending)
satisfies |B|_F^2 <= sum_i lam_i mu_i.  The sampling helper draws PSD
matrices with prescribed diagonal-block spectra so tests can exercise
the inequality away from hand-picked cases.
"""

from __future__ import annotations

import numpy as np

from .errors import NegativeEntry, NotSorted


def ricci_rhs(u, wplus, wminus, k, t):
    """Right-hand side 3(u-k)^2 - 3 t^2 + <w+, w->.

    Accepts scalars with 3-vectors, or batches (leading axis shared by
    u, t and the two (n, 3) eigenvalue arrays).
    """
    wplus = np.asarray(wplus, dtype=float)
    wminus = np.asarray(wminus, dtype=float)
    u = np.asarray(u, dtype=float)
    t = np.asarray(t, dtype=float)
    dot = np.sum(wplus * wminus, axis=-1)
    out = 3.0 * (u - k) ** 2 - 3.0 * t ** 2 + dot
    return float(out) if out.ndim == 0 else out


def schur_offdiag_bound(lam, mu) -> float:
    """sum_i lam_i mu_i for ascending nonnegative spectra lam, mu."""
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    for name, v in (("lam", lam), ("mu", mu)):
        if v.min() < 0.0:
            raise NegativeEntry(f"{name} has negative entry {v.min()}")
        if np.any(np.diff(v) < 0.0):
            raise NotSorted(f"{name} is not ascending: {v.tolist()}")
    return float(lam @ mu)


def psd_offdiag_samples(lam, mu, n: int, seed: int) -> np.ndarray:
    """Squared Frobenius norms |B|_F^2 of random PSD blocks.

    Draws Wishart matrices G G^T of size 6 and applies a symmetric
    block-diagonal congruence that forces the diagonal blocks to have
    spectra lam and mu exactly.  Congruence preserves positivity, so
    every returned value must respect schur_offdiag_bound(lam, mu).
    """
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    p, q = len(lam), len(mu)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, p + q, p + q))
    m = g @ np.swapaxes(g, 1, 2)
    out = np.empty(n)
    for i in range(n):
        a = m[i, :p, :p]
        c = m[i, p:, p:]
        ta = np.diag(np.sqrt(lam)) @ _inv_sqrt(a)
        tc = np.diag(np.sqrt(mu)) @ _inv_sqrt(c)
        b = tc @ m[i, p:, :p] @ ta.T
        out[i] = float(np.sum(b * b))
    return out


def _inv_sqrt(a: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(a)
    return vecs @ np.diag(1.0 / np.sqrt(vals)) @ vecs.T
