"""Integer-scaled brute-force kernels behind the grid oracles and sweeps.

Every kernel exists twice: a numba ``@njit`` version and a pure numpy
version. Set ``PMLEVELS_DISABLE_NUMBA=1`` to force the numpy path (numba is
also skipped when it cannot be imported). All arithmetic is on int64 values
that the callers obtain by scaling rationals to a common denominator, so both
paths are exact and must agree bit for bit.

t-norm codes: 0 minimum, 1 product, 2 lukasiewicz.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

# infinity for scaled values; twice this still fits in int64
INF_INT = np.int64(1) << np.int64(61)
# largest finite scaled value accepted from callers
MAX_FINITE = 1 << 56

_DISABLED = os.environ.get("PMLEVELS_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("disabled by PMLEVELS_DISABLE_NUMBA")
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    njit = None
    HAS_NUMBA = False


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# (P5) grid scan
# ---------------------------------------------------------------------------

def _p5_scan_numpy(tcode, grid, F, G, h_ats, h_tos, dt):
    """First ``(r_idx, s_idx)`` with ``F[r] * G[s] > h(grid[r] + grid[s])``.

    ``F``/``G`` hold distribution values on ``grid`` scaled by ``dt``;
    ``h_ats``/``h_tos`` are the third distribution's jumps. Grid entries equal
    to ``INF_INT`` stand for infinity, where every distribution equals 1.
    """
    Fm = F[:, None]
    Gm = G[None, :]
    if tcode == 0:
        lhs = np.minimum(Fm, Gm) * dt
    elif tcode == 1:
        lhs = Fm * Gm
    else:
        lhs = np.maximum(Fm + Gm - dt, 0) * dt
    sums = grid[:, None] + grid[None, :]
    idx = np.searchsorted(h_ats, sums, side="left")
    padded = np.concatenate((np.zeros(1, dtype=np.int64), h_tos))
    rhs = padded[idx]
    rhs = np.where(sums >= INF_INT, dt, rhs) * dt
    bad = np.argwhere(lhs > rhs)
    if bad.shape[0] == 0:
        return -1, -1
    return int(bad[0, 0]), int(bad[0, 1])


def _p5_scan_loop(tcode, grid, F, G, h_ats, h_tos, dt):
    n = grid.shape[0]
    m = h_ats.shape[0]
    for ri in range(n):
        fr = F[ri]
        if fr == 0:
            continue
        k = 0
        for si in range(n):
            gs = G[si]
            if gs == 0:
                continue
            if tcode == 0:
                lhs = (fr if fr < gs else gs) * dt
            elif tcode == 1:
                lhs = fr * gs
            else:
                v = fr + gs - dt
                lhs = (v if v > 0 else 0) * dt
            total = grid[ri] + grid[si]
            if total >= INF_INT:
                rhs = dt
            else:
                # grid is sorted, so total is nondecreasing in si
                while k < m and h_ats[k] < total:
                    k += 1
                rhs = h_tos[k - 1] if k > 0 else 0
            if lhs > rhs * dt:
                return ri, si
    return -1, -1


# ---------------------------------------------------------------------------
# (UT) grid scan
# ---------------------------------------------------------------------------

def _min_eps_numpy(tcode, n):
    """Smallest grid index ``e`` with ``T(1 - l'/n, 1 - l/n) > 1 - e/n`` (``n + 1`` if none)."""
    ls = np.arange(1, n + 1, dtype=np.int64)
    a = (n - ls)[:, None]
    b = (n - ls)[None, :]
    if tcode == 0:
        t = np.minimum(a, b) * n
    elif tcode == 1:
        t = a * b
    else:
        t = np.maximum(a + b - n, 0) * n
    return (n * n - t) // n + 1


def _ut_scan_numpy(emin, P, Q, R):
    """First ``(e, l, l')`` with ``R[e] > P[l] + Q[l']`` at the smallest admissible ``e``.

    Arrays are indexed by grid numerator ``1..n`` (index 0 unused). Because a
    level profile is nonincreasing, the smallest admissible ``e`` for a
    given ``(l, l')`` carries the largest left side.
    """
    n = P.shape[0] - 1
    e = emin
    ok = e <= n
    ec = np.where(ok, e, 1)
    lhs = R[ec]
    p = P[1:][:, None]
    q = Q[1:][None, :]
    finite = (p < INF_INT) & (q < INF_INT)
    rhs = np.where(finite, p + q, INF_INT)
    bad = ok & finite & (lhs > rhs)
    hits = np.argwhere(bad)
    if hits.shape[0] == 0:
        return -1, -1, -1
    li, lj = int(hits[0, 0]), int(hits[0, 1])
    return int(e[li, lj]), li + 1, lj + 1


def _ut_scan_loop(emin, P, Q, R):
    n = P.shape[0] - 1
    for li in range(n):
        p = P[li + 1]
        if p >= INF_INT:
            continue
        for lj in range(n):
            e = emin[li, lj]
            if e > n:
                continue
            q = Q[lj + 1]
            if q >= INF_INT:
                continue
            if R[e] > p + q:
                return e, li + 1, lj + 1
    return -1, -1, -1


# ---------------------------------------------------------------------------
# exhaustive sweep of the three equivalent t-norm conditions
# ---------------------------------------------------------------------------

def _tn_scaled(tcode, a, b, scale):
    """``T(a/scale, b/scale) * scale**2`` as an integer."""
    if tcode == 0:
        return (a if a < b else b) * scale
    if tcode == 1:
        return a * b
    v = a + b - scale
    return (v if v > 0 else 0) * scale


def _lemma_sweep_loop(tcode, n, g):
    """Counts over ``a, b, d in {1/n, ..., 1}`` with grid ``{k/g}``.

    Returns ``[total, c1, c2, c3, c1_ne_c3, c1_not_c2, c2_not_c1]``. ``g``
    must be a multiple of ``n``. Values are compared at scale ``g**2``.
    """
    step = g // n
    counts = np.zeros(7, dtype=np.int64)
    for ia in range(1, n + 1):
        a = ia * step
        for ib in range(1, n + 1):
            b = ib * step
            ab = _tn_scaled(tcode, a, b, g)  # scale g^2
            # grid complements 1 - lam are k/g for k = 0..g-1; take the
            # largest one strictly below a, b and T(a, b) respectively
            ua = a - 1
            ub = b - 1
            ur = (ab - 1) // g if ab > 0 else -1
            if ur > g - 1:
                ur = g - 1
            bound2 = _tn_scaled(tcode, ub, ua, g) if ua >= 0 and ub >= 0 else -1
            for idd in range(1, n + 1):
                d = idd * step
                c1 = d * g >= ab
                c2 = bound2 < 0 or d * g >= bound2
                c3 = ur < 0 or d >= ur
                counts[0] += 1
                counts[1] += c1
                counts[2] += c2
                counts[3] += c3
                counts[4] += c1 != c3
                counts[5] += c1 and not c2
                counts[6] += c2 and not c1
    return counts


def _lemma_sweep_numpy(tcode, n, g):
    step = g // n
    vals = np.arange(1, n + 1, dtype=np.int64) * step
    a = vals[:, None]
    b = vals[None, :]
    ab = _tn_scaled_np(tcode, a, b, g)
    comps = np.arange(g, dtype=np.int64)
    ia = np.searchsorted(comps, vals, side="left") - 1
    ua = np.where(ia >= 0, comps[np.maximum(ia, 0)], -1)
    ir = np.searchsorted(comps * g, ab, side="left") - 1
    ur = np.where(ir >= 0, comps[np.maximum(ir, 0)], -1)
    uam = ua[:, None]
    ubm = ua[None, :]
    bound2 = np.where((uam >= 0) & (ubm >= 0), _tn_scaled_np(tcode, ubm, uam, g), -1)
    d = vals[None, None, :]
    c1 = d * g >= ab[:, :, None]
    c2 = (bound2[:, :, None] < 0) | (d * g >= bound2[:, :, None])
    c3 = (ur[:, :, None] < 0) | (d >= ur[:, :, None])
    return np.array([
        c1.size, c1.sum(), c2.sum(), c3.sum(),
        (c1 != c3).sum(), (c1 & ~c2).sum(), (c2 & ~c1).sum(),
    ], dtype=np.int64)


def _tn_scaled_np(tcode, a, b, scale):
    if tcode == 0:
        return np.minimum(a, b) * scale
    if tcode == 1:
        return a * b
    return np.maximum(a + b - scale, 0) * scale


if HAS_NUMBA:
    # rebinding the global lets the loop kernels below compile against it
    _tn_scaled = njit(cache=True)(_tn_scaled)
    p5_scan = njit(cache=True)(_p5_scan_loop)
    ut_scan = njit(cache=True)(_ut_scan_loop)
    lemma_sweep = njit(cache=True)(_lemma_sweep_loop)
else:
    p5_scan = _p5_scan_numpy
    ut_scan = _ut_scan_numpy
    lemma_sweep = _lemma_sweep_numpy


@lru_cache(maxsize=16)
def min_eps_table(tcode: int, n: int) -> np.ndarray:
    # int32 keeps the table cache-friendly; values never exceed n + 1
    table = _min_eps_numpy(tcode, n).astype(np.int32)
    table.setflags(write=False)
    return table


# numpy references stay importable regardless of the backend (used by the
# benchmark and by the cross-backend tests)
p5_scan_numpy = _p5_scan_numpy
ut_scan_numpy = _ut_scan_numpy
lemma_sweep_numpy = _lemma_sweep_numpy
p5_scan_python = _p5_scan_loop
ut_scan_python = _ut_scan_loop
lemma_sweep_python = _lemma_sweep_loop
