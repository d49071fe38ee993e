"""Pure-Python kernels: the fallback backend used when the compiled
extension is unavailable (and the reference the benchmark compares against).

Same contracts as prsums._kernels.  Phases are exact int64 root-table
indices throughout, so the two backends differ only in summation rounding
(well below 1e-12).  Requires p < 2^31 so that int64 products never
overflow; every caller in this package stays far below that.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _kahan_sum(values) -> complex:
    s = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for v in values:
        y = v - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s


def sum_roots(roots: np.ndarray, phases: np.ndarray) -> complex:
    """Kahan-compensated sum of roots[phases[i]] in index order."""
    return _kahan_sum(roots[np.asarray(phases, dtype=np.int64)])


def prefix_sums(roots: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """Running Kahan sums: out[i] = sum of the first i+1 looked-up roots."""
    vals = roots[np.asarray(phases, dtype=np.int64)]
    out = np.empty(len(vals), dtype=np.complex128)
    s = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for i, v in enumerate(vals):
        y = v - comp
        t = s + y
        comp = (t - s) - y
        s = t
        out[i] = s
    return out


def avg_inner_rows(roots, B, c, N, us) -> np.ndarray:
    """Row i = sum over x in [1, N] of roots[(c[x] + B[(us[i]*x) % (p-1)]) % p]."""
    p = roots.shape[0]
    pm1 = B.shape[0]
    xs = np.arange(1, N + 1, dtype=np.int64)
    cx = np.asarray(c, dtype=np.int64)[1 : N + 1]
    out = np.empty(len(us), dtype=np.complex128)
    for i, u in enumerate(us):
        ph = (cx + B[(int(u) * xs) % pm1]) % p
        out[i] = roots[ph].sum()
    return out


def interval_inner_rows(roots, B, c, us, lo, hi) -> np.ndarray:
    """Row i = sum over x in [lo, hi] of roots[(c[x] + B[(us[i]*x) % (p-1)]) % p]."""
    out = np.zeros(len(us), dtype=np.complex128)
    if hi < lo:
        return out
    p = roots.shape[0]
    pm1 = B.shape[0]
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    cx = np.asarray(c, dtype=np.int64)[lo : hi + 1]
    for i, u in enumerate(us):
        ph = (cx + B[(int(u) * xs) % pm1]) % p
        out[i] = roots[ph].sum()
    return out


def inner_matrix(roots, B, c0, us) -> np.ndarray:
    """out[i, m] = sum over x in [1, p-1] of
    roots[(c0[x] + B[(us[i]*x) % (p-1)] + m*x) % p], for every m in [0, p-1].
    """
    p = roots.shape[0]
    pm1 = B.shape[0]
    xs = np.arange(1, p, dtype=np.int64)
    cx = np.asarray(c0, dtype=np.int64)[1:p]
    ms = np.arange(p, dtype=np.int64)
    mx = (ms[:, None] * xs[None, :]) % p  # (p, p-1) shift phases, reused per u
    out = np.empty((len(us), p), dtype=np.complex128)
    for i, u in enumerate(us):
        base = (cx + B[(int(u) * xs) % pm1]) % p
        out[i, :] = roots[(base[None, :] + mx) % p].sum(axis=1)
    return out


def mordell_scan_g(roots, p, g):
    """Max of |S_N(a, b, g)|^2 over a, b in [1, p-1], N in [1, p-1].

    Returns (max_sq, a, b, N) with the first (b, a, N) attaining the max
    in (b, a, N) scan order.
    """
    xs = np.arange(1, p, dtype=np.int64)
    gpow = np.empty(p, dtype=np.int64)
    gpow[0] = 1
    for x in range(1, p):
        gpow[x] = gpow[x - 1] * g % p
    best = (-1.0, 0, 0, 0)
    for b in range(1, p):
        bpow = (b * gpow[1:]) % p
        for a in range(1, p):
            ph = (a * xs + bpow) % p
            pref = np.cumsum(roots[ph])
            sq = pref.real**2 + pref.imag**2
            n = int(np.argmax(sq))
            if sq[n] > best[0]:
                best = (float(sq[n]), a, b, n + 1)
    return best


def count_solutions_range(pows, td, p, x1_lo, x1_hi) -> int:
    """Exhaustive count of (x1, x2, x3, x4, y) in [1, td]^5 (x1 restricted to
    [x1_lo, x1_hi]) satisfying both power-sum congruences mod p.

    pows[j] = lam_d^j mod p for j in [0, td-1]; exponent e reads pows[e % td].
    """
    pows = [int(v) for v in pows]
    # pmat[y][x] = lam_d^(x*y) for x, y in [1, td]
    pmat = [[pows[(x * y) % td] for x in range(td + 1)] for y in range(td + 1)]
    count = 0
    for x1 in range(x1_lo, x1_hi + 1):
        v1 = pows[x1 % td]
        for x2 in range(1, td + 1):
            s12 = (v1 + pows[x2 % td]) % p
            for x3 in range(1, td + 1):
                v3 = pows[x3 % td]
                for x4 in range(1, td + 1):
                    if (v3 + pows[x4 % td]) % p != s12:
                        continue
                    for y in range(1, td + 1):
                        row = pmat[y]
                        if (row[x1] + row[x2]) % p == (row[x3] + row[x4]) % p:
                            count += 1
    return count
