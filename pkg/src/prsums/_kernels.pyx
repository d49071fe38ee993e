# cython: language_level=3
"""Compiled kernels for the hot inner loops.

Same contracts as prsums._kernels_py: every phase is an exact int64
root-table index, updated incrementally (one add + conditional wrap per
step), so no float arithmetic ever enters the exponents.  Requires
p < 2^31 so int64 products cannot overflow.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def sum_roots(const double complex[::1] roots, const long long[::1] phases):
    """Kahan-compensated sum of roots[phases[i]] in index order."""
    cdef Py_ssize_t i, n = phases.shape[0]
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0, yr, yi, tr, ti
    cdef double complex v
    for i in range(n):
        v = roots[phases[i]]
        yr = v.real - cr
        tr = sr + yr
        cr = (tr - sr) - yr
        sr = tr
        yi = v.imag - ci
        ti = si + yi
        ci = (ti - si) - yi
        si = ti
    return complex(sr, si)


def prefix_sums(const double complex[::1] roots, const long long[::1] phases):
    """Running Kahan sums: out[i] = sum of the first i+1 looked-up roots."""
    cdef Py_ssize_t i, n = phases.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0, yr, yi, tr, ti
    cdef double complex v
    for i in range(n):
        v = roots[phases[i]]
        yr = v.real - cr
        tr = sr + yr
        cr = (tr - sr) - yr
        sr = tr
        yi = v.imag - ci
        ti = si + yi
        ci = (ti - si) - yi
        si = ti
        ov[i] = sr + 1j * si
    return out


def avg_inner_rows(const double complex[::1] roots,
                   const long long[::1] B,
                   const long long[::1] c,
                   long long N,
                   const long long[::1] us):
    """Row i = sum over x in [1, N] of roots[(c[x] + B[(us[i]*x) % (p-1)]) % p]."""
    cdef Py_ssize_t p = roots.shape[0]
    cdef Py_ssize_t pm1 = B.shape[0]
    cdef Py_ssize_t nu = us.shape[0]
    out = np.empty(nu, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    cdef long long u, x, t, ph
    cdef double sr, si, cr, ci, yr, yi, tr, ti
    cdef double complex v
    with nogil:
        for i in range(nu):
            u = us[i]
            t = 0
            sr = si = cr = ci = 0.0
            for x in range(1, N + 1):
                t += u
                if t >= pm1:
                    t -= pm1
                ph = c[x] + B[t]
                if ph >= p:
                    ph -= p
                v = roots[ph]
                yr = v.real - cr
                tr = sr + yr
                cr = (tr - sr) - yr
                sr = tr
                yi = v.imag - ci
                ti = si + yi
                ci = (ti - si) - yi
                si = ti
            ov[i] = sr + 1j * si
    return out


def interval_inner_rows(const double complex[::1] roots,
                        const long long[::1] B,
                        const long long[::1] c,
                        const long long[::1] us,
                        long long lo,
                        long long hi):
    """Row i = sum over x in [lo, hi] of roots[(c[x] + B[(us[i]*x) % (p-1)]) % p]."""
    cdef Py_ssize_t p = roots.shape[0]
    cdef Py_ssize_t pm1 = B.shape[0]
    cdef Py_ssize_t nu = us.shape[0]
    out = np.zeros(nu, dtype=np.complex128)
    if hi < lo:
        return out
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    cdef long long u, x, t, ph
    cdef double sr, si, cr, ci, yr, yi, tr, ti
    cdef double complex v
    with nogil:
        for i in range(nu):
            u = us[i]
            t = (u * lo) % pm1
            sr = si = cr = ci = 0.0
            for x in range(lo, hi + 1):
                ph = c[x] + B[t]
                if ph >= p:
                    ph -= p
                v = roots[ph]
                yr = v.real - cr
                tr = sr + yr
                cr = (tr - sr) - yr
                sr = tr
                yi = v.imag - ci
                ti = si + yi
                ci = (ti - si) - yi
                si = ti
                t += u
                if t >= pm1:
                    t -= pm1
            ov[i] = sr + 1j * si
    return out


def inner_matrix(const double complex[::1] roots,
                 const long long[::1] B,
                 const long long[::1] c0,
                 const long long[::1] us):
    """out[i, m] = sum over x in [1, p-1] of
    roots[(c0[x] + B[(us[i]*x) % (p-1)] + m*x) % p], for every m in [0, p-1].

    The root table is doubled so base[x] + s never needs a wrap, and two m
    columns run per x pass to amortize the base loads.
    """
    cdef Py_ssize_t p = roots.shape[0]
    cdef Py_ssize_t pm1 = B.shape[0]
    cdef Py_ssize_t nu = us.shape[0]
    out = np.empty((nu, p), dtype=np.complex128)
    base_arr = np.empty(p, dtype=np.int64)
    dre_arr = np.empty(2 * p - 1, dtype=np.float64)
    dim_arr = np.empty(2 * p - 1, dtype=np.float64)
    cdef double complex[:, ::1] ov = out
    cdef long long[::1] base = base_arr
    cdef double[::1] dre = dre_arr
    cdef double[::1] dim = dim_arr
    cdef Py_ssize_t i
    cdef long long u, x, m, t, s1, s2, b
    cdef double sr1, si1, sr2, si2
    with nogil:
        for x in range(p):
            dre[x] = roots[x].real
            dim[x] = roots[x].imag
        for x in range(p, 2 * p - 1):
            dre[x] = roots[x - p].real
            dim[x] = roots[x - p].imag
        for i in range(nu):
            u = us[i]
            t = 0
            for x in range(1, p):
                t += u
                if t >= pm1:
                    t -= pm1
                b = c0[x] + B[t]
                if b >= p:
                    b -= p
                base[x] = b
            for m in range(0, p - 1, 2):
                s1 = 0
                s2 = 0
                sr1 = si1 = sr2 = si2 = 0.0
                for x in range(1, p):
                    s1 += m
                    if s1 >= p:
                        s1 -= p
                    s2 += m + 1
                    if s2 >= p:
                        s2 -= p
                    b = base[x]
                    sr1 += dre[b + s1]
                    si1 += dim[b + s1]
                    sr2 += dre[b + s2]
                    si2 += dim[b + s2]
                ov[i, m] = sr1 + 1j * si1
                ov[i, m + 1] = sr2 + 1j * si2
            # p is odd, so m = p-1 is left over
            s1 = 0
            sr1 = si1 = 0.0
            for x in range(1, p):
                s1 += p - 1
                if s1 >= p:
                    s1 -= p
                sr1 += dre[base[x] + s1]
                si1 += dim[base[x] + s1]
            ov[i, p - 1] = sr1 + 1j * si1
    return out


def mordell_scan_g(const double complex[::1] roots, long long p, long long g):
    """Max of |S_N(a, b, g)|^2 over a, b in [1, p-1], N in [1, p-1].

    Returns (max_sq, a, b, N) with the first (b, a, N) attaining the max
    in (b, a, N) scan order.
    """
    bpow_arr = np.empty(p, dtype=np.int64)
    cdef long long[::1] bpow = bpow_arr
    cdef long long a, b, x, gp, lin, ph
    cdef long long a_at = 0, b_at = 0, n_at = 0
    cdef double sr, si, sq, maxsq = -1.0
    with nogil:
        for b in range(1, p):
            gp = 1
            for x in range(1, p):
                gp = (gp * g) % p
                bpow[x] = (b * gp) % p
            for a in range(1, p):
                lin = 0
                sr = 0.0
                si = 0.0
                for x in range(1, p):
                    lin += a
                    if lin >= p:
                        lin -= p
                    ph = lin + bpow[x]
                    if ph >= p:
                        ph -= p
                    sr += roots[ph].real
                    si += roots[ph].imag
                    sq = sr * sr + si * si
                    if sq > maxsq:
                        maxsq = sq
                        a_at = a
                        b_at = b
                        n_at = x
    return maxsq, a_at, b_at, n_at


def count_solutions_range(const long long[::1] pows,
                          long long td,
                          long long p,
                          long long x1_lo,
                          long long x1_hi):
    """Exhaustive count of (x1, x2, x3, x4, y) in [1, td]^5 (x1 restricted to
    [x1_lo, x1_hi]) satisfying both power-sum congruences mod p.

    pows[j] = lam_d^j mod p for j in [0, td-1]; exponent e reads pows[e % td].
    """
    pmat_arr = np.empty((td + 1, td + 1), dtype=np.int64)
    cdef long long[:, ::1] pmat = pmat_arr
    cdef long long x, y, x1, x2, x3, x4, v1, v3, s12, count = 0
    for y in range(td + 1):
        for x in range(td + 1):
            pmat[y, x] = pows[(x * y) % td]
    with nogil:
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
                            if (pmat[y, x1] + pmat[y, x2]) % p == (pmat[y, x3] + pmat[y, x4]) % p:
                                count += 1
    return count
