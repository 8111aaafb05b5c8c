# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot integer kernels in ``_pykernels``.

Arithmetic is on 64-bit integers with explicit overflow checks; any overflow
raises ``OverflowError`` so the dispatcher can redo the call in pure Python.
"""

from libc.math cimport sqrt

cdef extern from *:
    """
    static inline int k_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int k_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int k_mul(long long a, long long b, long long *r) nogil
    int k_sub(long long a, long long b, long long *r) nogil

DEF MAXR = 64
DEF MAXC = 8


cdef inline long long floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long llabs(long long a) nogil:
    return -a if a < 0 else a


cdef int axpy(long long *dst, long long f, long long *src, int start, int ncols) nogil:
    # dst[k] -= f * src[k]; returns 1 on overflow
    cdef long long t
    cdef int k
    for k in range(start, ncols):
        if k_mul(f, src[k], &t):
            return 1
        if k_sub(dst[k], t, &dst[k]):
            return 1
    return 0


cdef long long isqrt_ll(long long n) nogil:
    if n <= 0:
        return 0
    cdef long long r = <long long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def hnf(rows, int ncols):
    cdef long long a[MAXR][MAXC]
    cdef int order[MAXR]
    cdef int n = 0, i, j, k, col, nlive, nout, best, tmp
    cdef int live[MAXR]
    cdef int outrow[MAXC]
    cdef int pivcol[MAXC]
    cdef long long pv, f
    cdef bint nz
    cdef int j2
    if ncols > MAXC:
        raise ValueError("too many columns for compiled kernel")
    for r in rows:
        if n >= MAXR:
            raise ValueError("too many rows for compiled kernel")
        nz = False
        for k in range(ncols):
            a[n][k] = r[k]
            if a[n][k] != 0:
                nz = True
        if nz:
            n += 1
    cdef int alive[MAXR]
    for i in range(n):
        alive[i] = 1
    nout = 0
    col = 0
    while col < ncols:
        nlive = 0
        for i in range(n):
            if alive[i] and a[i][col] != 0:
                live[nlive] = i
                nlive += 1
        if nlive == 0:
            col += 1
            continue
        while nlive > 1:
            best = 0
            for j in range(1, nlive):
                if llabs(a[live[j]][col]) < llabs(a[live[best]][col]):
                    best = j
            tmp = live[0]
            live[0] = live[best]
            live[best] = tmp
            pv = a[live[0]][col]
            k = 1
            for j in range(1, nlive):
                i = live[j]
                f = floordiv(a[i][col], pv)
                if f != 0:
                    if axpy(a[i], f, a[live[0]], col, ncols):
                        raise OverflowError("hnf overflow")
                if a[i][col] != 0:
                    live[k] = i
                    k += 1
                else:
                    nz = False
                    for j2 in range(ncols):
                        if a[i][j2] != 0:
                            nz = True
                            break
                    if not nz:
                        alive[i] = 0
            nlive = k
        i = live[0]
        if a[i][col] < 0:
            for k in range(col, ncols):
                a[i][k] = -a[i][k]
        alive[i] = 0
        outrow[nout] = i
        pivcol[nout] = col
        nout += 1
        col += 1
    for i in range(nout):
        col = pivcol[i]
        pv = a[outrow[i]][col]
        for j in range(i):
            f = floordiv(a[outrow[j]][col], pv)
            if f != 0:
                if axpy(a[outrow[j]], f, a[outrow[i]], col, ncols):
                    raise OverflowError("hnf overflow")
    return [tuple([a[outrow[i]][k] for k in range(ncols)]) for i in range(nout)]


def qmul(a, b):
    cdef long long a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3]
    cdef long long b0 = b[0], b1 = b[1], b2 = b[2], b3 = b[3]
    # doubled coordinates stay far below 2**31 in every caller; guard anyway
    cdef long long lim = 1LL << 30
    if (llabs(a0) >= lim or llabs(a1) >= lim or llabs(a2) >= lim or llabs(a3) >= lim
            or llabs(b0) >= lim or llabs(b1) >= lim or llabs(b2) >= lim or llabs(b3) >= lim):
        raise OverflowError("qmul overflow")
    cdef long long c0 = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
    cdef long long c1 = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
    cdef long long c2 = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
    cdef long long c3 = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
    return (floordiv(c0, 2), floordiv(c1, 2), floordiv(c2, 2), floordiv(c3, 2))


cdef list four_squares(long long total, int parity):
    # parity < 0: unrestricted
    cdef long long r, ra, rb, rc, rc0, rd, d, x, b, c
    cdef long long step = 1 if parity < 0 else 2
    cdef list out = []
    if total < 0 or total > (1LL << 60):
        raise OverflowError("norm too large for compiled kernel")
    r = isqrt_ll(total)
    x = -r
    if parity >= 0 and llabs(x - parity) % 2:
        x += 1
    while x <= r:
        ra = total - x * x
        rb = isqrt_ll(ra)
        b = -rb
        if parity >= 0 and llabs(b - parity) % 2:
            b += 1
        while b <= rb:
            rc0 = ra - b * b
            rc = isqrt_ll(rc0)
            c = -rc
            if parity >= 0 and llabs(c - parity) % 2:
                c += 1
            while c <= rc:
                rd = rc0 - c * c
                d = isqrt_ll(rd)
                if d * d == rd and (parity < 0 or llabs(d - parity) % 2 == 0):
                    out.append((x, b, c, -d))
                    if d:
                        out.append((x, b, c, d))
                c += step
            b += step
        x += step
    return out


def lipschitz_of_norm(long long n):
    if n < 0:
        return []
    return four_squares(n, -1)


def hurwitz_of_norm(long long n):
    if n < 0:
        return []
    out = four_squares(4 * n, 0) + four_squares(4 * n, 1)
    out.sort()
    return out


cdef inline long long round_half_down(long long num, long long den) nogil:
    return -floordiv(den - 2 * num, 2 * den)


cdef int c_divmod(long long *a, long long *b, long long *s, long long *r) nogil:
    # returns 1 when b == 0
    cdef long long nb = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2] + b[3] * b[3]) / 4
    cdef long long t[4]
    cdef long long cand[2][4]
    cdef long long bs[4]
    cdef long long rr[4]
    cdef long long best_n = -1, n
    cdef int c, k, first, lexless
    if nb == 0:
        return 1
    t[0] = (b[0] * a[0] + b[1] * a[1] + b[2] * a[2] + b[3] * a[3]) / 2
    t[1] = (b[0] * a[1] - b[1] * a[0] - b[2] * a[3] + b[3] * a[2]) / 2
    t[2] = (b[0] * a[2] + b[1] * a[3] - b[2] * a[0] - b[3] * a[1]) / 2
    t[3] = (b[0] * a[3] - b[1] * a[2] + b[2] * a[1] - b[3] * a[0]) / 2
    for k in range(4):
        cand[0][k] = 2 * round_half_down(t[k], 2 * nb)
        cand[1][k] = 2 * round_half_down(t[k] - nb, 2 * nb) + 1
    for c in range(2):
        bs[0] = (b[0] * cand[c][0] - b[1] * cand[c][1] - b[2] * cand[c][2] - b[3] * cand[c][3]) / 2
        bs[1] = (b[0] * cand[c][1] + b[1] * cand[c][0] + b[2] * cand[c][3] - b[3] * cand[c][2]) / 2
        bs[2] = (b[0] * cand[c][2] - b[1] * cand[c][3] + b[2] * cand[c][0] + b[3] * cand[c][1]) / 2
        bs[3] = (b[0] * cand[c][3] + b[1] * cand[c][2] - b[2] * cand[c][1] + b[3] * cand[c][0]) / 2
        for k in range(4):
            rr[k] = a[k] - bs[k]
        n = rr[0] * rr[0] + rr[1] * rr[1] + rr[2] * rr[2] + rr[3] * rr[3]
        lexless = 0
        if best_n >= 0 and n == best_n:
            for k in range(4):
                if cand[c][k] != s[k]:
                    lexless = cand[c][k] < s[k]
                    break
        if best_n < 0 or n < best_n or lexless:
            best_n = n
            for k in range(4):
                s[k] = cand[c][k]
                r[k] = rr[k]
    return 0


cdef long long QLIM = 1LL << 24


cdef int load4(object q, long long *out) except -1:
    cdef int k
    for k in range(4):
        out[k] = q[k]
        if llabs(out[k]) >= QLIM:
            raise OverflowError("quaternion too large for compiled kernel")
    return 0


def qdivmod(a, b):
    cdef long long x[4]
    cdef long long y[4]
    cdef long long s[4]
    cdef long long r[4]
    load4(a, x)
    load4(b, y)
    if c_divmod(x, y, s, r):
        raise ZeroDivisionError("division by the zero quaternion")
    return (s[0], s[1], s[2], s[3]), (r[0], r[1], r[2], r[3])


def qgcld(a, b):
    cdef long long x[4]
    cdef long long y[4]
    cdef long long s[4]
    cdef long long r[4]
    cdef int k
    load4(a, x)
    load4(b, y)
    while y[0] != 0 or y[1] != 0 or y[2] != 0 or y[3] != 0:
        c_divmod(x, y, s, r)
        for k in range(4):
            x[k] = y[k]
            y[k] = r[k]
    return (x[0], x[1], x[2], x[3])
