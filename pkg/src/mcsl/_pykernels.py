"""Pure-Python versions of the hot integer kernels.

These are the reference implementations; the compiled ``_ckernels`` module
must agree with them bit for bit.  Python ints never overflow, so this path
also serves as the fallback when the compiled kernel detects overflow.
"""

from math import isqrt

__all__ = ["hnf", "qmul", "qdivmod", "qgcld", "lipschitz_of_norm", "hurwitz_of_norm"]


def hnf(rows, ncols):
    """Row-style Hermite normal form of the integer row span of ``rows``.

    Returns the nonzero rows as tuples: upper echelon, positive pivots,
    entries above each pivot reduced into ``[0, pivot)``.
    """
    work = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while work and col < ncols:
        live = [r for r in work if r[col] != 0]
        if not live:
            col += 1
            continue
        rest = [r for r in work if r[col] == 0]
        # Euclid on the column: repeatedly reduce by the smallest pivot.
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            pv = piv[col]
            nxt = [piv]
            for r in live[1:]:
                f = r[col] // pv
                if f:
                    for k in range(col, ncols):
                        r[k] -= f * piv[k]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            for k in range(col, ncols):
                piv[k] = -piv[k]
        out.append(piv)
        work = rest
        col += 1
    # reduce entries above each pivot
    for i, row in enumerate(out):
        c = next(k for k in range(ncols) if row[k] != 0)
        pv = row[c]
        for j in range(i):
            upper = out[j]
            f = upper[c] // pv
            if f:
                for k in range(c, ncols):
                    upper[k] -= f * row[k]
    return [tuple(r) for r in out]


def qmul(a, b):
    """Product of two quaternions given in doubled coordinates."""
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    c0 = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
    c1 = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
    c2 = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
    c3 = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
    return (c0 // 2, c1 // 2, c2 // 2, c3 // 2)


def _four_squares(total, parity):
    """Integer 4-tuples whose squares sum to ``total``.

    ``parity`` None means unrestricted; 0 or 1 forces every entry to that parity.
    """
    step = 1 if parity is None else 2

    def first(bound):
        lo = -bound
        if parity is not None and (lo - parity) % 2:
            lo += 1
        return lo

    out = []
    r = isqrt(total)
    for a in range(first(r), r + 1, step):
        ra = total - a * a
        rb = isqrt(ra)
        for b in range(first(rb), rb + 1, step):
            rc0 = ra - b * b
            rc = isqrt(rc0)
            for c in range(first(rc), rc + 1, step):
                rd = rc0 - c * c
                d = isqrt(rd)
                if d * d != rd:
                    continue
                if parity is not None and (d - parity) % 2:
                    continue
                out.append((a, b, c, -d))
                if d:
                    out.append((a, b, c, d))
    out.sort()
    return out


def lipschitz_of_norm(n):
    """Integer 4-tuples (plain coordinates) with sum of squares ``n``, sorted."""
    if n < 0:
        return []
    return _four_squares(n, None)


def hurwitz_of_norm(n):
    """Doubled coordinates of every Hurwitz quaternion of norm ``n``, sorted."""
    if n < 0:
        return []
    out = _four_squares(4 * n, 0) + _four_squares(4 * n, 1)
    out.sort()
    return out


def _round_half_down(num, den):
    # nearest integer to num/den (den > 0), ties toward -inf
    return -((den - 2 * num) // (2 * den))


def qdivmod(a, b):
    """Euclidean right division ``a = b*s + r`` in doubled coordinates.

    The quotient is the Hurwitz point nearest to ``conj(b) a / N(b)``: the
    nearest all-even and all-odd lattice points are both tried and the one
    with the smaller remainder wins, ties going to the smaller tuple.
    """
    nb = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2] + b[3] * b[3]) // 4
    if nb == 0:
        raise ZeroDivisionError("division by the zero quaternion")
    t = qmul((b[0], -b[1], -b[2], -b[3]), a)
    even = tuple(2 * _round_half_down(x, 2 * nb) for x in t)
    odd = tuple(2 * _round_half_down(x - nb, 2 * nb) + 1 for x in t)
    best = None
    for s in (even, odd) if even < odd else (odd, even):
        bs = qmul(b, s)
        r = (a[0] - bs[0], a[1] - bs[1], a[2] - bs[2], a[3] - bs[3])
        key = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3], s)
        if best is None or key < best[0]:
            best = (key, s, r)
    return best[1], best[2]


def qgcld(a, b):
    """A greatest common left divisor (not normalized) by Euclid's algorithm."""
    while any(b):
        _, r = qdivmod(a, b)
        a, b = b, r
    return a
