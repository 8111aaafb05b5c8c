"""Full-rank lattices in 3-space with exact integer and rational bases.

Vectors are in doubled Cartesian coordinates (units of half the cubic cell
edge), so the bcc lattice is ``{x in Z^3 : x1 = x2 = x3 mod 2}``.

Canonical form is the row-style Hermite normal form: rows are basis vectors,
the matrix is upper triangular with a positive diagonal, and every entry
above a pivot lies in ``[0, pivot)``.  Two lattices are equal exactly when
their canonical matrices are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm

from . import _kernels

__all__ = [
    "Lattice3",
    "RationalLattice3",
    "hnf",
    "intersect",
    "lattice_sum",
    "index_in",
    "smith_quotient",
    "dual",
    "GAMMA",
]


def _det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _cofactors3(m):
    """Cofactor matrix; ``cof / det`` is the inverse transpose."""
    (a, b, c), (d, e, f), (g, h, i) = m
    return (
        (e * i - f * h, f * g - d * i, d * h - e * g),
        (c * h - b * i, a * i - c * g, b * g - a * h),
        (b * f - c * e, c * d - a * f, a * e - b * d),
    )


def _content(m):
    return reduce(gcd, (x for row in m for x in row), 0)


@dataclass(frozen=True, order=True)
class Lattice3:
    """Integer lattice given by its canonical HNF basis (a 3-tuple of 3-tuples)."""

    basis: tuple

    @property
    def det(self):
        b = self.basis
        return b[0][0] * b[1][1] * b[2][2]

    @property
    def den(self):
        return 1

    def contains(self, v):
        return _coords(self.basis, v) is not None

    def __contains__(self, v):
        return self.contains(v)

    def scaled(self, k):
        return hnf([tuple(k * x for x in row) for row in self.basis])

    def to_json(self):
        return {"hnf": [list(r) for r in self.basis], "den": 1, "coords": "doubled-bcc"}


@dataclass(frozen=True, order=True)
class RationalLattice3:
    """Lattice ``lattice / den``; normalized so that den and the content are coprime."""

    lattice: Lattice3
    den: int

    @classmethod
    def make(cls, rows, den):
        if den < 0:
            rows = [tuple(-x for x in r) for r in rows]
            den = -den
        lat = hnf(rows)
        g = gcd(_content(lat.basis), den)
        if g > 1:
            lat = Lattice3(tuple(tuple(x // g for x in r) for r in lat.basis))
            den //= g
        return cls(lat, den)

    @property
    def basis(self):
        return self.lattice.basis

    def to_json(self):
        return {"hnf": [list(r) for r in self.basis], "den": self.den, "coords": "doubled-bcc"}


def _coords(basis, v):
    """Integer coordinates of ``v`` in an upper-triangular basis, or None."""
    v = list(v)
    x = []
    for i in range(3):
        piv = basis[i][i]
        if v[i] % piv:
            return None
        c = v[i] // piv
        x.append(c)
        for k in range(i, 3):
            v[k] -= c * basis[i][k]
    return tuple(x)


def hnf(generators):
    """Canonical lattice spanned by integer 3-vectors; raises if rank < 3."""
    rows = _kernels.hnf([tuple(g) for g in generators], 3)
    if len(rows) != 3:
        raise ValueError(f"generators span rank {len(rows)}, need 3")
    return Lattice3(tuple(rows))


def _as_rational(L):
    if isinstance(L, RationalLattice3):
        return L
    return RationalLattice3(L, 1)


def _simplify(R):
    return R.lattice if R.den == 1 else R


def dual(L):
    """Dual lattice ``{y : x.y in Z for all x in L}``."""
    R = _as_rational(L)
    b = R.basis
    # dual of B/den is den * cof(B) / det(B)
    cof = _cofactors3(b)
    return _simplify(RationalLattice3.make([tuple(R.den * x for x in row) for row in cof], _det3(b)))


def lattice_sum(L1, L2):
    """Smallest lattice containing both."""
    if isinstance(L1, Lattice3) and isinstance(L2, Lattice3):
        return hnf(L1.basis + L2.basis)
    A, B = _as_rational(L1), _as_rational(L2)
    d = lcm(A.den, B.den)
    fa, fb = d // A.den, d // B.den
    rows = [tuple(fa * x for x in r) for r in A.basis] + [tuple(fb * x for x in r) for r in B.basis]
    return _simplify(RationalLattice3.make(rows, d))


def intersect(L1, L2):
    """Largest common sublattice, via the dual of the sum of the duals."""
    if L1 == L2:
        return L1
    return dual(lattice_sum(dual(L1), dual(L2)))


def intersect_all(lattices):
    return reduce(intersect, lattices)


def _require_sub(sub, sup):
    if not all(sup.contains(v) for v in sub.basis):
        raise ValueError("first lattice is not a sublattice of the second")


def index_in(sub, sup):
    """Index ``[sup : sub]`` of integer lattices."""
    _require_sub(sub, sup)
    return sub.det // sup.det


def smith_quotient(sub, sup):
    """Invariant factors ``d1 | d2 | d3`` of the finite group ``sup / sub``."""
    _require_sub(sub, sup)
    c = [_coords(sup.basis, v) for v in sub.basis]
    d1 = _content(c)
    minors = []
    for r in ((0, 1), (0, 2), (1, 2)):
        for s in ((0, 1), (0, 2), (1, 2)):
            minors.append(c[r[0]][s[0]] * c[r[1]][s[1]] - c[r[0]][s[1]] * c[r[1]][s[0]])
    d12 = reduce(gcd, minors, 0)
    d123 = abs(_det3(c))
    return (d1, d12 // d1, d123 // d12)


GAMMA = hnf([(2, 0, 0), (0, 2, 0), (1, 1, 1)])


def from_json(obj):
    rows = [tuple(r) for r in obj["hnf"]]
    den = obj.get("den", 1)
    lat = Lattice3(tuple(rows))
    if hnf(rows) != lat:
        raise ValueError("basis is not in canonical HNF")
    return lat if den == 1 else RationalLattice3(lat, den)
