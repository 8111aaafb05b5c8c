"""Rational rotations from quaternions, coincidence indices and the cubic group."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .hquat import UNITS, HQuat, content, is_primitive, odd_part, primitive_part

__all__ = [
    "RotMat3",
    "rotation_matrix",
    "sigma",
    "quaternion_from_rotation",
    "strongly_equivalent",
    "strongly_equivalent_matrix",
    "CUBIC_GROUP",
]


@dataclass(frozen=True)
class RotMat3:
    """Exact rational 3x3 matrix ``num / den`` in lowest terms."""

    num: tuple
    den: int

    @classmethod
    def make(cls, num, den):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [[-x for x in row] for row in num]
            den = -den
        g = reduce(gcd, (x for row in num for x in row), den)
        return cls(tuple(tuple(x // g for x in row) for row in num), den // g)

    @classmethod
    def from_fractions(cls, rows):
        rows = [[Fraction(x) for x in row] for row in rows]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("need a 3x3 matrix")
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for r in rows for x in r), 1)
        return cls.make([[int(x * den) for x in r] for r in rows], den)

    def __matmul__(self, other):
        a, b = self.num, other.num
        prod = [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        return RotMat3.make(prod, self.den * other.den)

    def transpose(self):
        return RotMat3(tuple(zip(*self.num)), self.den)

    def apply(self, v):
        """``num @ v`` as an integer vector (divide by ``den`` for the image)."""
        return tuple(sum(self.num[i][k] * v[k] for k in range(3)) for i in range(3))

    @property
    def is_rotation(self):
        n, d = self.num, self.den
        gram = [[sum(n[k][i] * n[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        if any(gram[i][j] != (d * d if i == j else 0) for i in range(3) for j in range(3)):
            return False
        (a, b, c), (e, f, g), (h, i, j) = n
        det = a * (f * j - g * i) - b * (e * j - g * h) + c * (e * i - f * h)
        return det == d**3

    def entries(self):
        return [[Fraction(x, self.den) for x in row] for row in self.num]

    def to_json(self):
        return [[str(x) for x in row] for row in self.entries()]


def rotation_matrix(q):
    """The rotation ``v -> q v conj(q) / N(q)`` as an exact matrix."""
    if q.is_zero:
        raise ValueError("rotation of the zero quaternion")
    k, l, m, n = q.doubled
    num = [
        [k * k + l * l - m * m - n * n, 2 * (l * m - k * n), 2 * (k * m + l * n)],
        [2 * (k * n + l * m), k * k - l * l + m * m - n * n, 2 * (m * n - k * l)],
        [2 * (l * n - k * m), 2 * (k * l + m * n), k * k - l * l - m * m + n * n],
    ]
    return RotMat3.make(num, k * k + l * l + m * m + n * n)


def sigma(q):
    """Coincidence index of ``R(q)``: the odd part of ``N(q)``."""
    if q.is_zero or odd_part(content(q)) != 1:
        raise ValueError(f"{q} is not primitive")
    return odd_part(q.norm)


def quaternion_from_rotation(M):
    """Primitive ``q`` with ``rotation_matrix(q) == M``, sign fixed by the first nonzero entry."""
    if not M.is_rotation:
        raise ValueError("matrix is not a proper rotation")
    n, d = M.num, M.den
    diag = (
        d + n[0][0] + n[1][1] + n[2][2],
        d + n[0][0] - n[1][1] - n[2][2],
        d - n[0][0] + n[1][1] - n[2][2],
        d - n[0][0] - n[1][1] + n[2][2],
    )
    # row `big` of the symmetric matrix q_a q_b (up to a common factor)
    big = max(range(4), key=lambda i: diag[i])
    outer = {
        (0, 1): n[2][1] - n[1][2],
        (0, 2): n[0][2] - n[2][0],
        (0, 3): n[1][0] - n[0][1],
        (1, 2): n[0][1] + n[1][0],
        (1, 3): n[0][2] + n[2][0],
        (2, 3): n[1][2] + n[2][1],
    }
    row = []
    for j in range(4):
        if j == big:
            row.append(diag[big])
        else:
            row.append(outer[(min(big, j), max(big, j))])
    g = reduce(gcd, row)
    vec = [x // g for x in row]
    first = next(x for x in vec if x)
    if first < 0:
        vec = [-x for x in vec]
    q = primitive_part(HQuat.from_components(*vec))
    if rotation_matrix(q) != M:
        raise ValueError("matrix has no quaternion preimage")
    return q


_NORM2 = tuple(
    HQuat.from_components(*v)
    for v in [(1, 1, 0, 0), (1, -1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0), (1, 0, 0, 1), (1, 0, 0, -1),
              (0, 1, 1, 0), (0, 1, -1, 0), (0, 1, 0, 1), (0, 1, 0, -1), (0, 0, 1, 1), (0, 0, 1, -1)]
)


def _cubic_group():
    mats = {}
    for q in UNITS + _NORM2:
        M = rotation_matrix(q)
        mats.setdefault((M.num, M.den), M)
    return tuple(mats[k] for k in sorted(mats))


CUBIC_GROUP = _cubic_group()


def strongly_equivalent(q1, q2):
    """True iff ``R(q1) = R(q2) Q`` with ``Q`` a cubic rotation."""
    x = q2.conj() * q1
    return primitive_part(x).norm in (1, 2)


def strongly_equivalent_matrix(q1, q2):
    """Matrix-level version of :func:`strongly_equivalent` (24 comparisons)."""
    R1, R2 = rotation_matrix(q1), rotation_matrix(q2)
    return any(R2 @ Q == R1 for Q in CUBIC_GROUP)
