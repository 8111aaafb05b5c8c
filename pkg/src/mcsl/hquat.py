"""Hurwitz quaternion arithmetic in doubled coordinates.

A quaternion ``q = (k, l, m, n)`` is stored as the integer 4-tuple
``d = 2q``.  The Hurwitz order H consists of the tuples whose entries share
one parity: all even is a Lipschitz (integral) quaternion, all odd is a
half-integral one.  Everything here is exact integer arithmetic.

Left ideals are written ``qH`` (right multiples of ``q``).  ``gcld`` and
``lcrm`` follow the same convention: ``gcld(a, b)`` generates ``aH + bH`` and
``lcrm(a, b)`` generates ``aH & bH``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd

from sympy import factorint

from . import _kernels

__all__ = [
    "HQuat",
    "IdealHNF4",
    "ONE",
    "I",
    "J",
    "K",
    "OMEGA",
    "UNITS",
    "parse_quat",
    "mul",
    "content",
    "is_primitive",
    "canonical",
    "left_divides",
    "left_quotient",
    "right_divmod",
    "gcld",
    "gcld_norm",
    "lcrm",
    "left_prime_part",
    "left_prime_decomposition",
    "make_odd",
    "ideal_hnf",
    "enumerate_ideals",
    "hurwitz_of_norm",
]


@dataclass(frozen=True, order=True)
class HQuat:
    """Hurwitz quaternion ``(d0 + d1 i + d2 j + d3 k) / 2``."""

    d0: int
    d1: int
    d2: int
    d3: int

    def __post_init__(self):
        p = self.d0 & 1
        if (self.d1 & 1) != p or (self.d2 & 1) != p or (self.d3 & 1) != p:
            raise ValueError(f"not a Hurwitz quaternion (mixed parity): {self.doubled}")

    @classmethod
    def from_components(cls, k, l, m, n):
        """Build from plain integer components ``(k, l, m, n)``."""
        return cls(2 * k, 2 * l, 2 * m, 2 * n)

    @classmethod
    def from_doubled(cls, d):
        return cls(*d)

    @property
    def doubled(self):
        return (self.d0, self.d1, self.d2, self.d3)

    @property
    def components(self):
        """Plain components as ``(numerators, denominator)``; denominator is 1 or 2."""
        if self.is_lipschitz:
            return tuple(x // 2 for x in self.doubled), 1
        return self.doubled, 2

    @property
    def norm(self):
        return (self.d0 * self.d0 + self.d1 * self.d1 + self.d2 * self.d2 + self.d3 * self.d3) // 4

    @property
    def is_lipschitz(self):
        return self.d0 % 2 == 0

    @property
    def is_unit(self):
        return self.norm == 1

    @property
    def is_zero(self):
        return not (self.d0 or self.d1 or self.d2 or self.d3)

    def conj(self):
        return HQuat(self.d0, -self.d1, -self.d2, -self.d3)

    def __mul__(self, other):
        if isinstance(other, HQuat):
            return HQuat(*_kernels.qmul(self.doubled, other.doubled))
        if isinstance(other, int):
            return HQuat(self.d0 * other, self.d1 * other, self.d2 * other, self.d3 * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, HQuat):
            return NotImplemented
        return HQuat(self.d0 + other.d0, self.d1 + other.d1, self.d2 + other.d2, self.d3 + other.d3)

    def __sub__(self, other):
        if not isinstance(other, HQuat):
            return NotImplemented
        return HQuat(self.d0 - other.d0, self.d1 - other.d1, self.d2 - other.d2, self.d3 - other.d3)

    def __neg__(self):
        return HQuat(-self.d0, -self.d1, -self.d2, -self.d3)

    def exact_div(self, m):
        """``q / m`` for a natural number ``m``; raises if the result leaves H."""
        if m <= 0 or any(x % m for x in self.doubled):
            raise ValueError(f"{self} is not divisible by {m}")
        return HQuat(*(x // m for x in self.doubled))

    def __str__(self):
        nums, den = self.components
        body = " ".join(str(x) for x in nums)
        return f"({body})" if den == 1 else f"({body})/2"

    def to_json(self):
        return list(self.doubled)


ONE = HQuat(2, 0, 0, 0)
I = HQuat(0, 2, 0, 0)
J = HQuat(0, 0, 2, 0)
K = HQuat(0, 0, 0, 2)
OMEGA = HQuat(1, 1, 1, 1)
# Z-basis of H used for ideal and CSL generators
MODULE_BASIS = (ONE, I, J, OMEGA)

_QUAT_RE = re.compile(r"^\(\s*([-+\d\s,]+?)\s*\)\s*(/\s*2)?$")


def parse_quat(text, half=False):
    """Parse the CLI text forms of a quaternion.

    ``"d0,d1,d2,d3"`` is read as doubled coordinates (plain components when
    ``half`` is true); ``"(k l m n)"`` as plain components and
    ``"(k l m n)/2"`` as doubled coordinates.
    """
    s = text.strip()
    m = _QUAT_RE.match(s)
    if m:
        vals = [int(x) for x in re.split(r"[\s,]+", m.group(1).strip())]
        doubled = m.group(2) is not None
    else:
        vals = [int(x) for x in s.split(",")]
        doubled = not half
    if len(vals) != 4:
        raise ValueError(f"expected 4 components, got {len(vals)}: {text!r}")
    return HQuat(*vals) if doubled else HQuat.from_components(*vals)


def hurwitz_of_norm(n):
    """Every Hurwitz quaternion of norm ``n`` (sorted by doubled coordinates)."""
    return [HQuat(*d) for d in _kernels.hurwitz_of_norm(n)]


UNITS = tuple(hurwitz_of_norm(1))


def mul(a, b):
    return a * b


def content(q):
    """Largest natural number ``m`` with ``q / m`` in H (0 for q = 0)."""
    g = reduce(gcd, q.doubled)
    if g == 0:
        return 0
    if all((x // g) % 2 for x in q.doubled):
        return g
    return g // 2


def is_primitive(q):
    return content(q) == 1


def primitive_part(q):
    return q.exact_div(content(q))


def gcld_norm(a, b):
    """``N(gcld(a, b))`` without normalizing the divisor."""
    g = _kernels.qgcld(a.doubled, b.doubled)
    return sum(x * x for x in g) // 4


def _odd_part(n):
    while n and n % 2 == 0:
        n //= 2
    return n


def canonical(q):
    """Canonical right-unit associate: the largest doubled tuple among ``q*u``."""
    if q.is_zero:
        return q
    return max((q * u for u in UNITS), key=lambda x: x.doubled)


def left_quotient(d, a):
    """``x`` with ``a = d * x``, or None when ``d`` does not left-divide ``a``."""
    n = d.norm
    if n == 0:
        raise ZeroDivisionError("left division by the zero quaternion")
    t = (d.conj() * a).doubled
    if any(x % n for x in t):
        return None
    t = tuple(x // n for x in t)
    if len({x & 1 for x in t}) != 1:
        return None
    return HQuat(*t)


def left_divides(d, a):
    return left_quotient(d, a) is not None


def right_divmod(a, b):
    """Euclidean division ``a = b*s + r`` with ``N(r) < N(b)``."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero quaternion")
    s, r = _kernels.qdivmod(a.doubled, b.doubled)
    return HQuat(*s), HQuat(*r)


def _euclid(a, b):
    """Extended left Euclid: returns ``(g, x, y)`` with ``a*x + b*y = 0``.

    ``g`` generates ``aH + bH`` and ``a*x = -b*y`` generates ``aH & bH``.
    """
    r0, r1 = a, b
    x0, x1 = ONE, HQuat(0, 0, 0, 0)
    y0, y1 = HQuat(0, 0, 0, 0), ONE
    while not r1.is_zero:
        s, r = right_divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - x1 * s
        y0, y1 = y1, y0 - y1 * s
    return r0, x1, y1


def gcld(a, b):
    """Greatest common left divisor, canonical associate."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcld(0, 0) is undefined")
    if a.is_zero:
        return canonical(b)
    if b.is_zero:
        return canonical(a)
    return canonical(HQuat(*_kernels.qgcld(a.doubled, b.doubled)))


def lcrm(a, b):
    """Least common right multiple, canonical associate.

    The result need not be primitive: ``lcrm(q, conj-related q')`` is often a
    rational integer times a unit.
    """
    if a.is_zero or b.is_zero:
        raise ValueError("lcrm of a zero quaternion is undefined")
    _, x, _ = _euclid(a, b)
    return canonical(a * x)


def _check_primitive(q):
    if q.is_zero or not is_primitive(q):
        raise ValueError(f"{q} is not primitive")


def left_prime_part(q, p):
    """The factor ``q1 = gcld(q, p**a)`` of norm ``p**a``, ``p**a || N(q)``."""
    _check_primitive(q)
    n = q.norm
    if p < 2 or n % p:
        raise ValueError(f"{p} does not divide N({q}) = {n}")
    alpha = 0
    while n % p == 0:
        n //= p
        alpha += 1
    q1 = gcld(q, ONE * p**alpha)
    assert q1.norm == p**alpha
    return q1


def left_prime_decomposition(q):
    """Factors ``a1, ..., al`` with ``q = a1*...*al`` and ``N(ai)`` prime powers.

    Primes appear in ascending order; all factors but the last are canonical
    associates, the last absorbs the remaining unit so the product is exact.
    """
    _check_primitive(q)
    if q.norm % 2 == 0:
        raise ValueError("left_prime_decomposition needs an odd norm")
    primes = sorted(factorint(q.norm))
    factors = []
    rest = q
    for idx, p in enumerate(primes):
        if idx == len(primes) - 1:
            factors.append(rest)
            break
        a = left_prime_part(rest, p)
        factors.append(a)
        rest = left_quotient(a, rest)
    return factors


_ONE_MINUS_I = HQuat(2, -2, 0, 0)


def make_odd(q):
    """Odd-norm quaternion whose rotation differs from ``R(q)`` by a cubic symmetry."""
    if q.is_zero:
        raise ValueError("make_odd of the zero quaternion")
    q = primitive_part(q)
    while q.norm % 2 == 0:
        # every even-norm element lies in the two-sided ideal (1+i)H
        q = (q * _ONE_MINUS_I).exact_div(2)
    return q


@dataclass(frozen=True, order=True)
class IdealHNF4:
    """Canonical basis of the left ideal ``qH`` as a rank-4 module (doubled coords)."""

    rows: tuple

    @property
    def det(self):
        d = 1
        for i, row in enumerate(self.rows):
            d *= row[i]
        return d

    def to_json(self):
        return [list(r) for r in self.rows]


def ideal_hnf(q):
    if q.is_zero:
        raise ValueError("the zero ideal has no rank-4 basis")
    rows = _kernels.hnf([(q * b).doubled for b in MODULE_BASIS], 4)
    return IdealHNF4(tuple(rows))


@lru_cache(maxsize=None)
def _ideals_keyed(n):
    seen = {}
    for t in _kernels.lipschitz_of_norm(n):
        if reduce(gcd, t) != 1:
            continue
        q = HQuat.from_components(*t)
        key = ideal_hnf(q)
        if key not in seen:
            seen[key] = canonical(q)
    return tuple(sorted(seen.items()))


def enumerate_ideals(n, with_keys=False):
    """One primitive generator per left ideal of norm ``n`` (odd), sorted by ideal HNF."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"enumerate_ideals needs an odd positive norm, got {n}")
    items = _ideals_keyed(n)
    if with_keys:
        return list(items)
    return [q for _, q in items]


def odd_part(n):
    return _odd_part(n)
