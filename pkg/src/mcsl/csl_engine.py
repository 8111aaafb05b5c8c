"""Coincidence site lattices (CSLs) and multiple CSLs (MCSLs) of the bcc lattice.

For a primitive quaternion ``q`` of odd norm the CSL of ``R(q)`` is the
projection ``P(qH)`` of a left ideal onto the pure part, which makes every
construction here a piece of integer linear algebra.  ``csl_geometric``
intersects ``Gamma`` with ``R Gamma`` directly and serves as the independent
check on that identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd

from sympy import factorint

from . import zlattice as zl
from .hquat import (
    MODULE_BASIS,
    ONE,
    HQuat,
    IdealHNF4,
    content,
    gcld,
    hurwitz_of_norm,
    ideal_hnf,
    is_primitive,
    lcrm,
    left_divides,
    left_prime_part,
)
from .rot3 import rotation_matrix
from .zlattice import GAMMA, Lattice3

__all__ = [
    "CslRecord",
    "McslRecord",
    "project",
    "csl_from_quaternion",
    "csl_geometric",
    "csl_record",
    "mcsl",
    "sigma_plus",
    "sigma_multi",
    "sigma_multi_recursive",
    "lemma1_compose",
    "decompose_csl",
    "decompose_mcsl",
    "find_r",
    "lemma4_lattice",
    "lemma5_lattice",
    "lemma5_quotient",
    "is_right_multiple_pair",
]


def project(q):
    """Pure part of ``q`` in doubled coordinates."""
    return q.doubled[1:]


def _ideal_generators(q):
    return [project(q * b) for b in MODULE_BASIS]


def _check_odd_primitive(q):
    if q.is_zero or not is_primitive(q):
        raise ValueError(f"{q} is not primitive")
    if q.norm % 2 == 0:
        raise ValueError(f"{q} has even norm {q.norm}; apply make_odd first")


@lru_cache(maxsize=65536)
def _csl_cached(q):
    return zl.hnf(_ideal_generators(q))


def csl_from_quaternion(q):
    """``Gamma(R(q)) = P(qH)`` for primitive ``q`` of odd norm."""
    _check_odd_primitive(q)
    return _csl_cached(q)


def csl_geometric(q):
    """``Gamma & R(q) Gamma`` by rational lattice intersection."""
    R = rotation_matrix(q)
    rotated = zl.RationalLattice3.make([R.apply(b) for b in GAMMA.basis], R.den)
    out = zl.intersect(GAMMA, rotated)
    if not isinstance(out, Lattice3):
        raise ArithmeticError("intersection with Gamma is not integral")
    return out


def index_gamma(L):
    return zl.index_in(L, GAMMA)


@dataclass(frozen=True)
class CslRecord:
    quat: HQuat
    lattice: Lattice3
    sigma: int
    ideal: IdealHNF4
    decomposition: tuple = ()

    def to_json(self):
        return {
            "quat": list(self.quat.doubled),
            "sigma": self.sigma,
            "hnf": [list(r) for r in self.lattice.basis],
            "ideal_hnf": self.ideal.to_json(),
            "decomposition": [
                {"p": p, "alpha": a, "quat": list(qi.doubled), "hnf": [list(r) for r in csl_from_quaternion(qi).basis]}
                for p, a, qi in self.decomposition
            ],
        }


def csl_record(q):
    L = csl_from_quaternion(q)
    parts = []
    for qi in decompose_csl(q):
        ((p, a),) = factorint(qi.norm).items()
        parts.append((p, a, qi))
    return CslRecord(q, L, index_gamma(L), ideal_hnf(q), tuple(parts))


@dataclass(frozen=True)
class McslRecord:
    quats: tuple
    lattice: Lattice3
    sigma: int
    decomposition: tuple = field(default=())

    def to_json(self):
        return {
            "quat": [list(q.doubled) for q in self.quats],
            "sigma": self.sigma,
            "hnf": [list(r) for r in self.lattice.basis],
            "ideal_hnf": [ideal_hnf(q).to_json() for q in self.quats],
            "decomposition": [
                {"p": p, "alpha": a, "hnf": [list(r) for r in L.basis]} for p, a, L in self.decomposition
            ],
        }


def mcsl_lattice(qs):
    lattices = [csl_from_quaternion(q) for q in qs]
    if not lattices:
        return GAMMA
    return reduce(zl.intersect, lattices)


def mcsl(qs):
    """Intersection of the CSLs of ``qs`` with its index and prime-power pieces."""
    qs = tuple(qs)
    L = mcsl_lattice(qs)
    return McslRecord(qs, L, index_gamma(L), tuple(decompose_mcsl(L)))


def sigma_plus(q1, q2):
    """Index of ``Gamma(R1) + Gamma(R2)`` in Gamma."""
    return index_gamma(zl.lattice_sum(csl_from_quaternion(q1), csl_from_quaternion(q2)))


def sigma_multi(qs):
    """Index of the MCSL of ``qs``, computed directly."""
    return index_gamma(mcsl_lattice(qs))


def sigma_multi_recursive(qs):
    """Index of the MCSL of ``qs`` via ``S(1..m) = S(1..m-1) S(m) / S+(1..m-1; m)``."""
    if not qs:
        return 1
    acc = csl_from_quaternion(qs[0])
    sig = qs[0].norm
    for q in qs[1:]:
        Lm = csl_from_quaternion(q)
        plus = index_gamma(zl.lattice_sum(acc, Lm))
        num = sig * q.norm
        if num % plus:
            raise ArithmeticError("index recursion produced a non-integer")
        sig = num // plus
        acc = zl.intersect(acc, Lm)
    return sig


def lemma1_compose(q1, q2):
    """Single quaternion whose CSL is ``Gamma(R1) & Gamma(R2)`` (coprime odd norms)."""
    _check_odd_primitive(q1)
    _check_odd_primitive(q2)
    if gcd(q1.norm, q2.norm) != 1:
        raise ValueError("norms are not coprime")
    q = lcrm(q1, q2)
    assert q.norm == q1.norm * q2.norm and is_primitive(q)
    return q


def decompose_csl(q):
    """Prime-power quaternions ``q_i`` whose CSLs intersect to the CSL of ``q``."""
    _check_odd_primitive(q)
    return [left_prime_part(q, p) for p in sorted(factorint(q.norm))]


def decompose_mcsl(L):
    """Pieces ``(p, alpha, L + p**alpha Gamma)``, one per prime of the index."""
    s = index_gamma(L)
    if s % 2 == 0:
        raise ValueError(f"index {s} is even")
    out = []
    for p, a in sorted(factorint(s).items()):
        out.append((p, a, zl.lattice_sum(L, GAMMA.scaled(p**a))))
    return out


def is_right_multiple_pair(q1, q2):
    """True if either quaternion is a right multiple of the other."""
    return left_divides(q1, q2) or left_divides(q2, q1)


def _prime_power(n):
    f = factorint(n)
    if len(f) != 1:
        raise ValueError(f"{n} is not a prime power")
    return next(iter(f.items()))


def _check_lemma4_pair(q1, q2):
    _check_odd_primitive(q1)
    _check_odd_primitive(q2)
    p1, _ = _prime_power(q1.norm)
    p2, _ = _prime_power(q2.norm)
    if p1 != p2:
        raise ValueError("norms are powers of different primes")
    if is_right_multiple_pair(q1, q2):
        raise ValueError("one quaternion is a right multiple of the other")


def find_r(q1, q2, max_norm=64):
    """First ``r`` making ``q1 r conj(q2)`` primitive.

    Candidates run through ascending norm, and within one norm through
    descending doubled coordinates, so ``r = 1`` is tried first.
    """
    _check_lemma4_pair(q1, q2)
    c2 = q2.conj()
    for n in range(1, max_norm + 1):
        for r in sorted(hurwitz_of_norm(n), key=lambda x: x.doubled, reverse=True):
            if content(q1 * r * c2) == 1:
                return r
    raise ArithmeticError(f"no suitable r with norm <= {max_norm}")


def lemma4_lattice(q1, q2):
    """``P(qH + Z q1 r conj(q2))`` with ``q = lcrm(q1, q2)``."""
    r = find_r(q1, q2)
    q = lcrm(q1, q2)
    return zl.hnf(_ideal_generators(q) + [project(q1 * r * q2.conj())])


def lemma5_lattice(q1, q2, swap=False):
    """``P(qH + q1 H conj(q2))`` (or with the roles swapped)."""
    _check_lemma4_pair(q1, q2)
    q = lcrm(q1, q2)
    a, b = (q2, q1) if swap else (q1, q2)
    extra = [project(a * x * b.conj()) for x in MODULE_BASIS]
    return zl.hnf(_ideal_generators(q) + extra)


def lemma5_quotient(q1, q2):
    """Invariant factors of ``P(qH + q1 H conj(q2)) / P(qH)`` and the expected cyclic order."""
    q = lcrm(q1, q2)
    big = lemma5_lattice(q1, q2)
    small = zl.hnf(_ideal_generators(q))
    return zl.smith_quotient(small, big), q.norm // max(q1.norm, q2.norm)
