from fractions import Fraction

import pytest

from mcsl.hquat import HQuat


def hamilton(a, b):
    """Independent quaternion product on plain (Fraction) components."""
    (a0, a1, a2, a3), (b0, b1, b2, b3) = a, b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def plain(q):
    return tuple(Fraction(x, 2) for x in q.doubled)


def Q(k, l, m, n):
    return HQuat.from_components(k, l, m, n)


@pytest.fixture
def q3():
    return Q(1, 1, 1, 0)
