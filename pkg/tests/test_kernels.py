import random

import pytest
from hypothesis import given, settings, strategies as st

from mcsl import _kernels, _pykernels

ck = pytest.importorskip("mcsl._ckernels")

small = st.integers(-40, 40)


def hurwitz_tuple(bound=40):
    return st.tuples(st.integers(0, 1), st.lists(st.integers(-bound, bound), min_size=4, max_size=4)).map(
        lambda t: tuple(2 * x + t[0] for x in t[1])
    )


@settings(max_examples=500)
@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=8))
def test_hnf3_agrees(rows):
    assert ck.hnf(rows, 3) == _pykernels.hnf(rows, 3)


@settings(max_examples=500)
@given(st.lists(st.tuples(small, small, small, small), min_size=1, max_size=8))
def test_hnf4_agrees(rows):
    assert ck.hnf(rows, 4) == _pykernels.hnf(rows, 4)


@settings(max_examples=500)
@given(hurwitz_tuple(), hurwitz_tuple())
def test_qmul_and_divmod_agree(a, b):
    assert ck.qmul(a, b) == _pykernels.qmul(a, b)
    if any(b):
        assert ck.qdivmod(a, b) == _pykernels.qdivmod(a, b)
        assert ck.qgcld(a, b) == _pykernels.qgcld(a, b)


@pytest.mark.parametrize("n", range(0, 60))
def test_enumeration_agrees(n):
    assert ck.lipschitz_of_norm(n) == _pykernels.lipschitz_of_norm(n)
    assert ck.hurwitz_of_norm(n) == _pykernels.hurwitz_of_norm(n)


def test_overflow_falls_back_to_python():
    rows = [(2**62, 1, 1), (3, 2**62 + 5, 5), (7, 1, 2**61)]
    with pytest.raises(OverflowError):
        ck.hnf(rows, 3)
    if _kernels.BACKEND == "cython":
        assert _kernels.hnf(rows, 3) == _pykernels.hnf(rows, 3)
    big = (2**40, 0, 0, 0)
    assert _kernels.qmul(big, big) == (2**79, 0, 0, 0)


def test_hnf_shape_and_reduction():
    rng = random.Random(3)
    for _ in range(200):
        rows = [tuple(rng.randint(-20, 20) for _ in range(3)) for _ in range(4)]
        out = _pykernels.hnf(rows, 3)
        for i, r in enumerate(out):
            piv = next(k for k in range(3) if r[k])
            assert r[piv] > 0
            for j in range(i):
                assert 0 <= out[j][piv] < r[piv]


def test_sum_of_four_squares_counts():
    # r4(n) = 8 * sigma(n) for odd n
    for n, sig in [(1, 1), (3, 4), (5, 6), (9, 13), (15, 24)]:
        assert len(_pykernels.lipschitz_of_norm(n)) == 8 * sig
    assert len(_pykernels.hurwitz_of_norm(1)) == 24
