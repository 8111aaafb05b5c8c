from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mcsl.hquat import (
    I,
    J,
    K,
    OMEGA,
    ONE,
    UNITS,
    HQuat,
    canonical,
    content,
    enumerate_ideals,
    gcld,
    hurwitz_of_norm,
    ideal_hnf,
    is_primitive,
    lcrm,
    left_divides,
    left_prime_decomposition,
    left_prime_part,
    left_quotient,
    make_odd,
    parse_quat,
    right_divmod,
)
from mcsl.census import f_formula
from mcsl.rot3 import rotation_matrix, strongly_equivalent_matrix

from conftest import Q, hamilton, plain

hq = st.tuples(st.integers(0, 1), st.lists(st.integers(-15, 15), min_size=4, max_size=4)).map(
    lambda t: HQuat(*(2 * x + t[0] for x in t[1]))
)
nonzero = hq.filter(lambda q: not q.is_zero)


def primitive_odd_upto(n):
    return [q for m in range(1, n + 1, 2) for q in hurwitz_of_norm(m) if is_primitive(q)]


class TestType:
    def test_parity_enforced(self):
        with pytest.raises(ValueError):
            HQuat(1, 0, 0, 0)

    def test_units(self):
        assert len(UNITS) == 24
        assert all(u.norm == 1 for u in UNITS)

    def test_content(self):
        assert content(Q(1, 1, 1, 1)) == 2
        assert content(OMEGA) == 1
        assert content(Q(3, 0, 3, 6)) == 3
        assert content(Q(1, 3, 1, 1)) == 2
        assert is_primitive(Q(1, 1, 1, 0))

    def test_parse(self):
        assert parse_quat("2,2,2,0") == Q(1, 1, 1, 0)
        assert parse_quat("1,1,1,0", half=True) == Q(1, 1, 1, 0)
        assert parse_quat("(1 1 1 0)") == Q(1, 1, 1, 0)
        assert parse_quat("(1 1 1 1)/2") == OMEGA
        with pytest.raises(ValueError):
            parse_quat("1,2,3")


class TestMul:
    def test_examples(self):
        assert I * J == K
        assert Q(1, 1, 1, 0) * I == Q(-1, 1, 0, -1)
        q = Q(3, -1, 2, 5)
        assert q * ONE == q

    def test_against_independent_product(self):
        for a, b in product(hurwitz_of_norm(3)[:12], UNITS):
            assert plain(a * b) == hamilton(plain(a), plain(b))

    @settings(max_examples=300)
    @given(hq, hq, hq)
    def test_ring_identities(self, a, b, c):
        assert (a * b).norm == a.norm * b.norm
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * a.conj() == ONE * a.norm
        assert plain(a * b) == hamilton(plain(a), plain(b))


class TestDivision:
    def test_examples(self):
        a, b = Q(0, 1, 0, -1), Q(1, 1, 1, 0)
        s, r = right_divmod(a, b)
        # s = 0 would already satisfy N(r) < N(b); nearest-point rounding does better
        assert a == b * s + r and r.norm == 1
        assert right_divmod(Q(2, 0, 0, 0), Q(1, 1, 0, 0)) == (Q(1, -1, 0, 0), HQuat(0, 0, 0, 0))

    def test_remainder_is_minimal(self):
        a, b = Q(1, 0, -2, 2), Q(1, 1, 1, 0)
        s, r = right_divmod(a, b)
        assert a == b * s + r and r.norm <= 1
        # exhaustive: no quotient in a generous box does better
        best = min((a - b * HQuat(*d)).norm for n in range(0, 8) for d in [x.doubled for x in hurwitz_of_norm(n)])
        assert r.norm == best

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            right_divmod(ONE, HQuat(0, 0, 0, 0))

    @settings(max_examples=500)
    @given(hq, nonzero)
    def test_euclidean_property(self, a, b):
        s, r = right_divmod(a, b)
        assert a == b * s + r
        assert r.norm < b.norm
        assert 2 * r.norm <= b.norm


def _left_divisors(a):
    n = a.norm
    return [d for m in range(1, n + 1) if n % m == 0 for d in hurwitz_of_norm(m) if left_divides(d, a)]


class TestGcdLcm:
    def test_examples(self):
        q = Q(1, 1, 1, 0)
        assert ideal_hnf(gcld(q, Q(-1, 1, 0, -1))) == ideal_hnf(q)
        assert gcld(q, Q(1, 1, -1, 0)).norm == 1
        assert ideal_hnf(gcld(q, q)) == ideal_hnf(q)
        with pytest.raises(ValueError):
            gcld(HQuat(0, 0, 0, 0), HQuat(0, 0, 0, 0))

    def test_lcrm_examples(self):
        q = Q(1, 1, 1, 0)
        assert ideal_hnf(lcrm(q, q * I)) == ideal_hnf(q * I)
        m = lcrm(q, Q(1, 1, -1, 0))
        assert m.norm == 9 and content(m) == 3 and ideal_hnf(m) == ideal_hnf(ONE * 3)
        with pytest.raises(ValueError):
            lcrm(q, HQuat(0, 0, 0, 0))

    def test_gcld_brute_force(self):
        # every common left divisor divides gcld, and gcld is a common divisor
        qs = [canonical(q) for q in primitive_odd_upto(25)]
        qs = sorted(set(qs))[::7]
        for a in qs:
            da = _left_divisors(a)
            for b in qs[::3]:
                g = gcld(a, b)
                assert left_divides(g, a) and left_divides(g, b)
                common = [d for d in da if left_divides(d, b)]
                assert max(d.norm for d in common) == g.norm
                assert all(left_divides(d, g) for d in common)

    def test_lcrm_shortest_multiple_oracle(self):
        # smallest-norm common right multiple, searched over norms directly
        pairs = [(Q(1, 1, 1, 0), Q(1, 1, -1, 0)), (Q(1, 1, 1, 0), Q(1, 2, 0, 0)), (Q(2, 1, 0, 0), Q(0, 1, 2, 0)),
                 (Q(1, 1, 1, 0), Q(1, 1, 1, 0) * Q(1, 1, 0, 1)), (Q(2, 1, 1, 1), Q(1, 2, 1, 1))]
        for a, b in pairs:
            m = lcrm(a, b)
            n = 1
            while True:
                hits = [x for x in hurwitz_of_norm(n) if left_divides(a, x) and left_divides(b, x)]
                if hits:
                    break
                n += 1
            assert m.norm == n
            assert ideal_hnf(m) == ideal_hnf(hits[0])
            assert left_divides(a, m) and left_divides(b, m)

    @settings(max_examples=300)
    @given(nonzero, nonzero)
    def test_norm_identity(self, a, b):
        g, m = gcld(a, b), lcrm(a, b)
        assert g.norm * m.norm == a.norm * b.norm
        assert left_divides(g, a) and left_divides(g, b)
        assert left_divides(a, m) and left_divides(b, m)


class TestPrimeParts:
    def test_left_prime_part(self):
        q = Q(1, 2, 3, 1)
        q1 = left_prime_part(q, 3)
        assert q1.norm == 3 and left_quotient(q1, q) is not None
        assert left_quotient(q1, q).norm % 3 != 0
        # exactly one of the four norm-3 ideals contains q
        assert sum(left_divides(r, q) for r in enumerate_ideals(3)) == 1
        assert left_prime_part(q, 5).norm == 5
        assert sum(left_divides(r, q) for r in enumerate_ideals(5)) == 1
        assert ideal_hnf(left_prime_part(Q(1, 1, 1, 0), 3)) == ideal_hnf(Q(1, 1, 1, 0))

    def test_errors(self):
        with pytest.raises(ValueError):
            left_prime_part(Q(1, 2, 3, 1), 7)
        with pytest.raises(ValueError):
            left_prime_part(Q(3, 3, 3, 0), 3)

    def test_decomposition(self):
        q = Q(1, 2, 3, 1)
        f = left_prime_decomposition(q)
        assert [x.norm for x in f] == [3, 5]
        assert f[0] * f[1] == q
        q9 = Q(2, 2, 1, 0)
        assert left_prime_decomposition(q9) == [q9]
        assert left_prime_decomposition(OMEGA) == []
        with pytest.raises(ValueError):
            left_prime_decomposition(Q(1, 1, 0, 0))

    def test_decomposition_reproduces(self):
        for n in (15, 21, 35, 45, 63, 75, 105):
            for q in enumerate_ideals(n):
                f = left_prime_decomposition(q)
                prod = ONE
                for x in f:
                    prod = prod * x
                assert prod == q
                primes = [min(p for p in range(3, x.norm + 1) if x.norm % p == 0) for x in f]
                assert primes == sorted(primes)


class TestMakeOdd:
    def test_examples(self):
        assert make_odd(Q(1, 1, 0, 0)) == ONE
        assert make_odd(Q(1, 1, 1, 0)) == Q(1, 1, 1, 0)
        q = make_odd(Q(0, 1, 1, 0))
        assert q.norm % 2 == 1

    def test_strongly_equivalent_to_input(self):
        for n in (2, 4, 6, 8, 10, 12, 18):
            for q in hurwitz_of_norm(n):
                if q.is_zero:
                    continue
                odd = make_odd(q)
                assert odd.norm % 2 == 1 and is_primitive(odd)
                assert strongly_equivalent_matrix(odd, q)


class TestIdeals:
    def test_ideal_hnf_examples(self):
        h = ideal_hnf(ONE)
        assert h.det == 8
        q = Q(1, 1, 1, 0)
        assert ideal_hnf(q) == ideal_hnf(q * OMEGA)
        assert len({ideal_hnf(x) for x in enumerate_ideals(3)}) == 4

    def test_unit_invariance_and_det(self):
        for q in enumerate_ideals(15) + enumerate_ideals(9):
            key = ideal_hnf(q)
            assert key.det == 8 * q.norm**2
            assert all(ideal_hnf(q * u) == key for u in UNITS)

    def test_injective_on_ideals(self):
        # ideal_hnf(q) == ideal_hnf(q') iff q' = q u
        for n in range(1, 100, 2):
            by_key = {}
            for q in hurwitz_of_norm(n):
                if is_primitive(q):
                    by_key.setdefault(ideal_hnf(q), []).append(q)
            for qs in by_key.values():
                assert len(qs) == 24
                assert all(left_quotient(qs[0], x) in UNITS for x in qs)

    def test_counts(self):
        assert len(enumerate_ideals(1)) == 1
        assert len(enumerate_ideals(3)) == 4
        assert len(enumerate_ideals(45)) == 72
        for n in range(1, 202, 2):
            assert len(enumerate_ideals(n)) == f_formula(n)
        with pytest.raises(ValueError):
            enumerate_ideals(4)

    def test_deterministic_order(self):
        keyed = enumerate_ideals(25, with_keys=True)
        assert [k for k, _ in keyed] == sorted(k for k, _ in keyed)
        assert all(is_primitive(q) and q.norm == 25 for _, q in keyed)
