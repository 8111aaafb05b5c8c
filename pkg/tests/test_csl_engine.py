import itertools

import pytest
from sympy import factorint
from hypothesis import given, settings
from hypothesis import strategies as st

from mcsl import zlattice as zl
from mcsl.census import census_csl, census_mcsl2
from mcsl.csl_engine import (
    csl_from_quaternion,
    csl_geometric,
    csl_record,
    decompose_csl,
    decompose_mcsl,
    find_r,
    index_gamma,
    is_right_multiple_pair,
    lemma1_compose,
    lemma4_lattice,
    lemma5_lattice,
    lemma5_quotient,
    mcsl,
    mcsl_lattice,
    sigma_multi,
    sigma_multi_recursive,
    sigma_plus,
)
from mcsl.hquat import ONE, OMEGA, HQuat, enumerate_ideals, gcld, hurwitz_of_norm, is_primitive
from mcsl.zlattice import GAMMA

Q3 = HQuat(2, 2, 2, 0)  # 1 + i + j
Q5 = HQuat(4, 2, 0, 0)  # 2 + i
# a pair of norm-3 / norm-27 ideals for which r = 1 does not work
P1, P2 = HQuat(3, 1, -1, 1), HQuat(5, 3, -1, -1)


def odd_primitive(n):
    return [q for q in hurwitz_of_norm(n) if is_primitive(q)]


odd_quats = st.sampled_from([q for n in range(1, 40, 2) for q in odd_primitive(n)])


class TestCsl:
    def test_norm3_example(self):
        assert csl_from_quaternion(Q3).basis == ((1, 1, 3), (0, 2, 2), (0, 0, 6))
        assert index_gamma(csl_from_quaternion(Q3)) == 3

    def test_identity_gives_gamma(self):
        assert csl_from_quaternion(ONE) == GAMMA

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 15, 21, 25])
    def test_matches_geometric(self, n):
        for q in odd_primitive(n):
            L = csl_from_quaternion(q)
            assert L == csl_geometric(q)
            assert index_gamma(L) == n

    def test_rejects_even_and_imprimitive(self):
        with pytest.raises(ValueError):
            csl_from_quaternion(HQuat(2, 2, 0, 0))
        with pytest.raises(ValueError):
            csl_from_quaternion(Q3 * 3)

    def test_record_json(self):
        q = lemma1_compose(Q3, Q5)
        rec = csl_record(q).to_json()
        assert set(rec) == {"quat", "sigma", "hnf", "ideal_hnf", "decomposition"}
        assert rec["sigma"] == 15
        assert rec["hnf"] == [[1, 1, 3], [0, 2, 26], [0, 0, 30]]
        assert [(d["p"], d["alpha"]) for d in rec["decomposition"]] == [(3, 1), (5, 1)]
        for d in rec["decomposition"]:
            assert set(d) == {"p", "alpha", "quat", "hnf"}


class TestMcsl:
    def test_coprime_pair(self):
        rec = mcsl([Q3, Q5])
        assert rec.sigma == 15
        js = rec.to_json()
        assert js["hnf"] == [[1, 1, 3], [0, 2, 26], [0, 0, 30]]
        assert [d["p"] for d in js["decomposition"]] == [3, 5]
        assert len(js["ideal_hnf"]) == 2

    def test_empty_is_gamma(self):
        assert mcsl_lattice([]) == GAMMA

    @settings(max_examples=150, deadline=None)
    @given(odd_quats, odd_quats)
    def test_two_fold_index_identity(self, a, b):
        # Sigma(R1, R2) * Sigma_plus = Sigma(R1) Sigma(R2)
        assert sigma_multi([a, b]) * sigma_plus(a, b) == a.norm * b.norm

    @settings(max_examples=60, deadline=None)
    @given(st.lists(odd_quats, min_size=1, max_size=4))
    def test_recursive_index(self, qs):
        assert sigma_multi_recursive(qs) == sigma_multi(qs)

    @settings(max_examples=150, deadline=None)
    @given(odd_quats, odd_quats)
    def test_sum_is_csl_of_gcld(self, a, b):
        g = gcld(a, b)
        assert zl.lattice_sum(csl_from_quaternion(a), csl_from_quaternion(b)) == csl_from_quaternion(g)
        assert sigma_plus(a, b) == g.norm


class TestLemma1:
    def test_example(self):
        q = lemma1_compose(Q3, Q5)
        assert q.norm == 15
        assert csl_from_quaternion(q) == zl.intersect(csl_from_quaternion(Q3), csl_from_quaternion(Q5))

    def test_rejects_common_factor(self):
        with pytest.raises(ValueError):
            lemma1_compose(Q3, HQuat(3, 1, -1, 1))

    def test_all_small_coprime_pairs(self):
        for n1, n2 in [(3, 5), (5, 9), (7, 3), (9, 25)]:
            for a in enumerate_ideals(n1):
                for b in enumerate_ideals(n2):
                    q = lemma1_compose(a, b)
                    assert csl_from_quaternion(q) == zl.intersect(csl_from_quaternion(a), csl_from_quaternion(b))


class TestDecomposition:
    @pytest.mark.parametrize("n", [15, 45, 63, 105, 225])
    def test_csl_pieces_intersect_back(self, n):
        for q in enumerate_ideals(n)[:20]:
            parts = decompose_csl(q)
            primes = [min(factorint(p.norm)) for p in parts]
            assert primes == sorted(factorint(n))
            assert zl.intersect_all([csl_from_quaternion(p) for p in parts]) == csl_from_quaternion(q)

    def test_mcsl_pieces(self):
        L = mcsl_lattice([Q3, Q5])
        pieces = decompose_mcsl(L)
        assert [(p, a) for p, a, _ in pieces] == [(3, 1), (5, 1)]
        assert zl.intersect_all([M for *_, M in pieces]) == L
        for p, a, M in pieces:
            assert index_gamma(M) == p**a

    def test_mcsl_even_index_rejected(self):
        with pytest.raises(ValueError):
            decompose_mcsl(GAMMA.scaled(2))

    @pytest.mark.parametrize("sigma", [15, 45, 75, 105, 135, 225])
    def test_mcsl_pieces_unique_among_candidates(self, sigma):
        # every 2-fold MCSL of index sigma splits into 2-fold MCSLs of
        # prime-power index, and those are the only candidates containing it
        for w in census_mcsl2(sigma).witnesses:
            L = zl.Lattice3(tuple(tuple(r) for r in w["hnf"]))
            pieces = decompose_mcsl(L)
            assert zl.intersect_all([M for *_, M in pieces]) == L
            for p, a, M in pieces:
                cands = [zl.Lattice3(tuple(tuple(r) for r in w["hnf"])) for w in census_mcsl2(p**a).witnesses]
                assert M in cands
                assert [C for C in cands if all(C.contains(v) for v in L.basis)] == [M]


class TestLemma4And5:
    def test_find_r_trivial(self):
        a, b = enumerate_ideals(3)[:2]
        assert find_r(a, b) == ONE

    def test_find_r_nontrivial(self):
        assert not is_primitive(P1 * P2.conj())
        r = find_r(P1, P2)
        assert r == OMEGA
        assert is_primitive(P1 * r * P2.conj())

    def test_rejects_right_multiples(self):
        q = HQuat(3, 1, -1, 1)
        assert is_right_multiple_pair(q, q * Q3)
        with pytest.raises(ValueError):
            lemma5_lattice(q, q * Q3)
        with pytest.raises(ValueError):
            find_r(Q3, Q5)

    def test_example_lattice(self):
        L = lemma5_lattice(P1, P2)
        assert L.basis == ((3, 1, 7), (0, 2, 8), (0, 0, 18))
        assert L == lemma4_lattice(P1, P2)
        assert L == mcsl_lattice([P1, P2])
        assert lemma5_quotient(P1, P2) == ((1, 1, 3), 3)

    def test_swap_gives_same_lattice(self):
        assert lemma5_lattice(P1, P2, swap=True) == lemma5_lattice(P1, P2)

    def test_example_not_a_csl(self):
        L = lemma5_lattice(P1, P2)
        csls = {tuple(tuple(r) for r in h) for h in census_csl(index_gamma(L)).witnesses}
        assert L.basis not in csls

    @pytest.mark.parametrize("p", [3, 5])
    def test_all_pairs_up_to_p_cubed(self, p):
        reps = [q for a in (1, 2) for q in enumerate_ideals(p**a)]
        if p == 3:
            reps += enumerate_ideals(27)
        for a, b in itertools.product(reps, repeat=2):
            if is_right_multiple_pair(a, b):
                continue
            L = mcsl_lattice([a, b])
            assert lemma4_lattice(a, b) == L
            assert lemma5_lattice(a, b) == L
            snf, order = lemma5_quotient(a, b)
            assert snf[:-1] == (1,) * (len(snf) - 1) and snf[-1] == order
