"""Verification suite: every acceptance criterion as a function returning a result dict.

Each check returns ``{"id", "name", "passed", "details"}``.  Values coming
from the printed counting formula that fail to be integers are collected as
anomalies: they are reported, never counted as failures.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from math import gcd

from sympy import factorint

from . import zlattice as zl
from .census import (
    census_csl,
    census_mcsl2,
    bijection_check,
    f_formula,
    lemma6_oracle_compare,
    theorem2_eval,
)
from .csl_engine import (
    csl_from_quaternion,
    csl_geometric,
    decompose_csl,
    decompose_mcsl,
    is_right_multiple_pair,
    lemma1_compose,
    lemma4_lattice,
    lemma5_lattice,
    lemma5_quotient,
    mcsl_lattice,
    sigma_multi,
    sigma_multi_recursive,
    sigma_plus,
)
from .hquat import HQuat, UNITS, canonical, enumerate_ideals, gcld, hurwitz_of_norm, is_primitive
from .rot3 import sigma
from .zlattice import GAMMA

LEVELS = {
    "desk": {"csl_max": 201, "oracle_max": 99, "pairs": 500, "multi": 100, "decomp": 100, "props": 10_000},
    "deep": {"csl_max": 401, "oracle_max": 151, "pairs": 2000, "multi": 400, "decomp": 400, "props": 40_000},
}


def _result(cid, name, passed, **details):
    return {"id": cid, "name": name, "passed": bool(passed), "details": details}


def primitive_odd(n):
    """All primitive Hurwitz quaternions of odd norm ``n``."""
    return [q for q in hurwitz_of_norm(n) if is_primitive(q)]


def random_primitive(rng, max_norm):
    while True:
        n = rng.randrange(1, max_norm + 1, 2)
        qs = primitive_odd(n)
        if qs:
            return rng.choice(qs)


def check_csl_census(csl_max=201, **_):
    bad = []
    for s in range(1, csl_max + 1, 2):
        rep = census_csl(s)
        if not rep.match or rep.mismatches:
            bad.append({"sigma": s, "count": rep.count, "formula": str(rep.formula)})
    spots = {s: census_csl(s).count for s in (3, 9, 45)}
    ok = not bad and spots == {3: 4, 9: 12, 45: 72}
    return _result(1, "CSL census equals multiplicative f", ok, max_sigma=csl_max, failures=bad, spot=spots)


def check_oracle_and_bijection(oracle_max=99, **_):
    n_checked = 0
    oracle_bad, index_bad, bij_bad = [], [], []
    for n in range(1, oracle_max + 1, 2):
        for q in primitive_odd(n):
            n_checked += 1
            L = csl_from_quaternion(q)
            if L != csl_geometric(q):
                oracle_bad.append(list(q.doubled))
            if zl.index_in(L, GAMMA) != q.norm:
                index_bad.append(list(q.doubled))
        blocks = bijection_check(n)
        if blocks:
            bij_bad.append({"norm": n, "blocks": blocks[:3]})
    r2 = _result(2, "P(qH) equals Gamma & R(q)Gamma, index N(q)", not oracle_bad and not index_bad,
                 quaternions=n_checked, oracle_failures=oracle_bad[:20], index_failures=index_bad[:20])
    r3 = _result(3, "ideal equality iff CSL equality", not bij_bad, max_norm=oracle_max, failures=bij_bad)
    return [r2, r3]


def check_index_identities(pairs=500, multi=100, seed=20240517, **_):
    rng = random.Random(seed)
    bad = []
    for _ in range(pairs):
        q1, q2 = random_primitive(rng, 49), random_primitive(rng, 49)
        s12 = sigma_multi([q1, q2])
        sp = sigma_plus(q1, q2)
        g = gcld(q1, q2).norm
        if s12 * sp != q1.norm * q2.norm or sp != g:
            bad.append({"q1": list(q1.doubled), "q2": list(q2.doubled), "sigma": s12, "sigma_plus": sp, "gcld": g})
    multi_bad = []
    for _ in range(multi):
        m = rng.randint(2, 4)
        qs = [random_primitive(rng, 49) for _ in range(m)]
        direct, rec = sigma_multi(qs), sigma_multi_recursive(qs)
        if direct != rec or direct % 2 == 0:
            multi_bad.append({"quats": [list(q.doubled) for q in qs], "direct": direct, "recursive": rec})
    return _result(4, "index identities for two and m-fold MCSLs", not bad and not multi_bad,
                   pairs=pairs, multi_samples=multi, pair_failures=bad[:20], multi_failures=multi_bad[:20])


def check_prime_squares(**_):
    got = {}
    ok = True
    for p in (3, 5, 7):
        count = census_mcsl2(p * p).count
        formula = theorem2_eval(p, 2)
        got[p * p] = {"brute": count, "formula": str(formula)}
        ok &= count == formula == {3: 18, 5: 45, 7: 84}[p]
    return _result(5, "f2 at prime squares", ok, values=got)


def check_theorem1(level="desk", **_):
    f = {s: census_mcsl2(s).count for s in (3, 5, 9, 15, 45)}
    ok = f[45] == f[9] * f[5] == 108 and f[15] == f[3] * f[5] == 24
    details = {"f2": f}
    if level == "deep":
        f27, f135 = census_mcsl2(27).count, census_mcsl2(135).count
        details["f2_135"] = {"f2_27": f27, "f2_135": f135}
        ok &= f135 == f27 * f[5]
    return _result(6, "f2 multiplicative on coprime indices", ok, **details)


def check_theorem2_anomalies(level="desk", **_):
    values, nonintegral, disagree = {}, [], []
    max_r = 6 if level == "deep" else 5
    cases = sorted({(3, r) for r in range(1, max_r + 1)} | {(5, 2), (7, 2)})
    for p, r in cases:
        v = theorem2_eval(p, r)
        brute = census_mcsl2(p**r).count
        values[f"{p}^{r}"] = {"formula": f"{v.numerator}/{v.denominator}", "brute_force_f2": brute}
        entry = {"p": p, "r": r, "formula": f"{v.numerator}/{v.denominator}", "brute_force_f2": brute}
        if v.denominator != 1:
            nonintegral.append(entry)
        elif v != brute:
            disagree.append(entry)
    flags = {(a["p"], a["r"]) for a in nonintegral}
    expected_flags = {(3, 1), (3, 3)} <= flags and not flags & {(3, 2), (5, 2), (7, 2), (3, 4)}
    exact = theorem2_eval(3, 1) == Fraction(109, 27) and theorem2_eval(3, 3) == Fraction(229, 3)
    rep27 = census_mcsl2(27)
    # the brute-force census is authoritative; it only has to be self-consistent
    consistent = (
        not rep27.mismatches
        and rep27.count >= f_formula(27)
        and census_mcsl2(3).count == f_formula(3)
    )
    anomalies = [dict(a, kind="non-integral") for a in nonintegral]
    anomalies += [dict(a, kind="integral-but-different") for a in disagree]
    return _result(7, "printed f2 closed form: anomalies flagged, census authoritative",
                   expected_flags and exact and consistent,
                   values=values, anomalies=anomalies, brute_f2_27=rep27.count)


def check_lemmas(decomp=100, seed=7, **_):
    # Lemma 1: coprime norm pairs with product <= 225
    l1_count, l1_bad = 0, []
    norms = [n for n in range(1, 226, 2)]
    for n1 in norms:
        for n2 in norms:
            if n1 > n2 or n1 * n2 > 225 or gcd(n1, n2) != 1:
                continue
            for q1 in enumerate_ideals(n1):
                for q2 in enumerate_ideals(n2):
                    l1_count += 1
                    q = lemma1_compose(q1, q2)
                    if csl_from_quaternion(q) != mcsl_lattice([q1, q2]):
                        l1_bad.append([list(q1.doubled), list(q2.doubled)])

    # decompositions on mixed norms up to 2025
    rng = random.Random(seed)
    composite = [n for n in range(15, 2026, 2) if len(factorint(n)) >= 2]
    dec_bad = []
    for _ in range(decomp):
        q = canonical(rng.choice(primitive_odd(rng.choice(composite))))
        parts = decompose_csl(q)
        if mcsl_lattice(parts) != csl_from_quaternion(q) or [len(factorint(x.norm)) for x in parts] != [1] * len(parts):
            dec_bad.append({"csl": list(q.doubled)})
        # a genuine two-fold MCSL with index <= 2025
        while True:
            a, b = random_primitive(rng, 45), random_primitive(rng, 45)
            L = mcsl_lattice([a, b])
            if zl.index_in(L, GAMMA) <= 2025:
                break
        pieces = decompose_mcsl(L)
        back = zl.intersect_all([P for _, _, P in pieces]) if pieces else GAMMA
        if back != L or any(zl.index_in(P, GAMMA) != p**e for p, e, P in pieces):
            dec_bad.append({"mcsl": [list(a.doubled), list(b.doubled)]})

    # Lemmas 4 and 5, p = 3, norms 3, 9, 27
    reps = [q for n in (3, 9, 27) for q in enumerate_ideals(n)]
    l45_count, l45_bad = 0, []
    for q1 in reps:
        for q2 in reps:
            if is_right_multiple_pair(q1, q2):
                continue
            l45_count += 1
            direct = mcsl_lattice([q1, q2])
            snf, order = lemma5_quotient(q1, q2)
            ok = (
                lemma4_lattice(q1, q2) == direct
                and lemma5_lattice(q1, q2) == direct
                and lemma5_lattice(q1, q2, swap=True) == direct
                and snf[0] == 1 and snf[1] == 1 and snf[2] == order
            )
            if not ok:
                l45_bad.append({"q1": list(q1.doubled), "q2": list(q2.doubled), "snf": snf, "order": order})
    ok = not l1_bad and not dec_bad and not l45_bad
    return _result(8, "constructive Lemmas 1-5", ok, lemma1_pairs=l1_count, lemma1_failures=l1_bad[:10],
                   decompositions=decomp, decomposition_failures=dec_bad[:10],
                   lemma45_pairs=l45_count, lemma45_failures=l45_bad[:10])


def check_lemma6(**_):
    rep = lemma6_oracle_compare(3, 2)
    ok = rep["equivalence_ok"] and rep["stats"]["tuples"] > 0
    summary = {k: v for k, v in rep.items() if k != "mismatches"}
    return _result(9, "Lemma 6 predicate vs lattice equality", ok, report=summary,
                   mismatches=rep["mismatches"][:50], mismatch_count=len(rep["mismatches"]))


def check_properties(props=10_000, seed=99, **_):
    rng = random.Random(seed)
    fails = {"ring": 0, "hnf": 0, "duality": 0, "spectrum": 0}
    counts = dict.fromkeys(fails, 0)

    def rq(bound=12):
        par = rng.randint(0, 1)
        return HQuat(*(2 * rng.randint(-bound, bound) + par for _ in range(4)))

    for _ in range(props):
        a, b, c = rq(), rq(), rq()
        counts["ring"] += 1
        if (
            (a * b).norm != a.norm * b.norm
            or (a * b) * c != a * (b * c)
            or a * a.conj() != HQuat(2 * a.norm, 0, 0, 0)
        ):
            fails["ring"] += 1
    for _ in range(props):
        gens = [tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(rng.randint(3, 6))]
        try:
            L = zl.hnf(gens)
        except ValueError:
            continue
        counts["hnf"] += 1
        shuffled = gens[:]
        rng.shuffle(shuffled)
        if zl.hnf(L.basis) != L or zl.hnf(shuffled) != L or not all(L.contains(g) for g in gens):
            fails["hnf"] += 1
        counts["duality"] += 1
        if zl.dual(zl.dual(L)) != L:
            fails["duality"] += 1
    units_and_small = [q for n in range(1, 50, 2) for q in primitive_odd(n)]
    for _ in range(props // 10):
        qs = [rng.choice(units_and_small) for _ in range(rng.randint(1, 3))]
        counts["spectrum"] += 1
        s = sigma_multi(qs)
        if s % 2 == 0 or any(s % sigma(q) for q in qs):
            fails["spectrum"] += 1
    total = sum(counts.values())
    return _result(10, "property suites", total >= 10_000 and not any(fails.values()),
                   cases=counts, total=total, failures=fails)


def verify_all(level="desk", progress=None):
    """Run every check; ``passed`` is false only on authoritative failures."""
    cfg = dict(LEVELS[level])
    t0 = time.perf_counter()
    results = []
    steps = [
        check_csl_census,
        check_oracle_and_bijection,
        check_index_identities,
        check_prime_squares,
        check_theorem1,
        check_theorem2_anomalies,
        check_lemmas,
        check_lemma6,
        check_properties,
    ]
    for step in steps:
        out = step(level=level, **cfg)
        for r in out if isinstance(out, list) else [out]:
            results.append(r)
            if progress:
                progress(r)
    anomalies = next(r for r in results if r["id"] == 7)["details"]["anomalies"]
    return {
        "level": level,
        "passed": all(r["passed"] for r in results),
        "criteria": results,
        "anomalies": anomalies,
        "seconds": round(time.perf_counter() - t0, 2),
    }
