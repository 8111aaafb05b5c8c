"""Exhaustive CSL/MCSL counts, closed-form counting functions and their comparison."""

from __future__ import annotations

import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from pathlib import Path

from sympy import divisors, factorint, isprime

from . import zlattice as zl
from .csl_engine import csl_from_quaternion, is_right_multiple_pair
from .hquat import enumerate_ideals, gcld, gcld_norm, hurwitz_of_norm, ideal_hnf, is_primitive

__all__ = [
    "CountReport",
    "AlphaProfile",
    "f_formula",
    "census_csl",
    "census_mcsl2",
    "bijection_check",
    "theorem2_eval",
    "lemma6_predicate",
    "lemma6_oracle_compare",
    "multiplicativity_check",
    "census_many",
]


def _frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class CountReport:
    sigma: int
    count: int
    formula: Fraction
    witnesses: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def match(self):
        return self.formula.denominator == 1 and self.formula.numerator == self.count

    def to_json(self, timing=False):
        out = {
            "sigma": self.sigma,
            "count": self.count,
            "formula": _frac_str(self.formula),
            "match": self.match,
            "witnesses": self.witnesses,
            "mismatches": self.mismatches,
        }
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(
            sigma=obj["sigma"],
            count=obj["count"],
            formula=Fraction(obj["formula"]),
            witnesses=obj.get("witnesses", []),
            mismatches=obj.get("mismatches", []),
            seconds=obj.get("seconds", 0.0),
        )


def f_formula(n):
    """Number of CSLs of index ``n``: multiplicative, ``f(p^r) = (p+1) p^(r-1)``, zero for even n."""
    if n < 1:
        raise ValueError("index must be positive")
    if n % 2 == 0:
        return 0
    return prod((p + 1) * p ** (r - 1) for p, r in factorint(n).items())


def _check_odd(sigma):
    if sigma < 1 or sigma % 2 == 0:
        raise ValueError(f"census needs an odd positive index, got {sigma}")


def _hnf_json(L):
    return [list(r) for r in L.basis]


def census_csl(sigma):
    """Distinct CSLs of index ``sigma`` built from the left ideals of that norm."""
    _check_odd(sigma)
    t0 = time.perf_counter()
    lattices = {csl_from_quaternion(q) for q in enumerate_ideals(sigma)}
    mism = [{"index": zl.index_in(L, zl.GAMMA), "hnf": _hnf_json(L)} for L in sorted(lattices)
            if zl.index_in(L, zl.GAMMA) != sigma]
    return CountReport(
        sigma=sigma,
        count=len(lattices),
        formula=Fraction(f_formula(sigma)),
        witnesses=[_hnf_json(L) for L in sorted(lattices)],
        mismatches=mism,
        seconds=time.perf_counter() - t0,
    )


def bijection_check(sigma):
    """Compare the partitions of all primitive norm-``sigma`` quaternions by ideal HNF and by CSL.

    Returns the blocks present in one partition but not the other; an empty
    list means ideal equality and CSL equality coincide.
    """
    _check_odd(sigma)
    by_ideal, by_lattice = {}, {}
    for q in hurwitz_of_norm(sigma):
        if not is_primitive(q):
            continue
        by_ideal.setdefault(ideal_hnf(q), set()).add(q)
        by_lattice.setdefault(csl_from_quaternion(q), set()).add(q)
    part_i = {frozenset(s) for s in by_ideal.values()}
    part_l = {frozenset(s) for s in by_lattice.values()}
    return sorted(sorted(q.doubled for q in s) for s in part_i ^ part_l)


def _pair_mcsls(sigma):
    """Map canonical lattice -> generator pairs, for all MCSLs of <= 2 CSLs with index sigma."""
    reps = []
    for d in divisors(sigma):
        reps.extend(enumerate_ideals(d))
    found = {}
    for i, q1 in enumerate(reps):
        if q1.norm == sigma:
            found.setdefault(csl_from_quaternion(q1), (q1, q1))
        for q2 in reps[i + 1:]:
            if sigma % q2.norm:
                continue
            g = gcld_norm(q1, q2)
            if q1.norm * q2.norm != sigma * g:
                continue
            L = zl.intersect(csl_from_quaternion(q1), csl_from_quaternion(q2))
            found.setdefault(L, (q1, q2))
    return found


def f2_formula_value(sigma):
    """Product of ``theorem2_eval`` over the prime powers of ``sigma``."""
    out = Fraction(1)
    for p, r in factorint(sigma).items():
        out *= theorem2_eval(p, r)
    return out


def census_mcsl2(sigma):
    """Distinct lattices that are intersections of at most two CSLs, index ``sigma``.

    The reported formula is the prime-power closed form multiplied over the
    factorization, kept as an exact rational.  Where it is not an integer the
    report simply carries ``match == False``; the count is the ground truth.
    """
    _check_odd(sigma)
    t0 = time.perf_counter()
    found = _pair_mcsls(sigma)
    mism = []
    for L, (q1, q2) in sorted(found.items()):
        idx = zl.index_in(L, zl.GAMMA)
        if idx != sigma:
            mism.append({"index": idx, "hnf": _hnf_json(L), "pair": [list(q1.doubled), list(q2.doubled)]})
    return CountReport(
        sigma=sigma,
        count=len(found),
        formula=f2_formula_value(sigma) if sigma > 1 else Fraction(1),
        witnesses=[
            {"hnf": _hnf_json(L), "pair": [list(q1.doubled), list(q2.doubled)]}
            for L, (q1, q2) in sorted(found.items())
        ],
        mismatches=mism,
        seconds=time.perf_counter() - t0,
    )


def _floor(x):
    return x.numerator // x.denominator


def theorem2_eval(p, r):
    """The closed form for f2(p^r), evaluated exactly as an (unrounded) rational."""
    if p < 3 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    if r < 1:
        raise ValueError("power must be positive")
    P = Fraction(p)
    half = Fraction(r, 2)
    g2 = _floor(Fraction(r, 2))
    g3 = _floor(Fraction(r, 3))
    t1 = (half + Fraction(1, 2)) * (p + 1) * P ** (r - 1)
    t2 = (half - 1) * P ** (r - 2)
    t3 = (half - g2) * P ** (r - 4)
    t4 = (P ** (r - 1) - P ** (r - 2 * g3 - 1)) / (p * p - 1)
    t5 = (P ** (4 * g3 - r + 2) - P ** (4 * g2 - r - 2)) / (2 * (p * p - 1))
    return t1 + t2 + t3 + t4 + t5


@dataclass(frozen=True)
class AlphaProfile:
    """p-adic valuations of four norms and of the relevant pairwise gcld norms.

    ``a14`` and ``a23`` are only needed for the interchange ``q1 <-> q2``
    allowed when ``a1 == a2``.
    """

    a1: int
    a2: int
    a3: int
    a4: int
    a12: int
    a13: int
    a24: int
    a34: int
    a14: int | None = None
    a23: int | None = None

    def __post_init__(self):
        a = {1: self.a1, 2: self.a2, 3: self.a3, 4: self.a4}
        pairs = {(1, 2): self.a12, (1, 3): self.a13, (2, 4): self.a24, (3, 4): self.a34,
                 (1, 4): self.a14, (2, 3): self.a23}
        if any(v < 0 for v in a.values()):
            raise ValueError("negative valuation")
        for (i, j), v in pairs.items():
            if v is not None and not 0 <= v <= min(a[i], a[j]):
                raise ValueError(f"a{i}{j}={v} exceeds min(a{i}, a{j})")

    def swapped(self):
        if self.a14 is None or self.a23 is None:
            return None
        return AlphaProfile(self.a2, self.a1, self.a3, self.a4, self.a12, self.a23, self.a14,
                            self.a34, a14=self.a24, a23=self.a13)


def _lemma6_conditions(a):
    bound = min(a.a4 - a.a34, a.a34)
    return (
        a.a1 == a.a3
        and a.a2 - a.a12 == a.a4 - a.a34
        and a.a1 - a.a13 <= bound
        and a.a2 - a.a24 <= bound
    )


def lemma6_predicate(profile):
    """Equality criterion for two 2-fold MCSLs of prime-power index, as stated."""
    if _lemma6_conditions(profile):
        return True
    if profile.a1 == profile.a2:
        sw = profile.swapped()
        if sw is not None and _lemma6_conditions(sw):
            return True
    return False


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def lemma6_oracle_compare(p, max_alpha):
    """Compare the Lemma 6 predicate with direct lattice equality on every admissible 4-tuple."""
    if max_alpha > 3:
        raise ValueError("max_alpha > 3 is beyond desk scale")
    t0 = time.perf_counter()
    reps = []
    for a in range(1, max_alpha + 1):
        reps.extend(enumerate_ideals(p**a))
    n = len(reps)
    alpha = [_valuation(q.norm, p) for q in reps]
    g = [[_valuation(gcld(reps[i], reps[j]).norm, p) for j in range(n)] for i in range(n)]
    pairs = {}
    for i, j in product(range(n), repeat=2):
        if i == j or alpha[i] < alpha[j] or is_right_multiple_pair(reps[i], reps[j]):
            continue
        pairs[i, j] = zl.intersect(csl_from_quaternion(reps[i]), csl_from_quaternion(reps[j]))

    stats = {"tuples": 0, "agree": 0, "true_equal": 0, "predicate_true": 0,
             "false_positive": 0, "false_negative": 0}
    mismatches = []
    for (i1, i2), L12 in pairs.items():
        for (i3, i4), L34 in pairs.items():
            a1, a2, a3, a4 = alpha[i1], alpha[i2], alpha[i3], alpha[i4]
            if not (a2 >= a4 and a3 >= a4):
                continue
            prof = AlphaProfile(a1, a2, a3, a4, g[i1][i2], g[i1][i3], g[i2][i4], g[i3][i4],
                                a14=g[i1][i4], a23=g[i2][i3])
            pred = lemma6_predicate(prof)
            truth = L12 == L34
            stats["tuples"] += 1
            stats["true_equal"] += truth
            stats["predicate_true"] += pred
            if pred == truth:
                stats["agree"] += 1
                continue
            stats["false_positive" if pred else "false_negative"] += 1
            mismatches.append({
                "quats": [list(reps[k].doubled) for k in (i1, i2, i3, i4)],
                "profile": {k: v for k, v in prof.__dict__.items()},
                "predicate": pred,
                "lattice_equal": truth,
                "hnf12": _hnf_json(L12),
                "hnf34": _hnf_json(L34),
            })

    return {
        "p": p,
        "max_alpha": max_alpha,
        "representatives": n,
        "pairs": len(pairs),
        "distinct_lattices": len(set(pairs.values())),
        "stats": stats,
        "equivalence_ok": _keys_consistent(list(pairs.values())),
        "mismatches": mismatches,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def _keys_consistent(lattices):
    """Cross-check HNF-key equality against mutual containment on all pairs."""
    uniq = sorted(set(lattices))
    for i, A in enumerate(uniq):
        for B in uniq[i + 1:]:
            if A.det == B.det and all(B.contains(v) for v in A.basis):
                return False
    # identical keys must contain each other
    return all(all(L.contains(v) for v in L.basis) for L in uniq)


def multiplicativity_check(pairs):
    """Check f2(mn) == f2(m) f2(n) by brute force for coprime odd pairs."""
    out = []
    for m, n in pairs:
        if gcd(m, n) != 1:
            raise ValueError(f"({m}, {n}) are not coprime")
        fm, fn, fmn = (census_mcsl2(x).count for x in (m, n, m * n))
        out.append({"m": m, "n": n, "f2_m": fm, "f2_n": fn, "f2_mn": fmn, "match": fm * fn == fmn})
    return out


# -- caching and batch evaluation ---------------------------------------------

_KINDS = {"f": census_csl, "f2": census_mcsl2}


def cache_dir(override=None):
    d = override or os.environ.get("MCSL_CACHE_DIR")
    return Path(d) if d else None


def _atomic_write(path, payload):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def run_census(kind, sigma, cache=None):
    """One census report, read from / written to the cache directory when configured."""
    d = cache_dir(cache)
    path = d / f"{kind}-{sigma}.json" if d else None
    if path is not None and path.exists():
        return CountReport.from_json(json.loads(path.read_text()))
    rep = _KINDS[kind](sigma)
    if path is not None:
        _atomic_write(path, rep.to_json(timing=True))
    return rep


def _run_one(args):
    kind, sigma, cache = args
    return run_census(kind, sigma, cache)


def census_many(kind, sigmas, jobs=1, cache=None):
    """Reports for several indices, sorted by index regardless of ``jobs``."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    work = [(kind, s, str(cache) if cache else None) for s in sorted(set(sigmas))]
    if jobs == 1 or len(work) < 2:
        reports = [_run_one(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_run_one, work))
    return sorted(reports, key=lambda r: r.sigma)
