"""Compare the compiled kernels with the pure-Python reference.

Run from the repository root after building the extension::

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py [--repeat N]

Each row times the same inputs through ``mcsl._ckernels`` and
``mcsl._pykernels`` and checks that both return identical results.  The last
row times a full two-fold MCSL census in a fresh interpreter per backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from mcsl import _pykernels as py

try:
    from mcsl import _ckernels as cy
except ImportError:
    cy = None


def _inputs(seed=1):
    rng = random.Random(seed)

    def quat(bound):
        par = rng.randrange(2)
        return tuple(2 * rng.randint(-bound, bound) + par for _ in range(4))

    pairs = [(quat(50), quat(50)) for _ in range(2000)]
    pairs = [(a, b) for a, b in pairs if any(b)]
    mats = [[[rng.randint(-40, 40) for _ in range(3)] for _ in range(7)] for _ in range(500)]
    return pairs, mats


def _cases(pairs, mats):
    return {
        "qmul x2000": lambda k: [k.qmul(a, b) for a, b in pairs],
        "qdivmod x2000": lambda k: [k.qdivmod(a, b) for a, b in pairs],
        "qgcld x2000": lambda k: [k.qgcld(a, b) for a, b in pairs],
        "hnf 7x3 x500": lambda k: [k.hnf(m, 3) for m in mats],
        "hurwitz_of_norm(2025)": lambda k: k.hurwitz_of_norm(2025),
        "lipschitz_of_norm(3^7)": lambda k: k.lipschitz_of_norm(3**7),
    }


_CENSUS = "import time; from mcsl.census import census_mcsl2; t=time.perf_counter(); census_mcsl2({s}); print(time.perf_counter()-t)"


def _census_seconds(sigma, pure):
    env = dict(os.environ)
    env.pop("MCSL_PURE_PYTHON", None)
    if pure:
        env["MCSL_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", _CENSUS.format(s=sigma)], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sigma", type=int, default=135, help="index for the census row")
    args = ap.parse_args()
    if cy is None:
        sys.exit("compiled kernels not built; run `python setup.py build_ext --inplace` first")

    pairs, mats = _inputs()
    print(f"{'kernel':<26}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, fn in _cases(pairs, mats).items():
        if fn(py) != fn(cy):
            sys.exit(f"backends disagree on {name}")
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:<26}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    tp = _census_seconds(args.sigma, pure=True)
    tc = _census_seconds(args.sigma, pure=False)
    print(f"{'census_mcsl2(' + str(args.sigma) + ')':<26}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
