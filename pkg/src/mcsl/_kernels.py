"""Kernel dispatch: compiled ``_ckernels`` when importable, else pure Python.

Set ``MCSL_PURE_PYTHON=1`` to force the fallback.  Compiled calls that
overflow 64-bit arithmetic are transparently retried in Python.
"""

import os

from . import _pykernels

try:
    if os.environ.get("MCSL_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def _guarded(name):
    fast = getattr(_ckernels, name)
    slow = getattr(_pykernels, name)

    def call(*args):
        try:
            return fast(*args)
        except (OverflowError, ValueError):
            return slow(*args)

    call.__name__ = name
    call.__doc__ = slow.__doc__
    return call


if _ckernels is None:
    hnf = _pykernels.hnf
    qmul = _pykernels.qmul
    lipschitz_of_norm = _pykernels.lipschitz_of_norm
    hurwitz_of_norm = _pykernels.hurwitz_of_norm
    qdivmod = _pykernels.qdivmod
    qgcld = _pykernels.qgcld
else:
    hnf = _guarded("hnf")
    qmul = _guarded("qmul")
    lipschitz_of_norm = _guarded("lipschitz_of_norm")
    hurwitz_of_norm = _guarded("hurwitz_of_norm")
    qdivmod = _guarded("qdivmod")
    qgcld = _guarded("qgcld")
