"""Exact coincidence site lattices (CSLs) and multiple CSLs of the bcc lattice."""

from ._kernels import BACKEND
from .census import census_csl, census_mcsl2, f_formula, theorem2_eval
from .csl_engine import csl_from_quaternion, csl_geometric, mcsl
from .hquat import HQuat, gcld, lcrm, parse_quat
from .rot3 import rotation_matrix, sigma
from .zlattice import GAMMA, Lattice3

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GAMMA",
    "HQuat",
    "Lattice3",
    "census_csl",
    "census_mcsl2",
    "csl_from_quaternion",
    "csl_geometric",
    "f_formula",
    "gcld",
    "lcrm",
    "mcsl",
    "parse_quat",
    "rotation_matrix",
    "sigma",
    "theorem2_eval",
]
